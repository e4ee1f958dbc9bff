/**
 * Teacher flow: create an activity, then walk it along
 * allocate -> publish -> open feedback -> close.
 *
 * Controls for illegal transitions are disabled in the UI; if a call is
 * forced anyway, the server's 409 is surfaced verbatim.
 */

import type { ActivityCreateBody, ActivityView, ApiClient } from "./api.js";
import { ApiError } from "./api.js";
import type { TeacherAction } from "./state.js";

export interface ActionOutcome {
  activity?: ActivityView;
  code?: string;
  message?: string;
}

export async function createActivity(
  api: ApiClient,
  body: ActivityCreateBody,
): Promise<ActionOutcome> {
  try {
    return { activity: await api.createActivity(body) };
  } catch (err) {
    if (err instanceof ApiError) {
      return { code: err.code, message: err.message };
    }
    throw err;
  }
}

export async function performAction(
  api: ApiClient,
  activityId: string,
  action: TeacherAction,
  seed?: number,
): Promise<ActionOutcome> {
  try {
    switch (action) {
      case "allocate":
        return { activity: await api.allocate(activityId, seed) };
      case "publish":
        return { activity: await api.publish(activityId) };
      case "open-feedback":
        return { activity: await api.openFeedback(activityId) };
      case "close":
        return { activity: await api.close(activityId) };
    }
  } catch (err) {
    if (err instanceof ApiError) {
      return { code: err.code, message: err.message };
    }
    throw err;
  }
}
