/**
 * Client-side mirror of the server's activity status machine.
 *
 * The server owns the truth; this table only decides which controls are
 * enabled. It must stay isomorphic to the server's chain
 * Draft -> Allocated -> Published -> FeedbackOpen -> Closed.
 */

import type { ActivityStatus } from "./api.js";

export const STATUS_CHAIN: readonly ActivityStatus[] = [
  "Draft", "Allocated", "Published", "FeedbackOpen", "Closed",
];

export type TeacherAction = "allocate" | "publish" | "open-feedback" | "close";

/** The single status in which each action is legal. */
export const ACTION_PRECONDITION: Record<TeacherAction, ActivityStatus> = {
  allocate: "Draft",
  publish: "Allocated",
  "open-feedback": "Published",
  close: "FeedbackOpen",
};

/** The status each action moves the activity into. */
export const ACTION_RESULT: Record<TeacherAction, ActivityStatus> = {
  allocate: "Allocated",
  publish: "Published",
  "open-feedback": "FeedbackOpen",
  close: "Closed",
};

export const TEACHER_ACTIONS: readonly TeacherAction[] = [
  "allocate", "publish", "open-feedback", "close",
];

export function nextStatus(status: ActivityStatus): ActivityStatus | null {
  const i = STATUS_CHAIN.indexOf(status);
  return i >= 0 && i + 1 < STATUS_CHAIN.length ? STATUS_CHAIN[i + 1]! : null;
}

export function isLegal(status: ActivityStatus, action: TeacherAction): boolean {
  return ACTION_PRECONDITION[action] === status;
}

/** At most one action is enabled for any status; Closed has none. */
export function enabledActions(status: ActivityStatus): TeacherAction[] {
  return TEACHER_ACTIONS.filter((action) => isLegal(status, action));
}
