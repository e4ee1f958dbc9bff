/**
 * Student evaluation flow: pick an activity collecting feedback, pick a
 * teammate, pick one of the eight role descriptions, submit. Submitted
 * teammates are marked done; the student never appears in their own list.
 */

import type { ActivityView, ApiClient, RosterEntry } from "./api.js";
import { ApiError } from "./api.js";

export function activitiesOpenForFeedback(activities: ActivityView[]): ActivityView[] {
  return activities.filter((a) => a.status === "FeedbackOpen");
}

/** The student's teammates in this activity (never includes the student). */
export function teammatesOf(activity: ActivityView, studentId: string): RosterEntry[] {
  if (!activity.teams) {
    return [];
  }
  for (const team of activity.teams) {
    if (team.members.some((m) => m.student_id === studentId)) {
      return team.members.filter((m) => m.student_id !== studentId);
    }
  }
  return [];
}

export interface SubmissionResult {
  ok: boolean;
  code?: string;
  message?: string;
}

/** One evaluation; resolves to the server's verdict, never throws on ApiError. */
export async function submitEvaluation(
  api: ApiClient,
  activityId: string,
  evaluator: string,
  evaluatee: string,
  roleId: string,
): Promise<SubmissionResult> {
  try {
    await api.submitEvaluation(activityId, { evaluator, evaluatee, role: roleId });
    return { ok: true };
  } catch (err) {
    if (err instanceof ApiError) {
      return { ok: false, code: err.code, message: err.message };
    }
    throw err;
  }
}

/** Tracks which teammates have been evaluated in this session. */
export class EvaluationProgress {
  private readonly done = new Set<string>();

  constructor(public readonly teammates: RosterEntry[]) {}

  markDone(studentId: string): void {
    this.done.add(studentId);
  }

  isDone(studentId: string): boolean {
    return this.done.has(studentId);
  }

  get doneSet(): ReadonlySet<string> {
    return this.done;
  }

  get remaining(): RosterEntry[] {
    return this.teammates.filter((m) => !this.done.has(m.student_id));
  }

  get complete(): boolean {
    return this.remaining.length === 0;
  }
}
