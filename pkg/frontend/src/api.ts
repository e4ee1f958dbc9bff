/**
 * Typed client for the teamforge service (/api/v1).
 *
 * The UI performs no probability or objective arithmetic: every number it
 * shows is taken verbatim from these response payloads.
 */

export type ActivityStatus = "Draft" | "Allocated" | "Published" | "FeedbackOpen" | "Closed";

export interface RosterEntry {
  student_id: string;
  display_name: string;
}

export interface TeamView {
  members: RosterEntry[];
  expected_value: number;
}

export interface ActivityView {
  activity_id: string;
  module_id: string;
  description: string;
  start_date: string;
  end_date: string;
  size_min: number;
  size_max: number;
  seed: number;
  status: ActivityStatus;
  method: string | null;
  value: number | null;
  teams: TeamView[] | null;
}

export interface PosteriorView {
  student_id: string;
  display_name: string;
  posterior: Record<string, number>;
  map_role: string;
}

export interface ActivityCreateBody {
  module_id: string;
  description: string;
  start_date: string;
  end_date: string;
  size_min: number;
  size_max: number;
}

export interface EvaluationBody {
  evaluator: string;
  evaluatee: string;
  role: string;
  timestamp?: number;
  survey?: unknown;
}

/** Error payload surfaced by the service; code maps to a fixed HTTP status. */
export class ApiError extends Error {
  constructor(
    public readonly code: string,
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.baseUrl}/api/v1${path}`, init);
    if (response.status === 204) {
      return undefined as T;
    }
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(payload.code ?? "bad_request", response.status,
        payload.message ?? response.statusText);
    }
    return payload as T;
  }

  listActivities(): Promise<{ activities: ActivityView[] }> {
    return this.request("GET", "/activities");
  }

  getActivity(id: string): Promise<ActivityView> {
    return this.request("GET", `/activities/${id}`);
  }

  createActivity(body: ActivityCreateBody): Promise<ActivityView> {
    return this.request("POST", "/activities", body);
  }

  allocate(id: string, seed?: number): Promise<ActivityView> {
    return this.request("POST", `/activities/${id}/allocate`,
      seed === undefined ? {} : { seed });
  }

  publish(id: string): Promise<ActivityView> {
    return this.request("POST", `/activities/${id}/publish`);
  }

  openFeedback(id: string): Promise<ActivityView> {
    return this.request("POST", `/activities/${id}/open-feedback`);
  }

  close(id: string): Promise<ActivityView> {
    return this.request("POST", `/activities/${id}/close`);
  }

  submitEvaluation(activityId: string, body: EvaluationBody): Promise<void> {
    return this.request("POST", `/activities/${activityId}/evaluations`, body);
  }

  getPosterior(studentId: string): Promise<PosteriorView> {
    return this.request("GET", `/students/${studentId}/posterior`);
  }

  getRoster(): Promise<{ students: RosterEntry[] }> {
    return this.request("GET", "/roster");
  }

  putRoster(students: RosterEntry[]): Promise<{ students: RosterEntry[] }> {
    return this.request("PUT", "/roster", { students });
  }
}
