// Client for the timeline service API.

export interface TimelineEntry {
  year: number;
  text: string;
  source_id: string;
  first_sentence: number;
  last_sentence: number;
  distance: number;
  scores: Record<string, number>;
}

export interface TimelineResponse {
  query: string;
  model_version: string;
  generated_at?: string;
  entries: TimelineEntry[];
}

export interface HealthResponse {
  status: string;
  model_version: string;
}

export class ApiError extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
  }
}

/** Inputs that look like a web address are sent as url=, everything else as
 * a query= article title. */
export function requestParam(input: string): { name: "query" | "url"; value: string } {
  const trimmed = input.trim();
  return trimmed.startsWith("http")
    ? { name: "url", value: trimmed }
    : { name: "query", value: trimmed };
}

export function timelineUrl(input: string, base = ""): string {
  const { name, value } = requestParam(input);
  const params = new URLSearchParams({ [name]: value });
  return `${base}/api/timeline?${params.toString()}`;
}

export function errorMessage(err: unknown): string {
  if (err instanceof ApiError) {
    if (err.status === 404) return "Article not found.";
    if (err.status === 502) return "The article could not be fetched.";
    if (err.status === 504) return "The computation timed out; try again later.";
    if (err.status === 400) return "Invalid request.";
    return `Request failed (HTTP ${err.status}).`;
  }
  if (err instanceof DOMException && err.name === "AbortError") return "";
  return "The service is unreachable.";
}

export async function fetchTimeline(
  input: string,
  init?: RequestInit,
  fetchImpl: typeof fetch = fetch,
): Promise<TimelineResponse> {
  const response = await fetchImpl(timelineUrl(input), init);
  if (!response.ok) {
    const detail = await response
      .json()
      .then((body) => body?.detail ?? "")
      .catch(() => "");
    throw new ApiError(response.status, detail || `HTTP ${response.status}`);
  }
  return (await response.json()) as TimelineResponse;
}

export async function fetchHealth(
  fetchImpl: typeof fetch = fetch,
): Promise<HealthResponse> {
  const response = await fetchImpl("/api/health");
  if (!response.ok) throw new ApiError(response.status, "health check failed");
  return (await response.json()) as HealthResponse;
}

/** Serializes submissions: at most one in-flight request, stale responses are
 * dropped (latest wins). */
export class TimelineClient {
  private controller: AbortController | null = null;
  private sequence = 0;

  constructor(private fetchImpl: typeof fetch = fetch) {}

  async submit(input: string): Promise<TimelineResponse | null> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const ticket = ++this.sequence;
    try {
      const result = await fetchTimeline(
        input,
        { signal: controller.signal },
        this.fetchImpl,
      );
      return ticket === this.sequence ? result : null;
    } catch (err) {
      if (ticket !== this.sequence) return null; // superseded, ignore
      throw err;
    }
  }
}
