import { describe, expect, it, vi } from "vitest";

import {
  ApiError,
  TimelineClient,
  errorMessage,
  fetchTimeline,
  requestParam,
  timelineUrl,
} from "../src/api.js";
import type { TimelineResponse } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

const EMPTY_TIMELINE: TimelineResponse = {
  query: "q",
  model_version: "v",
  entries: [],
};

describe("requestParam", () => {
  it("routes plain text to query", () => {
    expect(requestParam("Saint Petersburg")).toEqual({
      name: "query",
      value: "Saint Petersburg",
    });
  });

  it("routes http inputs to url", () => {
    expect(requestParam("http://example.org/page")).toEqual({
      name: "url",
      value: "http://example.org/page",
    });
    expect(requestParam("https://example.org/page").name).toBe("url");
  });

  it("trims before routing", () => {
    expect(requestParam("  http://x/ ").name).toBe("url");
  });

  it("builds the query string", () => {
    expect(timelineUrl("Saint Petersburg")).toBe(
      "/api/timeline?query=Saint+Petersburg",
    );
    expect(timelineUrl("http://x/")).toBe(
      "/api/timeline?url=http%3A%2F%2Fx%2F",
    );
  });
});

describe("fetchTimeline", () => {
  it("returns the parsed wire document", async () => {
    const payload: TimelineResponse = {
      query: "Saint Petersburg",
      model_version: "abc",
      entries: [
        {
          year: 1914,
          text: "Saint Petersburg was renamed Petrograd in 1914.",
          source_id: "Saint Petersburg",
          first_sentence: 4,
          last_sentence: 4,
          distance: 0,
          scores: { D0: 1.2, All: 0.8 },
        },
      ],
    };
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(payload));
    const result = await fetchTimeline("Saint Petersburg", undefined, fetchMock);
    expect(result.entries).toHaveLength(1);
    expect(fetchMock).toHaveBeenCalledWith(
      "/api/timeline?query=Saint+Petersburg",
      undefined,
    );
  });

  it("throws a typed error with the backend detail", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValue(jsonResponse({ detail: "no article found" }, 404));
    await expect(
      fetchTimeline("Nowhere", undefined, fetchMock),
    ).rejects.toMatchObject({ status: 404, message: "no article found" });
  });
});

describe("errorMessage", () => {
  it("maps 404 to a not-found message", () => {
    expect(errorMessage(new ApiError(404, "x"))).toBe("Article not found.");
  });

  it("maps upstream failures distinctly", () => {
    expect(errorMessage(new ApiError(502, "x"))).toContain("fetched");
    expect(errorMessage(new ApiError(504, "x"))).toContain("timed out");
  });

  it("maps unknown failures to unreachable", () => {
    expect(errorMessage(new TypeError("network down"))).toContain("unreachable");
  });
});

describe("TimelineClient", () => {
  it("latest submission wins", async () => {
    let release: (r: Response) => void = () => {};
    const slow = new Promise<Response>((resolve) => {
      release = resolve;
    });
    const fetchMock = vi
      .fn()
      .mockReturnValueOnce(slow)
      .mockResolvedValueOnce(jsonResponse({ ...EMPTY_TIMELINE, query: "second" }));

    const client = new TimelineClient(fetchMock);
    const first = client.submit("First");
    const second = client.submit("Second");
    release(jsonResponse({ ...EMPTY_TIMELINE, query: "first" }));

    const results = await Promise.allSettled([first, second]);
    // the superseded call either resolves null or aborts; the latest returns
    expect(results[1].status).toBe("fulfilled");
    const latest = (results[1] as PromiseFulfilledResult<TimelineResponse | null>).value;
    expect(latest?.query).toBe("second");
    if (results[0].status === "fulfilled") {
      expect((results[0] as PromiseFulfilledResult<TimelineResponse | null>).value).toBeNull();
    }
  });
});
