/** HTTP client: URL construction (ids URL-encoded), error mapping. */

import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, BladeClient } from "../src/api";

function mockFetch(status: number, body: unknown) {
  const fn = vi.fn(async () => ({
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    json: async () => body,
  })) as unknown as typeof fetch;
  vi.stubGlobal("fetch", fn);
  return fn as ReturnType<typeof vi.fn>;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("BladeClient", () => {
  it("url-encodes unit ids (the # separator)", async () => {
    const fn = mockFetch(200, { id: "textbook-ch3#4" });
    const client = new BladeClient("http://svc");
    await client.getUnit("textbook-ch3#4");
    expect(fn).toHaveBeenCalledWith("http://svc/units/textbook-ch3%234", undefined);
  });

  it("passes the session parameter to the resource browser", async () => {
    const fn = mockFetch(200, { resources: [] });
    const client = new BladeClient("");
    await client.listResources("abc123");
    expect(fn).toHaveBeenCalledWith("/resources?session=abc123", undefined);
  });

  it("posts citation clicks to the events endpoint", async () => {
    const fn = mockFetch(204, undefined);
    const client = new BladeClient("");
    await client.postCitationClick("sess", "lec#8");
    const [url, init] = fn.mock.calls[0]!;
    expect(url).toBe("/sessions/sess/events");
    expect(JSON.parse((init as RequestInit).body as string)).toEqual({
      event: "citation_click",
      unit_id: "lec#8",
    });
  });

  it("maps error bodies to ApiError with the server detail", async () => {
    mockFetch(403, { detail: "chat is disabled" });
    const client = new BladeClient("");
    await expect(client.sendMessage("sess", "hi")).rejects.toThrowError(ApiError);
    await expect(client.sendMessage("sess", "hi")).rejects.toThrow("chat is disabled");
  });

  it("sends the session payload the server expects", async () => {
    const fn = mockFetch(201, { session_id: "s", config: "A" });
    const client = new BladeClient("");
    await client.createSession("nlp", "module-2", "A");
    const [, init] = fn.mock.calls[0]!;
    expect(JSON.parse((init as RequestInit).body as string)).toEqual({
      course_id: "nlp",
      module_tag: "module-2",
      config: "A",
    });
  });
});
