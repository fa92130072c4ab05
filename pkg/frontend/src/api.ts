/**
 * Typed client for the blade service HTTP API.
 *
 * One base-URL setting; everything else mirrors the server payloads
 * one-to-one. Unit ids contain '#', so they are always URL-encoded when
 * placed in a path.
 */

export type SessionConfig = "A" | "B" | "C";

export interface Citation {
  unit_id: string;
  display_label: string;
  excerpt: string;
}

export interface MessageResponse {
  text: string;
  citations: Citation[];
  no_results: boolean;
  generation?: number;
}

export interface SessionInfo {
  session_id: string;
  config: SessionConfig;
}

export interface TranscriptTurn {
  role: "student" | "assistant";
  text: string;
  citations: Citation[];
  no_results: boolean;
  created_at: string;
}

export interface Transcript {
  session_id: string;
  course_id: string;
  module_tag: string | null;
  config: SessionConfig;
  turns: TranscriptTurn[];
}

export interface Locator {
  type: "page_range" | "slide" | "time_span" | "section_path";
  [key: string]: unknown;
}

export interface UnitView {
  id: string;
  resource_id: string;
  resource_title: string;
  resource_kind: string;
  seq: number;
  text: string;
  locator: Locator;
  locator_label: string;
  topics: string[];
  objectives: string[];
}

export interface ResourceSummary {
  id: string;
  title: string;
  kind: string;
  module_tag: string;
  topics: string[];
  objectives: string[];
  units: number;
}

export interface ResourceDetail extends Omit<ResourceSummary, "units"> {
  unit_ids: string[];
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/** The surface the app consumes; BladeClient is the HTTP implementation. */
export interface ApiClient {
  createSession(
    courseId: string, moduleTag: string | null, config: SessionConfig,
  ): Promise<SessionInfo>;
  sendMessage(sessionId: string, text: string): Promise<MessageResponse>;
  getTranscript(sessionId: string): Promise<Transcript>;
  getUnit(unitId: string): Promise<UnitView>;
  listResources(sessionId?: string): Promise<{ resources: ResourceSummary[] }>;
  getResource(resourceId: string, sessionId?: string): Promise<ResourceDetail>;
  postCitationClick(sessionId: string, unitId: string): Promise<void>;
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(response.status, detail);
  }
  if (response.status === 204) return undefined as T;
  return (await response.json()) as T;
}

export class BladeClient implements ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  createSession(
    courseId: string,
    moduleTag: string | null,
    config: SessionConfig,
  ): Promise<SessionInfo> {
    return request(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ course_id: courseId, module_tag: moduleTag, config }),
    });
  }

  sendMessage(sessionId: string, text: string): Promise<MessageResponse> {
    return request(this.url(`/sessions/${encodeURIComponent(sessionId)}/messages`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  getTranscript(sessionId: string): Promise<Transcript> {
    return request(this.url(`/sessions/${encodeURIComponent(sessionId)}`));
  }

  getUnit(unitId: string): Promise<UnitView> {
    return request(this.url(`/units/${encodeURIComponent(unitId)}`));
  }

  listResources(sessionId?: string): Promise<{ resources: ResourceSummary[] }> {
    const query = sessionId ? `?session=${encodeURIComponent(sessionId)}` : "";
    return request(this.url(`/resources${query}`));
  }

  getResource(resourceId: string, sessionId?: string): Promise<ResourceDetail> {
    const query = sessionId ? `?session=${encodeURIComponent(sessionId)}` : "";
    return request(this.url(`/resources/${encodeURIComponent(resourceId)}${query}`));
  }

  postCitationClick(sessionId: string, unitId: string): Promise<void> {
    return request(this.url(`/sessions/${encodeURIComponent(sessionId)}/events`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ event: "citation_click", unit_id: unitId }),
    });
  }

  health(): Promise<{ status: string; units: number; generation: number; course_id: string }> {
    return request(this.url("/health"));
  }
}
