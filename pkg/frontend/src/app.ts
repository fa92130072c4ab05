/**
 * Application wiring: session lifecycle, the send/render loop, citation
 * clicks, and the resource browser, all over the service API.
 *
 * Resource-configuration rules are enforced visually here and by the server:
 *   A: chat + citation panel, no resource browser
 *   B: everything
 *   C: resource browser only, chat hidden
 *
 * One message is in flight per session at a time, mirroring the server's
 * per-session serialization; the student's own turn renders optimistically.
 */

import { ApiClient, ApiError, Citation, SessionConfig, TranscriptTurn } from "./api";
import {
  CHROME,
  renderConfigBadge,
  renderErrorBubble,
  renderExcerptPanel,
  renderResourceList,
  renderRetryBanner,
  renderTurn,
} from "./render";

export interface AppOptions {
  courseId: string;
  moduleTag: string | null;
  config: SessionConfig;
}

export class BladeApp {
  readonly client: ApiClient;
  readonly root: HTMLElement;
  private readonly doc: Document;

  sessionId: string | null = null;
  config: SessionConfig = "B";
  sending = false;

  private transcriptEl!: HTMLElement;
  private inputEl!: HTMLTextAreaElement;
  private panelHost!: HTMLElement;
  private sidebarEl!: HTMLElement;

  constructor(root: HTMLElement, client: ApiClient) {
    this.root = root;
    this.client = client;
    this.doc = root.ownerDocument;
  }

  /** Create the session and build the layout for its configuration. */
  async start(options: AppOptions): Promise<void> {
    this.root.textContent = "";
    let session;
    try {
      session = await this.client.createSession(
        options.courseId, options.moduleTag, options.config,
      );
    } catch {
      this.root.appendChild(
        renderRetryBanner(this.doc, () => void this.start(options)),
      );
      return;
    }
    this.sessionId = session.session_id;
    this.config = session.config;
    this.buildLayout();
  }

  private buildLayout(): void {
    const doc = this.doc;
    this.root.textContent = "";

    const header = doc.createElement("header");
    header.className = "app-header";
    header.appendChild(renderConfigBadge(doc, this.config));
    this.root.appendChild(header);

    const main = doc.createElement("main");
    main.className = "app-main";
    this.root.appendChild(main);

    const chat = doc.createElement("section");
    chat.className = "chat";
    this.transcriptEl = doc.createElement("div");
    this.transcriptEl.className = "transcript";
    chat.appendChild(this.transcriptEl);

    if (this.config === "C") {
      // materials-only sessions get no chat input at all
      chat.appendChild(
        Object.assign(doc.createElement("p"), {
          className: "chat-disabled",
          textContent: CHROME.chatDisabled,
        }),
      );
      chat.classList.add("chat-hidden");
    } else {
      const form = doc.createElement("form");
      form.className = "composer";
      this.inputEl = doc.createElement("textarea");
      this.inputEl.placeholder = CHROME.inputPlaceholder;
      this.inputEl.rows = 2;
      const send = doc.createElement("button");
      send.type = "submit";
      send.textContent = CHROME.send;
      form.appendChild(this.inputEl);
      form.appendChild(send);
      form.addEventListener("submit", (event) => {
        event.preventDefault();
        void this.send(this.inputEl.value);
      });
      chat.appendChild(form);
    }
    main.appendChild(chat);

    this.sidebarEl = doc.createElement("section");
    this.sidebarEl.className = "sidebar";
    main.appendChild(this.sidebarEl);
    if (this.config !== "A") {
      void this.loadResources();
    } else {
      this.sidebarEl.classList.add("sidebar-hidden");
    }

    this.panelHost = doc.createElement("section");
    this.panelHost.className = "panel-host";
    main.appendChild(this.panelHost);
  }

  private async loadResources(): Promise<void> {
    if (!this.sessionId) return;
    try {
      const { resources } = await this.client.listResources(this.sessionId);
      const list = renderResourceList(this.doc, resources);
      list.addEventListener("click", (event) => {
        const target = event.target as HTMLElement;
        const resourceId = target.dataset?.resourceId;
        if (resourceId) void this.openResource(resourceId);
      });
      this.sidebarEl.textContent = "";
      this.sidebarEl.appendChild(list);
    } catch (error) {
      if (error instanceof ApiError && error.status === 403) {
        this.sidebarEl.classList.add("sidebar-hidden");
        return;
      }
      throw error;
    }
  }

  private async openResource(resourceId: string): Promise<void> {
    if (!this.sessionId) return;
    const detail = await this.client.getResource(resourceId, this.sessionId);
    const first = detail.unit_ids[0];
    if (first) {
      const unit = await this.client.getUnit(first);
      this.showPanel(renderExcerptPanel(this.doc, unit, ""));
    }
  }

  /** Send one message; renders the student turn optimistically. */
  async send(text: string): Promise<void> {
    const trimmed = text.trim();
    if (!trimmed || this.sending || !this.sessionId || this.config === "C") return;
    this.sending = true;
    if (this.inputEl) this.inputEl.value = "";
    this.appendTurn({
      role: "student", text: trimmed, citations: [], no_results: false, created_at: "",
    });
    try {
      const reply = await this.client.sendMessage(this.sessionId, trimmed);
      this.appendTurn({
        role: "assistant",
        text: reply.text,
        citations: reply.citations,
        no_results: reply.no_results,
        created_at: "",
      });
    } catch (error) {
      const message = error instanceof ApiError ? error.message : CHROME.unreachable;
      this.transcriptEl.appendChild(renderErrorBubble(this.doc, message));
    } finally {
      this.sending = false;
    }
  }

  private appendTurn(turn: TranscriptTurn): void {
    const node = renderTurn(this.doc, turn);
    for (const button of Array.from(node.querySelectorAll<HTMLButtonElement>(".citation"))) {
      button.addEventListener("click", () => {
        const citation: Citation = {
          unit_id: button.dataset.unitId ?? "",
          display_label: button.textContent ?? "",
          excerpt: button.dataset.excerpt ?? "",
        };
        void this.openCitation(citation);
      });
    }
    this.transcriptEl.appendChild(node);
  }

  /**
   * Citation click: log exactly one citation_click event, fetch the full
   * unit, and open the excerpt panel with the cited span highlighted.
   */
  async openCitation(citation: Citation): Promise<void> {
    if (!this.sessionId) return;
    await this.client.postCitationClick(this.sessionId, citation.unit_id);
    const unit = await this.client.getUnit(citation.unit_id);
    this.showPanel(renderExcerptPanel(this.doc, unit, citation.excerpt));
  }

  private showPanel(panel: HTMLElement): void {
    const close = this.doc.createElement("button");
    close.type = "button";
    close.className = "panel-close";
    close.textContent = CHROME.closePanel;
    close.addEventListener("click", () => {
      this.panelHost.textContent = "";
    });
    panel.insertBefore(close, panel.firstChild);
    this.panelHost.textContent = "";
    this.panelHost.appendChild(panel);
  }
}
