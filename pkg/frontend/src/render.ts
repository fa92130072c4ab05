/**
 * DOM builders. Every piece of *content* text comes verbatim from a server
 * payload field; the only client-authored strings are the fixed chrome
 * labels below (exported so tests can verify nothing else is injected).
 * Builders use textContent exclusively, never innerHTML with payload data.
 */

import type { Citation, ResourceSummary, TranscriptTurn, UnitView } from "./api";
import { splitOnExcerpt } from "./highlight";

export const CHROME = {
  send: "Send",
  inputPlaceholder: "Ask about the course…",
  chatDisabled: "Chat is not available under this resource configuration.",
  resourcesHeading: "Course resources",
  excerptHeading: "Cited material",
  closePanel: "Close",
  retry: "Retry",
  unreachable: "Cannot reach the assistant service.",
  configBadgePrefix: "config ",
} as const;

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderConfigBadge(doc: Document, config: string): HTMLElement {
  const badge = el(doc, "span", "config-badge", CHROME.configBadgePrefix + config);
  badge.dataset.config = config;
  return badge;
}

/** One transcript turn; citation controls carry data-unit-id for the click handler. */
export function renderTurn(doc: Document, turn: TranscriptTurn): HTMLElement {
  const bubble = el(doc, "article", `turn turn-${turn.role}`);
  bubble.dataset.role = turn.role;
  if (turn.no_results) bubble.dataset.noResults = "true";
  const body = el(doc, "p", "turn-text", turn.text);
  bubble.appendChild(body);
  if (turn.citations.length > 0) {
    const list = el(doc, "div", "citations");
    for (const citation of turn.citations) {
      list.appendChild(renderCitationControl(doc, citation));
    }
    bubble.appendChild(list);
  }
  return bubble;
}

export function renderCitationControl(doc: Document, citation: Citation): HTMLButtonElement {
  const button = el(doc, "button", "citation", citation.display_label);
  button.type = "button";
  button.dataset.unitId = citation.unit_id;
  button.dataset.excerpt = citation.excerpt;
  return button;
}

/**
 * The excerpt panel: full unit text with the cited span highlighted, the
 * locator label in the header (a transcript time span gets its own slot).
 */
export function renderExcerptPanel(doc: Document, unit: UnitView, excerpt: string): HTMLElement {
  const panel = el(doc, "aside", "excerpt-panel");
  panel.dataset.unitId = unit.id;

  const header = el(doc, "header", "excerpt-header");
  header.appendChild(el(doc, "h2", "excerpt-title", unit.resource_title));
  if (unit.locator.type === "time_span") {
    const span = el(doc, "div", "excerpt-timespan", unit.locator_label);
    span.dataset.timespan = unit.locator_label;
    header.appendChild(span);
  } else if (unit.locator_label) {
    header.appendChild(el(doc, "div", "excerpt-locator", unit.locator_label));
  }
  panel.appendChild(header);

  const body = el(doc, "div", "excerpt-body");
  const segments = splitOnExcerpt(unit.text, excerpt);
  if (segments === null) {
    body.appendChild(doc.createTextNode(unit.text));
  } else {
    if (segments.before) body.appendChild(doc.createTextNode(segments.before));
    const mark = el(doc, "mark", "excerpt-match", segments.match);
    body.appendChild(mark);
    if (segments.after) body.appendChild(doc.createTextNode(segments.after));
  }
  panel.appendChild(body);
  return panel;
}

export function renderResourceList(doc: Document, resources: ResourceSummary[]): HTMLElement {
  const container = el(doc, "nav", "resources");
  container.appendChild(el(doc, "h2", "resources-heading", CHROME.resourcesHeading));
  const list = el(doc, "ul");
  for (const resource of resources) {
    const item = el(doc, "li", "resource");
    const button = el(doc, "button", "resource-title", resource.title);
    button.type = "button";
    button.dataset.resourceId = resource.id;
    item.appendChild(button);
    item.appendChild(el(doc, "span", "resource-kind", resource.kind));
    list.appendChild(item);
  }
  container.appendChild(list);
  return container;
}

export function renderErrorBubble(doc: Document, message: string): HTMLElement {
  return el(doc, "article", "turn turn-error", message);
}

export function renderRetryBanner(doc: Document, onRetry: () => void): HTMLElement {
  const banner = el(doc, "div", "retry-banner", CHROME.unreachable + " ");
  const button = el(doc, "button", "retry", CHROME.retry);
  button.type = "button";
  button.addEventListener("click", onRetry);
  banner.appendChild(button);
  return banner;
}
