// DOM rendering for the timeline card list.

import type { TimelineEntry } from "./api.js";

const TRUNCATE_AT = 280;
const YEAR_PATTERN = /\b(1\d{3}|2[01]\d{2})\b/g;

/** Escape text, then wrap year mentions in <mark>. */
export function highlightYears(text: string): string {
  const escaped = text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
  return escaped.replace(YEAR_PATTERN, "<mark>$1</mark>");
}

function card(entry: TimelineEntry): HTMLElement {
  const item = document.createElement("article");
  item.className = "entry-card";

  const badge = document.createElement("span");
  badge.className = "year-badge";
  badge.textContent = String(entry.year);
  item.appendChild(badge);

  const body = document.createElement("div");
  body.className = "entry-body";

  const text = document.createElement("p");
  text.className = "excerpt-text";
  const full = entry.text;
  if (full.length > TRUNCATE_AT) {
    text.innerHTML = highlightYears(full.slice(0, TRUNCATE_AT).trimEnd() + "…");
    const expand = document.createElement("button");
    expand.className = "expand-control";
    expand.type = "button";
    expand.textContent = "Show more";
    expand.addEventListener("click", () => {
      text.innerHTML = highlightYears(full);
      expand.remove();
    });
    body.appendChild(text);
    body.appendChild(expand);
  } else {
    text.innerHTML = highlightYears(full);
    body.appendChild(text);
  }

  const meta = document.createElement("div");
  meta.className = "entry-meta";
  const distance = document.createElement("span");
  distance.className = "distance-tag";
  distance.textContent = `distance ${entry.distance}`;
  meta.appendChild(distance);
  const source = document.createElement("a");
  source.className = "source-link";
  source.textContent = entry.source_id;
  source.href = entry.source_id.startsWith("http")
    ? entry.source_id
    : `https://en.wikipedia.org/wiki/${encodeURIComponent(entry.source_id)}`;
  source.target = "_blank";
  source.rel = "noopener";
  meta.appendChild(source);
  body.appendChild(meta);

  item.appendChild(body);
  return item;
}

/** Render entries as cards, strictly in the order received; an empty list
 * renders the explicit empty state. */
export function renderTimeline(container: HTMLElement, entries: TimelineEntry[]): void {
  container.replaceChildren();
  if (entries.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No evolutions found.";
    container.appendChild(empty);
    return;
  }
  for (const entry of entries) {
    container.appendChild(card(entry));
  }
}

export function renderError(container: HTMLElement, message: string): void {
  container.replaceChildren();
  const error = document.createElement("p");
  error.className = "error-state";
  error.textContent = message;
  container.appendChild(error);
}

export function renderLoading(container: HTMLElement): void {
  container.replaceChildren();
  const loading = document.createElement("p");
  loading.className = "loading-state";
  loading.textContent = "Classifying excerpts…";
  container.appendChild(loading);
}
