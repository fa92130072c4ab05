/**
 * Excerpt highlighting: locate the cited span inside the full unit text and
 * return the three segments to render. The excerpt is a verbatim substring
 * by server contract, so plain indexOf is exact; null means the contract
 * was violated and the caller should render the text unhighlighted.
 */

export interface HighlightSegments {
  before: string;
  match: string;
  after: string;
}

export function splitOnExcerpt(text: string, excerpt: string): HighlightSegments | null {
  if (!excerpt) return null;
  const start = text.indexOf(excerpt);
  if (start < 0) return null;
  return {
    before: text.slice(0, start),
    match: text.slice(start, start + excerpt.length),
    after: text.slice(start + excerpt.length),
  };
}
