import type { PatchJson } from "../api/types";

export interface SourceLink {
  dbpediaPage: string;
  wikipediaPage: string;
}

const RESOURCE_NS = "http://dbpedia.org/resource/";
const WIKIPEDIA = "https://en.wikipedia.org/wiki/";

/**
 * Back-link to the page a fact originates from, so curators can fix the
 * source directly. Pure string mapping, English Wikipedia only; anything
 * outside the DBpedia resource namespace has no known source page.
 */
export function sourceLink(iri: string): SourceLink | null {
  if (!iri.startsWith(RESOURCE_NS)) return null;
  const name = iri.slice(RESOURCE_NS.length);
  if (!name) return null;
  return { dbpediaPage: iri, wikipediaPage: WIKIPEDIA + name };
}

export function patchSourceLinks(patch: PatchJson): SourceLink[] {
  const link = sourceLink(patch.update.targetSubject);
  return link ? [link] : [];
}
