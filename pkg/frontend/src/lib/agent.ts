// Curator identity is a client-side chosen IRI kept in local storage;
// the service trusts whatever absolute IRI votes arrive under.

const KEY = "patchrepo.agent";

function mint(): string {
  const tag = Math.random().toString(36).slice(2, 10);
  return `http://example.org/curators/${tag}`;
}

export function currentAgent(): string {
  const stored = window.localStorage.getItem(KEY);
  if (stored) return stored;
  const minted = mint();
  window.localStorage.setItem(KEY, minted);
  return minted;
}

export function setCurrentAgent(iri: string): string {
  const trimmed = iri.trim();
  if (trimmed) window.localStorage.setItem(KEY, trimmed);
  return currentAgent();
}
