import type { TermJson } from "../api/types";

// Well-known namespaces, longest prefix wins.
const PREFIXES: [string, string][] = [
  ["http://dbpedia.org/resource/", "dbp"],
  ["http://dbpedia.org/ontology/", "dbo"],
  ["http://purl.org/hpi/patchr#", "pro"],
  ["http://webr3.org/owl/guo#", "guo"],
  ["http://purl.org/net/provenance/ns#", "prv"],
  ["http://www.w3.org/1999/02/22-rdf-syntax-ns#", "rdf"],
  ["http://www.w3.org/2001/XMLSchema#", "xsd"],
  ["http://xmlns.com/foaf/0.1/", "foaf"],
  ["http://rdfs.org/ns/void#", "void"],
];

export function shortenIri(iri: string): string {
  for (const [ns, prefix] of PREFIXES) {
    if (iri.startsWith(ns) && iri.length > ns.length) {
      return `${prefix}:${iri.slice(ns.length)}`;
    }
  }
  const hash = iri.lastIndexOf("#");
  if (hash >= 0 && hash < iri.length - 1) return iri.slice(hash + 1);
  const slash = iri.lastIndexOf("/");
  if (slash >= 0 && slash < iri.length - 1) return iri.slice(slash + 1);
  return iri;
}

export function termText(term: TermJson): string {
  switch (term.type) {
    case "iri":
      return shortenIri(term.value);
    case "bnode":
      return `_:${term.label}`;
    case "literal": {
      const quoted = JSON.stringify(term.value);
      if (term.language) return `${quoted}@${term.language}`;
      if (term.datatype) return `${quoted}^^${shortenIri(term.datatype)}`;
      return quoted;
    }
  }
}

export function formatTimestamp(iso: string): string {
  return iso.replace("T", " ").replace("Z", " UTC");
}
