"""Prefix label management for Turtle and SPARQL output."""

from __future__ import annotations

import re
from typing import Iterator, Mapping

from patchrepo.rdf.terms import is_absolute_iri

BUILTIN_PREFIXES: Mapping[str, str] = {
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "pro": "http://purl.org/hpi/patchr#",
    "guo": "http://webr3.org/owl/guo#",
    "prv": "http://purl.org/net/provenance/ns#",
    "void": "http://rdfs.org/ns/void#",
    "foaf": "http://xmlns.com/foaf/0.1/",
    "dbp": "http://dbpedia.org/resource/",
    "dbo": "http://dbpedia.org/ontology/",
}

# Labels the scanner can read back: empty, or a word with internal dots only.
_LABEL_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_\-]*(\.[A-Za-z0-9_\-]+)*)?$")
# Local names safe to emit without escaping: no leading/trailing dot, no '%'.
_SAFE_LOCAL_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_\-]*(\.[A-Za-z0-9_\-]+)*$")


class PrefixMap:
    """Ordered mapping of prefix labels to namespace IRIs.

    The well-known builtin prefixes are always present; later bindings may
    re-point a label (labels stay unique). Iteration preserves binding order,
    which keeps serializer output stable.
    """

    __slots__ = ("_map",)

    def __init__(self, extra: Mapping[str, str] | None = None):
        self._map: dict[str, str] = dict(BUILTIN_PREFIXES)
        if extra:
            for label, ns in extra.items():
                self.bind(label, ns)

    def bind(self, label: str, namespace: str) -> None:
        if not _LABEL_RE.match(label):
            raise ValueError(f"invalid prefix label: {label!r}")
        if not is_absolute_iri(namespace):
            raise ValueError(f"namespace must be an absolute IRI: {namespace!r}")
        self._map[label] = namespace

    def namespace(self, label: str) -> str | None:
        return self._map.get(label)

    def expand(self, label: str, local: str) -> str | None:
        """Resolve a prefixed name, or None when the label is unbound."""
        ns = self._map.get(label)
        if ns is None:
            return None
        return ns + local

    def compress(self, iri: str) -> tuple[str, str] | None:
        """Best (label, local) split for an IRI, or None if no binding fits.

        Picks the longest matching namespace; the local part must be non-empty
        and round-trippable through the Turtle reader without escaping.
        """
        best: tuple[str, str] | None = None
        best_len = -1
        for label, ns in self._map.items():
            if len(ns) > best_len and iri.startswith(ns):
                local = iri[len(ns):]
                if local and _SAFE_LOCAL_RE.match(local):
                    best = (label, local)
                    best_len = len(ns)
        return best

    def copy(self) -> "PrefixMap":
        fresh = PrefixMap()
        fresh._map = dict(self._map)
        return fresh

    def items(self) -> Iterator[tuple[str, str]]:
        return iter(self._map.items())

    def __contains__(self, label: str) -> bool:
        return label in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrefixMap):
            return NotImplemented
        return self._map == other._map

    def __repr__(self) -> str:
        extras = {k: v for k, v in self._map.items() if BUILTIN_PREFIXES.get(k) != v}
        return f"PrefixMap({extras!r})"
