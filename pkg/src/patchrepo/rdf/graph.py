"""Indexed in-memory triple store."""

from __future__ import annotations

from typing import Iterable, Iterator

from patchrepo.rdf.terms import BlankNode, Iri, Literal, Term, Triple

_Node = Iri | BlankNode


class Graph:
    """A set of triples with subject, predicate, and object indexes.

    ``name`` identifies the RDF graph this set of triples belongs to; an
    unnamed Graph (the default) stands for plain triple data with no graph
    identity attached.
    """

    __slots__ = ("name", "_triples", "_by_s", "_by_p", "_by_o")

    def __init__(self, triples: Iterable[Triple] = (), name: Iri | None = None):
        if name is not None and not isinstance(name, Iri):
            raise ValueError("graph name must be an Iri")
        self.name = name
        self._triples: set[Triple] = set()
        self._by_s: dict[_Node, set[Triple]] = {}
        self._by_p: dict[Iri, set[Triple]] = {}
        self._by_o: dict[Term, set[Triple]] = {}
        for t in triples:
            self.add(t)

    def add(self, triple: Triple) -> bool:
        """Insert a triple; returns False when it was already present."""
        if not isinstance(triple, Triple):
            raise ValueError("expected a Triple")
        if triple in self._triples:
            return False
        self._triples.add(triple)
        self._by_s.setdefault(triple.subject, set()).add(triple)
        self._by_p.setdefault(triple.predicate, set()).add(triple)
        self._by_o.setdefault(triple.object, set()).add(triple)
        return True

    def discard(self, triple: Triple) -> bool:
        """Remove a triple; returns False when it was absent."""
        if triple not in self._triples:
            return False
        self._triples.discard(triple)
        for index, key in (
            (self._by_s, triple.subject),
            (self._by_p, triple.predicate),
            (self._by_o, triple.object),
        ):
            bucket = index[key]
            bucket.discard(triple)
            if not bucket:
                del index[key]
        return True

    def match(
        self,
        subject: _Node | None = None,
        predicate: Iri | None = None,
        object: Term | None = None,
    ) -> set[Triple]:
        """All triples matching the bound positions (None = wildcard)."""
        candidates: set[Triple] | None = None
        if subject is not None:
            candidates = self._by_s.get(subject, set())
        if predicate is not None:
            bucket = self._by_p.get(predicate, set())
            candidates = bucket if candidates is None else candidates & bucket
        if object is not None:
            bucket = self._by_o.get(object, set())
            candidates = bucket if candidates is None else candidates & bucket
        if candidates is None:
            return set(self._triples)
        return set(candidates)

    def objects(self, subject: _Node, predicate: Iri) -> set[Term]:
        return {t.object for t in self.match(subject, predicate)}

    def subjects(self, predicate: Iri | None = None, object: Term | None = None) -> set[_Node]:
        return {t.subject for t in self.match(None, predicate, object)}

    def copy(self) -> "Graph":
        return Graph(self._triples, name=self.name)

    def __contains__(self, triple: object) -> bool:
        return triple in self._triples

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.name == other.name and self._triples == other._triples

    def __repr__(self) -> str:
        label = self.name.value if self.name else None
        return f"<Graph name={label!r} size={len(self._triples)}>"
