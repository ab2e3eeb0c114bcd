"""Rendering update instructions as SPARQL Update text, and applying them.

Two dialects are supported. The legacy form addresses the graph in the
operation itself (``INSERT DATA INTO <g>``, ``DELETE DATA FROM <g>``); the
standard form wraps the data block in ``GRAPH <g>``. Deletions always
render before insertions so the combined text never re-deletes what it
just inserted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from patchrepo.model import UpdateInstruction
from patchrepo.rdf.graph import Graph
from patchrepo.rdf.ntriples import format_term
from patchrepo.rdf.prefixes import PrefixMap
from patchrepo.rdf.terms import Iri, Term, Triple


class SparqlDialect(enum.Enum):
    LEGACY = "legacy"
    SPARQL11 = "sparql-1.1"


class GraphMismatch(Exception):
    """The instruction targets a different graph than the one provided."""


@dataclass(frozen=True, slots=True)
class ApplyReport:
    """What an application actually changed, for auditing and idempotence checks."""

    added: frozenset[Triple]
    removed: frozenset[Triple]
    absent_deletions: frozenset[Triple]

    @property
    def changed(self) -> bool:
        return bool(self.added or self.removed)


class _TermRenderer:
    """Prefix-compressing term formatter that remembers which labels it used."""

    def __init__(self, prefixes: PrefixMap):
        self.prefixes = prefixes
        self.used: set[str] = set()

    def iri(self, value: str) -> str:
        split = self.prefixes.compress(value)
        if split is None:
            return f"<{value}>"
        label, local = split
        self.used.add(label)
        return f"{label}:{local}"

    def term(self, term: Term) -> str:
        if isinstance(term, Iri):
            return self.iri(term.value)
        return format_term(term)


def _pair_lines(update: UpdateInstruction, pairs, renderer: _TermRenderer, indent: str) -> list[str]:
    subject = renderer.iri(update.target_subject)
    rendered = sorted((renderer.iri(p.value), renderer.term(o)) for p, o in pairs)
    lines = [f"{indent}  {subject}"]
    for i, (pred, obj) in enumerate(rendered):
        tail = " ." if i == len(rendered) - 1 else " ;"
        lines.append(f"{indent}     {pred} {obj}{tail}")
    return lines


def _operations(update: UpdateInstruction, dialect: SparqlDialect, renderer: _TermRenderer) -> list[str]:
    graph = update.target_graph
    ops: list[str] = []
    for verb, pairs in (("DELETE", update.deletions), ("INSERT", update.insertions)):
        if not pairs:
            continue
        if dialect is SparqlDialect.LEGACY:
            preposition = "FROM" if verb == "DELETE" else "INTO"
            body = _pair_lines(update, pairs, renderer, indent="")
            ops.append(
                f"{verb} DATA {preposition} <{graph}> {{\n" + "\n".join(body) + "\n}"
            )
        else:
            body = _pair_lines(update, pairs, renderer, indent="  ")
            ops.append(
                f"{verb} DATA {{\n  GRAPH <{graph}> {{\n" + "\n".join(body) + "\n  }\n}"
            )
    return ops


def _prefix_header(renderer: _TermRenderer) -> str:
    lines = [
        f"PREFIX {label}: <{renderer.prefixes.namespace(label)}>"
        for label in sorted(renderer.used)
    ]
    return "\n".join(lines)


def to_sparql(
    update: UpdateInstruction,
    dialect: SparqlDialect = SparqlDialect.SPARQL11,
    prefixes: PrefixMap | None = None,
    header: bool = False,
) -> str:
    """One instruction as executable SPARQL Update text."""
    return export_updates([update], dialect, prefixes, header)


def export_updates(
    updates: Iterable[UpdateInstruction],
    dialect: SparqlDialect = SparqlDialect.SPARQL11,
    prefixes: PrefixMap | None = None,
    header: bool = False,
) -> str:
    """Many instructions as one update request, operations separated by ';'."""
    renderer = _TermRenderer(prefixes if prefixes is not None else PrefixMap())
    ops: list[str] = []
    for update in updates:
        ops.extend(_operations(update, dialect, renderer))
    text = " ;\n\n".join(ops)
    if header and renderer.used:
        text = _prefix_header(renderer) + "\n\n" + text
    return text


def apply_instruction(graph: Graph, update: UpdateInstruction) -> ApplyReport:
    """Apply with set semantics: deletions first, then insertions.

    When the graph is named, the instruction must target it. Deleting a
    triple that is not present is recorded, not an error, which makes
    re-application of an already-applied instruction a no-op.
    """
    if graph.name is not None and graph.name.value != update.target_graph:
        raise GraphMismatch(
            f"instruction targets <{update.target_graph}>, graph is <{graph.name.value}>"
        )
    removed: set[Triple] = set()
    absent: set[Triple] = set()
    for triple in update.deletion_triples():
        if graph.discard(triple):
            removed.add(triple)
        else:
            absent.add(triple)
    added = {t for t in update.insertion_triples() if graph.add(t)}
    return ApplyReport(
        added=frozenset(added),
        removed=frozenset(removed),
        absent_deletions=frozenset(absent),
    )
