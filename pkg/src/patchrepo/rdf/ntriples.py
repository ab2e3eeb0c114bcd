"""N-Triples formatting and the canonical ground form.

The canonical form of a ground triple set is its sorted, deduplicated list
of N-Triples lines. It is the basis for instruction equivalence keys, so it
must stay byte-stable across releases.
"""

from __future__ import annotations

from typing import Iterable

from patchrepo.rdf.errors import CanonicalizationError
from patchrepo.rdf.terms import (
    RDF_LANGSTRING,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
)

_SHORT_ESCAPES = {
    '"': '\\"',
    "\\": "\\\\",
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def escape_string(value: str) -> str:
    out: list[str] = []
    for c in value:
        esc = _SHORT_ESCAPES.get(c)
        if esc is not None:
            out.append(esc)
        elif ord(c) < 0x20:
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


def format_term(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        quoted = f'"{escape_string(term.lexical)}"'
        if term.language is not None:
            return f"{quoted}@{term.language}"
        if term.datatype == XSD_STRING:
            return quoted
        if term.datatype == RDF_LANGSTRING:
            # Unreachable for well-formed literals; guard against decay.
            raise CanonicalizationError("rdf:langString literal without language tag")
        return f"{quoted}^^<{term.datatype}>"
    raise CanonicalizationError(f"not an RDF term: {term!r}")


def format_triple(triple: Triple) -> str:
    return (
        f"{format_term(triple.subject)} {format_term(triple.predicate)} "
        f"{format_term(triple.object)} ."
    )


def canonical_ntriples(triples: Iterable[Triple]) -> list[str]:
    """Sorted unique N-Triples lines for a ground triple set.

    Raises CanonicalizationError when any triple contains a blank node:
    blank nodes have no stable text and would make the form ambiguous.
    """
    lines: set[str] = set()
    for t in triples:
        if isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode):
            raise CanonicalizationError("blank node in ground triple set")
        lines.add(format_triple(t))
    return sorted(lines)
