"""Structural canonicalization of blank-node labels.

Blank labels carry no meaning, so two graphs are the same when they differ
only in labelling. Labels are recomputed from graph structure alone by
iterated colour refinement; when refinement cannot split a colour class the
algorithm branches on each member and keeps the least resulting form. That
makes the canonical line list a complete isomorphism test for the small
graphs this package handles (patch documents, instruction payloads).
"""

from __future__ import annotations

import hashlib
from typing import Iterable

from patchrepo.rdf.ntriples import format_term, format_triple
from patchrepo.rdf.terms import BlankNode, Iri, Term, Triple


def _digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()


def _term_key(term: Term, colors: dict[str, str]) -> str:
    if isinstance(term, BlankNode):
        return "?" + colors[term.label]
    return format_term(term)


def _refine(triples: list[Triple], colors: dict[str, str]) -> dict[str, str]:
    """Run colour refinement until the partition stops splitting."""
    while True:
        sigs: dict[str, list[str]] = {b: [] for b in colors}
        for t in triples:
            s, p, o = t.subject, t.predicate, t.object
            if isinstance(s, BlankNode):
                sigs[s.label].append("s" + p.value + "\x01" + _term_key(o, colors))
            if isinstance(o, BlankNode):
                sigs[o.label].append("o" + p.value + "\x01" + _term_key(s, colors))
        new = {b: _digest(colors[b], *sorted(entries)) for b, entries in sigs.items()}
        old_part = sorted(sorted(group) for group in _classes(colors).values())
        new_part = sorted(sorted(group) for group in _classes(new).values())
        if new_part == old_part:
            return new
        colors = new


def _classes(colors: dict[str, str]) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for label, color in colors.items():
        out.setdefault(color, []).append(label)
    return out


def _canonical(
    triples: list[Triple], colors: dict[str, str]
) -> tuple[list[str], dict[str, str]]:
    colors = _refine(triples, colors)
    classes = _classes(colors)
    tied = [(len(members), color) for color, members in classes.items() if len(members) > 1]
    if not tied:
        ordered = sorted(colors, key=lambda b: colors[b])
        mapping = {label: f"b{idx}" for idx, label in enumerate(ordered)}
        lines = sorted(format_triple(_relabel(t, mapping)) for t in triples)
        return lines, mapping
    # Individualize each member of the smallest tied class and keep the
    # least canonical form; exhaustive, so symmetric graphs stay canonical.
    _, color = min(tied)
    best: tuple[list[str], dict[str, str]] | None = None
    for label in sorted(classes[color]):
        forked = dict(colors)
        forked[label] = _digest(colors[label], "!")
        cand = _canonical(triples, forked)
        if best is None or cand[0] < best[0]:
            best = cand
    assert best is not None
    return best


def _relabel(t: Triple, mapping: dict[str, str]) -> Triple:
    s: Iri | BlankNode = (
        BlankNode(mapping[t.subject.label]) if isinstance(t.subject, BlankNode) else t.subject
    )
    o: Term = BlankNode(mapping[t.object.label]) if isinstance(t.object, BlankNode) else t.object
    return Triple(s, t.predicate, o)


def canonical_label_map(triples: Iterable[Triple]) -> dict[str, str]:
    """Map existing blank labels to structure-derived labels b0, b1, ..."""
    tl = list(triples)
    blanks = {
        term.label
        for t in tl
        for term in (t.subject, t.object)
        if isinstance(term, BlankNode)
    }
    if not blanks:
        return {}
    _, mapping = _canonical(tl, {b: "" for b in blanks})
    return mapping


def canonical_lines(triples: Iterable[Triple]) -> list[str]:
    """Sorted N-Triples lines after canonical blank relabelling.

    Unlike canonical_ntriples this accepts blank nodes; equal outputs mean
    isomorphic inputs.
    """
    tl = list(triples)
    mapping = canonical_label_map(tl)
    return sorted({format_triple(_relabel(t, mapping)) for t in tl})


def isomorphic(a: Iterable[Triple], b: Iterable[Triple]) -> bool:
    """True when the two triple sets are equal up to blank-node relabelling."""
    ta, tb = list(a), list(b)
    if len(set(ta)) != len(set(tb)):
        return False
    ground_a = sorted(format_triple(t) for t in ta if _is_ground(t))
    ground_b = sorted(format_triple(t) for t in tb if _is_ground(t))
    if ground_a != ground_b:
        return False
    return canonical_lines(ta) == canonical_lines(tb)


def _is_ground(t: Triple) -> bool:
    return not isinstance(t.subject, BlankNode) and not isinstance(t.object, BlankNode)
