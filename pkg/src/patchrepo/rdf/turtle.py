"""Turtle reader and deterministic writer.

Supported syntax: @prefix and @base directives (one @base, no mid-file
re-declaration), prefixed names, <IRI> references resolved against the base,
the 'a' keyword, ';' and ',' lists, anonymous '[ ... ]' nodes, labelled
'_:' blank nodes, string literals with '@lang' or '^^datatype', and '#'
comments. Collections, numeric/boolean shorthand, and triple-quoted strings
are out of scope.

Blank node labels are normalized on parse to _:b0, _:b1, ... in document
order. The writer recomputes labels from graph structure, which makes its
output a fixpoint: serializing, parsing, and serializing again reproduces
the same text.
"""

from __future__ import annotations

import re
from typing import Iterable
from urllib.parse import urljoin

from patchrepo.rdf import _tokens as tk
from patchrepo.rdf.canon import canonical_label_map
from patchrepo.rdf.errors import TurtleParseError
from patchrepo.rdf.graph import Graph
from patchrepo.rdf.ntriples import escape_string, format_term
from patchrepo.rdf.prefixes import PrefixMap
from patchrepo.rdf.scanning import tokenize
from patchrepo.rdf.terms import (
    RDF_TYPE,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
    is_absolute_iri,
)

_LANGTAG_RE = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")

_RDF_TYPE_IRI = Iri(RDF_TYPE)


class _Parser:
    def __init__(self, tokens: list[tuple], base: str | None):
        self.toks = tokens
        self.pos = 0
        self.base = base
        self.base_declared = False
        self.prefixes = PrefixMap()
        self.graph = Graph()
        self.blank_labels: dict[str, str] = {}
        self.blank_count = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> tuple:
        return self.toks[self.pos]

    def take(self) -> tuple:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str, tok: tuple) -> TurtleParseError:
        value = tok[1]
        if isinstance(value, tuple):
            value = f"{value[0]}:{value[1]}"
        snippet = str(value)[:40] if value != "" else tk.NAMES[tok[0]]
        return TurtleParseError(message, tok[2], tok[3], snippet)

    def expect(self, kind: int, what: str) -> tuple:
        t = self.take()
        if t[0] != kind:
            raise self.fail(f"expected {what}", t)
        return t

    # -- blank node bookkeeping ---------------------------------------------

    def fresh_blank(self) -> BlankNode:
        node = BlankNode(f"b{self.blank_count}")
        self.blank_count += 1
        return node

    def labelled_blank(self, label: str) -> BlankNode:
        mapped = self.blank_labels.get(label)
        if mapped is None:
            node = self.fresh_blank()
            self.blank_labels[label] = node.label
            return node
        return BlankNode(mapped)

    # -- IRI resolution -----------------------------------------------------

    def resolve_iri(self, raw: str, tok: tuple) -> Iri:
        value = raw
        if not is_absolute_iri(value):
            if self.base is not None:
                value = urljoin(self.base, value)
            if not is_absolute_iri(value):
                raise self.fail("IRI is not absolute", tok)
        try:
            return Iri(value)
        except ValueError:
            raise self.fail("invalid IRI", tok) from None

    def expand_pname(self, tok: tuple) -> Iri:
        prefix, local = tok[1]
        expanded = self.prefixes.expand(prefix, local)
        if expanded is None:
            raise self.fail(f"undefined prefix '{prefix}:'", tok)
        try:
            return Iri(expanded)
        except ValueError:
            raise self.fail("prefixed name expands to an invalid IRI", tok) from None

    # -- grammar ------------------------------------------------------------

    def parse(self) -> tuple[Graph, PrefixMap]:
        while True:
            t = self.peek()
            if t[0] == tk.EOF:
                break
            if t[0] == tk.ATNAME and t[1] == "prefix":
                self.prefix_directive()
            elif t[0] == tk.ATNAME and t[1] == "base":
                self.base_directive()
            else:
                self.statement()
        return self.graph, self.prefixes

    def prefix_directive(self) -> None:
        self.take()
        name_tok = self.expect(tk.PNAME, "a prefix label ending in ':'")
        prefix, local = name_tok[1]
        if local != "":
            raise self.fail("prefix label must end with ':'", name_tok)
        iri_tok = self.expect(tk.IRIREF, "a namespace IRI")
        namespace = self.resolve_iri(iri_tok[1], iri_tok)
        try:
            self.prefixes.bind(prefix, namespace.value)
        except ValueError:
            raise self.fail("invalid prefix binding", name_tok) from None
        self.expect(tk.DOT, "'.'")

    def base_directive(self) -> None:
        at = self.take()
        if self.base_declared:
            raise self.fail("@base may only be declared once", at)
        iri_tok = self.expect(tk.IRIREF, "a base IRI")
        base = self.resolve_iri(iri_tok[1], iri_tok)
        self.base = base.value
        self.base_declared = True
        self.expect(tk.DOT, "'.'")

    def statement(self) -> None:
        t = self.peek()
        if t[0] == tk.LBRACK:
            subject = self.anon_node()
            if self.peek()[0] != tk.DOT:
                self.predicate_object_list(subject)
        else:
            subject = self.subject_term()
            self.predicate_object_list(subject)
        self.expect(tk.DOT, "'.'")

    def subject_term(self) -> Iri | BlankNode:
        t = self.take()
        if t[0] == tk.IRIREF:
            return self.resolve_iri(t[1], t)
        if t[0] == tk.PNAME:
            return self.expand_pname(t)
        if t[0] == tk.BLANK:
            return self.labelled_blank(t[1])
        raise self.fail("expected a subject", t)

    def predicate_object_list(self, subject: Iri | BlankNode) -> None:
        while True:
            predicate = self.verb()
            while True:
                obj = self.object_term()
                self.graph.add(Triple(subject, predicate, obj))
                if self.peek()[0] == tk.COMMA:
                    self.take()
                    continue
                break
            if self.peek()[0] == tk.SEMI:
                while self.peek()[0] == tk.SEMI:
                    self.take()
                nxt = self.peek()[0]
                if nxt in (tk.KW_A, tk.IRIREF, tk.PNAME):
                    continue
                break
            break

    def verb(self) -> Iri:
        t = self.take()
        if t[0] == tk.KW_A:
            return _RDF_TYPE_IRI
        if t[0] == tk.IRIREF:
            return self.resolve_iri(t[1], t)
        if t[0] == tk.PNAME:
            return self.expand_pname(t)
        raise self.fail("expected a predicate", t)

    def object_term(self) -> Term:
        t = self.take()
        if t[0] == tk.IRIREF:
            return self.resolve_iri(t[1], t)
        if t[0] == tk.PNAME:
            return self.expand_pname(t)
        if t[0] == tk.BLANK:
            return self.labelled_blank(t[1])
        if t[0] == tk.LBRACK:
            self.pos -= 1
            return self.anon_node()
        if t[0] == tk.STRING:
            return self.literal_tail(t)
        raise self.fail("expected an object", t)

    def literal_tail(self, string_tok: tuple) -> Literal:
        nxt = self.peek()
        if nxt[0] == tk.ATNAME:
            self.take()
            if not _LANGTAG_RE.match(nxt[1]):
                raise self.fail("invalid language tag", nxt)
            return Literal(string_tok[1], language=nxt[1])
        if nxt[0] == tk.CARETS:
            self.take()
            dt_tok = self.take()
            if dt_tok[0] == tk.IRIREF:
                datatype = self.resolve_iri(dt_tok[1], dt_tok)
            elif dt_tok[0] == tk.PNAME:
                datatype = self.expand_pname(dt_tok)
            else:
                raise self.fail("expected a datatype IRI", dt_tok)
            try:
                return Literal(string_tok[1], datatype=datatype.value)
            except ValueError:
                raise self.fail("invalid literal datatype", dt_tok) from None
        return Literal(string_tok[1])

    def anon_node(self) -> BlankNode:
        open_tok = self.expect(tk.LBRACK, "'['")
        node = self.fresh_blank()
        if self.peek()[0] != tk.RBRACK:
            if self.peek()[0] == tk.EOF:
                raise self.fail("unterminated '['", open_tok)
            self.predicate_object_list(node)
        self.expect(tk.RBRACK, "']'")
        return node


def parse_turtle(document: str, base: str | None = None) -> tuple[Graph, PrefixMap]:
    """Parse a Turtle document into a Graph plus the prefix map in effect.

    The prefix map starts from the builtins and accumulates @prefix
    declarations. Errors carry the 1-based line/column of the fault.
    """
    if not isinstance(document, str):
        raise TypeError("document must be a str")
    if base is not None and not is_absolute_iri(base):
        raise ValueError(f"base must be an absolute IRI: {base!r}")
    return _Parser(tokenize(document), base).parse()


# -- serialization ----------------------------------------------------------


def serialize_turtle(graph: Graph | Iterable[Triple], prefixes: PrefixMap | None = None) -> str:
    """Write a graph as deterministic Turtle.

    Triples are grouped by subject; subjects, predicates, and objects are
    ordered by their canonical N-Triples form, blank labels are recomputed
    from structure, and only prefixes actually used appear in the header.
    The empty graph serializes to the empty string.
    """
    prefixes = prefixes if prefixes is not None else PrefixMap()
    triples = list(graph)
    if not triples:
        return ""
    mapping = canonical_label_map(triples)

    def remap(term: Term) -> Term:
        if isinstance(term, BlankNode):
            return BlankNode(mapping[term.label])
        return term

    used: set[str] = set()

    def iri_text(iri: Iri) -> str:
        split = prefixes.compress(iri.value)
        if split is None:
            return f"<{iri.value}>"
        used.add(split[0])
        return f"{split[0]}:{split[1]}"

    def term_text(term: Term) -> str:
        if isinstance(term, Iri):
            return iri_text(term)
        if isinstance(term, BlankNode):
            return f"_:{term.label}"
        assert isinstance(term, Literal)
        quoted = f'"{escape_string(term.lexical)}"'
        if term.language is not None:
            return f"{quoted}@{term.language}"
        if term.datatype == XSD_STRING:
            return quoted
        return f"{quoted}^^{iri_text(Iri(term.datatype))}"

    # subject nt-form -> predicate nt-form -> sorted object nt-forms
    grouped: dict[str, dict[str, set[str]]] = {}
    subject_terms: dict[str, Term] = {}
    pred_terms: dict[str, Iri] = {}
    object_terms: dict[str, Term] = {}
    for t in triples:
        s, p, o = remap(t.subject), t.predicate, remap(t.object)
        s_key, p_key, o_key = format_term(s), format_term(p), format_term(o)
        grouped.setdefault(s_key, {}).setdefault(p_key, set()).add(o_key)
        subject_terms[s_key] = s
        pred_terms[p_key] = p
        object_terms[o_key] = o

    lines: list[str] = []
    for s_key in sorted(grouped):
        subject_text = term_text(subject_terms[s_key])
        pred_keys = sorted(grouped[s_key])
        for idx, p_key in enumerate(pred_keys):
            pred = pred_terms[p_key]
            pred_text = "a" if pred.value == RDF_TYPE else term_text(pred)
            objs = ", ".join(
                term_text(object_terms[o_key]) for o_key in sorted(grouped[s_key][p_key])
            )
            last = idx == len(pred_keys) - 1
            terminator = " ." if last else " ;"
            if idx == 0:
                lines.append(f"{subject_text} {pred_text} {objs}{terminator}")
            else:
                lines.append(f"  {pred_text} {objs}{terminator}")

    header = [f"@prefix {label}: <{prefixes.namespace(label)}> ." for label in sorted(used)]
    if header:
        header.append("")
    return "\n".join(header + lines) + "\n"
