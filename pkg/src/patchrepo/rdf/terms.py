"""RDF terms and triples.

Terms are immutable values: IRIs, blank nodes, and literals. Literal
datatypes follow RDF 1.1: a literal without an explicit datatype is an
xsd:string, and a language-tagged literal always has the rdf:langString
datatype (never written explicitly in serializations).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

XSD = "http://www.w3.org/2001/XMLSchema#"
RDFNS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"

XSD_STRING = XSD + "string"
XSD_DATETIME = XSD + "dateTime"
RDF_LANGSTRING = RDFNS + "langString"
RDF_TYPE = RDFNS + "type"

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")
_LANGTAG_RE = re.compile(r"^[a-z]{1,8}(-[a-z0-9]{1,8})*$")

# Characters an IRI may never contain. Beyond whitespace and angle brackets
# this bans the N-Triples IRIREF exclusions so every valid Iri can be written
# on a single canonical line.
_IRI_BANNED = set('<>"{}|^`\\')


def is_absolute_iri(value: str) -> bool:
    if not value or not _SCHEME_RE.match(value):
        return False
    for c in value:
        if c in _IRI_BANNED or ord(c) <= 0x20 or c.isspace():
            return False
    return True


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI reference."""

    value: str

    def __post_init__(self) -> None:
        if not isinstance(self.value, str) or not is_absolute_iri(self.value):
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A graph-scoped node with no global identity."""

    label: str

    def __post_init__(self) -> None:
        if not isinstance(self.label, str) or not _BLANK_LABEL_RE.match(self.label):
            raise ValueError(f"invalid blank node label: {self.label!r}")

    def __str__(self) -> str:
        return "_:" + self.label


@dataclass(frozen=True, slots=True)
class Literal:
    """A literal value with datatype and optional language tag.

    ``Literal("x")`` is an xsd:string; ``Literal("x", language="en")`` is an
    rdf:langString. Language tags are lower-cased on construction so equal
    literals compare equal regardless of source casing.
    """

    lexical: str
    datatype: str = XSD_STRING
    language: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.lexical, str):
            raise ValueError("literal lexical form must be a string")
        if self.language is not None:
            lang = self.language.lower()
            if not _LANGTAG_RE.match(lang):
                raise ValueError(f"invalid language tag: {self.language!r}")
            object.__setattr__(self, "language", lang)
            if self.datatype == XSD_STRING:
                object.__setattr__(self, "datatype", RDF_LANGSTRING)
            elif self.datatype != RDF_LANGSTRING:
                raise ValueError("a language-tagged literal must use rdf:langString")
        else:
            if self.datatype == RDF_LANGSTRING:
                raise ValueError("rdf:langString requires a language tag")
            if not is_absolute_iri(self.datatype):
                raise ValueError(f"datatype must be an absolute IRI: {self.datatype!r}")


Term = Iri | BlankNode | Literal


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Iri | BlankNode
    predicate: Iri
    object: Term

    def __post_init__(self) -> None:
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise ValueError("triple subject must be an IRI or blank node")
        if not isinstance(self.predicate, Iri):
            raise ValueError("triple predicate must be an IRI")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise ValueError("triple object must be an RDF term")
