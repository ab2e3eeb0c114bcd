"""RDF core: terms, graphs, Turtle and N-Triples handling."""

from patchrepo.rdf.canon import canonical_lines, isomorphic
from patchrepo.rdf.errors import CanonicalizationError, RdfError, TurtleParseError
from patchrepo.rdf.graph import Graph
from patchrepo.rdf.ntriples import canonical_ntriples, format_term, format_triple
from patchrepo.rdf.prefixes import BUILTIN_PREFIXES, PrefixMap
from patchrepo.rdf.terms import (
    RDF_LANGSTRING,
    RDF_TYPE,
    XSD_DATETIME,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Term,
    Triple,
    is_absolute_iri,
)
from patchrepo.rdf.turtle import parse_turtle, serialize_turtle

__all__ = [
    "BUILTIN_PREFIXES",
    "BlankNode",
    "CanonicalizationError",
    "Graph",
    "Iri",
    "Literal",
    "PrefixMap",
    "RDF_LANGSTRING",
    "RDF_TYPE",
    "RdfError",
    "Term",
    "Triple",
    "TurtleParseError",
    "XSD_DATETIME",
    "XSD_STRING",
    "canonical_lines",
    "canonical_ntriples",
    "format_term",
    "format_triple",
    "is_absolute_iri",
    "isomorphic",
    "parse_turtle",
    "serialize_turtle",
]
