from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from patchrepo.rdf.terms import (
    RDF_LANGSTRING,
    XSD_DATETIME,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Triple,
    is_absolute_iri,
)


class TestIri:
    def test_accepts_absolute(self):
        assert Iri("http://dbpedia.org/resource/Oregon").value.endswith("Oregon")
        assert Iri("urn:uuid:1234").value == "urn:uuid:1234"

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "Oregon",
            "/relative/path",
            "http://x.org/a b",
            "http://x.org/<a>",
            "http://x.org/\n",
            "1http://x.org/",
        ],
    )
    def test_rejects_non_absolute(self, bad):
        with pytest.raises(ValueError):
            Iri(bad)
        assert not is_absolute_iri(bad)

    def test_equality_is_value_based(self):
        assert Iri("http://x.org/a") == Iri("http://x.org/a")
        assert hash(Iri("http://x.org/a")) == hash(Iri("http://x.org/a"))


class TestBlankNode:
    def test_label_charset(self):
        assert BlankNode("b0").label == "b0"
        with pytest.raises(ValueError):
            BlankNode("")
        with pytest.raises(ValueError):
            BlankNode("a-b")


class TestLiteral:
    def test_plain_defaults_to_string(self):
        lit = Literal("active")
        assert lit.datatype == XSD_STRING
        assert lit.language is None

    def test_language_implies_langstring(self):
        lit = Literal("hello", language="EN")
        assert lit.datatype == RDF_LANGSTRING
        assert lit.language == "en"
        assert lit == Literal("hello", language="en")

    def test_langstring_without_tag_rejected(self):
        with pytest.raises(ValueError):
            Literal("x", datatype=RDF_LANGSTRING)

    def test_language_with_other_datatype_rejected(self):
        with pytest.raises(ValueError):
            Literal("x", datatype=XSD_DATETIME, language="en")

    def test_bad_language_tag(self):
        with pytest.raises(ValueError):
            Literal("x", language="not a tag")

    def test_typed(self):
        lit = Literal("2012-05-16T09:00:00Z", datatype=XSD_DATETIME)
        assert lit.datatype == XSD_DATETIME


class TestTriple:
    def test_literal_subject_rejected(self):
        with pytest.raises(ValueError):
            Triple(Literal("x"), Iri("http://x.org/p"), Literal("y"))

    def test_blank_predicate_rejected(self):
        with pytest.raises(ValueError):
            Triple(Iri("http://x.org/s"), BlankNode("b0"), Literal("y"))

    def test_fields(self):
        t = Triple(Iri("http://x.org/s"), Iri("http://x.org/p"), BlankNode("b1"))
        assert t.subject == Iri("http://x.org/s")
        assert t.object == BlankNode("b1")


@given(st.text(max_size=40))
def test_is_absolute_iri_never_crashes(s):
    is_absolute_iri(s)


@given(st.text(max_size=60))
def test_literal_construction_totality(s):
    # Any str is a valid lexical form for a plain literal.
    assert Literal(s).lexical == s
