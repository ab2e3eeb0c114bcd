from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patchrepo.rdf.canon import isomorphic
from patchrepo.rdf.errors import TurtleParseError
from patchrepo.rdf.graph import Graph
from patchrepo.rdf.prefixes import PrefixMap
from patchrepo.rdf.terms import RDF_TYPE, XSD_DATETIME, BlankNode, Iri, Literal, Triple
from patchrepo.rdf.turtle import parse_turtle, serialize_turtle

from oracles import permutation_isomorphic


def _iri(s: str) -> Iri:
    return Iri(s)


class TestParseGolden:
    # Hand-expanded from the golden patch document: every ';' group and
    # '[ ]' node written out longhand gives 15 triples, three of which
    # hang off blank subjects (instruction, insert container, provenance).
    def test_golden_document_triple_count(self, golden_patch_ttl):
        g, _ = parse_turtle(golden_patch_ttl)
        assert len(g) == 15
        blank_subjects = {t.subject for t in g if isinstance(t.subject, BlankNode)}
        assert len(blank_subjects) == 3

    def test_golden_document_key_triples(self, golden_patch_ttl):
        g, _ = parse_turtle(golden_patch_ttl)
        patch = _iri("http://example.org/repo/Patch_15")
        assert g.objects(patch, _iri(RDF_TYPE)) == {_iri("http://purl.org/hpi/patchr#Patch")}
        assert g.objects(patch, _iri("http://purl.org/hpi/patchr#status")) == {Literal("active")}
        (update,) = g.objects(patch, _iri("http://purl.org/hpi/patchr#hasUpdate"))
        assert isinstance(update, BlankNode)
        assert g.objects(update, _iri("http://webr3.org/owl/guo#target_subject")) == {
            _iri("http://dbpedia.org/resource/Oregon")
        }
        (container,) = g.objects(update, _iri("http://webr3.org/owl/guo#insert"))
        assert g.match(subject=container) == {
            Triple(
                container,
                _iri("http://dbpedia.org/ontology/language"),
                _iri("http://dbpedia.org/resource/English_language"),
            )
        }

    def test_blank_labels_are_normalized_in_document_order(self, golden_patch_ttl):
        g, _ = parse_turtle(golden_patch_ttl)
        labels = sorted(
            {t.subject.label for t in g if isinstance(t.subject, BlankNode)}
        )
        assert labels == ["b0", "b1", "b2"]

    def test_datetime_literal(self, golden_patch_ttl):
        g, _ = parse_turtle(golden_patch_ttl)
        stamps = g.match(predicate=_iri("http://purl.org/net/provenance/ns#performedAt"))
        assert {t.object for t in stamps} == {
            Literal("2012-05-16T09:00:00Z", datatype=XSD_DATETIME)
        }


class TestParseFeatures:
    def test_a_keyword(self):
        g, _ = parse_turtle("<http://x.org/s> a <http://x.org/C> .")
        assert set(g) == {Triple(_iri("http://x.org/s"), _iri(RDF_TYPE), _iri("http://x.org/C"))}

    def test_semicolon_and_comma_lists(self):
        g, _ = parse_turtle(
            "<http://x.org/s> <http://x.org/p> <http://x.org/a> , <http://x.org/b> ;\n"
            "  <http://x.org/q> \"v\" .\n"
        )
        assert len(g) == 3

    def test_trailing_semicolon_tolerated(self):
        g, _ = parse_turtle("<http://x.org/s> <http://x.org/p> <http://x.org/o> ; .")
        assert len(g) == 1

    def test_builtin_prefixes_resolve_without_declaration(self):
        g, _ = parse_turtle("dbp:Oregon dbo:language dbp:English_language .")
        assert set(g) == {
            Triple(
                _iri("http://dbpedia.org/resource/Oregon"),
                _iri("http://dbpedia.org/ontology/language"),
                _iri("http://dbpedia.org/resource/English_language"),
            )
        }

    def test_declared_prefix_overrides_builtin(self):
        g, pm = parse_turtle('@prefix dbp: <http://other.org/> .\ndbp:X dbo:language "v" .')
        assert g.match(subject=_iri("http://other.org/X"))
        assert pm.namespace("dbp") == "http://other.org/"

    def test_labelled_blanks_shared_across_statements(self):
        g, _ = parse_turtle(
            "_:x <http://x.org/p> _:y .\n_:y <http://x.org/p> _:x .\n"
        )
        assert len(g) == 2
        assert {t.subject.label for t in g} == {"b0", "b1"}

    def test_anonymous_node_nesting(self):
        g, _ = parse_turtle(
            "<http://x.org/s> <http://x.org/p> [ <http://x.org/q> [ <http://x.org/r> \"v\" ] ] ."
        )
        assert len(g) == 3

    def test_anonymous_subject(self):
        g, _ = parse_turtle("[ <http://x.org/p> \"v\" ] .")
        assert len(g) == 1
        g2, _ = parse_turtle("[ <http://x.org/p> \"v\" ] <http://x.org/q> \"w\" .")
        assert len(g2) == 2

    def test_comments_ignored(self):
        g, _ = parse_turtle(
            "# leading comment\n<http://x.org/s> <http://x.org/p> \"v # not a comment\" . # end\n"
        )
        assert len(g) == 1

    def test_string_escapes(self):
        g, _ = parse_turtle('<http://x.org/s> <http://x.org/p> "a\\nb\\t\\"c\\u0041" .')
        (t,) = g
        assert t.object == Literal('a\nb\t"cA')

    def test_language_tag(self):
        g, _ = parse_turtle('<http://x.org/s> <http://x.org/p> "bonjour"@FR .')
        (t,) = g
        assert t.object == Literal("bonjour", language="fr")

    def test_datatype_via_pname_and_iri(self):
        g, _ = parse_turtle(
            '<http://x.org/s> <http://x.org/p> "1"^^xsd:dateTime , '
            '"2"^^<http://www.w3.org/2001/XMLSchema#dateTime> .'
        )
        assert {t.object.lexical for t in g} == {"1", "2"}
        assert {t.object.datatype for t in g} == {XSD_DATETIME}

    def test_base_resolution(self):
        g, _ = parse_turtle("<s> <p> <o> .", base="http://x.org/dir/")
        (t,) = g
        assert t.subject == _iri("http://x.org/dir/s")

    def test_base_directive(self):
        g, _ = parse_turtle("@base <http://x.org/dir/> .\n<s> <p> <o> .")
        (t,) = g
        assert t.subject == _iri("http://x.org/dir/s")

    def test_local_names_with_internal_dots(self):
        g, _ = parse_turtle("@prefix ex: <http://x.org/> .\nex:v1.2 ex:p ex:o .")
        assert g.match(subject=_iri("http://x.org/v1.2"))

    def test_name_followed_directly_by_dot_terminates(self):
        g, _ = parse_turtle("@prefix ex: <http://x.org/> .\nex:s ex:p ex:o.")
        assert g.match(object=_iri("http://x.org/o"))

    def test_percent_encoded_local_name(self):
        g, _ = parse_turtle("@prefix ex: <http://x.org/> .\nex:A%20B ex:p ex:o .")
        assert g.match(subject=_iri("http://x.org/A%20B"))


class TestParseErrors:
    def test_undefined_prefix_named(self):
        with pytest.raises(TurtleParseError) as e:
            parse_turtle("foo:x dbo:language foo:y .")
        assert "foo" in str(e.value)
        assert e.value.line == 1
        assert e.value.column == 1

    def test_position_reported(self):
        with pytest.raises(TurtleParseError) as e:
            parse_turtle("\n\n   @@ .")
        assert e.value.line == 3
        assert e.value.column == 4

    def test_missing_dot(self):
        with pytest.raises(TurtleParseError):
            parse_turtle("<http://x.org/s> <http://x.org/p> <http://x.org/o>")

    def test_relative_iri_without_base(self):
        with pytest.raises(TurtleParseError) as e:
            parse_turtle("<s> <http://x.org/p> <http://x.org/o> .")
        assert "absolute" in str(e.value)

    def test_unterminated_string(self):
        with pytest.raises(TurtleParseError):
            parse_turtle('<http://x.org/s> <http://x.org/p> "oops .')

    def test_newline_in_string(self):
        with pytest.raises(TurtleParseError):
            parse_turtle('<http://x.org/s> <http://x.org/p> "a\nb" .')

    def test_unterminated_iri(self):
        with pytest.raises(TurtleParseError):
            parse_turtle("<http://x.org/s")

    def test_unterminated_anon(self):
        with pytest.raises(TurtleParseError):
            parse_turtle("<http://x.org/s> <http://x.org/p> [ <http://x.org/q> \"v\" .")

    def test_base_redeclaration_rejected(self):
        with pytest.raises(TurtleParseError):
            parse_turtle(
                "@base <http://x.org/> .\n<s> <p> <o> .\n@base <http://y.org/> .\n"
            )

    def test_numeric_shorthand_unsupported(self):
        with pytest.raises(TurtleParseError):
            parse_turtle("<http://x.org/s> <http://x.org/p> 42 .")

    def test_bare_word_rejected(self):
        with pytest.raises(TurtleParseError) as e:
            parse_turtle("<http://x.org/s> <http://x.org/p> true .")
        assert "true" in str(e.value)

    def test_literal_as_subject_rejected(self):
        with pytest.raises(TurtleParseError):
            parse_turtle('"v" <http://x.org/p> <http://x.org/o> .')

    def test_bad_unicode_escape(self):
        with pytest.raises(TurtleParseError):
            parse_turtle('<http://x.org/s> <http://x.org/p> "\\uZZZZ" .')

    def test_langstring_datatype_with_caret_rejected(self):
        with pytest.raises(TurtleParseError):
            parse_turtle(
                '<http://x.org/s> <http://x.org/p> '
                '"v"^^<http://www.w3.org/1999/02/22-rdf-syntax-ns#langString> .'
            )


class TestSerialize:
    def test_single_triple_golden(self):
        g = Graph(
            [
                Triple(
                    _iri("http://dbpedia.org/resource/Oregon"),
                    _iri("http://dbpedia.org/ontology/language"),
                    _iri("http://dbpedia.org/resource/English_language"),
                )
            ]
        )
        assert serialize_turtle(g) == (
            "@prefix dbo: <http://dbpedia.org/ontology/> .\n"
            "@prefix dbp: <http://dbpedia.org/resource/> .\n"
            "\n"
            "dbp:Oregon dbo:language dbp:English_language .\n"
        )

    def test_grouping_golden(self):
        s = _iri("http://x.org/s")
        g = Graph(
            [
                Triple(s, _iri(RDF_TYPE), _iri("http://x.org/C")),
                Triple(s, _iri("http://x.org/p"), Literal("b")),
                Triple(s, _iri("http://x.org/p"), Literal("a")),
            ]
        )
        assert serialize_turtle(g) == (
            "<http://x.org/s> a <http://x.org/C> ;\n"
            '  <http://x.org/p> "a", "b" .\n'
        )

    def test_empty_graph(self):
        assert serialize_turtle(Graph()) == ""

    def test_only_used_prefixes_emitted(self):
        g = Graph([Triple(_iri("http://y.org/s"), _iri("http://y.org/p"), Literal("v"))])
        text = serialize_turtle(g, PrefixMap({"ex": "http://x.org/"}))
        assert "@prefix" not in text

    def test_unix_line_endings(self, golden_patch_ttl):
        g, pm = parse_turtle(golden_patch_ttl)
        text = serialize_turtle(g, pm)
        assert "\r" not in text
        assert text.endswith("\n")

    def test_deterministic_across_insertion_order(self):
        ts = [
            Triple(_iri(f"http://x.org/s{i}"), _iri("http://x.org/p"), Literal(str(i)))
            for i in range(6)
        ]
        assert serialize_turtle(Graph(ts)) == serialize_turtle(Graph(reversed(ts)))


# -- property-based round-trips ----------------------------------------------

iris = st.sampled_from(
    [Iri(f"http://x.org/r{i}") for i in range(6)]
    + [Iri("http://dbpedia.org/resource/Oregon"), Iri("urn:x:y")]
)
blanks = st.sampled_from([BlankNode(l) for l in ("n0", "n1", "n2", "n3", "zz")])
literals = st.one_of(
    st.text(max_size=6).map(Literal),
    st.sampled_from(["en", "de"]).flatmap(
        lambda lang: st.text(max_size=4).map(lambda s: Literal(s, language=lang))
    ),
    st.text(max_size=4).map(lambda s: Literal(s, datatype=XSD_DATETIME)),
)
triples = st.builds(
    Triple,
    st.one_of(iris, blanks),
    iris,
    st.one_of(iris, blanks, literals),
)
graphs = st.lists(triples, max_size=14).map(Graph)


@given(graphs)
@settings(max_examples=120)
def test_roundtrip_is_isomorphic(g):
    text = serialize_turtle(g)
    reparsed, _ = parse_turtle(text)
    assert isomorphic(g, reparsed)


@given(graphs)
@settings(max_examples=120)
def test_serializer_fixpoint(g):
    text = serialize_turtle(g)
    again = serialize_turtle(parse_turtle(text)[0])
    assert again == text


@given(graphs)
@settings(max_examples=60)
def test_roundtrip_agrees_with_permutation_oracle(g):
    reparsed, _ = parse_turtle(serialize_turtle(g))
    assert permutation_isomorphic(g, reparsed)


@given(st.lists(st.builds(Triple, iris, iris, st.one_of(iris, literals)), max_size=12))
def test_ground_roundtrip_is_exact(ts):
    g = Graph(ts)
    reparsed, _ = parse_turtle(serialize_turtle(g))
    assert set(reparsed) == set(g)


@given(st.text(max_size=80))
@settings(max_examples=300)
def test_parser_totality_on_text(doc):
    try:
        g, pm = parse_turtle(doc)
    except TurtleParseError as e:
        assert e.line >= 1
        assert e.column >= 1
    else:
        assert isinstance(g, Graph)
        assert isinstance(pm, PrefixMap)


@given(st.binary(max_size=60))
@settings(max_examples=200)
def test_parser_totality_on_bytes(data):
    for decoded in (data.decode("utf-8", "replace"), data.decode("latin-1")):
        try:
            parse_turtle(decoded)
        except TurtleParseError:
            pass
