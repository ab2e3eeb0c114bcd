"""Feedback-to-patch derivation and its plain-language sentences."""

from __future__ import annotations

import pytest

from factories import DATASET, DBO, DBP, GRAPH, golden_patch
from patchrepo.feedback import (
    FeedbackVote,
    InconsistentVote,
    QuestionContext,
    VoteKind,
    check_vote,
    feedback_sentence,
    patch_from_feedback,
    term_label,
)
from patchrepo.model import MISSING_FACT, WRONG_FACT, validate_patch
from patchrepo.rdf.terms import BlankNode, Iri, Literal
from patchrepo.rdf.turtle import parse_turtle


def context(subject: str, prop: str = "language") -> QuestionContext:
    return QuestionContext(
        dataset=DATASET, graph=GRAPH, subject=DBP + subject, property=DBO + prop
    )


def vote(kind: VoteKind, obj: str) -> FeedbackVote:
    return FeedbackVote(kind=kind, object=Iri(DBP + obj))


class TestLabels:
    def test_underscores_become_spaces(self):
        assert term_label(Iri(DBP + "English_language")) == "English language"

    def test_hash_local(self):
        assert term_label(Iri("http://purl.org/hpi/patchr#MissingFact")) == "MissingFact"

    def test_literal_uses_lexical_form(self):
        assert term_label(Literal("42", datatype="http://www.w3.org/2001/XMLSchema#integer")) == "42"

    def test_plain_string_property(self):
        assert term_label(DBO + "language") == "language"

    def test_trailing_slash_falls_back_to_last_segment(self):
        assert term_label(Iri("http://dbpedia.org/")) == "dbpedia.org"


class TestSentences:
    def test_not_a_property(self):
        s = feedback_sentence(
            context("Oregon"), vote(VoteKind.NOT_A_PROPERTY, "De_jure")
        )
        assert s == "De jure is not the language of Oregon."

    def test_also_a_property(self):
        s = feedback_sentence(
            context("Oregon"), vote(VoteKind.ALSO_A_PROPERTY, "English_language")
        )
        assert s == "English language is also the language of Oregon."

    def test_multi_word_subject(self):
        s = feedback_sentence(
            context("Dances_with_Wolves"), vote(VoteKind.NOT_A_PROPERTY, "Lakota_language")
        )
        assert s == "Lakota language is not the language of Dances with Wolves."

    def test_literal_object(self):
        s = feedback_sentence(
            context("Oregon", prop="population"),
            FeedbackVote(VoteKind.ALSO_A_PROPERTY, Literal("4000000")),
        )
        assert s == "4000000 is also the population of Oregon."


class TestDerivation:
    def test_also_vote_inserts(self):
        p = patch_from_feedback(
            context("Oregon"), vote(VoteKind.ALSO_A_PROPERTY, "English_language")
        )
        assert p.id is None
        assert p.update == golden_patch().update
        assert p.types == frozenset({MISSING_FACT})
        assert p.dataset == DATASET

    def test_not_vote_deletes(self):
        p = patch_from_feedback(context("Oregon"), vote(VoteKind.NOT_A_PROPERTY, "De_jure"))
        assert p.update.deletions == frozenset(
            {(Iri(DBO + "language"), Iri(DBP + "De_jure"))}
        )
        assert p.update.insertions == frozenset()
        assert p.types == frozenset({WRONG_FACT})

    def test_draft_validates_cleanly_except_provenance(self):
        p = patch_from_feedback(
            context("Oregon"), vote(VoteKind.ALSO_A_PROPERTY, "English_language")
        )
        assert {v.code for v in validate_patch(p)} == {"MissingProvenance"}

    def test_optional_comment_carried(self):
        p = patch_from_feedback(
            context("Oregon"),
            vote(VoteKind.ALSO_A_PROPERTY, "English_language"),
            comment="from the language quiz",
        )
        assert p.comment == "from the language quiz"

    def test_exhaustive_over_quiz_rows(self, quiz_graph_ttl):
        g, _ = parse_turtle(quiz_graph_ttl)
        rows = [
            ("Ohio", "English_language"),
            ("Oregon", "De_jure"),
            ("Dances_with_Wolves", "Lakota_language"),
        ]
        for subject, shown in rows:
            ctx = context(subject)
            retract = patch_from_feedback(
                ctx, vote(VoteKind.NOT_A_PROPERTY, shown), graph=g
            )
            assert retract.update.deletions == frozenset(
                {(Iri(DBO + "language"), Iri(DBP + shown))}
            )
            assert retract.update.target_subject == DBP + subject
            extend = patch_from_feedback(
                ctx, vote(VoteKind.ALSO_A_PROPERTY, "Some_other_language"), graph=g
            )
            assert extend.update.insertions == frozenset(
                {(Iri(DBO + "language"), Iri(DBP + "Some_other_language"))}
            )


class TestConsistency:
    def test_cannot_retract_absent_fact(self, quiz_graph_ttl):
        g, _ = parse_turtle(quiz_graph_ttl)
        with pytest.raises(InconsistentVote):
            check_vote(g, context("Oregon"), vote(VoteKind.NOT_A_PROPERTY, "English_language"))

    def test_cannot_add_stated_fact(self, quiz_graph_ttl):
        g, _ = parse_turtle(quiz_graph_ttl)
        with pytest.raises(InconsistentVote):
            check_vote(g, context("Oregon"), vote(VoteKind.ALSO_A_PROPERTY, "De_jure"))

    def test_valid_votes_pass(self, quiz_graph_ttl):
        g, _ = parse_turtle(quiz_graph_ttl)
        check_vote(g, context("Oregon"), vote(VoteKind.NOT_A_PROPERTY, "De_jure"))
        check_vote(g, context("Oregon"), vote(VoteKind.ALSO_A_PROPERTY, "English_language"))

    def test_derivation_runs_check_when_graph_given(self, quiz_graph_ttl):
        g, _ = parse_turtle(quiz_graph_ttl)
        with pytest.raises(InconsistentVote):
            patch_from_feedback(
                context("Oregon"), vote(VoteKind.ALSO_A_PROPERTY, "De_jure"), graph=g
            )


class TestGuards:
    def test_context_requires_absolute_iris(self):
        with pytest.raises(ValueError):
            QuestionContext(dataset="ds", graph=GRAPH, subject=DBP + "X", property=DBO + "p")

    def test_vote_rejects_blank_object(self):
        with pytest.raises(ValueError):
            FeedbackVote(VoteKind.ALSO_A_PROPERTY, BlankNode("b0"))
