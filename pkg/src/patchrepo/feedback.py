"""Deriving patches from structured end-user feedback.

A quiz or review screen shows a fact as "<object> is the <property> of
<subject>". Users cannot edit RDF, but they can disagree in two ways:
the shown value is wrong, or another value also applies. Both reactions
carry enough structure to mint a full update instruction.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from patchrepo.model import (
    MISSING_FACT,
    WRONG_FACT,
    Patch,
    UpdateInstruction,
)
from patchrepo.rdf.graph import Graph
from patchrepo.rdf.terms import Iri, Literal, Term, Triple, is_absolute_iri


class InconsistentVote(Exception):
    """The vote contradicts what the graph actually states."""


class VoteKind(enum.Enum):
    NOT_A_PROPERTY = "not-a-property"
    ALSO_A_PROPERTY = "also-a-property"


@dataclass(frozen=True, slots=True)
class QuestionContext:
    """Where a displayed fact came from: dataset, graph, subject, property."""

    dataset: str
    graph: str
    subject: str
    property: str

    def __post_init__(self) -> None:
        for value in (self.dataset, self.graph, self.subject, self.property):
            if not is_absolute_iri(value):
                raise ValueError(f"question context needs absolute IRIs: {value!r}")


@dataclass(frozen=True, slots=True)
class FeedbackVote:
    kind: VoteKind
    object: Term

    def __post_init__(self) -> None:
        if not isinstance(self.object, (Iri, Literal)):
            raise ValueError("feedback is about a concrete value, not a blank node")


def term_label(term: Term | str) -> str:
    """Human wording for a term: local IRI name with spaces, or the lexical form."""
    if isinstance(term, Literal):
        return term.lexical
    value = term.value if isinstance(term, Iri) else term
    local = re.split(r"[/#]", value.rstrip("/#"))[-1] or value
    return local.replace("_", " ")


_SENTENCES = {
    VoteKind.NOT_A_PROPERTY: "{object} is not the {property} of {subject}.",
    VoteKind.ALSO_A_PROPERTY: "{object} is also the {property} of {subject}.",
}


def feedback_sentence(context: QuestionContext, vote: FeedbackVote) -> str:
    """The plain-language reading of a vote, as shown for confirmation."""
    return _SENTENCES[vote.kind].format(
        object=term_label(vote.object),
        property=term_label(context.property),
        subject=term_label(context.subject),
    )


def check_vote(graph: Graph, context: QuestionContext, vote: FeedbackVote) -> None:
    """Reject votes that disagree with the graph they claim to correct."""
    stated = Triple(Iri(context.subject), Iri(context.property), vote.object) in graph
    if vote.kind is VoteKind.NOT_A_PROPERTY and not stated:
        raise InconsistentVote(
            f"cannot retract an absent statement: {feedback_sentence(context, vote)}"
        )
    if vote.kind is VoteKind.ALSO_A_PROPERTY and stated:
        raise InconsistentVote(
            f"the graph already states this: {feedback_sentence(context, vote)}"
        )


def patch_from_feedback(
    context: QuestionContext,
    vote: FeedbackVote,
    graph: Graph | None = None,
    comment: str | None = None,
) -> Patch:
    """A draft patch carrying the instruction a vote implies.

    Passing the source graph enables the consistency check; the caller
    submits the draft through the repository as usual.
    """
    if graph is not None:
        check_vote(graph, context, vote)
    pair = (Iri(context.property), vote.object)
    if vote.kind is VoteKind.NOT_A_PROPERTY:
        update = UpdateInstruction(
            target_graph=context.graph,
            target_subject=context.subject,
            deletions=frozenset({pair}),
        )
        types = frozenset({WRONG_FACT})
    else:
        update = UpdateInstruction(
            target_graph=context.graph,
            target_subject=context.subject,
            insertions=frozenset({pair}),
        )
        types = frozenset({MISSING_FACT})
    return Patch(update=update, dataset=context.dataset, types=types, comment=comment)
