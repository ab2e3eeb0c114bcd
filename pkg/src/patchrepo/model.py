"""Patch domain model: update instructions, provenance, patches, validation.

A patch proposes one update instruction against one dataset: a set of
predicate-object pairs to insert about a target subject and a set to
delete, inside a target graph. Agents endorse a patch as advocates or
dispute it as criticisers; provenance records who created or re-submitted
it and when. Two patches are equivalent when their canonical keys match.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

from patchrepo import vocab
from patchrepo.rdf.ntriples import canonical_ntriples
from patchrepo.rdf.terms import BlankNode, Iri, Literal, Term, Triple, is_absolute_iri

Pair = tuple[Iri, Term]


class PatchStatus(enum.Enum):
    """Lifecycle state. Patches start active; both other states are final."""

    ACTIVE = "active"
    RESOLVED = "resolved"
    REJECTED = "rejected"

    def can_transition(self, new: "PatchStatus") -> bool:
        return self is PatchStatus.ACTIVE and new is not PatchStatus.ACTIVE

    @property
    def terminal(self) -> bool:
        return self is not PatchStatus.ACTIVE


@dataclass(frozen=True, slots=True)
class PatchType:
    """Classification of the defect a patch corrects, identified by IRI.

    The four well-known kinds have constants below; any other IRI is an
    open-ended custom type and round-trips untouched.
    """

    iri: str

    def __post_init__(self) -> None:
        if not is_absolute_iri(self.iri):
            raise ValueError(f"patch type must be an absolute IRI: {self.iri!r}")

    @property
    def name(self) -> str:
        return _TYPE_NAMES.get(self.iri, "other")


WRONG_FACT = PatchType(vocab.PRO_WRONG_FACT)
MISSING_FACT = PatchType(vocab.PRO_MISSING_FACT)
ENCODING_ERROR = PatchType(vocab.PRO_ENCODING_ERROR)
DATATYPE_ERROR = PatchType(vocab.PRO_DATATYPE_ERROR)

_TYPE_NAMES = {
    vocab.PRO_WRONG_FACT: "wrong-fact",
    vocab.PRO_MISSING_FACT: "missing-fact",
    vocab.PRO_ENCODING_ERROR: "encoding-error",
    vocab.PRO_DATATYPE_ERROR: "datatype-error",
}

WELL_KNOWN_TYPES = {t.name: t for t in (WRONG_FACT, MISSING_FACT, ENCODING_ERROR, DATATYPE_ERROR)}


def parse_patch_type(text: str) -> PatchType:
    """Accept either a well-known short name or a full IRI."""
    known = WELL_KNOWN_TYPES.get(text)
    if known is not None:
        return known
    return PatchType(text)


@dataclass(frozen=True, slots=True)
class UpdateInstruction:
    """Insertions and deletions of predicate-object pairs for one subject."""

    target_graph: str
    target_subject: str
    insertions: frozenset[Pair] = frozenset()
    deletions: frozenset[Pair] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "insertions", frozenset(self.insertions))
        object.__setattr__(self, "deletions", frozenset(self.deletions))

    def insertion_triples(self) -> set[Triple]:
        subject = Iri(self.target_subject)
        return {Triple(subject, p, o) for p, o in self.insertions}

    def deletion_triples(self) -> set[Triple]:
        subject = Iri(self.target_subject)
        return {Triple(subject, p, o) for p, o in self.deletions}


def _utc_second(dt: datetime) -> datetime:
    if dt.tzinfo is None:
        raise ValueError("timestamp must be timezone-aware")
    return dt.astimezone(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True, slots=True)
class ProvenanceEvent:
    """One DataCreation record: which service acted, for whom, and when."""

    performed_by: str
    involved_actor: str | None = None
    performed_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))

    def __post_init__(self) -> None:
        if not is_absolute_iri(self.performed_by):
            raise ValueError(f"performedBy must be an absolute IRI: {self.performed_by!r}")
        if self.involved_actor is not None and not is_absolute_iri(self.involved_actor):
            raise ValueError(f"involvedActor must be an absolute IRI: {self.involved_actor!r}")
        object.__setattr__(self, "performed_at", _utc_second(self.performed_at))

    def sort_key(self) -> tuple:
        return (self.performed_at, self.performed_by, self.involved_actor or "")


def parse_timestamp(text: str) -> datetime:
    """Read an xsd:dateTime lexical form into an aware UTC datetime."""
    normalized = text.strip()
    if normalized.endswith(("Z", "z")):
        normalized = normalized[:-1] + "+00:00"
    dt = datetime.fromisoformat(normalized)
    return _utc_second(dt)


def format_timestamp(dt: datetime) -> str:
    # isoformat zero-pads years below 1000, strftime("%Y") does not everywhere
    return _utc_second(dt).replace(tzinfo=None).isoformat(timespec="seconds") + "Z"


@dataclass(frozen=True, slots=True)
class PatchGroup:
    id: str
    label: str | None = None
    comment: str | None = None

    def __post_init__(self) -> None:
        if not is_absolute_iri(self.id):
            raise ValueError(f"group id must be an absolute IRI: {self.id!r}")


@dataclass(frozen=True, slots=True)
class Patch:
    """A proposed correction. ``id`` is None for drafts not yet submitted."""

    update: UpdateInstruction
    dataset: str
    id: str | None = None
    types: frozenset[PatchType] = frozenset()
    status: PatchStatus = PatchStatus.ACTIVE
    advocates: frozenset[str] = frozenset()
    criticisers: frozenset[str] = frozenset()
    groups: frozenset[str] = frozenset()
    comment: str | None = None
    provenance: tuple[ProvenanceEvent, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "types", frozenset(self.types))
        object.__setattr__(self, "advocates", frozenset(self.advocates))
        object.__setattr__(self, "criticisers", frozenset(self.criticisers))
        object.__setattr__(self, "groups", frozenset(self.groups))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def with_id(self, iri: str) -> "Patch":
        return replace(self, id=iri)

    def latest_timestamp(self) -> datetime:
        if not self.provenance:
            raise ValueError("patch has no provenance")
        return max(e.performed_at for e in self.provenance)


@dataclass(frozen=True, slots=True)
class Violation:
    """One validation finding; ``code`` is stable, ``message`` is for humans."""

    code: str
    message: str


def _check_iri(value: object, code: str, what: str, out: list[Violation]) -> None:
    if not isinstance(value, str) or not is_absolute_iri(value):
        out.append(Violation(code, f"{what} must be an absolute IRI, got {value!r}"))


def validate_instruction(update: UpdateInstruction) -> list[Violation]:
    out: list[Violation] = []
    _check_iri(update.target_graph, "InvalidTargetGraph", "target graph", out)
    _check_iri(update.target_subject, "InvalidTargetSubject", "target subject", out)
    if not update.insertions and not update.deletions:
        out.append(Violation("EmptyInstruction", "instruction inserts and deletes nothing"))
    overlap = update.insertions & update.deletions
    if overlap:
        out.append(
            Violation(
                "OverlappingPairs",
                f"{len(overlap)} pair(s) are both inserted and deleted",
            )
        )
    for pred, obj in sorted(
        update.insertions | update.deletions, key=lambda pair: (pair[0].value, repr(pair[1]))
    ):
        if not isinstance(pred, Iri):
            out.append(Violation("InvalidPair", f"pair predicate {pred!r} is not an IRI"))
        if isinstance(obj, BlankNode):
            out.append(
                Violation(
                    "BlankNodeObject",
                    f"pair object for {pred} is a blank node; patches must be ground",
                )
            )
        elif not isinstance(obj, (Iri, Literal)):
            out.append(Violation("InvalidPair", f"pair object {obj!r} is not an RDF term"))
    return out


def validate_patch(patch: Patch) -> list[Violation]:
    """All invariant violations, empty when the patch is sound.

    A draft (id None) validates like a full patch; the id, when present,
    must be an absolute IRI.
    """
    out = validate_instruction(patch.update)
    if patch.id is not None:
        _check_iri(patch.id, "InvalidId", "patch id", out)
    _check_iri(patch.dataset, "MissingDataset", "dataset", out)
    if not patch.types:
        out.append(Violation("MissingType", "patch carries no patch type"))
    for agent in sorted(patch.advocates | patch.criticisers):
        _check_iri(agent, "InvalidAgent", "agent", out)
    overlap = patch.advocates & patch.criticisers
    if overlap:
        out.append(
            Violation(
                "AdvocateCriticiserOverlap",
                "agent(s) appear on both sides: " + ", ".join(sorted(overlap)),
            )
        )
    for group in sorted(patch.groups):
        _check_iri(group, "InvalidGroup", "group", out)
    if not patch.provenance:
        out.append(Violation("MissingProvenance", "patch has no provenance event"))
    else:
        stamps = [e.performed_at for e in patch.provenance]
        if stamps != sorted(stamps):
            out.append(
                Violation("ProvenanceOrder", "provenance timestamps must be non-decreasing")
            )
    return out


def infer_types(update: UpdateInstruction) -> frozenset[PatchType]:
    """Shape-derived default classification for untyped submissions.

    Pure insertions supply a missing fact; pure deletions retract a wrong
    one; mixed instructions do both.
    """
    inferred: set[PatchType] = set()
    if update.insertions:
        inferred.add(MISSING_FACT)
    if update.deletions:
        inferred.add(WRONG_FACT)
    return frozenset(inferred)


def normalize_candidate(patch: Patch) -> Patch:
    """Fill submission defaults: infer types when absent."""
    if patch.types:
        return patch
    return replace(patch, types=infer_types(patch.update))


def canonical_key(update: UpdateInstruction, dataset: str) -> str:
    """Equivalence key: same dataset, graph, and ground pair sets, same key.

    Built from canonical N-Triples so pair ordering and duplicates cannot
    matter. Raises CanonicalizationError when a pair contains a blank node.
    Callers key validated instructions only; an instruction with no pairs at
    all fails validation before it is ever keyed.
    """
    ins = "\n".join(canonical_ntriples(update.insertion_triples()))
    dels = "\n".join(canonical_ntriples(update.deletion_triples()))
    return f"{dataset}|{update.target_graph}|INS:{ins}|DEL:{dels}"
