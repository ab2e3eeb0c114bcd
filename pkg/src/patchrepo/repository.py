"""Event-sourced patch repository: pure state, commands, and queries.

Every mutation is an Event; ``apply`` folds one event into a state and is
the single place transition logic lives. Commands are thin wrappers that
build the event and apply it, so a journal replay reproduces the live
state exactly. All raises happen inside ``apply`` before any state is
shared, which keeps failed commands side-effect free.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

from patchrepo.model import (
    Patch,
    PatchGroup,
    PatchStatus,
    PatchType,
    ProvenanceEvent,
    Violation,
    _utc_second,
    canonical_key,
    normalize_candidate,
    validate_patch,
)


class RepositoryError(Exception):
    """Base for command failures; ``code`` is a stable machine-readable tag."""

    code = "RepositoryError"


class UnknownPatch(RepositoryError):
    code = "UnknownPatch"


class UnknownGroup(RepositoryError):
    code = "UnknownGroup"


class GroupExists(RepositoryError):
    code = "GroupExists"


class ConflictingPosition(RepositoryError):
    """The submitter already criticises an equivalent open patch."""

    code = "ConflictingPosition"


class TerminalPatch(RepositoryError):
    """The patch is resolved or rejected and no longer accepts votes."""

    code = "TerminalPatch"


class IllegalTransition(RepositoryError):
    code = "IllegalTransition"


class InvalidSubmission(RepositoryError):
    code = "InvalidSubmission"

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(f"{v.code}: {v.message}" for v in violations))


class VotePosition(enum.Enum):
    ADVOCATE = "advocate"
    CRITICISE = "criticise"
    WITHDRAWN = "withdrawn"


@dataclass(frozen=True, slots=True)
class Event:
    """One journal entry. ``sequence`` is contiguous starting at 1."""

    sequence: int
    at: datetime
    kind: str
    payload: dict

    def __post_init__(self) -> None:
        object.__setattr__(self, "at", _utc_second(self.at))


@dataclass(frozen=True, slots=True)
class RepositoryState:
    """Immutable snapshot; transitions build fresh dicts, never mutate."""

    repo_base: str
    patches: dict[str, Patch] = field(default_factory=dict)
    by_key: dict[str, str] = field(default_factory=dict)
    groups: dict[str, PatchGroup] = field(default_factory=dict)
    next_sequence: int = 1


def initial_state(repo_base: str) -> RepositoryState:
    return RepositoryState(repo_base=repo_base.rstrip("/"))


def patch_iri(repo_base: str, sequence: int) -> str:
    return f"{repo_base.rstrip('/')}/patch/{sequence}"


def patch_sequence(patch_id: str) -> int:
    """Mint order of a repository patch id; large fallback for foreign ids."""
    tail = patch_id.rsplit("/", 1)[-1]
    return int(tail) if tail.isdigit() else 2**62


def resolve_ref(state: RepositoryState, ref: str) -> str:
    """A patch reference is either the full IRI or the numeric tail."""
    candidate = patch_iri(state.repo_base, int(ref)) if ref.isdigit() else ref
    if candidate not in state.patches:
        raise UnknownPatch(f"no such patch: {ref!r}")
    return candidate


def _sorted_events(*parts: tuple[ProvenanceEvent, ...]) -> tuple[ProvenanceEvent, ...]:
    merged: list[ProvenanceEvent] = []
    for part in parts:
        merged.extend(part)
    merged.sort(key=ProvenanceEvent.sort_key)
    return tuple(merged)


# -- transitions ----------------------------------------------------------------


def _apply_submit(state: RepositoryState, event: Event) -> tuple[RepositoryState, str]:
    from patchrepo.patchdoc import patch_from_json

    payload = event.payload
    draft = patch_from_json(payload["patch"])
    submitter = payload["submitter"]
    stamp = ProvenanceEvent(
        performed_by=payload["performedBy"],
        involved_actor=submitter,
        performed_at=event.at,
    )
    candidate = normalize_candidate(draft)
    key = canonical_key(candidate.update, candidate.dataset)

    existing_id = state.by_key.get(key)
    if existing_id is not None:
        existing = state.patches[existing_id]
        if submitter in existing.criticisers:
            raise ConflictingPosition(
                f"{submitter} criticises {existing_id} and cannot re-propose it"
            )
        merged = replace(
            existing,
            advocates=existing.advocates | {submitter},
            types=existing.types | candidate.types,
            groups=existing.groups | candidate.groups,
            comment=existing.comment if existing.comment is not None else candidate.comment,
            provenance=_sorted_events(existing.provenance, (stamp,)),
        )
        return (
            replace(state, patches={**state.patches, existing_id: merged}),
            existing_id,
        )

    minted_id = patch_iri(state.repo_base, event.sequence)
    patch = replace(
        candidate,
        id=minted_id,
        status=PatchStatus.ACTIVE,
        advocates=candidate.advocates | {submitter},
        criticisers=frozenset(),
        provenance=_sorted_events(candidate.provenance, (stamp,)),
    )
    violations = validate_patch(patch)
    if violations:
        raise InvalidSubmission(violations)
    new_state = replace(
        state,
        patches={**state.patches, minted_id: patch},
        by_key={**state.by_key, key: minted_id},
    )
    return new_state, minted_id


def _require_open(state: RepositoryState, patch_id: str) -> Patch:
    patch = state.patches.get(patch_id)
    if patch is None:
        raise UnknownPatch(f"no such patch: {patch_id!r}")
    if patch.status.terminal:
        raise TerminalPatch(f"{patch_id} is {patch.status.value}")
    return patch


def _apply_vote(state: RepositoryState, event: Event) -> tuple[RepositoryState, str]:
    payload = event.payload
    patch_id = payload["patch"]
    agent = payload["agent"]
    position = VotePosition(payload["position"])
    patch = _require_open(state, patch_id)
    stamp = ProvenanceEvent(
        performed_by=payload["performedBy"], involved_actor=agent, performed_at=event.at
    )
    if position is VotePosition.ADVOCATE:
        advocates = patch.advocates | {agent}
        criticisers = patch.criticisers - {agent}
    elif position is VotePosition.CRITICISE:
        advocates = patch.advocates - {agent}
        criticisers = patch.criticisers | {agent}
    else:
        advocates = patch.advocates - {agent}
        criticisers = patch.criticisers - {agent}
    voted = replace(
        patch,
        advocates=advocates,
        criticisers=criticisers,
        provenance=_sorted_events(patch.provenance, (stamp,)),
    )
    return replace(state, patches={**state.patches, patch_id: voted}), patch_id


def _apply_status(state: RepositoryState, event: Event) -> tuple[RepositoryState, str]:
    payload = event.payload
    patch_id = payload["patch"]
    new_status = PatchStatus(payload["status"])
    patch = state.patches.get(patch_id)
    if patch is None:
        raise UnknownPatch(f"no such patch: {patch_id!r}")
    if not patch.status.can_transition(new_status):
        raise IllegalTransition(
            f"{patch_id} cannot move from {patch.status.value} to {new_status.value}"
        )
    stamp = ProvenanceEvent(
        performed_by=payload["performedBy"],
        involved_actor=payload.get("actor"),
        performed_at=event.at,
    )
    changed = replace(
        patch, status=new_status, provenance=_sorted_events(patch.provenance, (stamp,))
    )
    by_key = dict(state.by_key)
    key = canonical_key(patch.update, patch.dataset)
    if by_key.get(key) == patch_id:
        del by_key[key]
    return (
        replace(state, patches={**state.patches, patch_id: changed}, by_key=by_key),
        patch_id,
    )


def _apply_group_create(state: RepositoryState, event: Event) -> tuple[RepositoryState, str]:
    data = event.payload["group"]
    group = PatchGroup(id=data["id"], label=data.get("label"), comment=data.get("comment"))
    if group.id in state.groups:
        raise GroupExists(f"group already exists: {group.id}")
    return replace(state, groups={**state.groups, group.id: group}), group.id


def _apply_group_assign(state: RepositoryState, event: Event) -> tuple[RepositoryState, str]:
    payload = event.payload
    patch_id, group_id = payload["patch"], payload["group"]
    patch = state.patches.get(patch_id)
    if patch is None:
        raise UnknownPatch(f"no such patch: {patch_id!r}")
    if group_id not in state.groups:
        raise UnknownGroup(f"no such group: {group_id!r}")
    grouped = replace(patch, groups=patch.groups | {group_id})
    return replace(state, patches={**state.patches, patch_id: grouped}), patch_id


_TRANSITIONS = {
    "submit": _apply_submit,
    "vote": _apply_vote,
    "status": _apply_status,
    "group-create": _apply_group_create,
    "group-assign": _apply_group_assign,
}


def apply(state: RepositoryState, event: Event) -> tuple[RepositoryState, str]:
    """Fold one event; returns the new state and the affected patch/group id."""
    if event.sequence != state.next_sequence:
        raise ValueError(
            f"event {event.sequence} applied to state expecting {state.next_sequence}"
        )
    transition = _TRANSITIONS.get(event.kind)
    if transition is None:
        raise ValueError(f"unknown event kind {event.kind!r}")
    new_state, subject = transition(state, event)
    return replace(new_state, next_sequence=state.next_sequence + 1), subject


def _now() -> datetime:
    return datetime.now(timezone.utc)


# -- commands -------------------------------------------------------------------


def submit_patch(
    state: RepositoryState,
    draft: Patch,
    submitter: str,
    performed_by: str,
    at: datetime | None = None,
) -> tuple[RepositoryState, Event, str]:
    from patchrepo.patchdoc import patch_to_json

    event = Event(
        sequence=state.next_sequence,
        at=at or _now(),
        kind="submit",
        payload={
            "patch": patch_to_json(replace(draft, id=None)),
            "submitter": submitter,
            "performedBy": performed_by,
        },
    )
    new_state, patch_id = apply(state, event)
    return new_state, event, patch_id


def cast_vote(
    state: RepositoryState,
    ref: str,
    agent: str,
    position: VotePosition,
    performed_by: str,
    at: datetime | None = None,
) -> tuple[RepositoryState, Event, str]:
    event = Event(
        sequence=state.next_sequence,
        at=at or _now(),
        kind="vote",
        payload={
            "patch": resolve_ref(state, ref),
            "agent": agent,
            "position": position.value,
            "performedBy": performed_by,
        },
    )
    new_state, patch_id = apply(state, event)
    return new_state, event, patch_id


def change_status(
    state: RepositoryState,
    ref: str,
    new_status: PatchStatus,
    performed_by: str,
    actor: str | None = None,
    at: datetime | None = None,
) -> tuple[RepositoryState, Event, str]:
    event = Event(
        sequence=state.next_sequence,
        at=at or _now(),
        kind="status",
        payload={
            "patch": resolve_ref(state, ref),
            "status": new_status.value,
            "performedBy": performed_by,
            "actor": actor,
        },
    )
    new_state, patch_id = apply(state, event)
    return new_state, event, patch_id


def create_group(
    state: RepositoryState, group: PatchGroup, at: datetime | None = None
) -> tuple[RepositoryState, Event, str]:
    event = Event(
        sequence=state.next_sequence,
        at=at or _now(),
        kind="group-create",
        payload={"group": {"id": group.id, "label": group.label, "comment": group.comment}},
    )
    new_state, group_id = apply(state, event)
    return new_state, event, group_id


def assign_group(
    state: RepositoryState, ref: str, group_id: str, at: datetime | None = None
) -> tuple[RepositoryState, Event, str]:
    event = Event(
        sequence=state.next_sequence,
        at=at or _now(),
        kind="group-assign",
        payload={"patch": resolve_ref(state, ref), "group": group_id},
    )
    new_state, patch_id = apply(state, event)
    return new_state, event, patch_id


# -- queries --------------------------------------------------------------------


class Ordering(enum.Enum):
    MOST_POPULAR = "most-popular"
    MOST_RECENT = "most-recent"


@dataclass(frozen=True, slots=True)
class PatchFilter:
    """Conjunctive criteria; ``types`` matches when any type overlaps."""

    dataset: str | None = None
    status: PatchStatus | None = None
    types: frozenset[PatchType] = frozenset()
    subject: str | None = None
    min_advocates: int | None = None
    agent: str | None = None
    group: str | None = None

    def __post_init__(self) -> None:
        if self.min_advocates is not None and self.min_advocates < 0:
            raise ValueError("min_advocates must be >= 0")

    def matches(self, patch: Patch) -> bool:
        if self.dataset is not None and patch.dataset != self.dataset:
            return False
        if self.status is not None and patch.status is not self.status:
            return False
        if self.types and not (self.types & patch.types):
            return False
        if self.subject is not None and patch.update.target_subject != self.subject:
            return False
        if self.min_advocates is not None and len(patch.advocates) < self.min_advocates:
            return False
        if self.agent is not None and self.agent not in (patch.advocates | patch.criticisers):
            return False
        if self.group is not None and self.group not in patch.groups:
            return False
        return True


def _latest_epoch(patch: Patch) -> float:
    return max(e.performed_at for e in patch.provenance).timestamp() if patch.provenance else 0.0


def popularity_key(patch: Patch) -> tuple:
    """Most advocates first, then freshest activity, then stable id order."""
    return (-len(patch.advocates), -_latest_epoch(patch), patch.id or "")


def recency_key(patch: Patch) -> tuple:
    return (-_latest_epoch(patch), patch.id or "")


_ORDER_KEYS = {Ordering.MOST_POPULAR: popularity_key, Ordering.MOST_RECENT: recency_key}


def query_patches(
    state: RepositoryState,
    criteria: PatchFilter = PatchFilter(),
    order: Ordering = Ordering.MOST_RECENT,
    limit: int | None = None,
    offset: int = 0,
) -> list[Patch]:
    """Filter, order, then page; paging never changes relative order."""
    selected = sorted(
        (p for p in state.patches.values() if criteria.matches(p)), key=_ORDER_KEYS[order]
    )
    if offset:
        selected = selected[offset:]
    if limit is not None:
        selected = selected[:limit]
    return selected


def popular_report(
    state: RepositoryState, dataset: str | None = None, limit: int = 10, offset: int = 0
) -> list[Patch]:
    """All patches ranked by advocacy; status is deliberately not filtered."""
    return query_patches(
        state, PatchFilter(dataset=dataset), Ordering.MOST_POPULAR, limit, offset
    )


def recent_report(
    state: RepositoryState, dataset: str | None = None, limit: int = 10, offset: int = 0
) -> list[Patch]:
    return query_patches(state, PatchFilter(dataset=dataset), Ordering.MOST_RECENT, limit, offset)


def entity_report(state: RepositoryState, subject: str) -> list[Patch]:
    """Every patch touching one subject, newest activity first."""
    return query_patches(state, PatchFilter(subject=subject), Ordering.MOST_RECENT)


def entities(state: RepositoryState, dataset: str | None = None) -> list[tuple[str, int]]:
    """Distinct target subjects with patch counts, busiest first."""
    counts: dict[str, int] = {}
    for patch in state.patches.values():
        if dataset is not None and patch.dataset != dataset:
            continue
        subject = patch.update.target_subject
        counts[subject] = counts.get(subject, 0) + 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def update_feed(
    state: RepositoryState,
    criteria: PatchFilter = PatchFilter(),
    order: Ordering = Ordering.MOST_RECENT,
) -> list[Patch]:
    """Patches whose updates a dataset replica should pull.

    Same selection as query_patches, except that rejected patches are
    dropped when the caller did not pin a status: a declined patch must
    never leak into an update script by default.
    """
    chosen = query_patches(state, criteria, order)
    if criteria.status is None:
        chosen = [p for p in chosen if p.status is not PatchStatus.REJECTED]
    return chosen
