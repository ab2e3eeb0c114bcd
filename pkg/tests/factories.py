"""Builders for domain objects used across test modules."""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from patchrepo import repository
from patchrepo.model import (
    MISSING_FACT,
    Patch,
    PatchStatus,
    ProvenanceEvent,
    UpdateInstruction,
)
from patchrepo.rdf.terms import Iri
from patchrepo.repository import RepositoryState, VotePosition

DBP = "http://dbpedia.org/resource/"
DBO = "http://dbpedia.org/ontology/"
REPO = "http://example.org/repo/"
DATASET = "http://dbpedia.org/void.ttl#DBpedia"
GRAPH = "http://dbpedia.org/"

GOLDEN_AT = datetime(2012, 5, 16, 9, 0, 0, tzinfo=timezone.utc)


def oregon_instruction() -> UpdateInstruction:
    return UpdateInstruction(
        target_graph=GRAPH,
        target_subject=DBP + "Oregon",
        insertions={(Iri(DBO + "language"), Iri(DBP + "English_language"))},
    )


def golden_patch(patch_id: str | None = REPO + "Patch_15") -> Patch:
    """The Oregon-language patch as a constructed object."""
    return Patch(
        id=patch_id,
        update=oregon_instruction(),
        dataset=DATASET,
        types={MISSING_FACT},
        advocates={REPO + "Player_25"},
        provenance=(
            ProvenanceEvent(
                performed_by=REPO + "WhoKnows",
                involved_actor=REPO + "Player_25",
                performed_at=GOLDEN_AT,
            ),
        ),
    )


def build_patch(
    subject: str = DBP + "Oregon",
    insertions=None,
    deletions=None,
    patch_id: str | None = None,
    **overrides,
) -> Patch:
    if insertions is None and deletions is None:
        insertions = {(Iri(DBO + "language"), Iri(DBP + "English_language"))}
    update = UpdateInstruction(
        target_graph=GRAPH,
        target_subject=subject,
        insertions=insertions or frozenset(),
        deletions=deletions or frozenset(),
    )
    fields = dict(
        id=patch_id,
        update=update,
        dataset=DATASET,
        types={MISSING_FACT},
        advocates={REPO + "Player_25"},
        provenance=(
            ProvenanceEvent(performed_by=REPO + "WhoKnows", performed_at=GOLDEN_AT),
        ),
    )
    fields.update(overrides)
    return Patch(**fields)


SERVICE = REPO + "service"

_PAIR_POOL = [
    (Iri(DBO + pred), Iri(DBP + obj))
    for pred in ("language", "capital")
    for obj in ("X", "Y", "Z")
]


def random_instruction(rng: random.Random) -> UpdateInstruction:
    insertions = set(rng.sample(_PAIR_POOL, rng.randint(0, 2)))
    deletions = set(rng.sample(_PAIR_POOL, rng.randint(0, 2))) - insertions
    if not insertions and not deletions:
        insertions = {_PAIR_POOL[0]}
    return UpdateInstruction(
        target_graph=GRAPH,
        target_subject=DBP + f"Entity_{rng.randrange(6)}",
        insertions=insertions,
        deletions=deletions,
    )


def instruction_universe(count: int = 10) -> list[UpdateInstruction]:
    """A fixed pool of distinct instructions; a small pool forces merges."""
    rng = random.Random(97)
    pool: list[UpdateInstruction] = []
    seen: set[tuple] = set()
    while len(pool) < count:
        instr = random_instruction(rng)
        key = (instr.target_subject, instr.insertions, instr.deletions)
        if key in seen:
            continue
        seen.add(key)
        pool.append(instr)
    return pool


def random_step(
    state: RepositoryState,
    rng: random.Random,
    agents: list[str],
    instructions: list[UpdateInstruction] | None = None,
) -> tuple[RepositoryState, repository.Event] | None:
    """One random command against ``state``; None when the roll is a no-op.

    Timestamps are derived from the sequence number so every generated
    history is reproducible from the seed alone. Submissions draw from
    ``instructions`` when given, otherwise from the full random space.
    """
    at = GOLDEN_AT + timedelta(minutes=state.next_sequence)
    open_ids = sorted(
        pid for pid, p in state.patches.items() if not p.status.terminal
    )
    roll = rng.random()
    if roll < 0.55 or not open_ids:
        update = rng.choice(instructions) if instructions else random_instruction(rng)
        draft = Patch(update=update, dataset=DATASET)
        try:
            new_state, event, _ = repository.submit_patch(
                state, draft, rng.choice(agents), SERVICE, at
            )
        except repository.ConflictingPosition:
            return None
        return new_state, event
    if roll < 0.85:
        new_state, event, _ = repository.cast_vote(
            state,
            rng.choice(open_ids),
            rng.choice(agents),
            rng.choice(list(VotePosition)),
            SERVICE,
            at,
        )
        return new_state, event
    new_state, event, _ = repository.change_status(
        state,
        rng.choice(open_ids),
        rng.choice([PatchStatus.RESOLVED, PatchStatus.REJECTED]),
        SERVICE,
        actor=rng.choice(agents),
        at=at,
    )
    return new_state, event


def random_history(
    seed: int,
    agents: int = 5,
    steps: int = 10,
    repo_base: str = REPO.rstrip("/"),
    instructions: list[UpdateInstruction] | None = None,
) -> tuple[RepositoryState, list[repository.Event]]:
    """A reproducible command history: final state plus the events that built it."""
    rng = random.Random(seed)
    agent_pool = [REPO + f"agent_{i}" for i in range(agents)]
    state = repository.initial_state(repo_base)
    events: list[repository.Event] = []
    produced = 0
    attempts = 0
    while produced < steps and attempts < steps * 20:
        attempts += 1
        outcome = random_step(state, rng, agent_pool, instructions)
        if outcome is None:
            continue
        state, event = outcome
        events.append(event)
        produced += 1
    return state, events
