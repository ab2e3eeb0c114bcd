"""Top-level guarantees the package ships with.

Each test here states one externally visible promise end to end; the
conftest hook prints a verdict line per test. Budgets are wall-clock
upper bounds, generous on purpose so slow machines stay green.
"""

from __future__ import annotations

import random
import time

from factories import (
    DATASET,
    DBO,
    DBP,
    GOLDEN_AT,
    GRAPH,
    REPO,
    SERVICE,
    golden_patch,
    instruction_universe,
    random_history,
)
from oracles import permutation_isomorphic, run_update_text
from patchrepo import repository as repo_ops
from patchrepo.feedback import (
    FeedbackVote,
    InconsistentVote,
    QuestionContext,
    VoteKind,
    patch_from_feedback,
)
from patchrepo.journal import encode_event, replay_lines
from patchrepo.model import (
    MISSING_FACT,
    WRONG_FACT,
    Patch,
    PatchStatus,
    UpdateInstruction,
    canonical_key,
)
from patchrepo.patchdoc import patch_from_turtle, patch_to_turtle, patches_from_turtle
from patchrepo.rdf.errors import TurtleParseError
from patchrepo.rdf.graph import Graph
from patchrepo.rdf.ntriples import canonical_ntriples
from patchrepo.rdf.terms import Iri, Literal, Triple
from patchrepo.rdf.turtle import parse_turtle
from patchrepo.sparql import SparqlDialect, apply_instruction, to_sparql

BASE = REPO.rstrip("/")
PLAYER = REPO + "Player_25"


def test_patch_document_round_trip(golden_patch_ttl):
    started = time.monotonic()

    patches = patches_from_turtle(golden_patch_ttl)
    assert len(patches) == 1
    patch = patches[0]

    assert patch.id == REPO + "Patch_15"
    assert patch.update.target_subject == DBP + "Oregon"
    assert patch.update.target_graph == "http://dbpedia.org/"
    assert patch.update.insertions == frozenset(
        {(Iri(DBO + "language"), Iri(DBP + "English_language"))}
    )
    assert patch.update.deletions == frozenset()
    assert patch.dataset == "http://dbpedia.org/void.ttl#DBpedia"
    assert patch.advocates == frozenset({PLAYER})
    assert patch.status is PatchStatus.ACTIVE
    assert len(patch.provenance) == 1
    assert patch.provenance[0].performed_at == GOLDEN_AT

    original, _ = parse_turtle(golden_patch_ttl)
    reserialized, _ = parse_turtle(patch_to_turtle(patch))
    assert permutation_isomorphic(set(original), set(reserialized))

    assert time.monotonic() - started < 1.0


def test_legacy_rendering_matches_golden(golden_patch_ttl):
    patch = patch_from_turtle(golden_patch_ttl)
    text = to_sparql(patch.update, SparqlDialect.LEGACY, header=False)
    normalized = " ".join(text.split())
    assert normalized == (
        "INSERT DATA INTO <http://dbpedia.org/> "
        "{ dbp:Oregon dbo:language dbp:English_language . }"
    )


def test_event_histories_survive_replay_and_merging():
    started = time.monotonic()
    universe = instruction_universe(10)

    for seed in range(1000):
        state, events = random_history(
            seed, agents=5, steps=10, instructions=universe
        )
        replayed = replay_lines([encode_event(e) for e in events], BASE)
        assert replayed == state

        open_keys = set()
        for patch_id, patch in state.patches.items():
            assert patch.advocates.isdisjoint(patch.criticisers)
            if patch.status.terminal:
                continue
            key = canonical_key(patch.update, patch.dataset)
            assert key not in open_keys
            open_keys.add(key)
            assert state.by_key[key] == patch_id

    # identical submissions collapse onto one patch, one advocate per agent
    state = repo_ops.initial_state(BASE)
    update = universe[0]
    submitters = [REPO + f"agent_{i}" for i in range(7)]
    for i, agent in enumerate(submitters):
        draft = Patch(update=update, dataset=DATASET)
        state, _, patch_id = repo_ops.submit_patch(state, draft, agent, SERVICE)
    assert len(state.patches) == 1
    assert state.patches[patch_id].advocates == frozenset(submitters)

    assert time.monotonic() - started < 30.0


def test_apply_agrees_with_reference_engine():
    started = time.monotonic()
    rng = random.Random(20120516)

    subjects = [Iri(DBP + f"S{i}") for i in range(8)]
    predicates = [Iri(DBO + f"p{i}") for i in range(5)]
    objects: list = [Iri(DBP + f"O{i}") for i in range(6)] + [
        Literal("plain"),
        Literal("7", datatype="http://www.w3.org/2001/XMLSchema#integer"),
        Literal("hello", language="en"),
    ]
    pairs = [(p, o) for p in predicates for o in objects]

    for _ in range(200):
        graph = Graph(name=Iri(GRAPH))
        while len(graph) < 50:
            graph.add(
                Triple(rng.choice(subjects), rng.choice(predicates), rng.choice(objects))
            )
        insertions = set(rng.sample(pairs, rng.randint(0, 3)))
        deletions = set(rng.sample(pairs, rng.randint(0, 3))) - insertions
        if not insertions and not deletions:
            insertions = {pairs[0]}
        update = UpdateInstruction(
            target_graph=GRAPH,
            target_subject=rng.choice(subjects).value,
            insertions=insertions,
            deletions=deletions,
        )

        initial = set(canonical_ntriples(set(graph)))
        apply_instruction(graph, update)
        result = set(canonical_ntriples(set(graph)))

        # ground graphs throughout, so line-set equality is isomorphism
        for dialect in SparqlDialect:
            rendered = to_sparql(update, dialect, header=True)
            assert run_update_text(rendered, initial) == result

        again = apply_instruction(graph, update)
        assert not again.changed
        assert set(canonical_ntriples(set(graph))) == result

    assert time.monotonic() - started < 60.0


def test_feedback_votes_derive_expected_patches(quiz_graph_ttl):
    graph, _ = parse_turtle(quiz_graph_ttl)
    context = QuestionContext(
        dataset=DATASET,
        graph=GRAPH,
        subject=DBP + "Oregon",
        property=DBO + "language",
    )
    golden = golden_patch()

    confirmed = patch_from_feedback(
        context,
        FeedbackVote(VoteKind.ALSO_A_PROPERTY, Iri(DBP + "English_language")),
        graph=graph,
    )
    assert confirmed.update == golden.update
    assert confirmed.dataset == golden.dataset
    assert confirmed.types == {MISSING_FACT} == golden.types
    assert confirmed.status is PatchStatus.ACTIVE
    assert canonical_key(confirmed.update, confirmed.dataset) == canonical_key(
        golden.update, golden.dataset
    )

    state = repo_ops.initial_state(BASE)
    state, _, patch_id = repo_ops.submit_patch(state, confirmed, PLAYER, SERVICE)
    assert state.patches[patch_id].advocates == golden.advocates

    rejected = patch_from_feedback(
        context,
        FeedbackVote(VoteKind.NOT_A_PROPERTY, Iri(DBP + "De_jure")),
        graph=graph,
    )
    assert rejected.update.deletions == frozenset(
        {(Iri(DBO + "language"), Iri(DBP + "De_jure"))}
    )
    assert rejected.update.insertions == frozenset()
    assert rejected.types == {WRONG_FACT}

    # every kind x object combination over the question context
    candidates = sorted({t.object.value for t in graph}) + [DBP + "English_language"]
    subject = Iri(context.subject)
    prop = Iri(context.property)
    for value in candidates:
        for kind in VoteKind:
            stated = Triple(subject, prop, Iri(value)) in graph
            consistent = stated if kind is VoteKind.NOT_A_PROPERTY else not stated
            vote = FeedbackVote(kind, Iri(value))
            if not consistent:
                try:
                    patch_from_feedback(context, vote, graph=graph)
                    raise AssertionError(f"{kind.value} on {value} should be rejected")
                except InconsistentVote:
                    continue
            derived = patch_from_feedback(context, vote, graph=graph)
            if kind is VoteKind.NOT_A_PROPERTY:
                assert derived.update.deletions == {(prop, Iri(value))}
                assert derived.types == {WRONG_FACT}
            else:
                assert derived.update.insertions == {(prop, Iri(value))}
                assert derived.types == {MISSING_FACT}


def test_most_popular_matches_brute_force():
    for seed in range(100):
        state, _ = random_history(5000 + seed, agents=4, steps=12)

        def brute_key(patch):
            newest = max(event.performed_at for event in patch.provenance)
            return (-len(patch.advocates), -newest.timestamp(), patch.id)

        expected = [p.id for p in sorted(state.patches.values(), key=brute_key)]
        ranked = [
            p.id
            for p in repo_ops.query_patches(
                state, repo_ops.PatchFilter(), repo_ops.Ordering.MOST_POPULAR
            )
        ]
        assert ranked == expected


def test_parser_survives_fuzzing():
    rng = random.Random(0xFEED)
    every_byte = list(range(256))
    structural = list(b'@<>"\'.;,#:^ \t\n\\{}[]()0123456789aAzZ_%-prefix')

    for i in range(100_000):
        length = rng.randrange(0, 40)
        if i % 2:
            raw = bytes(rng.choices(every_byte, k=length))
        else:
            raw = bytes(rng.choices(structural, k=length))
        text = raw.decode("utf-8", errors="replace")
        try:
            graph, prefixes = parse_turtle(text)
        except TurtleParseError as exc:
            assert isinstance(exc.line, int) and exc.line >= 1
            assert isinstance(exc.column, int) and exc.column >= 1
        else:
            assert graph is not None and prefixes is not None
