"""Reading and writing patch documents, as Turtle and as JSON.

The Turtle shape mirrors the published patch vocabulary: a pro:Patch
subject with one guo:UpdateInstruction (insert/delete containers holding
predicate-object pairs about the target subject), advocate/criticiser
links, dataset reference, status literal, optional types, groups, comment,
and one node per provenance event.
"""

from __future__ import annotations

from patchrepo import vocab
from patchrepo.model import (
    Pair,
    Patch,
    PatchStatus,
    PatchType,
    ProvenanceEvent,
    UpdateInstruction,
    Violation,
    format_timestamp,
    parse_patch_type,
    parse_timestamp,
    validate_patch,
)
from patchrepo.rdf.graph import Graph
from patchrepo.rdf.prefixes import PrefixMap
from patchrepo.rdf.terms import (
    RDF_TYPE,
    XSD_DATETIME,
    BlankNode,
    Iri,
    Literal,
    Term,
)
from patchrepo.rdf.terms import Triple as T
from patchrepo.rdf.turtle import parse_turtle, serialize_turtle


class PatchDocumentError(Exception):
    """A patch document is structurally unusable (distinct from validation)."""

    def __init__(self, code: str, message: str, subject: str | None = None):
        self.code = code
        self.subject = subject
        where = f"{code}: {message}"
        if subject:
            where += f" (patch {subject})"
        super().__init__(where)


class ValidationFailed(Exception):
    """A patch failed invariant validation; carries the violation list."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(f"{v.code}: {v.message}" for v in violations))


_RDF_TYPE = Iri(RDF_TYPE)
_PATCH_CLASS = Iri(vocab.PRO_PATCH)


def _serialization_violations(patch: Patch) -> list[Violation]:
    # MissingType alone does not prevent writing a faithful document; the
    # submission path is where types become mandatory.
    return [v for v in validate_patch(patch) if v.code != "MissingType"]


# -- Turtle -------------------------------------------------------------------


def patch_graph(patch: Patch, salt: str = "") -> Graph:
    """The RDF shape of one patch; ``salt`` keeps blank labels unique when
    several patches share a graph."""
    if patch.id is None:
        raise ValueError("cannot serialize a draft patch without an id")
    bad = _serialization_violations(patch)
    if bad:
        raise ValidationFailed(bad)
    g = Graph()
    s = Iri(patch.id)
    g.add(T(s, _RDF_TYPE, _PATCH_CLASS))

    update = BlankNode(f"u{salt}0")
    g.add(T(s, Iri(vocab.PRO_HAS_UPDATE), update))
    g.add(T(update, _RDF_TYPE, Iri(vocab.GUO_UPDATE_INSTRUCTION)))
    g.add(T(update, Iri(vocab.GUO_TARGET_GRAPH), Iri(patch.update.target_graph)))
    g.add(T(update, Iri(vocab.GUO_TARGET_SUBJECT), Iri(patch.update.target_subject)))
    for link, pairs in ((vocab.GUO_INSERT, patch.update.insertions),
                        (vocab.GUO_DELETE, patch.update.deletions)):
        if pairs:
            container = BlankNode(f"c{salt}{'i' if link == vocab.GUO_INSERT else 'd'}")
            g.add(T(update, Iri(link), container))
            for pred, obj in pairs:
                g.add(T(container, pred, obj))

    for agent in patch.advocates:
        g.add(T(s, Iri(vocab.PRO_HAS_ADVOCATE), Iri(agent)))
    for agent in patch.criticisers:
        g.add(T(s, Iri(vocab.PRO_HAS_CRITICISER), Iri(agent)))
    g.add(T(s, Iri(vocab.PRO_APPLIES_TO), Iri(patch.dataset)))
    g.add(T(s, Iri(vocab.PRO_STATUS), Literal(patch.status.value)))
    for ptype in patch.types:
        g.add(T(s, Iri(vocab.PRO_PATCH_TYPE), Iri(ptype.iri)))
    for group in patch.groups:
        g.add(T(s, Iri(vocab.PRO_MEMBER_OF), Iri(group)))
    if patch.comment is not None:
        g.add(T(s, Iri(vocab.PRO_COMMENT), Literal(patch.comment)))
    for idx, event in enumerate(patch.provenance):
        node = BlankNode(f"p{salt}{idx}")
        g.add(T(s, Iri(vocab.PRO_HAS_PROVENANCE), node))
        g.add(T(node, _RDF_TYPE, Iri(vocab.PRV_DATA_CREATION)))
        g.add(T(node, Iri(vocab.PRV_PERFORMED_BY), Iri(event.performed_by)))
        if event.involved_actor is not None:
            g.add(T(node, Iri(vocab.PRV_INVOLVED_ACTOR), Iri(event.involved_actor)))
        g.add(
            T(
                node,
                Iri(vocab.PRV_PERFORMED_AT),
                Literal(format_timestamp(event.performed_at), datatype=XSD_DATETIME),
            )
        )
    return g


def patch_to_turtle(patch: Patch, prefixes: PrefixMap | None = None) -> str:
    return serialize_turtle(patch_graph(patch), prefixes)


def patches_to_turtle(patches: list[Patch], prefixes: PrefixMap | None = None) -> str:
    union = Graph()
    for idx, patch in enumerate(patches):
        for t in patch_graph(patch, salt=f"x{idx}_"):
            union.add(t)
    return serialize_turtle(union, prefixes)


def _one_iri(g: Graph, subject, predicate: str, code: str, patch_iri: str) -> Iri:
    values = g.objects(subject, Iri(predicate))
    if len(values) != 1:
        raise PatchDocumentError(
            code, f"expected exactly one {predicate}, found {len(values)}", patch_iri
        )
    (value,) = values
    if not isinstance(value, Iri):
        raise PatchDocumentError(code, f"{predicate} must be an IRI", patch_iri)
    return value


def _extract_pairs(g: Graph, update_node, link: str, patch_iri: str) -> frozenset[Pair]:
    pairs: set[Pair] = set()
    for container in g.objects(update_node, Iri(link)):
        if isinstance(container, Literal):
            raise PatchDocumentError(
                "InvalidUpdateInstruction", f"{link} must point at a node", patch_iri
            )
        for t in g.match(subject=container):
            pairs.add((t.predicate, t.object))
    return frozenset(pairs)


def _extract_patch(g: Graph, s: Iri) -> Patch:
    patch_iri = s.value

    update_nodes = g.objects(s, Iri(vocab.PRO_HAS_UPDATE))
    if not update_nodes:
        raise PatchDocumentError("MissingUpdateInstruction", "patch has no update", patch_iri)
    if len(update_nodes) > 1:
        raise PatchDocumentError(
            "MultipleUpdateInstructions",
            f"patch carries {len(update_nodes)} update instructions, exactly one is allowed",
            patch_iri,
        )
    (update_node,) = update_nodes
    if isinstance(update_node, Literal):
        raise PatchDocumentError("InvalidUpdateInstruction", "update must be a node", patch_iri)
    target_graph = _one_iri(
        g, update_node, vocab.GUO_TARGET_GRAPH, "InvalidUpdateInstruction", patch_iri
    )
    target_subject = _one_iri(
        g, update_node, vocab.GUO_TARGET_SUBJECT, "InvalidUpdateInstruction", patch_iri
    )
    update = UpdateInstruction(
        target_graph=target_graph.value,
        target_subject=target_subject.value,
        insertions=_extract_pairs(g, update_node, vocab.GUO_INSERT, patch_iri),
        deletions=_extract_pairs(g, update_node, vocab.GUO_DELETE, patch_iri),
    )

    dataset = _one_iri(g, s, vocab.PRO_APPLIES_TO, "MissingDataset", patch_iri)

    def agent_set(predicate: str) -> frozenset[str]:
        out = set()
        for term in g.objects(s, Iri(predicate)):
            if not isinstance(term, Iri):
                raise PatchDocumentError("InvalidAgent", f"{predicate} must be an IRI", patch_iri)
            out.add(term.value)
        return frozenset(out)

    statuses = g.objects(s, Iri(vocab.PRO_STATUS))
    if not statuses:
        status = PatchStatus.ACTIVE
    elif len(statuses) > 1:
        raise PatchDocumentError("InvalidStatus", "multiple status values", patch_iri)
    else:
        (status_term,) = statuses
        if not isinstance(status_term, Literal):
            raise PatchDocumentError("InvalidStatus", "status must be a literal", patch_iri)
        try:
            status = PatchStatus(status_term.lexical)
        except ValueError:
            raise PatchDocumentError(
                "InvalidStatus", f"unknown status {status_term.lexical!r}", patch_iri
            ) from None

    types: set[PatchType] = set()
    for term in g.objects(s, Iri(vocab.PRO_PATCH_TYPE)):
        if not isinstance(term, Iri):
            raise PatchDocumentError("InvalidPatchType", "patch type must be an IRI", patch_iri)
        types.add(PatchType(term.value))

    groups: set[str] = set()
    for term in g.objects(s, Iri(vocab.PRO_MEMBER_OF)):
        if not isinstance(term, Iri):
            raise PatchDocumentError("InvalidGroup", "group must be an IRI", patch_iri)
        groups.add(term.value)

    comments = g.objects(s, Iri(vocab.PRO_COMMENT))
    if len(comments) > 1:
        raise PatchDocumentError("InvalidComment", "multiple comments", patch_iri)
    comment = None
    if comments:
        (comment_term,) = comments
        if not isinstance(comment_term, Literal):
            raise PatchDocumentError("InvalidComment", "comment must be a literal", patch_iri)
        comment = comment_term.lexical

    events = []
    for node in g.objects(s, Iri(vocab.PRO_HAS_PROVENANCE)):
        if isinstance(node, Literal):
            raise PatchDocumentError(
                "MalformedProvenance", "provenance must be a node", patch_iri
            )
        performed_by = _one_iri(
            g, node, vocab.PRV_PERFORMED_BY, "MalformedProvenance", patch_iri
        )
        actors = g.objects(node, Iri(vocab.PRV_INVOLVED_ACTOR))
        if len(actors) > 1:
            raise PatchDocumentError(
                "MalformedProvenance", "multiple involvedActor values", patch_iri
            )
        actor = None
        if actors:
            (actor_term,) = actors
            if not isinstance(actor_term, Iri):
                raise PatchDocumentError(
                    "MalformedProvenance", "involvedActor must be an IRI", patch_iri
                )
            actor = actor_term.value
        stamps = g.objects(node, Iri(vocab.PRV_PERFORMED_AT))
        if len(stamps) != 1:
            raise PatchDocumentError(
                "MalformedProvenance", "exactly one performedAt is required", patch_iri
            )
        (stamp_term,) = stamps
        if not isinstance(stamp_term, Literal):
            raise PatchDocumentError(
                "MalformedProvenance", "performedAt must be a literal", patch_iri
            )
        try:
            performed_at = parse_timestamp(stamp_term.lexical)
        except ValueError:
            raise PatchDocumentError(
                "MalformedProvenance",
                f"performedAt is not an instant: {stamp_term.lexical!r}",
                patch_iri,
            ) from None
        events.append(
            ProvenanceEvent(
                performed_by=performed_by.value,
                involved_actor=actor,
                performed_at=performed_at,
            )
        )
    events.sort(key=ProvenanceEvent.sort_key)

    return Patch(
        id=patch_iri,
        update=update,
        dataset=dataset.value,
        types=frozenset(types),
        status=status,
        advocates=agent_set(vocab.PRO_HAS_ADVOCATE),
        criticisers=agent_set(vocab.PRO_HAS_CRITICISER),
        groups=frozenset(groups),
        comment=comment,
        provenance=tuple(events),
    )


def patches_from_graph(g: Graph) -> list[Patch]:
    """Extract every pro:Patch subject, ordered by patch IRI."""
    patches = []
    for subject in sorted(
        g.subjects(_RDF_TYPE, _PATCH_CLASS), key=lambda term: str(term)
    ):
        if not isinstance(subject, Iri):
            raise PatchDocumentError(
                "BlankPatchSubject",
                f"patch subject must be an IRI, found blank node _:{subject.label}",
            )
        patches.append(_extract_patch(g, subject))
    return patches


def patches_from_turtle(document: str) -> list[Patch]:
    g, _ = parse_turtle(document)
    return patches_from_graph(g)


def patch_from_turtle(document: str) -> Patch:
    """Read a document holding exactly one patch."""
    patches = patches_from_turtle(document)
    if len(patches) != 1:
        raise PatchDocumentError(
            "DocumentShape", f"expected exactly one patch, found {len(patches)}"
        )
    return patches[0]


# -- JSON ---------------------------------------------------------------------


def term_to_json(term: Term) -> dict:
    if isinstance(term, Iri):
        return {"type": "iri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"type": "bnode", "label": term.label}
    if isinstance(term, Literal):
        out: dict = {"type": "literal", "value": term.lexical}
        if term.language is not None:
            out["language"] = term.language
        elif term.datatype != "http://www.w3.org/2001/XMLSchema#string":
            out["datatype"] = term.datatype
        return out
    raise PatchDocumentError("InvalidTerm", f"not an RDF term: {term!r}")


def term_from_json(data: object) -> Term:
    if not isinstance(data, dict) or "type" not in data:
        raise PatchDocumentError("InvalidTerm", f"expected a term object, got {data!r}")
    kind = data["type"]
    try:
        if kind == "iri":
            return Iri(data["value"])
        if kind == "bnode":
            return BlankNode(data["label"])
        if kind == "literal":
            return Literal(
                data["value"],
                datatype=data.get("datatype", "http://www.w3.org/2001/XMLSchema#string"),
                language=data.get("language"),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise PatchDocumentError("InvalidTerm", f"bad term {data!r}: {exc}") from None
    raise PatchDocumentError("InvalidTerm", f"unknown term type {kind!r}")


def _pair_sort_key(pair: Pair) -> tuple:
    from patchrepo.rdf.ntriples import format_term

    return (pair[0].value, format_term(pair[1]))


def instruction_to_json(update: UpdateInstruction) -> dict:
    return {
        "targetGraph": update.target_graph,
        "targetSubject": update.target_subject,
        "insertions": [
            {"predicate": p.value, "object": term_to_json(o)}
            for p, o in sorted(update.insertions, key=_pair_sort_key)
        ],
        "deletions": [
            {"predicate": p.value, "object": term_to_json(o)}
            for p, o in sorted(update.deletions, key=_pair_sort_key)
        ],
    }


def _pairs_from_json(items: object, what: str) -> frozenset[Pair]:
    if items is None:
        return frozenset()
    if not isinstance(items, list):
        raise PatchDocumentError("InvalidField", f"{what} must be a list")
    pairs = set()
    for item in items:
        if not isinstance(item, dict) or "predicate" not in item or "object" not in item:
            raise PatchDocumentError(
                "InvalidField", f"{what} entries need predicate and object, got {item!r}"
            )
        try:
            pred = Iri(item["predicate"])
        except (TypeError, ValueError):
            raise PatchDocumentError(
                "InvalidField", f"bad predicate {item.get('predicate')!r}"
            ) from None
        pairs.add((pred, term_from_json(item["object"])))
    return frozenset(pairs)


def instruction_from_json(data: object) -> UpdateInstruction:
    if not isinstance(data, dict):
        raise PatchDocumentError("InvalidField", "update must be an object")
    for key in ("targetGraph", "targetSubject"):
        if not isinstance(data.get(key), str):
            raise PatchDocumentError("InvalidField", f"update.{key} must be a string")
    return UpdateInstruction(
        target_graph=data["targetGraph"],
        target_subject=data["targetSubject"],
        insertions=_pairs_from_json(data.get("insertions"), "insertions"),
        deletions=_pairs_from_json(data.get("deletions"), "deletions"),
    )


def provenance_to_json(event: ProvenanceEvent) -> dict:
    return {
        "performedBy": event.performed_by,
        "involvedActor": event.involved_actor,
        "performedAt": format_timestamp(event.performed_at),
    }


def provenance_from_json(data: object) -> ProvenanceEvent:
    if not isinstance(data, dict) or not isinstance(data.get("performedBy"), str):
        raise PatchDocumentError("InvalidField", f"bad provenance event: {data!r}")
    actor = data.get("involvedActor")
    if actor is not None and not isinstance(actor, str):
        raise PatchDocumentError("InvalidField", "involvedActor must be a string or null")
    try:
        at = parse_timestamp(data["performedAt"])
    except (KeyError, TypeError, ValueError):
        raise PatchDocumentError(
            "InvalidField", f"bad performedAt: {data.get('performedAt')!r}"
        ) from None
    try:
        return ProvenanceEvent(
            performed_by=data["performedBy"], involved_actor=actor, performed_at=at
        )
    except ValueError as exc:
        raise PatchDocumentError("InvalidField", str(exc)) from None


def patch_to_json(patch: Patch) -> dict:
    return {
        "id": patch.id,
        "update": instruction_to_json(patch.update),
        "dataset": patch.dataset,
        "types": [
            {"iri": t.iri, "name": t.name} for t in sorted(patch.types, key=lambda t: t.iri)
        ],
        "status": patch.status.value,
        "advocates": sorted(patch.advocates),
        "criticisers": sorted(patch.criticisers),
        "groups": sorted(patch.groups),
        "comment": patch.comment,
        "provenance": [provenance_to_json(e) for e in patch.provenance],
    }


def _string_set(data: object, what: str) -> frozenset[str]:
    if data is None:
        return frozenset()
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise PatchDocumentError("InvalidField", f"{what} must be a list of strings")
    return frozenset(data)


def patch_from_json(data: object) -> Patch:
    if not isinstance(data, dict):
        raise PatchDocumentError("InvalidField", "patch must be a JSON object")
    if "update" not in data:
        raise PatchDocumentError("MissingUpdateInstruction", "patch has no update")
    if not isinstance(data.get("dataset"), str):
        raise PatchDocumentError("MissingDataset", "patch needs a dataset IRI")

    types: set[PatchType] = set()
    raw_types = data.get("types") or []
    if not isinstance(raw_types, list):
        raise PatchDocumentError("InvalidField", "types must be a list")
    for entry in raw_types:
        if isinstance(entry, str):
            candidate = entry
        elif isinstance(entry, dict) and isinstance(entry.get("iri"), str):
            candidate = entry["iri"]
        else:
            raise PatchDocumentError("InvalidPatchType", f"bad type entry {entry!r}")
        try:
            types.add(parse_patch_type(candidate))
        except ValueError as exc:
            raise PatchDocumentError("InvalidPatchType", str(exc)) from None

    status_text = data.get("status", PatchStatus.ACTIVE.value)
    try:
        status = PatchStatus(status_text)
    except ValueError:
        raise PatchDocumentError("InvalidStatus", f"unknown status {status_text!r}") from None

    raw_events = data.get("provenance") or []
    if not isinstance(raw_events, list):
        raise PatchDocumentError("InvalidField", "provenance must be a list")

    comment = data.get("comment")
    if comment is not None and not isinstance(comment, str):
        raise PatchDocumentError("InvalidComment", "comment must be a string or null")

    patch_id = data.get("id")
    if patch_id is not None and not isinstance(patch_id, str):
        raise PatchDocumentError("InvalidField", "id must be a string or null")

    return Patch(
        id=patch_id,
        update=instruction_from_json(data["update"]),
        dataset=data["dataset"],
        types=frozenset(types),
        status=status,
        advocates=_string_set(data.get("advocates"), "advocates"),
        criticisers=_string_set(data.get("criticisers"), "criticisers"),
        groups=_string_set(data.get("groups"), "groups"),
        comment=comment,
        provenance=tuple(provenance_from_json(e) for e in raw_events),
    )
