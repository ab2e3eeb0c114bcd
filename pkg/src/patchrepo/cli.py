"""Command line front end.

Commands work against a local journal by default and against a running
service when --endpoint is given. Exit codes: 0 success, 1 the input or
request was rejected (validation, conflicts, unknown refs), 2 usage or
I/O trouble.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from patchrepo import __version__
from patchrepo import repository as repo_ops
from patchrepo.feedback import InconsistentVote
from patchrepo.journal import CorruptJournal, JournalLocked, Repository, replay_file
from patchrepo.model import (
    PatchStatus,
    normalize_candidate,
    parse_patch_type,
    validate_instruction,
    validate_patch,
)
from patchrepo.patchdoc import (
    PatchDocumentError,
    ValidationFailed,
    patch_from_json,
    patch_from_turtle,
    patch_to_json,
    patch_to_turtle,
    patches_from_turtle,
    patches_to_turtle,
)
from patchrepo.rdf.errors import TurtleParseError
from patchrepo.rdf.turtle import parse_turtle, serialize_turtle
from patchrepo.repository import Ordering, PatchFilter, RepositoryError, VotePosition
from patchrepo.sparql import GraphMismatch, SparqlDialect, apply_instruction, export_updates

DOMAIN_ERRORS = (
    RepositoryError,
    PatchDocumentError,
    TurtleParseError,
    ValidationFailed,
    InconsistentVote,
    CorruptJournal,
)


def _fail(message: str, code: int = 1) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    if not path.exists():
        _fail(f"no such file: {source}", 2)
    return path.read_text(encoding="utf-8")


def _http_error(response: httpx.Response) -> None:
    try:
        body = response.json()
        message = f"{body.get('error')}: {body.get('message')}"
    except ValueError:
        message = response.text[:200]
    _fail(f"service answered {response.status_code}: {message}")


class Remote:
    def __init__(self, endpoint: str):
        self.base = endpoint.rstrip("/")
        self.client = httpx.Client(base_url=self.base, timeout=30.0)

    def request(self, method: str, path: str, **kwargs) -> httpx.Response:
        try:
            response = self.client.request(method, path, **kwargs)
        except httpx.HTTPError as exc:
            _fail(f"cannot reach {self.base}: {exc}", 2)
        if response.status_code >= 400:
            _http_error(response)
        return response


journal_option = click.option(
    "--journal",
    envvar="PATCHREPO_JOURNAL",
    default="patchrepo.ndjson",
    show_default=True,
    help="Journal file backing the repository.",
)
base_option = click.option(
    "--base",
    envvar="PATCHREPO_BASE",
    default="http://localhost:8000/repo",
    show_default=True,
    help="IRI base under which patch ids are minted.",
)
endpoint_option = click.option(
    "--endpoint",
    envvar="PATCHREPO_ENDPOINT",
    default=None,
    help="Service URL; when set, talk HTTP instead of using the journal.",
)


@click.group()
@click.version_option(version=__version__, prog_name="patchrepo")
def main() -> None:
    """Collaborative patch repository for RDF datasets."""


@main.command()
@journal_option
@base_option
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--agent", default=None, help="Service agent IRI recorded in provenance.")
@click.option(
    "--dataset",
    "datasets",
    multiple=True,
    help="Known dataset as IRI=LABEL; repeatable.",
)
@click.option("--cors", default="*", show_default=True, help="Comma-separated allowed origins.")
def serve(journal, base, host, port, agent, datasets, cors) -> None:
    """Run the HTTP service."""
    import uvicorn

    from patchrepo.service import ApiConfig, create_app

    registry = {}
    for item in datasets:
        iri, _, label = item.partition("=")
        registry[iri] = label or iri
    config = ApiConfig(
        repo_base=base,
        journal_path=journal,
        service_agent=agent,
        datasets=registry,
        cors_origins=tuple(o.strip() for o in cors.split(",") if o.strip()),
    )
    try:
        uvicorn.run(create_app(config), host=host, port=port, log_level="info")
    except JournalLocked as exc:
        _fail(str(exc), 2)


@main.command()
@click.argument("source")
@click.option("--submitter", default=None, help="Agent IRI; defaults to the document advocate.")
@journal_option
@base_option
@endpoint_option
def submit(source, submitter, journal, base, endpoint) -> None:
    """Submit a patch document (Turtle file or '-' for stdin)."""
    text = _read_source(source)
    if endpoint:
        remote = Remote(endpoint)
        response = remote.request(
            "POST", "/patches", content=text, headers={"Content-Type": "text/turtle"}
        )
        data = response.json()
        click.echo(data["id"])
        return
    try:
        draft = patch_from_turtle(text)
        agent = submitter or _single_advocate(draft)
        with Repository(journal, base) as repo:
            patch = repo.submit(draft.with_id(None) if draft.id else draft, agent)
        click.echo(patch.id)
    except JournalLocked as exc:
        _fail(str(exc), 2)
    except DOMAIN_ERRORS as exc:
        _fail(str(exc))


def _single_advocate(draft) -> str:
    if len(draft.advocates) != 1:
        _fail("document must name exactly one advocate, or pass --submitter")
    (agent,) = draft.advocates
    return agent


def _local_state(journal: str, base: str):
    try:
        return replay_file(journal, base)
    except CorruptJournal as exc:
        _fail(str(exc))


def _summary_row(data: dict) -> str:
    types = ",".join(t["name"] for t in data["types"]) or "-"
    return (
        f"{data['id']}  [{data['status']}]  +{len(data['advocates'])}"
        f"/-{len(data['criticisers'])}  {types}  {data['update']['targetSubject']}"
    )


def _print_table(rows: list[dict]) -> None:
    # nothing selected prints nothing; keeps the output pipe-friendly
    if not rows:
        return
    header = ("ID", "STATUS", "VOTES", "TYPES", "SUBJECT")
    cells = [
        (
            data["id"] or "-",
            data["status"],
            f"+{len(data['advocates'])}/-{len(data['criticisers'])}",
            ",".join(t["name"] for t in data["types"]) or "-",
            data["update"]["targetSubject"],
        )
        for data in rows
    ]
    widths = [max(len(row[i]) for row in (header, *cells)) for i in range(len(header))]
    for row in (header, *cells):
        click.echo("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def filter_options(fn):
    for option in reversed(
        (
            click.option("--dataset", default=None),
            click.option(
                "--status", default=None, type=click.Choice([s.value for s in PatchStatus])
            ),
            click.option("--type", "types", multiple=True, help="Type name or IRI; repeatable."),
            click.option("--subject", default=None, help="Target subject IRI."),
            click.option(
                "--min-advocates",
                default=None,
                type=click.IntRange(min=0),
                help="Keep patches with at least this many advocates.",
            ),
            click.option("--agent", default=None, help="Agent IRI on either side."),
            click.option("--group", default=None),
        )
    ):
        fn = option(fn)
    return fn


def _build_filter(dataset, status, types, subject, min_advocates, agent, group) -> PatchFilter:
    try:
        return PatchFilter(
            dataset=dataset,
            status=PatchStatus(status) if status else None,
            types=frozenset(parse_patch_type(t) for t in types),
            subject=subject,
            min_advocates=min_advocates,
            agent=agent,
            group=group,
        )
    except ValueError as exc:
        _fail(str(exc), 2)


def _filter_params(dataset, status, types, subject, min_advocates, agent, group) -> list:
    params = []
    for name, value in (
        ("dataset", dataset),
        ("status", status),
        ("subject", subject),
        ("agent", agent),
        ("group", group),
    ):
        if value is not None:
            params.append((name, value))
    if min_advocates is not None:
        params.append(("minAdvocates", str(min_advocates)))
    for t in types:
        params.append(("type", t))
    return params


def _emit(rows: list[dict], output: str) -> None:
    if output == "json":
        click.echo(json.dumps(rows, indent=2))
    elif output == "turtle":
        text = patches_to_turtle([patch_from_json(row) for row in rows])
        if text:
            click.echo(text)
    else:
        _print_table(rows)


@main.command()
@filter_options
@click.option(
    "--order",
    default="recent",
    show_default=True,
    type=click.Choice(["recent", "popular"]),
)
@click.option("--limit", default=None, type=int)
@click.option("--offset", default=0, show_default=True, type=int)
@click.option(
    "--output",
    default="table",
    show_default=True,
    type=click.Choice(["table", "json", "turtle"]),
)
@journal_option
@base_option
@endpoint_option
def query(dataset, status, types, subject, min_advocates, agent, group, order, limit, offset,
          output, journal, base, endpoint) -> None:
    """List patches matching the given criteria."""
    if endpoint:
        params = _filter_params(dataset, status, types, subject, min_advocates, agent, group)
        params += [("order", order), ("offset", str(offset))]
        if limit is not None:
            params.append(("limit", str(limit)))
        rows = Remote(endpoint).request("GET", "/patches", params=params).json()["patches"]
    else:
        criteria = _build_filter(dataset, status, types, subject, min_advocates, agent, group)
        ordering = Ordering.MOST_POPULAR if order == "popular" else Ordering.MOST_RECENT
        state = _local_state(journal, base)
        rows = [
            patch_to_json(p)
            for p in repo_ops.query_patches(state, criteria, ordering, limit, offset)
        ]
    _emit(rows, output)


@main.command()
@click.argument("ref")
@click.option("--turtle", is_flag=True, help="Print the patch document instead of JSON.")
@journal_option
@base_option
@endpoint_option
def show(ref, turtle, journal, base, endpoint) -> None:
    """Print one patch by numeric reference or full IRI."""
    if endpoint:
        headers = {"Accept": "text/turtle"} if turtle else {}
        response = Remote(endpoint).request("GET", f"/patches/{ref}", headers=headers)
        click.echo(response.text if turtle else json.dumps(response.json(), indent=2))
        return
    state = _local_state(journal, base)
    try:
        patch = state.patches[repo_ops.resolve_ref(state, ref)]
    except DOMAIN_ERRORS as exc:
        _fail(str(exc))
    click.echo(patch_to_turtle(patch) if turtle else json.dumps(patch_to_json(patch), indent=2))


@main.command()
@click.argument("ref")
@click.option("--agent", required=True, help="Voting agent IRI.")
@click.option(
    "--position",
    required=True,
    type=click.Choice([p.value for p in VotePosition]),
)
@journal_option
@base_option
@endpoint_option
def vote(ref, agent, position, journal, base, endpoint) -> None:
    """Endorse or dispute a patch."""
    if endpoint:
        data = Remote(endpoint).request(
            "POST", f"/patches/{ref}/votes", json={"agent": agent, "position": position}
        ).json()
        click.echo(_summary_row(data))
        return
    try:
        with Repository(journal, base) as repo:
            patch = repo.vote(ref, agent, VotePosition(position))
        click.echo(_summary_row(patch_to_json(patch)))
    except JournalLocked as exc:
        _fail(str(exc), 2)
    except DOMAIN_ERRORS as exc:
        _fail(str(exc))


@main.command()
@click.argument("ref")
@click.option("--to", "new_status", required=True,
              type=click.Choice([PatchStatus.RESOLVED.value, PatchStatus.REJECTED.value]))
@click.option("--actor", default=None, help="Agent IRI responsible for the decision.")
@journal_option
@base_option
@endpoint_option
def status(ref, new_status, actor, journal, base, endpoint) -> None:
    """Close a patch as resolved or rejected."""
    if endpoint:
        data = Remote(endpoint).request(
            "POST", f"/patches/{ref}/status", json={"status": new_status, "actor": actor}
        ).json()
        click.echo(_summary_row(data))
        return
    try:
        with Repository(journal, base) as repo:
            patch = repo.set_status(ref, PatchStatus(new_status), actor=actor)
        click.echo(_summary_row(patch_to_json(patch)))
    except JournalLocked as exc:
        _fail(str(exc), 2)
    except DOMAIN_ERRORS as exc:
        _fail(str(exc))


def _selected_patches(
    dataset, status, types, subject, min_advocates, agent, group, order,
    journal, base, endpoint,
) -> list:
    """Patch objects matching the filter flags; rejected ones are skipped
    unless --status asked for them explicitly."""
    ordering = Ordering.MOST_POPULAR if order == "popular" else Ordering.MOST_RECENT
    if endpoint:
        params = _filter_params(dataset, status, types, subject, min_advocates, agent, group)
        params.append(("order", order))
        body = Remote(endpoint).request("GET", "/patches", params=params).json()
        patches = [patch_from_json(row) for row in body["patches"]]
        if status is None:
            patches = [p for p in patches if p.status is not PatchStatus.REJECTED]
        return patches
    criteria = _build_filter(dataset, status, types, subject, min_advocates, agent, group)
    state = _local_state(journal, base)
    return repo_ops.update_feed(state, criteria, ordering)


@main.command()
@filter_options
@click.option(
    "--order",
    default="recent",
    show_default=True,
    type=click.Choice(["recent", "popular"]),
)
@click.option(
    "--dialect",
    default=SparqlDialect.SPARQL11.value,
    show_default=True,
    type=click.Choice([d.value for d in SparqlDialect]),
)
@click.option("--header/--no-header", default=True, show_default=True)
@click.option("--output", "-o", default="-", show_default=True)
@journal_option
@base_option
@endpoint_option
def export(dataset, status, types, subject, min_advocates, agent, group, order, dialect,
           header, output, journal, base, endpoint) -> None:
    """Write matching patches as a SPARQL Update script."""
    patches = _selected_patches(
        dataset, status, types, subject, min_advocates, agent, group, order,
        journal, base, endpoint,
    )
    text = export_updates([p.update for p in patches], SparqlDialect(dialect), header=header)
    if output == "-":
        click.echo(text)
    else:
        Path(output).write_text(text + ("\n" if text else ""), encoding="utf-8")
        click.echo(f"wrote {output}", err=True)


@main.command()
@click.option("--data", required=True, help="Turtle file holding the graph to update.")
@click.option("--patch-file", default=None, help="Patch document to apply (Turtle file or '-').")
@click.option("--patch", "ref", default=None, help="Apply one repository patch by reference.")
@filter_options
@click.option("--dry-run", is_flag=True, help="Report changes without writing.")
@click.option("--output", "-o", default=None, help="Write here instead of back into --data.")
@journal_option
@base_option
@endpoint_option
def apply(data, patch_file, ref, dataset, status, types, subject, min_advocates, agent, group,
          dry_run, output, journal, base, endpoint) -> None:
    """Apply patch instructions to a local Turtle file.

    The instructions come from a patch document (--patch-file), from one
    repository patch (--patch), or from every repository patch matching the
    filter flags. Repository patches apply in mint order.
    """
    filtered = any(
        value not in (None, ()) for value in (dataset, status, types, subject,
                                              min_advocates, agent, group)
    )
    if sum((patch_file is not None, ref is not None, filtered)) != 1:
        _fail("pass exactly one of --patch-file, --patch, or filter flags", 2)
    path = Path(data)
    if not path.exists():
        _fail(f"no such file: {data}", 2)
    try:
        graph, prefixes = parse_turtle(path.read_text(encoding="utf-8"))
    except TurtleParseError as exc:
        _fail(f"{data}: {exc}")

    try:
        if patch_file is not None:
            patches = patches_from_turtle(_read_source(patch_file))
            for candidate in patches:
                bad = validate_instruction(candidate.update)
                if bad:
                    _fail("; ".join(f"{v.code}: {v.message}" for v in bad))
        elif ref is not None:
            if endpoint:
                patches = [patch_from_json(Remote(endpoint).request(
                    "GET", f"/patches/{ref}").json())]
            else:
                state = _local_state(journal, base)
                patches = [state.patches[repo_ops.resolve_ref(state, ref)]]
        else:
            patches = sorted(
                _selected_patches(
                    dataset, status, types, subject, min_advocates, agent, group,
                    "recent", journal, base, endpoint,
                ),
                key=lambda p: repo_ops.patch_sequence(p.id or ""),
            )
    except DOMAIN_ERRORS as exc:
        _fail(str(exc))

    added = removed = absent = 0
    for patch in patches:
        try:
            report = apply_instruction(graph, patch.update)
        except GraphMismatch as exc:
            _fail(str(exc))
        added += len(report.added)
        removed += len(report.removed)
        absent += len(report.absent_deletions)
    click.echo(
        f"{len(patches)} instruction(s): +{added} triple(s), -{removed} triple(s),"
        f" {absent} absent deletion(s)"
    )
    if not dry_run:
        target = Path(output) if output else path
        target.write_text(serialize_turtle(graph, prefixes), encoding="utf-8")
        click.echo(f"updated {target}", err=True)


@main.command()
@click.argument("kind", type=click.Choice(["popular", "recent"]))
@click.option("--dataset", default=None)
@click.option("--limit", default=10, show_default=True, type=int)
@journal_option
@base_option
@endpoint_option
def report(kind, dataset, limit, journal, base, endpoint) -> None:
    """Show the most popular or most recently active open patches."""
    if endpoint:
        params = {"limit": str(limit)}
        if dataset:
            params["dataset"] = dataset
        rows = Remote(endpoint).request("GET", f"/reports/{kind}", params=params).json()[
            "patches"
        ]
    else:
        state = _local_state(journal, base)
        fn = repo_ops.popular_report if kind == "popular" else repo_ops.recent_report
        rows = [patch_to_json(p) for p in fn(state, dataset=dataset, limit=limit)]
    _print_table(rows)


@main.command()
@click.argument("source", default="-")
def validate(source) -> None:
    """Check a patch document; exit 0 and stay silent when every patch is sound.

    Violations print one per line, prefixed with the offending patch when
    the document holds more than one.
    """
    text = _read_source(source)
    try:
        drafts = patches_from_turtle(text)
    except (TurtleParseError, PatchDocumentError) as exc:
        _fail(str(exc))
    clean = True
    for index, draft in enumerate(drafts, start=1):
        label = "" if len(drafts) == 1 else f"{draft.id or f'patch {index}'}: "
        for v in validate_patch(normalize_candidate(draft)):
            click.echo(f"{label}{v.code}: {v.message}")
            clean = False
    if not clean:
        sys.exit(1)


if __name__ == "__main__":
    main()
