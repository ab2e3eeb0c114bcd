"""Durable event journal: one JSON object per line, strictly ordered.

The journal is the only persistent artifact; state is rebuilt by folding
every line through ``repository.apply``. A sequence gap, duplicate, or
undecodable line means the file was tampered with or truncated mid-write,
and replay refuses to guess.
"""

from __future__ import annotations

import json
import os
import threading
from datetime import datetime
from pathlib import Path

from filelock import FileLock, Timeout

from patchrepo import repository
from patchrepo.model import (
    Patch,
    PatchGroup,
    PatchStatus,
    format_timestamp,
    parse_timestamp,
)
from patchrepo.repository import Event, RepositoryState, VotePosition


class CorruptJournal(Exception):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class JournalLocked(Exception):
    """Another process holds the journal."""


def encode_event(event: Event) -> str:
    return json.dumps(
        {
            "sequence": event.sequence,
            "at": format_timestamp(event.at),
            "kind": event.kind,
            "payload": event.payload,
        },
        sort_keys=True,
        ensure_ascii=False,
    )


def decode_event(line: str, lineno: int | None = None) -> Event:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorruptJournal(f"not valid JSON: {exc}", lineno) from None
    if not isinstance(data, dict):
        raise CorruptJournal("journal entry must be an object", lineno)
    try:
        return Event(
            sequence=data["sequence"],
            at=parse_timestamp(data["at"]),
            kind=data["kind"],
            payload=data["payload"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptJournal(f"bad journal entry: {exc}", lineno) from None


def replay_lines(lines, repo_base: str) -> RepositoryState:
    state = repository.initial_state(repo_base)
    expected = 1
    for lineno, raw in enumerate(lines, start=1):
        raw = raw.strip()
        if not raw:
            continue
        event = decode_event(raw, lineno)
        if event.sequence != expected:
            raise CorruptJournal(
                f"sequence {event.sequence} where {expected} was expected", lineno
            )
        try:
            state, _ = repository.apply(state, event)
        except (repository.RepositoryError, ValueError) as exc:
            raise CorruptJournal(f"unreplayable event: {exc}", lineno) from exc
        expected += 1
    return state


def replay_file(path: str | os.PathLike, repo_base: str) -> RepositoryState:
    journal = Path(path)
    if not journal.exists():
        return repository.initial_state(repo_base)
    with journal.open("r", encoding="utf-8") as handle:
        return replay_lines(handle, repo_base)


class Repository:
    """Journal-backed repository; safe across threads and processes.

    A file lock next to the journal keeps other processes out for the
    lifetime of the object; an internal lock serializes threads sharing
    one instance. Events hit disk before the in-memory state moves.
    """

    def __init__(
        self,
        journal_path: str | os.PathLike,
        repo_base: str,
        default_agent: str | None = None,
        lock_timeout: float = 10.0,
    ):
        self.journal_path = Path(journal_path)
        self.repo_base = repo_base.rstrip("/")
        self.default_agent = default_agent or f"{self.repo_base}/service"
        self._mutex = threading.Lock()
        self.journal_path.parent.mkdir(parents=True, exist_ok=True)
        self._flock = FileLock(str(self.journal_path) + ".lock")
        try:
            self._flock.acquire(timeout=lock_timeout)
        except Timeout:
            raise JournalLocked(f"{self.journal_path} is locked by another process") from None
        try:
            self._state = replay_file(self.journal_path, self.repo_base)
            self._handle = self.journal_path.open("a", encoding="utf-8")
        except BaseException:
            self._flock.release()
            raise

    def close(self) -> None:
        with self._mutex:
            if self._handle is not None:
                self._handle.close()
                self._handle = None
            if self._flock.is_locked:
                self._flock.release()

    def __enter__(self) -> "Repository":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    @property
    def state(self) -> RepositoryState:
        return self._state

    def _commit(self, new_state: RepositoryState, event: Event) -> None:
        self._handle.write(encode_event(event) + "\n")
        self._handle.flush()
        os.fsync(self._handle.fileno())
        self._state = new_state

    def submit(
        self,
        draft: Patch,
        submitter: str,
        performed_by: str | None = None,
        at: datetime | None = None,
    ) -> Patch:
        patch, _ = self.submit_detailed(draft, submitter, performed_by, at)
        return patch

    def submit_detailed(
        self,
        draft: Patch,
        submitter: str,
        performed_by: str | None = None,
        at: datetime | None = None,
    ) -> tuple[Patch, bool]:
        """Like submit, but also report whether a new patch was minted.

        The flag is decided under the repository lock, so concurrent
        identical submissions see exactly one creation.
        """
        with self._mutex:
            before = self._state
            new_state, event, patch_id = repository.submit_patch(
                before, draft, submitter, performed_by or self.default_agent, at
            )
            self._commit(new_state, event)
            return new_state.patches[patch_id], patch_id not in before.patches

    def vote(
        self,
        ref: str,
        agent: str,
        position: VotePosition,
        performed_by: str | None = None,
        at: datetime | None = None,
    ) -> Patch:
        with self._mutex:
            new_state, event, patch_id = repository.cast_vote(
                self._state, ref, agent, position, performed_by or self.default_agent, at
            )
            self._commit(new_state, event)
            return new_state.patches[patch_id]

    def set_status(
        self,
        ref: str,
        new_status: PatchStatus,
        performed_by: str | None = None,
        actor: str | None = None,
        at: datetime | None = None,
    ) -> Patch:
        with self._mutex:
            new_state, event, patch_id = repository.change_status(
                self._state, ref, new_status, performed_by or self.default_agent, actor, at
            )
            self._commit(new_state, event)
            return new_state.patches[patch_id]

    def create_group(self, group: PatchGroup, at: datetime | None = None) -> PatchGroup:
        with self._mutex:
            new_state, event, group_id = repository.create_group(self._state, group, at)
            self._commit(new_state, event)
            return new_state.groups[group_id]

    def assign_group(self, ref: str, group_id: str, at: datetime | None = None) -> Patch:
        with self._mutex:
            new_state, event, patch_id = repository.assign_group(self._state, ref, group_id, at)
            self._commit(new_state, event)
            return new_state.patches[patch_id]

    def get(self, ref: str) -> Patch:
        with self._mutex:
            return self._state.patches[repository.resolve_ref(self._state, ref)]
