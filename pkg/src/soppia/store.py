"""File-backed, versioned storage for cases, schemas, and results.

Layout under the store root:

    <root>/cases/<record_id>/<revision>.json
    <root>/schemas/<record_id>/<revision>.json
    <root>/results/<record_id>/<revision>.json
    <root>/index.json

Every file is canonical JSON (UTF-8, sorted keys, no insignificant
whitespace), so a byte-for-byte comparison is a semantic comparison.
Revisions are monotonically increasing from 1 and never overwritten;
saving an existing record id appends the next revision. Writes are
serialized by a store-level lock and land via atomic rename, so readers
never observe a torn file. One process writes; many may read.
"""

from __future__ import annotations

import json
import os
import re
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .canonical import canonical_json
from .errors import NotFound, SoppiaError, StorageError, ValidationError
from .schema import schema_from_dict, validate_schema
from .scoring import case_from_dict

KINDS = ("case", "schema", "result")

_KIND_DIRS = {"case": "cases", "schema": "schemas", "result": "results"}
_SAFE_ID = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


@dataclass(frozen=True)
class StoredRecord:
    record_id: str
    kind: str
    revision: int
    payload: dict
    schema_ref: str | None
    saved_at: str


@dataclass(frozen=True)
class RecordSummary:
    record_id: str
    kind: str
    latest_revision: int
    saved_at: str


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def _validate_payload(kind: str, payload: dict) -> str | None:
    """Check a payload against its kind's contract; returns its schema ref."""
    if kind == "case":
        try:
            case_from_dict(payload)
        except SoppiaError as exc:
            raise ValidationError(f"invalid case payload: {exc}", field=exc.field) from exc
        return None
    if kind == "schema":
        try:
            schema = schema_from_dict(payload)
        except SoppiaError as exc:
            raise ValidationError(f"invalid schema payload: {exc}", field=exc.field) from exc
        violations = validate_schema(schema)
        if violations:
            raise ValidationError(
                f"invalid schema payload: {violations[0].message}",
                field=violations[0].field,
            )
        return f"{schema.schema_id}@{schema.version}"
    if kind == "result":
        if not isinstance(payload, dict) or "breakdown" not in payload:
            raise ValidationError(
                "result payload must be an object with a breakdown",
                field="breakdown",
            )
        report = payload.get("report")
        if isinstance(report, dict) and report.get("schema_id"):
            return f"{report['schema_id']}@{report.get('schema_version', '?')}"
        return None
    raise ValidationError(f"unknown record kind {kind!r}; expected one of {KINDS}")


def _derive_record_id(kind: str, payload: dict) -> str:
    key = {"case": "case_id", "schema": "schema_id", "result": "case_id"}[kind]
    if kind == "result":
        report = payload.get("report")
        value = report.get("case_id") if isinstance(report, dict) else None
    else:
        value = payload.get(key)
    if not isinstance(value, str) or not value:
        raise ValidationError(
            f"cannot derive a record id for this {kind}; pass record_id explicitly"
        )
    return value


class CaseStore:
    """Single-writer, multi-reader record store rooted at a directory."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self._lock = threading.Lock()
        try:
            for directory in _KIND_DIRS.values():
                (self.root / directory).mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageError(f"cannot initialize store at {self.root}: {exc}") from exc

    def _index_path(self) -> Path:
        return self.root / "index.json"

    def _read_index(self) -> dict:
        path = self._index_path()
        if not path.exists():
            return {"records": {}}
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise StorageError(f"cannot read store index: {exc}") from exc

    def _write_atomic(self, path: Path, text: str) -> None:
        tmp = path.with_suffix(".tmp")
        try:
            tmp.write_text(text, encoding="utf-8")
            os.replace(tmp, path)
        except OSError as exc:
            raise StorageError(f"cannot write {path}: {exc}") from exc

    def save(self, kind: str, payload: dict, record_id: str | None = None) -> StoredRecord:
        """Validate and append a new revision; returns the stored record."""
        if kind not in KINDS:
            raise ValidationError(f"unknown record kind {kind!r}; expected one of {KINDS}")
        schema_ref = _validate_payload(kind, payload)
        rid = record_id or _derive_record_id(kind, payload)
        if not _SAFE_ID.match(rid):
            raise ValidationError(
                f"record id {rid!r} is not filesystem-safe", field="record_id"
            )
        with self._lock:
            index = self._read_index()
            records = index.setdefault("records", {})
            entry = records.get(rid)
            if entry is not None and entry.get("kind") != kind:
                raise ValidationError(
                    f"record id {rid!r} already exists with kind {entry.get('kind')!r}"
                )
            revision = (entry.get("latest_revision", 0) if entry else 0) + 1
            saved_at = _now()
            record_dir = self.root / _KIND_DIRS[kind] / rid
            try:
                record_dir.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise StorageError(f"cannot create {record_dir}: {exc}") from exc
            self._write_atomic(
                record_dir / f"{revision}.json", canonical_json(payload)
            )
            records[rid] = {
                "kind": kind,
                "latest_revision": revision,
                "saved_at": saved_at,
                "schema_ref": schema_ref,
            }
            self._write_atomic(self._index_path(), canonical_json(index))
        return StoredRecord(
            record_id=rid,
            kind=kind,
            revision=revision,
            payload=payload,
            schema_ref=schema_ref,
            saved_at=saved_at,
        )

    def load(self, record_id: str, revision: int | None = None) -> StoredRecord:
        """Load a record's given (or latest) revision."""
        index = self._read_index()
        entry = index.get("records", {}).get(record_id)
        if entry is None:
            raise NotFound(f"no record {record_id!r}")
        wanted = revision if revision is not None else entry["latest_revision"]
        if wanted < 1 or wanted > entry["latest_revision"]:
            raise NotFound(f"record {record_id!r} has no revision {wanted}")
        path = self.root / _KIND_DIRS[entry["kind"]] / record_id / f"{wanted}.json"
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise NotFound(f"record {record_id!r} has no revision {wanted}") from exc
        except (OSError, json.JSONDecodeError) as exc:
            raise StorageError(f"cannot read {path}: {exc}") from exc
        return StoredRecord(
            record_id=record_id,
            kind=entry["kind"],
            revision=wanted,
            payload=payload,
            schema_ref=entry.get("schema_ref"),
            saved_at=entry["saved_at"],
        )

    def list(self, kind: str | None = None, match: str | None = None) -> list[RecordSummary]:
        """Summaries, most recently saved first; optional kind/id filters."""
        if kind is not None and kind not in KINDS:
            raise ValidationError(f"unknown record kind {kind!r}; expected one of {KINDS}")
        index = self._read_index()
        summaries = []
        for record_id, entry in index.get("records", {}).items():
            if kind is not None and entry.get("kind") != kind:
                continue
            if match is not None and match not in record_id:
                continue
            summaries.append(
                RecordSummary(
                    record_id=record_id,
                    kind=entry["kind"],
                    latest_revision=entry["latest_revision"],
                    saved_at=entry["saved_at"],
                )
            )
        summaries.sort(key=lambda s: (s.saved_at, s.record_id), reverse=True)
        return summaries


def summary_to_dict(summary: RecordSummary) -> dict:
    return {
        "record_id": summary.record_id,
        "kind": summary.kind,
        "latest_revision": summary.latest_revision,
        "saved_at": summary.saved_at,
    }
