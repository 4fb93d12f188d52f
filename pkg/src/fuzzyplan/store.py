"""Versioned knowledge-base storage and the override audit log.

On-disk layout inside the store directory:

    kb.fkb         the document, canonical rendering
    kb.meta        JSON sidecar: revision and content hash
    overrides.log  append-only, one tab-separated record per line

Edits are optimistic-concurrency: each carries the revision it was computed
against and conflicts if the store has moved on. Accepted edits bump the
revision by exactly 1 and are persisted via atomic file replacement, so a
rejected edit never changes bytes on disk.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from .document import KnowledgeBase, load_document, parse_kb, render_kb, validate
from .engine import ConsultationResult
from .errors import KbDocumentError, RevisionConflictError
from .rules import Diagnostic, parse_rule
from .serde import result_from_dict, result_to_dict

EDIT_KINDS = ("replace_document", "upsert_rule", "delete_rule", "upsert_variable")


@dataclass(frozen=True)
class Edit:
    kind: str
    payload: str
    expected_revision: int

    def __post_init__(self):
        if self.kind not in EDIT_KINDS:
            raise ValueError(f"unknown edit kind {self.kind!r}")


@dataclass(frozen=True)
class OverrideRecord:
    id: str
    consultation_snapshot: ConsultationResult
    therapist_value: float
    note: str
    created_at: str
    kb_revision_at_override: int
    consultation_id: str | None = None


def _parse_variable_payload(payload: str):
    kb = parse_kb(payload)
    if len(kb.variables) != 1 or kb.rules:
        raise KbDocumentError(
            [Diagnostic("error", 1, 1, "payload must be exactly one variable block", "bad-payload")]
        )
    return kb.variables[0]


def apply_edit(kb: KnowledgeBase, edit: Edit) -> tuple[KnowledgeBase, list[Diagnostic]]:
    """Produce the post-edit knowledge base at revision+1, or raise.

    Raises RevisionConflictError on a stale expected_revision and
    KbDocumentError when the edited document fails to parse or validate.
    The input knowledge base is never mutated. Returns the new knowledge
    base together with any validation warnings it carries.
    """
    if edit.expected_revision != kb.revision:
        raise RevisionConflictError(edit.expected_revision, kb.revision)

    if edit.kind == "replace_document":
        parsed = parse_kb(edit.payload)
        candidate = replace(parsed, revision=kb.revision + 1)
    elif edit.kind == "upsert_rule":
        rule = parse_rule(edit.payload)
        key = (frozenset((c.variable, c.term) for c in rule.antecedents), rule.consequent.variable)
        rules = list(kb.rules)
        for i, existing in enumerate(rules):
            ekey = (
                frozenset((c.variable, c.term) for c in existing.antecedents),
                existing.consequent.variable,
            )
            if ekey == key:
                rules[i] = rule
                break
        else:
            rules.append(rule)
        candidate = replace(kb, rules=tuple(rules), revision=kb.revision + 1)
    elif edit.kind == "delete_rule":
        target = kb.rule(edit.payload.strip())
        if target is None:
            raise KbDocumentError(
                [Diagnostic("error", 1, 1, f"no rule with id '{edit.payload.strip()}'", "unknown-rule")]
            )
        rules = tuple(r for r in kb.rules if r.id != target.id)
        candidate = replace(kb, rules=rules, revision=kb.revision + 1)
    else:  # upsert_variable
        var = _parse_variable_payload(edit.payload)
        variables = list(kb.variables)
        for i, existing in enumerate(variables):
            if existing.name == var.name:
                variables[i] = var
                break
        else:
            variables.append(var)
        candidate = replace(kb, variables=tuple(variables), revision=kb.revision + 1)

    diags = validate(candidate)
    errors = [d for d in diags if d.severity == "error"]
    if errors:
        raise KbDocumentError(diags)
    warnings = [d for d in diags if d.severity == "warning"]
    return candidate, warnings


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(text: str) -> str:
    out, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            out.append({"t": "\t", "n": "\n", "\\": "\\"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class KnowledgeBaseStore:
    """Single authoritative store: many concurrent readers of the current
    immutable snapshot, writes serialized through one lock."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._lock = threading.Lock()
        self.current = self._load()

    # -- paths ------------------------------------------------------------

    @property
    def kb_path(self) -> Path:
        return self.directory / "kb.fkb"

    @property
    def meta_path(self) -> Path:
        return self.directory / "kb.meta"

    @property
    def overrides_path(self) -> Path:
        return self.directory / "overrides.log"

    # -- lifecycle --------------------------------------------------------

    @classmethod
    def initialize(cls, directory: str | Path, document: str) -> "KnowledgeBaseStore":
        """Create a fresh store at revision 0 from a document."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        load_document(document)  # abort before writing anything
        (directory / "kb.fkb").write_text(document, encoding="utf-8")
        meta = {"revision": 0, "sha256": hashlib.sha256(document.encode()).hexdigest()}
        (directory / "kb.meta").write_text(json.dumps(meta), encoding="utf-8")
        return cls(directory)

    def _load(self) -> KnowledgeBase:
        document = self.kb_path.read_text(encoding="utf-8")
        revision = 0
        if self.meta_path.exists():
            meta = json.loads(self.meta_path.read_text(encoding="utf-8"))
            revision = int(meta.get("revision", 0))
            # a hash mismatch means the document was edited out of band; the
            # document wins and keeps the stored revision
        return load_document(document, revision=revision)

    def _persist(self, kb: KnowledgeBase) -> None:
        document = render_kb(kb)
        tmp = Path(str(self.kb_path) + ".tmp")
        tmp.write_text(document, encoding="utf-8")
        os.replace(tmp, self.kb_path)
        meta = {"revision": kb.revision, "sha256": hashlib.sha256(document.encode()).hexdigest()}
        tmp_meta = Path(str(self.meta_path) + ".tmp")
        tmp_meta.write_text(json.dumps(meta), encoding="utf-8")
        os.replace(tmp_meta, self.meta_path)

    # -- edits ------------------------------------------------------------

    def apply(self, edit: Edit) -> tuple[KnowledgeBase, list[Diagnostic]]:
        with self._lock:
            new_kb, warnings = apply_edit(self.current, edit)
            self._persist(new_kb)
            self.current = new_kb
            return new_kb, warnings

    # -- override log -----------------------------------------------------

    def record_override(
        self,
        result: ConsultationResult,
        therapist_value: float,
        note: str = "",
        consultation_id: str | None = None,
    ) -> OverrideRecord:
        """Append a therapist disagreement (or comment) to the audit log.

        Rejected when the value equals the system's conclusion and the note
        is empty: an override must record a disagreement or a comment.
        """
        if therapist_value == result.crisp_output and not note:
            raise ValueError(
                "override must differ from the system value or carry a non-empty note"
            )
        record = OverrideRecord(
            id=uuid.uuid4().hex[:12],
            consultation_snapshot=result,
            therapist_value=float(therapist_value),
            note=note,
            created_at=_utc_now(),
            kb_revision_at_override=result.kb_revision,
            consultation_id=consultation_id,
        )
        line = "\t".join(
            [
                record.id,
                record.created_at,
                str(record.kb_revision_at_override),
                repr(record.therapist_value),
                _escape(record.note),
                record.consultation_id or "-",
                json.dumps(result_to_dict(result), separators=(",", ":")),
            ]
        )
        with self._lock:
            with open(self.overrides_path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
        return record

    def list_overrides(self) -> list[OverrideRecord]:
        if not self.overrides_path.exists():
            return []
        records = []
        for line in self.overrides_path.read_text(encoding="utf-8").splitlines():
            if not line:
                continue
            rid, created_at, revision, value, note, consultation_id, snapshot = line.split("\t", 6)
            records.append(
                OverrideRecord(
                    id=rid,
                    consultation_snapshot=result_from_dict(json.loads(snapshot)),
                    therapist_value=float(value),
                    note=_unescape(note),
                    created_at=created_at,
                    kb_revision_at_override=int(revision),
                    consultation_id=None if consultation_id == "-" else consultation_id,
                )
            )
        return records
