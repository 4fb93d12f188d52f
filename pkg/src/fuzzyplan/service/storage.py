"""Append-only JSONL persistence for children and stored consultations."""

from __future__ import annotations

import json
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class CaseStore:
    """Child records and consultations, kept in insertion order.

    Each record is one JSON line; files are replayed at startup and appended
    under a lock afterwards.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._children: dict[str, dict[str, Any]] = {}
        self._consultations: dict[str, dict[str, Any]] = {}
        self._replay(self._children_path, self._children)
        self._replay(self._consultations_path, self._consultations)

    @property
    def _children_path(self) -> Path:
        return self.directory / "children.jsonl"

    @property
    def _consultations_path(self) -> Path:
        return self.directory / "consultations.jsonl"

    @staticmethod
    def _replay(path: Path, target: dict[str, dict[str, Any]]) -> None:
        if not path.exists():
            return
        for line in path.read_text(encoding="utf-8").splitlines():
            if line:
                record = json.loads(line)
                target[record["id"]] = record

    def _append(self, path: Path, record: dict[str, Any]) -> None:
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, separators=(",", ":")) + "\n")

    # -- children ----------------------------------------------------------

    def create_child(self, display_label: str, age_years: float) -> dict[str, Any]:
        if not 3 <= age_years <= 8:
            raise ValueError(f"age_years must lie in [3, 8], got {age_years!r}")
        record = {
            "id": uuid.uuid4().hex[:12],
            "display_label": display_label,
            "age_years": float(age_years),
            "created_at": _utc_now(),
        }
        with self._lock:
            self._children[record["id"]] = record
            self._append(self._children_path, record)
        return record

    def get_child(self, child_id: str) -> Optional[dict[str, Any]]:
        return self._children.get(child_id)

    def list_children(self) -> list[dict[str, Any]]:
        return list(self._children.values())

    # -- consultations -------------------------------------------------------

    def add_consultation(self, result: dict[str, Any], child_id: Optional[str]) -> dict[str, Any]:
        record = {
            "id": uuid.uuid4().hex[:12],
            "child_id": child_id,
            "created_at": _utc_now(),
            "result": result,
        }
        with self._lock:
            self._consultations[record["id"]] = record
            self._append(self._consultations_path, record)
        return record

    def get_consultation(self, consultation_id: str) -> Optional[dict[str, Any]]:
        return self._consultations.get(consultation_id)

    def list_consultations(self, child_id: Optional[str] = None) -> list[dict[str, Any]]:
        records = self._consultations.values()
        if child_id is None:
            return list(records)
        return [r for r in records if r["child_id"] == child_id]
