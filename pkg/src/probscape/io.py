"""Deterministic CSV/JSON artifact persistence and content hashing."""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path


def fmt_cell(value) -> str:
    """Canonical text form: floats via repr so replays are bit-identical."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, header: list[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt_cell(v) for v in row])
    return path


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_json(path, payload) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


class RunManifest:
    """Mutable record of a run: config, grid, and artifact content hashes."""

    FILENAME = "run_manifest.json"

    def __init__(self, out_dir):
        self.out_dir = Path(out_dir)
        self.path = self.out_dir / self.FILENAME
        self.data = read_json(self.path) if self.path.exists() else {
            "tool_version": _tool_version(),
            "config": {},
            "artifacts": {},
        }

    def set_config(self, section: str, payload: dict):
        self.data["config"][section] = payload
        self.save()

    def record_artifact(self, path):
        rel = str(Path(path).relative_to(self.out_dir))
        self.data["artifacts"][rel] = sha256_file(path)
        self.save()

    def save(self):
        write_json(self.path, self.data)


def _tool_version() -> str:
    try:
        from importlib.metadata import version
        return version("probscape")
    except Exception:  # not installed, e.g. run from a checkout
        return "0.0.0+local"
