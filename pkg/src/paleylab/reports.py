"""Verification reports (JSON/CSV) and the on-disk clique cache."""

from __future__ import annotations

import csv
import io
import json
import os
import re
import tempfile
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import __version__
from .clique import SOLVER_VERSION, CliqueCertificate, max_clique
from .graphs import CayleyGraph, Graph

SCHEMA_VERSION = 1
PASS, FAIL = "PASS", "FAIL"


@dataclass
class Case:
    inputs: dict
    tag: str  # property being checked
    expected: object
    computed: object
    ok: bool

    @property
    def verdict(self) -> str:
        return PASS if self.ok else FAIL

    def to_dict(self) -> dict:
        return {
            "inputs": self.inputs,
            "tag": self.tag,
            "expected": self.expected,
            "computed": self.computed,
            "verdict": self.verdict,
        }


@dataclass
class VerificationReport:
    suite: str
    grid: dict
    cases: list[Case] = dc_field(default_factory=list)
    provenance: dict = dc_field(default_factory=dict)
    notes: list[dict] = dc_field(default_factory=list)
    table: list[list] | None = None  # optional CSV body (header first)

    def add(self, inputs: dict, tag: str, expected, computed, ok: bool) -> Case:
        case = Case(inputs, tag, expected, computed, bool(ok))
        self.cases.append(case)
        return case

    def extend(self, other: "VerificationReport") -> None:
        self.cases.extend(other.cases)
        self.provenance.update(other.provenance)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.cases)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def totals(self, tag: str | None = None) -> tuple[int, int]:
        sel = [c for c in self.cases if tag is None or c.tag == tag]
        return sum(c.ok for c in sel), len(sel)

    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.ok]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "toolkit_version": __version__,
            "solver_version": SOLVER_VERSION,
            "suite": self.suite,
            "grid": self.grid,
            "provenance": dict(sorted(self.provenance.items())),
            "cases": [c.to_dict() for c in self.cases],
            "notes": self.notes,
            "totals": {"cases": len(self.cases), "passed": self.passed, "failed": self.failed},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.table is not None:
            w.writerows(self.table)
        else:
            w.writerow(["suite", "tag", "inputs", "expected", "computed", "verdict"])
            for c in self.cases:
                w.writerow(
                    [self.suite, c.tag, json.dumps(c.inputs, sort_keys=True), _plain(c.expected), _plain(c.computed), c.verdict]
                )
        return buf.getvalue()

    def summary_line(self) -> str:
        return f"{self.suite}: {self.passed}/{len(self.cases)} PASS"

    def write(self, out_dir: str | os.PathLike, fmt: str = "json") -> Path:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{self.suite}.{fmt}"
        atomic_write(path, self.to_json() if fmt == "json" else self.to_csv())
        return path


def _plain(v) -> str:
    return v if isinstance(v, str) else json.dumps(v, sort_keys=True)


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# clique cache


def cache_dir() -> Path:
    env = os.environ.get("PALEYLAB_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "paleylab"


def cache_key(graph: CayleyGraph) -> str:
    desc = re.sub(r"[^0-9A-Za-z]+", "_", graph.field.descriptor)
    return f"{graph.kind}-{desc}-d{graph.d}-{SOLVER_VERSION}.json"


def cached_max_clique(graph: Graph, cache: str | os.PathLike | None | bool = None, cap: int | None = None) -> CliqueCertificate:
    """max_clique with a JSON file cache; a cached witness is re-checked before it is trusted.

    ``cache=False`` disables caching; ``None`` uses PALEYLAB_CACHE or the user cache dir.
    """
    kwargs = {} if cap is None else {"cap": cap}
    if cache is False or not isinstance(graph, CayleyGraph):
        return max_clique(graph, **kwargs)
    directory = cache_dir() if cache is None or cache is True else Path(cache)
    path = directory / cache_key(graph)
    if path.exists():
        try:
            cert = CliqueCertificate.from_json(path.read_text(encoding="utf-8"))
            if cert.manifest == graph.manifest() and cert.solver == SOLVER_VERSION and cert.verify(graph):
                return cert
        except (ValueError, KeyError, TypeError):
            pass
    cert = max_clique(graph, **kwargs)
    try:
        atomic_write(path, cert.to_json(with_time=False) + "\n")
    except OSError:
        pass
    return cert
