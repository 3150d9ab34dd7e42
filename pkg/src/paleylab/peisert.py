"""Peisert-graph clique criteria: vanishing of exponential sums and the trace-kernel scan."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .characters import exp_sum_vanishes
from .clique import clique_check
from .errors import DegreeMismatch, InternalConsistencyError, NotAClique, NotPeisertField, WrongSize
from .field import FiniteField, trace_kernel_image
from .graphs import CayleyGraph, build_peisert


def _peisert_graph(obj) -> CayleyGraph:
    if isinstance(obj, CayleyGraph):
        if obj.kind != "peisert":
            raise NotPeisertField("graph is not a Peisert graph")
        return obj
    return build_peisert(obj)


@dataclass(frozen=True)
class PecResult:
    vanishing: bool  # S(A; c) = 0 for every c in the selected B
    clique: bool  # A is a clique (of size sqrt q)

    @property
    def agree(self) -> bool:
        return self.vanishing == self.clique


def pec_check(graph, A) -> PecResult:
    """Both sides of the vanishing characterisation for a set A of size sqrt(q)."""
    G = _peisert_graph(graph)
    A = sorted(set(int(a) for a in A))
    if len(A) ** 2 != G.q:
        raise WrongSize(f"|A| = {len(A)} but sqrt(q) = {math.isqrt(G.q)}")
    vanishing = all(exp_sum_vanishes(G.field, A, c) for c in sorted(G.selected_b))
    return PecResult(vanishing, clique_check(G, A, "is_clique"))


def pec_vanishing_check(graph, A) -> bool:
    """Whether S(A; c) vanishes on all of B; raises if that disagrees with a direct clique test."""
    res = pec_check(graph, A)
    if not res.agree:
        raise InternalConsistencyError(f"vanishing={res.vanishing} but clique={res.clique} for A={sorted(A)}")
    return res.vanishing


def peisert_trivial_bound_check(graph, A) -> bool:
    """|A| <= sqrt(q) for a clique A."""
    G = _peisert_graph(graph)
    if not clique_check(G, A, "is_clique"):
        raise NotAClique(f"{sorted(A)} is not a clique")
    return len(set(A)) ** 2 <= G.q


@dataclass(frozen=True)
class HRecord:
    h: int
    criterion: bool  # I & h^-1 I & B is empty
    direct: bool  # F_{p^r} + h F_{p^r} is a clique

    @property
    def agree(self) -> bool:
        return self.criterion == self.direct


@dataclass(frozen=True)
class PeisertScanReport:
    q: int
    r: int
    field: str
    kernel: tuple[int, ...]
    b_selection: tuple[int, int]
    records: tuple[HRecord, ...]
    subfield_maximal: bool

    @property
    def disagreements(self) -> int:
        return sum(not rec.agree for rec in self.records)

    @property
    def witnesses(self) -> list[int]:
        return [rec.h for rec in self.records if rec.criterion and rec.direct]

    @property
    def conclusion(self) -> str:
        return "subfield-maximal" if self.subfield_maximal else "clique-number-is-sqrt-q"

    def to_dict(self) -> dict:
        w = self.witnesses
        return {
            "q": self.q,
            "r": self.r,
            "field": self.field,
            "kernel_size": len(self.kernel),
            "b_selection": list(self.b_selection),
            "records": [
                {"h": rec.h, "criterion": rec.criterion, "direct": rec.direct, "agree": rec.agree}
                for rec in self.records
            ],
            "disagreements": self.disagreements,
            "conclusion": self.conclusion,
            "witness_h": w[0] if w else None,
        }

    def csv_rows(self) -> list[list]:
        return [["h", "criterion", "direct", "agree"]] + [
            [rec.h, int(rec.criterion), int(rec.direct), int(rec.agree)] for rec in self.records
        ]


def _check_scan_field(field: FiniteField, r: int) -> None:
    if field.p % 4 != 3:
        raise NotPeisertField(f"p = {field.p} is not 3 mod 4")
    if r < 1 or field.s != 4 * r:
        raise DegreeMismatch(f"field degree {field.s} is not 4 * {r}")


def direct_sum_set(field: FiniteField, r: int, h: int) -> list[int]:
    """The p^(2r) elements x + h y with x, y in F_{p^r}."""
    sub = np.array(sorted(field.subfield(r)), dtype=np.int64)
    if h in field.subfield(r):
        raise WrongSize(f"h = {h} lies in the subfield, so the sum has fewer than sqrt(q) elements")
    hy = field.mul_v(h, sub)
    vals = field.add_v(sub[:, None], hy[None, :]).ravel()
    out = sorted(set(int(v) for v in vals))
    if len(out) != len(sub) ** 2:
        raise InternalConsistencyError("direct sum is not direct")
    return out


def h_check(graph, r: int, h: int, kernel: np.ndarray | None = None) -> HRecord:
    G = _peisert_graph(graph)
    F = G.field
    _check_scan_field(F, r)
    if h in F.subfield(r):
        raise WrongSize(f"h = {h} lies in the subfield")
    if kernel is None:
        kernel = np.array(sorted(trace_kernel_image(F, r)), dtype=np.int64)
    scaled = np.sort(F.mul_v(F.inv(h), kernel))
    common = np.intersect1d(kernel, scaled, assume_unique=True)
    B = np.array(sorted(G.selected_b), dtype=np.int64)
    criterion = np.intersect1d(common, B, assume_unique=True).size == 0
    direct = clique_check(G, direct_sum_set(F, r, h), "is_clique")
    return HRecord(h, bool(criterion), bool(direct))


def h_scan(graph, r: int) -> PeisertScanReport:
    """Test every h outside F_{p^r} both by the kernel criterion and directly; no early exit."""
    G = _peisert_graph(graph)
    F = G.field
    _check_scan_field(F, r)
    kernel_set = trace_kernel_image(F, r)
    kernel = np.array(sorted(kernel_set), dtype=np.int64)
    sub = F.subfield(r)
    records = tuple(h_check(G, r, h, kernel) for h in range(F.q) if h not in sub)
    maximal = clique_check(G, sorted(sub), "is_maximal")
    any_h = any(rec.direct for rec in records)
    # a non-maximal subfield extends to one of the direct sums, and such a sum contains it
    if maximal == any_h:
        raise InternalConsistencyError(f"subfield maximal={maximal} but some h works={any_h}")
    return PeisertScanReport(F.q, r, F.descriptor, tuple(sorted(kernel_set)), G.b_selection, records, maximal)
