"""Multiplicative characters, Gauss sums and exponential sums over F_q.

All values live in cyclotomic rings: a character of order dividing d takes
values in Z[zeta_d], the additive character c -> zeta_p^Tr(c) in Z[zeta_p], and
a Gauss sum in Z[zeta_lcm(p, d)].  Nothing here touches floating point except
:meth:`CyclotomicInt.sign`, which only separates a value of modulus sqrt(q)
from zero with an interval enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .cyclotomic import CyclotomicInt, lcm, make_ring
from .errors import (
    CaseNotApplicable,
    NotCoprime,
    OrderNotDividing,
    ParsevalViolation,
    PreconditionError,
    TrivialCharacter,
)
from .field import FieldElement, FiniteField, prime_power


def _idx(a) -> int:
    return a.index if isinstance(a, FieldElement) else int(a)


def _as_array(A) -> np.ndarray:
    return np.fromiter((_idx(a) for a in A), dtype=np.int64)


@dataclass(frozen=True)
class Character:
    """chi(g^k) = zeta_d^(j k) for the field's canonical generator g; chi(0) = 0."""

    field: FiniteField
    d: int
    j: int

    @property
    def ring(self):
        return make_ring(self.d)

    @property
    def order(self) -> int:
        return self.d // math.gcd(self.d, self.j % self.d)

    @property
    def is_trivial(self) -> bool:
        return self.j % self.d == 0

    @cached_property
    def exponents(self) -> np.ndarray:
        """Exponent of zeta_d at every element; -1 marks the zero element."""
        log = self.field.log_table
        out = (self.j * log) % self.d
        out[0] = -1
        out.setflags(write=False)
        return out

    def __call__(self, a) -> CyclotomicInt:
        e = int(self.exponents[_idx(a)])
        return self.ring.zero() if e < 0 else self.ring.zeta(e)

    def power(self, k: int) -> Character:
        return Character(self.field, self.d, (self.j * k) % self.d)

    def provenance(self) -> dict:
        return {"field": self.field.descriptor, "generator": self.field.generator, "d": self.d, "j": self.j}


def make_character(field: FiniteField, d: int, j: int = 1) -> Character:
    if d < 1 or (field.q - 1) % d:
        raise OrderNotDividing(f"{d} does not divide q - 1 = {field.q - 1}")
    return Character(field, d, j % d)


def char_eval(chi: Character, a) -> CyclotomicInt:
    return chi(a)


# ---------------------------------------------------------------------------
# Gauss sums


@dataclass(frozen=True)
class GaussSumValue:
    value: CyclotomicInt
    q: int
    normalized_sign: int | None = None

    def normalized(self) -> CyclotomicInt | None:
        """G / sqrt(q) when q is a square (an element of the same ring), else ``None``."""
        r = math.isqrt(self.q)
        if r * r != self.q:
            return None
        return self.value.exact_div(r)


def gauss_sum(chi: Character, b=1) -> GaussSumValue:
    """Sum over c of chi(c) * zeta_p^Tr(b c), exactly.

    For the trivial character the sum runs over all of F_q with chi_0(0) = 1,
    which is the convention under which G(chi_0) vanishes.
    """
    F = chi.field
    p, q, d = F.p, F.q, chi.d
    m = lcm(p, d)
    ring = make_ring(m)
    b = _idx(b)
    c = np.arange(1, q, dtype=np.int64)
    tr = F.abs_trace[F.mul_v(b, c)]
    exps = (m // d) * chi.exponents[1:] + (m // p) * tr
    counts = np.bincount(exps % m, minlength=m)
    if chi.is_trivial:
        counts[0] += 1  # c = 0 contributes zeta^Tr(0) = 1
    value = ring.from_exponents(counts.tolist())
    sign = None
    r = math.isqrt(q)
    if r * r == q:
        if value == r:
            sign = 1
        elif value == -r:
            sign = -1
    return GaussSumValue(value, q, sign)


class Purity(NamedTuple):
    pure: bool
    exponent: int | None  # least n >= 1 with G^n real


def is_pure(chi: Character) -> Purity:
    """Decide whether some nonzero power of G(chi) is real.

    G^2 / q is a unit of modulus one in Q(zeta_m); G is pure exactly when that
    unit is one of the finitely many roots of unity of Q(zeta_m), and then the
    least real power of G is the order of that root of unity.
    """
    if chi.is_trivial:
        raise TrivialCharacter("purity is only decided for nontrivial characters")
    G = gauss_sum(chi).value
    u = (G * G).exact_div(chi.field.q)
    if u is None:
        return Purity(False, None)
    k = u.root_of_unity_exponent()
    if k is None:
        return Purity(False, None)
    _, count = u.ring.roots_of_unity_generator()
    return Purity(True, count // math.gcd(count, k))


def is_supersingular(p: int, d: int) -> int | None:
    """Least t >= 1 with p^t = -1 (mod d), or ``None``."""
    if math.gcd(p, d) != 1:
        raise NotCoprime(f"gcd({p}, {d}) != 1")
    x = p % d
    for t in range(1, d + 1):
        if x == (-1) % d:
            return t
        if x == 1 % d:
            return None
        x = (x * p) % d
    return None


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class ClosedForm:
    """The value sign * i^i_power * sqrt(q); sqrt(q) stays symbolic for non-square q."""

    case: str
    sign: int
    i_power: int
    q: int
    params: dict = dc_field(default_factory=dict, compare=False)

    @property
    def sqrt_q(self) -> int | None:
        r = math.isqrt(self.q)
        return r if r * r == self.q else None

    def __str__(self) -> str:
        mag = str(self.sqrt_q) if self.sqrt_q is not None else f"sqrt({self.q})"
        return ("+" if self.sign > 0 else "-") + ("i*" if self.i_power else "") + mag

    def as_cyclotomic(self, ring) -> CyclotomicInt:
        r = self.sqrt_q
        if r is None:
            raise CaseNotApplicable(f"sqrt({self.q}) has no canonical integer form")
        if self.i_power == 0:
            return ring.integer(self.sign * r)
        if ring.m % 4:
            raise CaseNotApplicable(f"i is not in Z[zeta_{ring.m}]")
        return ring.zeta(ring.m // 4) * (self.sign * r)

    def matches(self, value: CyclotomicInt) -> bool:
        if self.sqrt_q is not None and (self.i_power == 0 or value.ring.m % 4 == 0):
            return value == self.as_cyclotomic(value.ring)
        if (value * value) != (-1) ** self.i_power * self.q:
            return False
        if self.i_power == 0:
            return value.is_real() and value.sign("real") == self.sign
        return (value + value.conj()).is_zero() and value.sign("imag") == self.sign


def _stick_case(p: int, s: int, d: int) -> ClosedForm:
    if s % 2 or d < 2:
        raise CaseNotApplicable("needs an even degree and d > 1")
    r = p ** (s // 2)
    if (r + 1) % d:
        raise CaseNotApplicable(f"{d} does not divide sqrt(q) + 1 = {r + 1}")
    sign = 1 if d % 2 or ((r + 1) // d) % 2 == 0 else -1
    return ClosedForm("stick", sign, 0, p**s, {"p": p, "s": s, "d": d})


def formula_gauss_sum(case: str, *, p=None, s=None, q=None, d=None, v=None) -> ClosedForm:
    """Closed-form Gauss sum for one of the four evaluable cases.

    ``quad``          quadratic character of F_{p^s}
    ``stick``         order d dividing sqrt(q) + 1, q = p^s square
    ``forr``          d > 2 with p^t = -1 (mod d), field F_{p^v}
    ``gauss_peisert`` quartic character of F_{p^(2s)}, p = 3 (mod 4)

    ``q`` may stand in for ``(p, s)`` in the first two cases.
    """
    if q is not None:
        p, s = prime_power(q)
    if case == "quad":
        sign = (-1) ** (s - 1)
        if p % 4 == 1:
            return ClosedForm("quad", sign, 0, p**s, {"p": p, "s": s})
        if s % 4 in (2, 3):
            sign = -sign
        return ClosedForm("quad", sign, s % 2, p**s, {"p": p, "s": s})
    if case == "stick":
        return _stick_case(p, s, d)
    if case == "forr":
        v = v if v is not None else s
        if d is None or d <= 2:
            raise CaseNotApplicable("needs d > 2")
        t = is_supersingular(p, d) if math.gcd(p, d) == 1 else None
        if t is None or v % (2 * t):
            raise CaseNotApplicable(f"-1 is not a power of {p} mod {d} within degree {v}")
        half = v // (2 * t)
        sign = (-1) ** (half - 1 + (p**t + 1) * half // d)
        return ClosedForm("forr", sign, 0, p**v, {"p": p, "d": d, "v": v, "t": t})
    if case == "gauss_peisert":
        if p % 4 != 3:
            raise CaseNotApplicable("needs p = 3 (mod 4)")
        sign = 1 if p % 8 == 7 and s % 2 == 1 else -1
        return ClosedForm("gauss_peisert", sign, 0, p ** (2 * s), {"p": p, "s": s})
    raise PreconditionError(f"unknown case {case!r}")


def applicable_cases(p: int, s: int, d: int) -> list[ClosedForm]:
    """Every closed form that applies to characters of exact order d over F_{p^s}."""
    out = []
    if d == 2:
        out.append(formula_gauss_sum("quad", p=p, s=s))
    try:
        out.append(_stick_case(p, s, d))
    except CaseNotApplicable:
        pass
    if d > 2 and math.gcd(p, d) == 1 and is_supersingular(p, d) is not None:
        out.append(formula_gauss_sum("forr", p=p, d=d, v=s))
    if d == 4 and p % 4 == 3 and s % 2 == 0:
        out.append(formula_gauss_sum("gauss_peisert", p=p, s=s // 2))
    return out


# ---------------------------------------------------------------------------
# additive character sums


def exp_sum_histogram(field: FiniteField, A, c) -> np.ndarray:
    """counts[k] = #{a in A : Tr(a c) = k}."""
    A = _as_array(A)
    tr = field.abs_trace[field.mul_v(A, _idx(c))]
    return np.bincount(tr, minlength=field.p)


def exp_sum(field: FiniteField, A, c) -> CyclotomicInt:
    """S(A; c) = sum over a in A of zeta_p^Tr(a c), exactly in Z[zeta_p]."""
    return make_ring(field.p).from_exponents(exp_sum_histogram(field, A, c).tolist())


def exp_sum_vanishes(field: FiniteField, A, c) -> bool:
    """S(A; c) == 0.

    The only Z-linear relation among 1, zeta_p, ..., zeta_p^(p-1) is their sum,
    so the sum vanishes exactly when every trace value occurs equally often.
    """
    h = exp_sum_histogram(field, A, c)
    return bool((h == h[0]).all())


def _histograms(field: FiniteField, A: np.ndarray) -> np.ndarray:
    """Row c-1 holds the trace histogram of A*c, for every nonzero c."""
    p, q = field.p, field.q
    c = np.arange(1, q, dtype=np.int64)
    if len(A) == 0:
        return np.zeros((q - 1, p), dtype=np.int64)
    tr = field.abs_trace[field.mul_v(c[:, None], A[None, :])]
    flat = (np.arange(q - 1)[:, None] * p + tr).ravel()
    return np.bincount(flat, minlength=(q - 1) * p).reshape(q - 1, p)


def parseval_sum(field: FiniteField, A) -> int:
    """Sum over nonzero c of |S(A; c)|^2, computed exactly; must equal q|A| - |A|^2."""
    A = np.unique(_as_array(A))
    p, q, n = field.p, field.q, len(A)
    hist = _histograms(field, A)
    # |S|^2 = sum_t (sum_k h_k h_{k+t}) zeta^(-t): circular autocorrelation per row
    auto = [int((hist * np.roll(hist, -t, axis=1)).sum()) for t in range(p)]
    full = [0] * p
    for t, v in enumerate(auto):
        full[(-t) % p] += v
    total = make_ring(p).from_exponents(full).as_rational()
    expected = q * n - n * n
    if total != expected:
        raise ParsevalViolation(f"sum of |S(c)|^2 is {total}, expected {expected}")
    return total


@dataclass(frozen=True)
class CharSumBound:
    total: CyclotomicInt  # sum over a in A, b in B of chi(a + b)
    norm_squared: int | None  # |total|^2 when rational
    bound_squared: Fraction  # q|A||B|(1 - |A|/q)(1 - |B|/q)
    holds: bool


def double_char_sum_bound(field: FiniteField, A, B, chi: Character) -> CharSumBound:
    """Check |sum chi(a+b)|^2 <= q|A||B|(1-|A|/q)(1-|B|/q) exactly.

    When |total|^2 is irrational the comparison is made for every embedding at
    once: q*bound^2 - q*|total|^2 is a real cyclotomic integer, tested for total
    nonnegativity through its characteristic polynomial.
    """
    if chi.is_trivial:
        raise TrivialCharacter("the bound needs a nontrivial character")
    A = np.unique(_as_array(A))
    B = np.unique(_as_array(B))
    q = field.q
    ring = chi.ring
    if len(A) and len(B):
        sums = field.add_v(A[:, None], B[None, :]).ravel()
        e = chi.exponents[sums]
        counts = np.bincount(e[e >= 0], minlength=chi.d)
        total = ring.from_exponents(counts.tolist())
    else:
        total = ring.zero()
    nsq = total * total.conj()
    a, b = len(A), len(B)
    numer = a * b * (q - a) * (q - b)  # q * bound^2
    bound_sq = Fraction(numer, q)
    rational = nsq.as_rational()
    if rational is not None:
        holds = q * rational <= numer
    else:
        holds = (ring.integer(numer) - nsq * q).is_totally_nonnegative()
    return CharSumBound(total, rational, bound_sq, holds)
