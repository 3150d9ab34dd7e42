"""Exact arithmetic in the cyclotomic integers Z[zeta_m].

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1), reduced
modulo the m-th cyclotomic polynomial, so two elements are equal exactly when
their coefficient tuples are equal.  Coefficients are Python ints.
"""

from __future__ import annotations

import math
from functools import lru_cache

from mpmath.ctx_iv import MPIntervalContext

from .errors import ConductorCapExceeded, InternalConsistencyError, PreconditionError, RingMismatch
from .field import divisors, prime_factors

DEFAULT_CONDUCTOR_CAP = 10_000


def euler_phi(m: int) -> int:
    out = m
    for r in prime_factors(m):
        out -= out // r
    return out


def _mobius(n: int) -> int:
    ps = prime_factors(n)
    k = n
    for r in ps:
        k //= r
        if k % r == 0:
            return 0
    return -1 if len(ps) % 2 else 1


def _div_monic(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient a / b for a monic integer polynomial b (constant term first)."""
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        t = a[i]
        if t:
            out[i - db] = t
            for k in range(db + 1):
                a[i - db + k] -= t * b[k]
    if any(a[:db]):
        raise InternalConsistencyError("polynomial division was not exact")
    return out


def cyclotomic_poly_by_division(m: int) -> tuple[int, ...]:
    """Phi_m as (x^m - 1) divided by Phi_d for every proper divisor d of m."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m):
        if d < m:
            poly = _div_monic(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Phi_m, constant term first.

    Built as the product of (x^d - 1)^mu(m/d); multiplying or dividing by a
    binomial is linear in the degree, which keeps large conductors cheap.
    """
    if m < 1:
        raise PreconditionError("conductor must be positive")
    ups = [d for d in divisors(m) if _mobius(m // d) == 1]
    downs = [d for d in divisors(m) if _mobius(m // d) == -1]
    poly = [1]
    for d in ups:
        new = [0] * (len(poly) + d)
        for i, c in enumerate(poly):
            new[i + d] += c
            new[i] -= c
        poly = new
    for d in downs:
        # poly = quot * (x^d - 1); recover quot from the top coefficient down
        n = len(poly) - 1 - d
        quot = [0] * (n + 1)
        for k in range(n, -1, -1):
            quot[k] = poly[k + d] + (quot[k + d] if k + d <= n else 0)
        poly = quot
    if len(poly) - 1 != euler_phi(m):
        raise InternalConsistencyError(f"degree of Phi_{m} is not phi({m})")
    return tuple(poly)


class CyclotomicRing:
    """Z[zeta_m] for a fixed conductor m."""

    def __init__(self, m: int):
        self.m = m
        self.poly = cyclotomic_poly(m)
        self.phi = len(self.poly) - 1
        self._tail = [(k, c) for k, c in enumerate(self.poly[:-1]) if c]

    def __repr__(self) -> str:
        return f"CyclotomicRing({self.m})"

    def __reduce__(self):
        return (make_ring, (self.m,))

    def reduce(self, full) -> tuple[int, ...]:
        """Canonical coefficients of sum(full[i] * zeta^i) for any length of ``full``."""
        m, phi = self.m, self.phi
        c = [0] * max(m, phi)
        for i, v in enumerate(full):
            if v:
                c[i % m] += int(v)
        for i in range(len(c) - 1, phi - 1, -1):
            t = c[i]
            if t:
                base = i - phi
                for k, pk in self._tail:
                    c[base + k] -= t * pk
                c[i] = 0
        return tuple(c[:phi])

    def element(self, coeffs) -> CyclotomicInt:
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.phi:
            return CyclotomicInt(self, self.reduce(coeffs))
        return CyclotomicInt(self, coeffs)

    def from_exponents(self, counts) -> CyclotomicInt:
        """sum(counts[e] * zeta^e); exponents may exceed m."""
        return CyclotomicInt(self, self.reduce(counts))

    def integer(self, n: int) -> CyclotomicInt:
        return CyclotomicInt(self, (int(n),) + (0,) * (self.phi - 1))

    def zero(self) -> CyclotomicInt:
        return self.integer(0)

    def one(self) -> CyclotomicInt:
        return self.integer(1)

    def zeta(self, k: int = 1) -> CyclotomicInt:
        full = [0] * self.m
        full[k % self.m] = 1
        return self.from_exponents(full)

    def roots_of_unity_generator(self) -> tuple[CyclotomicInt, int]:
        """A generator of the roots of unity in Q(zeta_m) and their count (m or 2m)."""
        if self.m % 2 == 0:
            return self.zeta(1), self.m
        return -self.zeta(1), 2 * self.m


@lru_cache(maxsize=256)
def make_ring(m: int, cap: int = DEFAULT_CONDUCTOR_CAP) -> CyclotomicRing:
    if m < 1:
        raise PreconditionError("conductor must be positive")
    if m > cap:
        raise ConductorCapExceeded(f"conductor {m} exceeds cap {cap}")
    return CyclotomicRing(m)


class CyclotomicInt:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CyclotomicRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    # -- plumbing

    def _coerce(self, other) -> CyclotomicInt:
        if isinstance(other, CyclotomicInt):
            if other.ring.m != self.ring.m:
                raise RingMismatch(f"Z[zeta_{self.ring.m}] vs Z[zeta_{other.ring.m}]")
            return other
        if isinstance(other, int):
            return self.ring.integer(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.as_rational() == other
        if isinstance(other, CyclotomicInt):
            return self.ring.m == other.ring.m and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.m, self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.serialize()})"

    def serialize(self) -> str:
        return f"{self.ring.m}:[{','.join(map(str, self.coeffs))}]"

    @classmethod
    def parse(cls, text: str) -> CyclotomicInt:
        m, _, body = text.partition(":")
        body = body.strip().strip("[]")
        coeffs = [int(c) for c in body.split(",")] if body else []
        return make_ring(int(m)).element(coeffs)

    # -- arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.ring, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a = [(i, c) for i, c in enumerate(self.coeffs) if c]
        b = [(j, c) for j, c in enumerate(other.coeffs) if c]
        full = [0] * (2 * self.ring.phi)
        for i, ci in a:
            for j, cj in b:
                full[i + j] += ci * cj
        return self.ring.from_exponents(full)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise PreconditionError("negative powers are not defined in Z[zeta_m]")
        result, base = self.ring.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conj(self) -> CyclotomicInt:
        """Complex conjugation, zeta -> zeta^(m-1)."""
        m = self.ring.m
        full = [0] * m
        for i, c in enumerate(self.coeffs):
            if c:
                full[(-i) % m] += c
        return self.ring.from_exponents(full)

    def times_zeta(self, k: int) -> CyclotomicInt:
        m = self.ring.m
        full = [0] * m
        for i, c in enumerate(self.coeffs):
            if c:
                full[(i + k) % m] += c
        return self.ring.from_exponents(full)

    def exact_div(self, n: int) -> CyclotomicInt | None:
        """self / n when every coefficient is divisible by n, else ``None``."""
        if any(c % n for c in self.coeffs):
            return None
        return CyclotomicInt(self.ring, tuple(c // n for c in self.coeffs))

    def embed(self, ring: CyclotomicRing) -> CyclotomicInt:
        """Image in Z[zeta_M] for M a multiple of m, via zeta_m = zeta_M^(M/m)."""
        if ring.m % self.ring.m:
            raise RingMismatch(f"{self.ring.m} does not divide {ring.m}")
        step = ring.m // self.ring.m
        full = [0] * ring.m
        for i, c in enumerate(self.coeffs):
            if c:
                full[i * step] += c
        return ring.from_exponents(full)

    # -- predicates

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_rational(self) -> int | None:
        """The integer n if self == n, else ``None``."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self.conj() == self

    def norm_squared(self) -> CyclotomicInt:
        return self * self.conj()

    def root_of_unity_exponent(self) -> int | None:
        """k with self == w^k for the ring's root-of-unity generator w, else ``None``."""
        _, count = self.ring.roots_of_unity_generator()
        odd = self.ring.m % 2 == 1
        cur = self.ring.one()
        for k in range(count):
            if cur == self:
                return k
            cur = -cur.times_zeta(1) if odd else cur.times_zeta(1)
        return None

    def multiplication_matrix(self) -> list[list[int]]:
        """Integer matrix of y -> self*y in the power basis (column i is self*zeta^i)."""
        cols = [self.times_zeta(i).coeffs for i in range(self.ring.phi)]
        return [[cols[c][r] for c in range(self.ring.phi)] for r in range(self.ring.phi)]

    def charpoly(self) -> list[int]:
        """det(tI - M) for the multiplication matrix M, highest degree first."""
        return charpoly(self.multiplication_matrix())

    def is_totally_nonnegative(self) -> bool:
        """Every complex embedding of this real element is >= 0.

        The characteristic polynomial of a real element is real-rooted, and a
        real-rooted polynomial has no negative root exactly when its
        coefficients alternate in sign.
        """
        if not self.is_real():
            raise PreconditionError("element is not real")
        return all(((-1) ** k) * c >= 0 for k, c in enumerate(self.charpoly()))

    def sign(self, part: str = "real") -> int:
        """Sign of the real or imaginary part under zeta_m -> exp(2 pi i / m).

        Decided by a rigorous interval enclosure; returns 0 only when the part
        is exactly zero.
        """
        if part == "real":
            if (self + self.conj()).is_zero():
                return 0
        elif part == "imag":
            if (self - self.conj()).is_zero():
                return 0
        else:
            raise PreconditionError(f"unknown part {part!r}")
        ctx = MPIntervalContext()
        for prec in (64, 128, 256, 512, 1024, 4096):
            ctx.prec = prec
            step = 2 * ctx.pi / self.ring.m
            trig = ctx.cos if part == "real" else ctx.sin
            acc = ctx.mpf(0)
            for k, c in enumerate(self.coeffs):
                if c:
                    acc += c * trig(k * step)
            if acc.a > 0:
                return 1
            if acc.b < 0:
                return -1
        raise InternalConsistencyError("could not separate the value from zero")


def charpoly(mat: list[list[int]]) -> list[int]:
    """Faddeev-LeVerrier characteristic polynomial of an integer matrix.

    Coefficients are returned highest degree first; the divisions are exact.
    """
    n = len(mat)
    coeffs = [1]
    prev = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        cur = [[sum(mat[i][t] * prev[t][j] for t in range(n) if mat[i][t]) for j in range(n)] for i in range(n)]
        for i in range(n):
            cur[i][i] += coeffs[-1]
        trace = sum(sum(mat[i][t] * cur[t][i] for t in range(n)) for i in range(n))
        if trace % k:
            raise InternalConsistencyError("non-integral characteristic polynomial")
        coeffs.append(-trace // k)
        prev = cur
    return coeffs


_RING_OPS = ("add", "sub", "mul", "conj", "zeta_pow", "scalar_mul")


def ring_ops(a: CyclotomicInt, b: CyclotomicInt | None = None, op: str = "add", k: int = 0, n: int = 1):
    """Dispatch helper mirroring the operator methods."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    if op == "zeta_pow":
        return a.ring.zeta(k)
    if op == "scalar_mul":
        return a * n
    raise PreconditionError(f"unknown ring operation {op!r}; expected one of {_RING_OPS}")


def as_rational(a: CyclotomicInt) -> int | None:
    return a.as_rational()


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)
