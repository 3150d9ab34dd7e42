"""Finite fields F_{p^s}, p odd, with elements addressed by canonical index.

An element c_0 + c_1 x + ... + c_{s-1} x^{s-1} of F_p[x]/(f) is identified with
the integer sum(c_i * p**i).  Index 0 is the zero element and index 1 is one.

Scalar operations (``add``, ``mul``, ``pow``, ...) work on plain ``int`` indices.
``mul`` and ``pow`` use polynomial arithmetic modulo the defining polynomial, so
they are independent of the discrete-log tables; the vectorised ``*_v``
variants use the tables and are what the bulk graph and character code runs on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    DegreeNotDividing,
    DivisionByZero,
    InternalConsistencyError,
    NotPrime,
    PreconditionError,
    SizeCapExceeded,
    ZeroElement,
)

DEFAULT_SIZE_CAP = 1 << 20


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, s)`` with ``q == p**s``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise PreconditionError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise PreconditionError(f"{q} is not a prime power")
    p = ps[0]
    s = round(math.log(q, p))
    while p**s > q:
        s -= 1
    while p**s < q:
        s += 1
    return p, s


# ---------------------------------------------------------------------------
# polynomials over F_p: coefficient lists, constant term first, no trailing zeros


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df and a:
        t = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - t * fi) % p
        _trim(a)
    return a


def poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    return poly_mod(poly_mul(a, b, p), f, p)


def poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, f, p)
    return result


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def is_irreducible(f: list[int] | tuple[int, ...], p: int) -> bool:
    """Irreducibility of the monic polynomial ``f`` over F_p.

    Rejects polynomials with a root in F_p, requires x^(p^s) = x mod f and
    gcd(x^(p^i) - x, f) = 1 for every proper divisor i of s.
    """
    f = list(f)
    s = len(f) - 1
    if s < 1:
        return False
    if s == 1:
        return True
    for a in range(p):
        if sum(c * pow(a, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    x = [0, 1]
    frob = []
    cur = x
    for _ in range(s):
        cur = poly_powmod(cur, p, f, p)
        frob.append(cur)
    if poly_sub(frob[s - 1], x, p):
        return False
    for i in divisors(s):
        if i < s and len(poly_gcd(f, poly_sub(frob[i - 1], x, p), p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, s: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``s`` whose lower coefficients have the least index."""
    for idx in range(p**s):
        low = [(idx // p**i) % p for i in range(s)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise InternalConsistencyError(f"no irreducible polynomial of degree {s} over F_{p}")


def format_poly(coeffs, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------


class FiniteField:
    """The field F_{p^s} = F_p[x]/(modulus) with a fixed primitive element.

    Instances are immutable after construction; the numpy tables are marked
    read-only so a field can be shared between threads or pickled to workers.
    """

    def __init__(
        self,
        p: int,
        s: int,
        modulus: tuple[int, ...] | None = None,
        generator: int | None = None,
        cap: int = DEFAULT_SIZE_CAP,
    ):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if p == 2:
            raise PreconditionError("characteristic 2 is not supported")
        if s < 1:
            raise PreconditionError(f"degree must be positive, got {s}")
        q = p**s
        if q > cap:
            raise SizeCapExceeded(f"field of order {q} exceeds the size cap {cap}")
        self.p, self.s, self.q = p, s, q

        if modulus is None:
            modulus = smallest_irreducible(p, s)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != s + 1 or modulus[-1] != 1 or not is_irreducible(modulus, p):
            raise PreconditionError(f"{modulus} is not a monic irreducible of degree {s}")
        self.modulus = modulus
        self._f = list(modulus)

        powers = p ** np.arange(s, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // powers) % p
        self._powers = powers
        self._digits = digits

        if generator is None:
            generator = next(g for g in range(1, q) if self._has_full_order(g))
        elif not (0 < generator < q and self._has_full_order(generator)):
            raise PreconditionError(f"element {generator} is not a primitive element")
        self.generator = int(generator)

        exp = self._power_sequence(self.generator)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        if (log[1:] < 0).any() or log[0] != -1:
            raise InternalConsistencyError("discrete log table is not a bijection")
        for arr in (exp, log, digits, powers):
            arr.setflags(write=False)
        self._exp = exp
        self._log = log

    # -- construction helpers

    def _has_full_order(self, g: int) -> bool:
        n = self.q - 1
        if self.pow(g, n) != 1:
            return False
        return all(self.pow(g, n // r) != 1 for r in prime_factors(n))

    def _power_sequence(self, g: int) -> np.ndarray:
        # successive powers g^0 .. g^(q-2) via the F_p-linear map "multiply by g"
        p, s = self.p, self.s
        cols = [self.coeffs(self.mul(g, self.from_coeffs([0] * i + [1]))) for i in range(s)]
        mat = [[cols[c][r] for c in range(s)] for r in range(s)]
        out = np.empty(self.q - 1, dtype=np.int64)
        v = [1] + [0] * (s - 1)
        pw = [p**i for i in range(s)]
        for k in range(self.q - 1):
            out[k] = sum(vi * w for vi, w in zip(v, pw))
            v = [sum(row[c] * v[c] for c in range(s)) % p for row in mat]
        return out

    # -- representation

    @property
    def descriptor(self) -> str:
        """Canonical text form ``p^s/modulus-coeffs/generator-index``."""
        return f"{self.p}^{self.s}/{','.join(map(str, self.modulus))}/{self.generator}"

    def __repr__(self) -> str:
        return f"FiniteField({self.descriptor})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __reduce__(self):
        return (FiniteField, (self.p, self.s, self.modulus, self.generator, max(self.q, DEFAULT_SIZE_CAP)))

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digits[a])

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)[: self.s] + [0] * max(0, self.s - len(coeffs))
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def element(self, a: int) -> FieldElement:
        self._check(a)
        return FieldElement(self, int(a))

    def elements(self) -> range:
        return range(self.q)

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise PreconditionError(f"{a} is not an element index of F_{self.q}")

    @property
    def sqrt_order(self) -> int | None:
        """sqrt(q) when q is a square, else ``None``."""
        return self.p ** (self.s // 2) if self.s % 2 == 0 else None

    # -- scalar arithmetic on indices

    def add(self, a: int, b: int) -> int:
        return int(((self._digits[a] + self._digits[b]) % self.p) @ self._powers)

    def neg(self, a: int) -> int:
        return int(((-self._digits[a]) % self.p) @ self._powers)

    def sub(self, a: int, b: int) -> int:
        return int(((self._digits[a] - self._digits[b]) % self.p) @ self._powers)

    def mul(self, a: int, b: int) -> int:
        prod = poly_mulmod(list(self._digits[a]), list(self._digits[b]), self._f, self.p)
        return self.from_coeffs(prod)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        return self.from_coeffs(poly_powmod(list(self._digits[a]), e, self._f, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("discrete log of zero")
        return int(self._log[a])

    def exp(self, k: int) -> int:
        return int(self._exp[k % (self.q - 1)])

    # -- vectorised arithmetic (numpy index arrays, broadcasting)

    def add_v(self, a, b) -> np.ndarray:
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._powers

    def sub_v(self, a, b) -> np.ndarray:
        return ((self._digits[a] - self._digits[b]) % self.p) @ self._powers

    def neg_v(self, a) -> np.ndarray:
        return ((-self._digits[a]) % self.p) @ self._powers

    def mul_v(self, a, b) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        k = (self._log[a] + self._log[b]) % (self.q - 1)
        return np.where((a == 0) | (b == 0), 0, self._exp[k])

    @property
    def log_table(self) -> np.ndarray:
        """``log_table[a]`` is the discrete log of ``a``; -1 at index 0."""
        return self._log

    @property
    def exp_table(self) -> np.ndarray:
        return self._exp

    # -- subfields and traces

    def _require_divisor(self, k: int) -> None:
        if k < 1 or self.s % k:
            raise DegreeNotDividing(f"{k} does not divide the field degree {self.s}")

    @lru_cache(maxsize=None)
    def frobenius_table(self, k: int = 1) -> np.ndarray:
        """``table[a] == a**(p**k)`` for every element."""
        e = pow(self.p, k, self.q - 1)
        out = np.zeros(self.q, dtype=np.int64)
        out[1:] = self._exp[(self._log[1:] * e) % (self.q - 1)]
        out.setflags(write=False)
        return out

    @lru_cache(maxsize=None)
    def trace_table(self, k: int = 1) -> np.ndarray:
        """Relative trace down to F_{p^k} of every element, as an index array."""
        self._require_divisor(k)
        frob = self.frobenius_table(k)
        cur = np.arange(self.q, dtype=np.int64)
        acc = cur.copy()
        for _ in range(self.s // k - 1):
            cur = frob[cur]
            acc = self.add_v(acc, cur)
        acc.setflags(write=False)
        return acc

    @cached_property
    def abs_trace(self) -> np.ndarray:
        """Absolute trace of every element as an integer in [0, p)."""
        return self.trace_table(1)

    def subfield(self, k: int) -> frozenset[int]:
        self._require_divisor(k)
        frob = self.frobenius_table(k)
        return frozenset(int(a) for a in np.flatnonzero(frob == np.arange(self.q)))


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.index)

    def _wrap(self, i: int) -> FieldElement:
        return FieldElement(self.field, i)

    def _idx(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise PreconditionError("elements belong to different fields")
            return other.index
        if isinstance(other, int):
            return self.field.from_coeffs([other])
        return NotImplemented

    def __add__(self, other):
        return self._wrap(self.field.add(self.index, self._idx(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.index, self._idx(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._idx(other), self.index))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.index, self._idx(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.index, self._idx(other)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.index, e))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.index))

    def __bool__(self) -> bool:
        return self.index != 0

    def __repr__(self) -> str:
        return f"<{format_poly(self.coeffs)} in F_{self.field.q}>"


# ---------------------------------------------------------------------------
# module-level operations


@lru_cache(maxsize=64)
def make_field(p: int, s: int, cap: int = DEFAULT_SIZE_CAP) -> FiniteField:
    """F_{p^s} with the least monic irreducible modulus and least primitive element."""
    return FiniteField(p, s, cap=cap)


def field_of_order(q: int, cap: int = DEFAULT_SIZE_CAP) -> FiniteField:
    p, s = prime_power(q)
    return make_field(p, s, cap)


_OPS = {
    "add": (2, FiniteField.add),
    "sub": (2, FiniteField.sub),
    "neg": (1, FiniteField.neg),
    "mul": (2, FiniteField.mul),
    "inv": (1, FiniteField.inv),
    "pow": (2, None),
}


def element_op(field: FiniteField, op: str, *operands) -> FieldElement:
    """Apply ``op`` to element operands (``FieldElement`` or index); ``pow`` takes an int exponent."""
    if op not in _OPS:
        raise PreconditionError(f"unknown operation {op!r}")
    arity, fn = _OPS[op]
    if len(operands) != arity:
        raise PreconditionError(f"{op} takes {arity} operand(s)")
    idx = [o.index if isinstance(o, FieldElement) else int(o) for o in operands]
    if op == "pow":
        field._check(idx[0])
        return field.element(field.pow(idx[0], idx[1]))
    for i in idx:
        field._check(i)
    return field.element(fn(field, *idx))


def discrete_log(field: FiniteField, x) -> int:
    return field.log(x.index if isinstance(x, FieldElement) else x)


def rel_trace(field: FiniteField, k: int, a) -> FieldElement:
    """Tr_{F_{p^s}/F_{p^k}}(a) = sum of a^((p^k)^i) for i < s/k, by repeated powering."""
    field._require_divisor(k)
    a = a.index if isinstance(a, FieldElement) else a
    acc, cur = 0, a
    for _ in range(field.s // k):
        acc = field.add(acc, cur)
        cur = field.pow(cur, field.p**k)
    return field.element(acc)


def trace_kernel_image(field: FiniteField, r: int) -> frozenset[int]:
    """The set {x^(p^r) - x : x in F_q}; equals the kernel of the trace to F_{p^r}."""
    field._require_divisor(r)
    frob = field.frobenius_table(r)
    image = frozenset(int(v) for v in field.sub_v(frob, np.arange(field.q)))
    kernel = frozenset(int(a) for a in np.flatnonzero(field.trace_table(r) == 0))
    if image != kernel or len(image) != field.q // field.p**r:
        raise InternalConsistencyError("trace kernel and Artin-Schreier image differ")
    return image


def subfield_elements(field: FiniteField, k: int) -> frozenset[int]:
    return field.subfield(k)
