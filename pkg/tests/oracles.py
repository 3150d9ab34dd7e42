"""Slow reference implementations sharing no code with the package.

Field elements are coefficient tuples multiplied by schoolbook polynomial
arithmetic, cyclotomic reduction goes through sympy, and cliques are found by
plain enumeration.  Only the modulus and generator choices are taken from the
package, and those are checked independently here too.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import sympy


class NaiveField:
    def __init__(self, p: int, modulus: tuple[int, ...], generator_index: int):
        self.p = p
        self.s = len(modulus) - 1
        self.q = p**self.s
        self.modulus = modulus
        self.elements = [self.from_index(i) for i in range(self.q)]
        self.g = self.from_index(generator_index)
        self._trace = {}
        self._log = {}

    def from_index(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.s):
            out.append(i % self.p)
            i //= self.p
        return tuple(out)

    def index(self, a) -> int:
        return sum(c * self.p**k for k, c in enumerate(a))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = [0] * (2 * self.s - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        for k in range(len(prod) - 1, self.s - 1, -1):
            t = prod[k] % self.p
            prod[k] = 0
            for i in range(self.s):
                prod[k - self.s + i] -= t * self.modulus[i]
        return tuple(c % self.p for c in prod[: self.s])

    def pow(self, a, e: int):
        out = self.from_index(1)
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def log(self, a) -> int:
        i = self.index(a)
        if i not in self._log:
            self._log[i] = self._slow_log(a)
        return self._log[i]

    def _slow_log(self, a) -> int:
        x = self.from_index(1)
        for k in range(self.q - 1):
            if x == a:
                return k
            x = self.mul(x, self.g)
        raise ValueError("not in the group generated by g")

    def trace(self, a) -> int:
        i = self.index(a)
        if i not in self._trace:
            self._trace[i] = self._slow_trace(a)
        return self._trace[i]

    def _slow_trace(self, a) -> int:
        """Absolute trace as an integer mod p: a + a^p + ... + a^(p^(s-1))."""
        acc = self.from_index(0)
        x = a
        for _ in range(self.s):
            acc = self.add(acc, x)
            x = self.pow(x, self.p)
        assert all(c == 0 for c in acc[1:]), "trace left the prime field"
        return acc[0]


def irreducible_by_brute_force(f: tuple[int, ...], p: int) -> bool:
    """No monic factor of degree 1..deg/2, by trial division over every candidate."""
    x = sympy.Symbol("x")
    F = sympy.Poly(list(reversed(f)), x, modulus=p)
    n = len(f) - 1
    for k in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = sympy.Poly([1] + list(tail), x, modulus=p)
            if F.rem(g).is_zero:
                return False
    return True


def element_order(F: NaiveField, a) -> int:
    x, k = a, 1
    one = F.from_index(1)
    while x != one:
        x = F.mul(x, a)
        k += 1
    return k


def cyclotomic_coeffs(counts: dict[int, int], m: int) -> tuple[int, ...]:
    """Reduce sum counts[e] zeta_m^e modulo the m-th cyclotomic polynomial with sympy."""
    return _reduce(tuple(sorted(counts.items())), m)


@lru_cache(maxsize=None)
def _reduce(items: tuple, m: int) -> tuple[int, ...]:
    counts = dict(items)
    x = sympy.Symbol("x")
    phi = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    f = sympy.Poly(sum(c * x ** (e % m) for e, c in counts.items()) + 0 * x, x)
    r = f.rem(phi).all_coeffs()[::-1]
    deg = phi.degree()
    r = [int(c) for c in r] + [0] * (deg - len(r))
    return tuple(r[:deg])


def gauss_sum_naive(F: NaiveField, d: int, j: int) -> tuple[int, tuple[int, ...]]:
    """(m, coefficients) of sum over c != 0 of chi^j(c) zeta_p^Tr(c), chi(g) = zeta_d."""
    m = math.lcm(F.p, d)
    counts: dict[int, int] = {}
    for c in F.elements[1:]:
        e = (m // d) * ((j * F.log(c)) % d) + (m // F.p) * F.trace(c)
        counts[e % m] = counts.get(e % m, 0) + 1
    if j % d == 0:
        counts[0] = counts.get(0, 0) + 1
    return m, cyclotomic_coeffs(counts, m)


def clique_number_naive(adj: list[set[int]]) -> tuple[int, list[list[int]]]:
    """Clique number and every maximum clique, by extending every clique in increasing order."""
    n = len(adj)
    best = 0
    found: list[list[int]] = []

    def grow(clique: list[int], start: int) -> None:
        nonlocal best, found
        if len(clique) > best:
            best, found = len(clique), [list(clique)]
        elif len(clique) == best:
            found.append(list(clique))
        for v in range(start, n):
            if all(v in adj[u] for u in clique):
                clique.append(v)
                grow(clique, v + 1)
                clique.pop()

    grow([], 0)
    return best, found


def gp_adjacency_naive(F: NaiveField, d: int) -> list[set[int]]:
    """u ~ v iff u - v is a nonzero d-th power, with d-th powers listed as g^(d k)."""
    powers = {F.index(F.pow(F.g, d * k)) for k in range((F.q - 1) // d)}
    return [{v for v in range(F.q) if F.index(F.sub(F.elements[u], F.elements[v])) in powers} for u in range(F.q)]


def exp_sum_is_zero_naive(F: NaiveField, A, c) -> bool:
    """sum over a in A of zeta_p^Tr(a c) == 0, reduced with sympy."""
    counts: dict[int, int] = {}
    for a in A:
        t = F.trace(F.mul(F.elements[a], F.elements[c]))
        counts[t] = counts.get(t, 0) + 1
    return not any(cyclotomic_coeffs(counts, F.p))


def literal_linear_search(F: NaiveField, d: int, eps_exponent: int, r: int) -> list[tuple[int, ...]]:
    """Every r-set containing {0, 1} whose sums vanish wherever chi(c) != eps, by listing all sets."""
    constraints = [c for c in range(1, F.q) if F.log(F.elements[c]) % d != eps_exponent]
    out = []
    for rest in itertools.combinations(range(2, F.q), r - 2):
        A = (0, 1) + rest
        if all(exp_sum_is_zero_naive(F, A, c) for c in constraints):
            out.append(A)
    return out


def binom_mod_p_naive(n: int, k: int, p: int) -> int:
    return math.comb(n, k) % p
