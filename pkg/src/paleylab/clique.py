"""Exact maximum clique search on bitset graphs, clique predicates and binomial clique bounds."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

from .errors import (
    AnchorsNotAdjacent,
    CongruenceViolation,
    EnumerationCapExceeded,
    PreconditionError,
    SolverCapExceeded,
)
from .field import prime_power
from .graphs import Graph, bits

SOLVER_VERSION = "mcq-1"
DEFAULT_SOLVER_CAP = 1024
ENUMERATION_CAP = 40


@dataclass
class CliqueCertificate:
    manifest: dict
    omega: int
    witness: tuple[int, ...]
    nodes: int = 0
    seconds: float = 0.0
    solver: str = SOLVER_VERSION

    def to_dict(self, with_time: bool = True) -> dict:
        out = {
            "graph": self.manifest,
            "omega": self.omega,
            "witness": list(self.witness),
            "stats": {"nodes": self.nodes},
            "solver": self.solver,
        }
        if with_time:
            out["stats"]["seconds"] = round(self.seconds, 6)
        return out

    def to_json(self, with_time: bool = True) -> str:
        return json.dumps(self.to_dict(with_time), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "CliqueCertificate":
        stats = doc.get("stats", {})
        return cls(
            manifest=doc["graph"],
            omega=int(doc["omega"]),
            witness=tuple(int(v) for v in doc["witness"]),
            nodes=int(stats.get("nodes", 0)),
            seconds=float(stats.get("seconds", 0.0)),
            solver=doc.get("solver", SOLVER_VERSION),
        )

    @classmethod
    def from_json(cls, text: str) -> "CliqueCertificate":
        return cls.from_dict(json.loads(text))

    def verify(self, graph: Graph) -> bool:
        """Witness is a clique of the claimed size in ``graph``."""
        return len(set(self.witness)) == self.omega and clique_check(graph, self.witness, "is_clique")


# ---------------------------------------------------------------------------
# predicates


def clique_check(graph: Graph, S, mode: str = "is_clique") -> bool:
    S = sorted(set(S))
    for v in S:
        if not 0 <= v < graph.n:
            raise PreconditionError(f"vertex {v} out of range")
    adj = graph.adjacency
    common = (1 << graph.n) - 1
    for v in S:
        common &= adj[v]
    mask = 0
    for v in S:
        mask |= 1 << v
    # every member must be adjacent to every other member
    is_clique = all((adj[v] | (1 << v)) & mask == mask for v in S)
    if mode == "is_clique":
        return is_clique
    if mode == "is_maximal":
        if not S:
            return graph.n == 0
        return is_clique and common & ~mask == 0
    raise PreconditionError(f"unknown mode {mode!r}")


def is_clique(graph: Graph, S) -> bool:
    return clique_check(graph, S, "is_clique")


def is_maximal(graph: Graph, S) -> bool:
    return clique_check(graph, S, "is_maximal")


# ---------------------------------------------------------------------------
# branch and bound


class _Search:
    """Greedy-colouring branch and bound over a relabelled bitset graph."""

    def __init__(self, adj: list[int]):
        self.adj = adj
        self.nodes = 0

    def _colour_order(self, P: int) -> list[tuple[int, int]]:
        order = []
        uncoloured = P
        colour = 0
        adj = self.adj
        while uncoloured:
            colour += 1
            Q = uncoloured
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~adj[v] & ~low
                uncoloured &= ~low
                order.append((v, colour))
        return order

    def best(self, P: int, lower: int = 0, target: int | None = None) -> list[int]:
        """Largest clique inside P with size > lower (empty if none); stops early on reaching target."""
        self.found: list[int] = []
        self.size = lower
        self.target = target
        self._expand([], P)
        return self.found

    def _expand(self, R: list[int], P: int) -> bool:
        self.nodes += 1
        adj = self.adj
        order = self._colour_order(P)
        for v, colour in reversed(order):
            if len(R) + colour <= self.size:
                return False
            R.append(v)
            newP = P & adj[v]
            if newP:
                if self._expand(R, newP):
                    return True
            elif len(R) > self.size:
                self.size = len(R)
                self.found = list(R)
                if self.target is not None and self.size >= self.target:
                    return True
            R.pop()
            P &= ~(1 << v)
        return False


def _relabel(graph: Graph) -> tuple[list[int], list[int]]:
    """Vertex order: degree descending, then index.  Returns (new adjacency, new->old map)."""
    n = graph.n
    order = sorted(range(n), key=lambda v: (-graph.degree(v), v))
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    adj = []
    for v in order:
        row = 0
        for w in bits(graph.adjacency[v]):
            row |= 1 << pos[w]
        adj.append(row)
    return adj, order




def _clique_number(graph: Graph, use_symmetry: bool, counter: list[int]) -> int:
    n = graph.n
    if n == 0:
        return 0
    adj = graph.adjacency
    if not any(adj):
        return 1
    pairs = graph.anchor_pairs() if use_symmetry else None
    if pairs:
        best = 2
        for a, b in pairs:
            P = adj[a] & adj[b]
            if not P:
                continue
            search = _Search(list(adj))
            found = search.best(P, lower=best - 2)
            counter[0] += search.nodes
            if found:
                best = 2 + len(found)
        return best
    nadj, _ = _relabel(graph)
    search = _Search(nadj)
    found = search.best((1 << n) - 1)
    counter[0] += search.nodes
    return len(found)


def _lex_smallest(graph: Graph, omega: int, counter: list[int]) -> tuple[int, ...]:
    """Lexicographically smallest clique of size omega, built greedily by decision searches."""
    adj = graph.adjacency
    chosen: list[int] = []
    P = (1 << graph.n) - 1
    while len(chosen) < omega:
        need = omega - len(chosen) - 1
        for v in bits(P):
            rest = P & adj[v] & ~((1 << (v + 1)) - 1)
            if need == 0:
                ok = True
            elif bin(rest).count("1") < need:
                ok = False
            else:
                search = _Search(list(adj))
                ok = len(search.best(rest, lower=need - 1, target=need)) >= need
                counter[0] += search.nodes
            if ok:
                chosen.append(v)
                P = rest
                break
        else:
            raise AssertionError("clique number larger than any clique found")
    return tuple(chosen)


def max_clique(graph: Graph, cap: int = DEFAULT_SOLVER_CAP, use_symmetry: bool = True) -> CliqueCertificate:
    """Exact clique number with the lexicographically smallest maximum clique as witness."""
    if graph.n > cap:
        raise SolverCapExceeded(f"{graph.n} vertices exceeds solver cap {cap}")
    start = time.perf_counter()
    counter = [0]
    omega = _clique_number(graph, use_symmetry, counter)
    witness = _lex_smallest(graph, omega, counter) if omega else ()
    cert = CliqueCertificate(graph.manifest(), omega, witness, counter[0], time.perf_counter() - start)
    if not cert.verify(graph):
        raise AssertionError("solver produced an invalid witness")
    return cert


def enumerate_max_cliques_through(
    graph: Graph, anchors=(0, 1), omega: int | None = None, cap: int = ENUMERATION_CAP
) -> list[tuple[int, ...]]:
    """Every maximum clique containing all anchors, each as a sorted tuple, in lexicographic order."""
    anchors = sorted(set(anchors))
    if not clique_check(graph, anchors, "is_clique"):
        raise AnchorsNotAdjacent(f"anchors {anchors} are not pairwise adjacent")
    if omega is None:
        omega = max_clique(graph).omega
    adj = graph.adjacency
    cand = (1 << graph.n) - 1
    for a in anchors:
        cand &= adj[a]
    if bin(cand).count("1") > cap:
        raise EnumerationCapExceeded(f"{bin(cand).count('1')} candidates exceeds cap {cap}")
    need = omega - len(anchors)
    out: list[tuple[int, ...]] = []

    def extend(R: list[int], P: int) -> None:
        if len(R) == need:
            out.append(tuple(sorted(anchors + R)))
            return
        if bin(P).count("1") < need - len(R):
            return
        for v in bits(P):
            R.append(v)
            extend(R, P & adj[v] & ~((1 << (v + 1)) - 1))
            R.pop()

    extend([], cand)
    for S in out:
        if not clique_check(graph, S, "is_clique"):
            raise AssertionError(f"enumerated set {S} is not a clique")
    return sorted(out)


# ---------------------------------------------------------------------------
# binomial bound


def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem on base-p digits."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        result = result * math.comb(a, b) % p
        n //= p
        k //= p
    return result


def t5_bound(p: int, q: int, d: int) -> int:
    """Upper bound on the clique number of GP(q, d) from the binomial non-vanishing condition.

    If a clique of size N exists and n <= N has C(n-1+m, m) != 0 mod p with
    m = (q-1)/d, then (N-1) n <= m.  So either the clique number is below n,
    or it is at most m // n + 1.  Applied repeatedly until nothing changes.
    """
    pp = prime_power(q)
    if pp is None or pp[0] != p:
        raise PreconditionError(f"{q} is not a power of {p}")
    if d < 2 or (q - 1) % (2 * d):
        raise CongruenceViolation(f"q = {q} is not 1 mod 2d = {2 * d}")
    m = (q - 1) // d
    N = math.isqrt(q)
    changed = True
    while changed:
        changed = False
        for n in range(2, N + 1):
            c = binom_mod_p(n - 1 + m, m, p)
            if q <= 121 and c != math.comb(n - 1 + m, m) % p:
                raise AssertionError("Lucas reduction disagrees with exact binomial")
            if c == 0:
                continue
            limit = max(n - 1, m // n + 1)
            if limit < N:
                N = limit
                changed = True
                break
    return N
