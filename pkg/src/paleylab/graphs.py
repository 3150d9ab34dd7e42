"""Generalised Paley graphs GP(q, d) and Peisert graphs P*_q as bitset Cayley graphs.

Vertex v is the field element with canonical index v, so vertex 0 is the zero
element and vertex 1 is the identity.  Row ``adjacency[u]`` is a Python int
whose bit v is set when u and v are adjacent.
"""

from __future__ import annotations

import io
import json
from math import gcd
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import CongruenceViolation, InternalConsistencyError, NotPeisertField, NotSquare, PreconditionError, ZeroElement
from .field import FiniteField


def _bitset(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask.astype(np.uint8), bitorder="little").tobytes(), "little")


def bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on vertices 0..n-1 stored as bitset rows."""

    adjacency: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return bits(self.adjacency[u])

    def degree(self, u: int) -> int:
        return bin(self.adjacency[u]).count("1")

    def edges(self):
        for u, row in enumerate(self.adjacency):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    @property
    def edge_count(self) -> int:
        return sum(bin(r).count("1") for r in self.adjacency) // 2

    def manifest(self) -> dict:
        return {"kind": "plain", "n": self.n}

    def anchor_pairs(self) -> list[tuple[int, int]] | None:
        """Edges covering every clique of size >= 2 up to automorphism, if known."""
        return None


@dataclass(frozen=True, eq=False)
class CayleyGraph(Graph):
    field: FiniteField = None
    kind: str = "gp"  # "gp" or "peisert"
    d: int = 0
    connection: frozenset[int] = frozenset()
    multipliers: frozenset[int] = frozenset()  # units u with u * connection == connection
    b_sets: tuple[tuple[int, ...], ...] | None = None
    b_selection: tuple[int, int] | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def selected_b(self) -> frozenset[int]:
        if self.b_sets is None:
            raise PreconditionError("only Peisert graphs carry B sets")
        i, j = self.b_selection
        return frozenset(self.b_sets[i]) | frozenset(self.b_sets[j])

    def manifest(self) -> dict:
        out = {
            "kind": self.kind,
            "field": self.field.descriptor,
            "q": self.q,
            "d": self.d,
            "generator": self.field.generator,
        }
        if self.b_selection is not None:
            out["b_selection"] = list(self.b_selection)
        return out

    def anchor_pairs(self) -> list[tuple[int, int]]:
        # translations are automorphisms, and so is x -> u x for every multiplier u;
        # a clique through 0 and c maps to one through 0 and any c' in c's orbit
        F = self.field
        seen: set[int] = set()
        reps = []
        for c in sorted(self.connection):
            if c in seen:
                continue
            reps.append(c)
            seen.update(F.mul(u, c) for u in self.multipliers)
        return [(0, c) for c in reps]


def _cayley_rows(field: FiniteField, member: np.ndarray) -> tuple[int, ...]:
    allv = np.arange(field.q)
    rows = []
    for u in range(field.q):
        rows.append(_bitset(member[field.sub_v(u, allv)]))
    return tuple(rows)


def is_dth_power(field: FiniteField, x: int, d: int) -> bool:
    """x is a d-th power in F_q^*, by Euler's criterion and by discrete log; both must agree."""
    if (field.q - 1) % d:
        raise CongruenceViolation(f"{d} does not divide q - 1")
    if x == 0:
        raise ZeroElement("0 is not in F_q^*")
    by_power = field.pow(x, (field.q - 1) // d) == 1
    by_log = field.log(x) % d == 0
    if by_power != by_log:
        raise InternalConsistencyError(f"power and log tests disagree on {x}")
    return by_power


def _check_symmetric(rows: tuple[int, ...]) -> None:
    for u, row in enumerate(rows):
        if row >> u & 1:
            raise InternalConsistencyError(f"self-loop at {u}")
        for v in bits(row):
            if not rows[v] >> u & 1:
                raise InternalConsistencyError(f"asymmetric edge {u}-{v}")


def build_gp(field: FiniteField, d: int) -> CayleyGraph:
    """GP(q, d): u ~ v iff u - v is a nonzero d-th power.  Needs q = 1 (mod 2d)."""
    q = field.q
    if d < 2 or (q - 1) % (2 * d):
        raise CongruenceViolation(f"q = {q} is not 1 mod 2d = {2 * d}")
    if not is_dth_power(field, field.neg(1), d):
        raise InternalConsistencyError("-1 is not a d-th power although q = 1 (mod 2d)")
    log = field.log_table
    member = (log >= 0) & (log % d == 0)
    conn = frozenset(int(x) for x in np.flatnonzero(member))
    rows = _cayley_rows(field, member)
    _check_symmetric(rows)
    return CayleyGraph(rows, field=field, kind="gp", d=d, connection=conn, multipliers=conn)


def peisert_b_sets(field: FiniteField) -> tuple[tuple[int, ...], ...]:
    """B_j = {g^k : k = j (mod 4)} for j = 0..3, elements in canonical order."""
    log = field.log_table
    return tuple(tuple(int(x) for x in np.flatnonzero((log >= 0) & (log % 4 == j))) for j in range(4))


def peisert_selection(p: int, s_half: int) -> tuple[int, int]:
    """Which two B sets the vanishing criterion uses for q = p^(2 s_half)."""
    return (1, 2) if p % 8 == 7 and s_half % 2 == 1 else (0, 3)


def build_peisert(field: FiniteField) -> CayleyGraph:
    """P*_q: u ~ v iff u - v = g^k with k = 0 or 1 (mod 4)."""
    p, s = field.p, field.s
    if p % 4 != 3 or s % 2:
        raise NotPeisertField(f"F_{field.q} is not p^(2s) with p = 3 (mod 4)")
    log = field.log_table
    member = (log >= 0) & ((log % 4 == 0) | (log % 4 == 1))
    conn = frozenset(int(x) for x in np.flatnonzero(member))
    fourth = frozenset(int(x) for x in np.flatnonzero((log >= 0) & (log % 4 == 0)))
    rows = _cayley_rows(field, member)
    _check_symmetric(rows)
    b_sets = peisert_b_sets(field)
    return CayleyGraph(
        rows,
        field=field,
        kind="peisert",
        d=4,
        connection=conn,
        multipliers=fourth,
        b_sets=b_sets,
        b_selection=peisert_selection(p, s // 2),
    )


def subfield_clique_test(field: FiniteField, d: int) -> bool:
    """Does F_sqrt(q) form a clique in GP(q, d)?  Decided as d | sqrt(q)+1 and by direct check."""
    r = field.sqrt_order
    if r is None:
        raise NotSquare(f"{field.q} is not a square")
    if (field.q - 1) % (2 * d):
        raise CongruenceViolation(f"q = {field.q} is not 1 mod 2d = {2 * d}")
    criterion = (r + 1) % d == 0
    sub = sorted(field.subfield(field.s // 2))
    direct = all(is_dth_power(field, field.sub(a, b), d) for a in sub for b in sub if a != b)
    if criterion != direct:
        raise InternalConsistencyError(f"divisibility criterion and direct check disagree for q={field.q}, d={d}")
    return criterion


# ---------------------------------------------------------------------------
# export / import


def export_graph(graph: Graph, fmt: str = "dimacs", stream=None, comment: bool = False) -> bytes:
    """Serialise ``graph`` deterministically as DIMACS or as a JSON edge list.

    With ``comment`` a DIMACS file starts with one "c" line naming the field.
    """
    if fmt == "dimacs":
        buf = io.StringIO()
        m = graph.manifest()
        if comment and isinstance(graph, CayleyGraph):
            buf.write(f"c paleylab {m['kind']} q={m['q']} d={m['d']} field={m['field']}\n")
        buf.write(f"p edge {graph.n} {graph.edge_count}\n")
        for u, v in graph.edges():
            buf.write(f"e {u + 1} {v + 1}\n")
        data = buf.getvalue().encode("ascii")
    elif fmt == "json":
        doc = {"manifest": graph.manifest(), "n": graph.n, "edges": [list(e) for e in graph.edges()]}
        data = (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("ascii")
    else:
        raise PreconditionError(f"unknown graph format {fmt!r}")
    if stream is not None:
        stream.write(data)
    return data


def read_dimacs(text: str) -> Graph:
    n = None
    rows: list[int] = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n = int(parts[2])
            rows = [0] * n
        elif parts[0] == "e":
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if u != v:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    if n is None:
        raise PreconditionError("missing DIMACS problem line")
    return Graph(tuple(rows))


# ---------------------------------------------------------------------------
# small-graph isomorphism (used to check generator independence of P*_9)


def find_isomorphism(g1: Graph, g2: Graph) -> list[int] | None:
    """A vertex map g1 -> g2 preserving adjacency, by backtracking; small graphs only."""
    n = g1.n
    if n != g2.n or g1.edge_count != g2.edge_count:
        return None
    if sorted(g1.degree(u) for u in range(n)) != sorted(g2.degree(u) for u in range(n)):
        return None
    mapping = [-1] * n
    used = [False] * n

    def extend(u: int) -> bool:
        if u == n:
            return True
        for v in range(n):
            if used[v] or g1.degree(u) != g2.degree(v):
                continue
            if all(g1.has_edge(u, w) == g2.has_edge(v, mapping[w]) for w in range(u)):
                mapping[u], used[v] = v, True
                if extend(u + 1):
                    return True
                mapping[u], used[v] = -1, False
        return False

    return list(mapping) if extend(0) else None


def peisert_generator_invariance(field: FiniteField) -> dict[int, bool]:
    """For each primitive element g, is P*_q built from g isomorphic to the canonical one?"""
    if field.q > 9:
        raise PreconditionError("generator-invariance check is provided for q = 9 only")
    base = build_peisert(field)
    out = {}
    for k in range(1, field.q - 1):
        if gcd(k, field.q - 1) != 1:
            continue
        g = field.exp(k)
        other = build_peisert(FiniteField(field.p, field.s, field.modulus, generator=g))
        out[g] = find_isomorphism(base, other) is not None
    return out
