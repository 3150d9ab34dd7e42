"""Verification suites.  Each returns a :class:`VerificationReport` of exact PASS/FAIL cases."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from .characters import (
    applicable_cases,
    double_char_sum_bound,
    exp_sum,
    exp_sum_vanishes,
    gauss_sum,
    is_pure,
    is_supersingular,
    make_character,
    parseval_sum,
)
from .clique import clique_check, enumerate_max_cliques_through, t5_bound
from .cyclotomic import CyclotomicInt, lcm, make_ring
from .errors import BruteForceCapExceeded, CaseNotApplicable, EnumerationCapExceeded, NotSquare, ParsevalViolation
from .field import divisors, field_of_order, is_prime, prime_power
from .graphs import build_gp, build_peisert, peisert_generator_invariance, subfield_clique_test
from .peisert import h_scan, pec_check, peisert_trivial_bound_check
from .reports import VerificationReport, cached_max_clique
from .rng import SplitMix64

MAIN_GRID = (9, 25, 49, 81, 121, 169)
INEQUALITY_FIELDS = (9, 25, 27, 49)
PEISERT_FIELDS = (9, 49, 81)
BRUTE_FORCE_CAP = 49
DIRECT_RECORD_CONDUCTOR = 1000


def valid_d(q: int) -> list[int]:
    """Every d > 1 with q = 1 (mod 2d)."""
    return [d for d in divisors(q - 1) if d > 1 and (q - 1) % (2 * d) == 0]


def _fmt(value: CyclotomicInt) -> str:
    r = value.as_rational()
    return str(r) if r is not None else value.serialize()


def _map(fn, items, jobs: int):
    items = list(items)
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _square_root(q: int) -> int:
    r = math.isqrt(q)
    if r * r != q:
        raise NotSquare(f"{q} is not a square")
    return r


# ---------------------------------------------------------------------------
# clique number criterion on the GP grid


def _main_case(args) -> dict:
    q, d, cache = args
    F = field_of_order(q)
    r = _square_root(q)
    G = build_gp(F, d)
    cert = cached_max_clique(G, cache)
    return {
        "q": q,
        "d": d,
        "r": r,
        "omega": cert.omega,
        "witness": list(cert.witness),
        "witness_ok": cert.verify(G) and clique_check(G, cert.witness, "is_maximal"),
        "t5": t5_bound(F.p, q, d),
        "subfield": subfield_clique_test(F, d),
        "field": F.descriptor,
    }


def verify_main(qs=MAIN_GRID, jobs: int = 1, cache=None) -> VerificationReport:
    qs = list(qs)
    grid = {"q": qs, "d": {str(q): valid_d(q) for q in qs}}
    rep = VerificationReport("main", grid)
    rows = _map(_main_case, [(q, d, cache) for q in qs for d in valid_d(q)], jobs)
    by_q: dict[int, dict[int, int]] = {}
    for row in rows:
        q, d, r, w = row["q"], row["d"], row["r"], row["omega"]
        by_q.setdefault(q, {})[d] = w
        rep.provenance[str(q)] = row["field"]
        inp = {"q": q, "d": d}
        divides = (r + 1) % d == 0
        if divides:
            rep.add(inp, "clique-number-criterion", f"omega = {r}", w, w == r)
        else:
            rep.add(inp, "clique-number-criterion", f"omega <= {r - 1}", w, w <= r - 1)
        rep.add(inp, "trivial-upper-bound", f"omega <= {r}", w, w <= r)
        rep.add(inp, "binomial-bound", f">= omega = {w}", row["t5"], row["t5"] >= w)
        rep.add(inp, "subfield-clique", divides, row["subfield"], row["subfield"] == divides)
        rep.add(inp, "witness-maximal-clique", True, row["witness_ok"], row["witness_ok"])
    # GP(q, d) is a subgraph of GP(q, d') when d' | d
    for q, table in by_q.items():
        for d, w in table.items():
            for d2, w2 in table.items():
                if d2 != d and d % d2 == 0:
                    rep.add({"q": q, "d": d, "d'": d2}, "subgraph-monotonicity", f"<= {w2}", w, w <= w2)
    return rep


# ---------------------------------------------------------------------------
# Fourier characterisation of the subfield clique


def _epsilon_exponent(eps: CyclotomicInt, d: int) -> int | None:
    """e with eps = zeta_d^e, or None when eps is not a d-th root of unity."""
    m = eps.ring.m
    for e in range(d):
        if eps == eps.ring.zeta((m // d) * e):
            return e
    return None


def linear_search(field, constraints: list[int], r: int) -> tuple[list[tuple[int, ...]], int]:
    """All r-sets containing {0, 1} whose exponential sums vanish at every c in ``constraints``.

    S(A; c) vanishes iff each trace value is hit by exactly r/p elements of A c,
    so partial sets are pruned as soon as some counter exceeds r/p.  Counters
    for all c live in one packed integer; a biased field overflows into its top
    bit when it passes the limit.  Returns (solutions, nodes visited).
    """
    p, q = field.p, field.q
    limit = r // p
    width = (limit + 1).bit_length() + 1
    bias = (1 << (width - 1)) - 1 - limit
    nfields = len(constraints) * p
    top = 0
    base = 0
    for k in range(nfields):
        top |= 1 << (k * width + width - 1)
        base |= bias << (k * width)
    C = np.array(constraints, dtype=np.int64)
    traces = field.abs_trace[field.mul_v(C[:, None], np.arange(q, dtype=np.int64)[None, :])]
    slots = np.arange(len(constraints), dtype=np.int64)[:, None] * p + traces  # field index per (c, v)
    sig = [sum(1 << (int(k) * width) for k in slots[:, v]) for v in range(q)]

    solutions: list[tuple[int, ...]] = []
    nodes = 0
    start = base + sig[0] + sig[1]
    if start & top:
        return solutions, 1

    def extend(chosen: list[int], acc: int, lo: int) -> None:
        nonlocal nodes
        nodes += 1
        if len(chosen) == r:
            solutions.append(tuple(chosen))
            return
        need = r - len(chosen)
        for v in range(lo, q - need + 1):
            nxt = acc + sig[v]
            if nxt & top:
                continue
            chosen.append(v)
            extend(chosen, nxt, v + 1)
            chosen.pop()

    extend([0, 1], start, 2)
    return solutions, nodes


def verify_fourier(q: int, d: int, search: bool = True, brute_cap: int = BRUTE_FORCE_CAP) -> VerificationReport:
    F = field_of_order(q)
    p, s = F.p, F.s
    r = _square_root(q)
    if (r + 1) % d:
        raise CaseNotApplicable(f"{d} does not divide sqrt(q) + 1 = {r + 1}")
    if search and q > brute_cap:
        raise BruteForceCapExceeded(f"uniqueness search is limited to q <= {brute_cap}")
    rep = VerificationReport(f"fourier-{q}-{d}", {"q": q, "d": d})
    rep.provenance[str(q)] = F.descriptor
    inp = {"q": q, "d": d}
    chi = make_character(F, d)
    G = gauss_sum(chi)
    eps = G.normalized()
    e = _epsilon_exponent(eps, d) if eps is not None else None
    rep.add(inp, "normalized-gauss-root-of-unity", f"d-th root of unity", None if e is None else f"zeta_{d}^{e}", e is not None)
    # closed-form sign against the exact quotient
    for cf in applicable_cases(p, s, d):
        ok = cf.matches(G.value) and eps is not None and eps == cf.sign
        rep.add(inp, f"normalized-gauss-{cf.case}", cf.sign, _fmt(eps) if eps is not None else None, ok)

    A = sorted(F.subfield(s // 2))
    bad = 0
    nonzero_at = []
    for c in range(1, q):
        vanish = exp_sum_vanishes(F, A, c)
        if vanish != exp_sum(F, A, c).is_zero():
            bad += 1
        if not vanish:
            nonzero_at.append(c)
            if e is None or int(chi.exponents[c]) != e:
                bad += 1
    rep.add(inp, "fourier-vanishing", 0, bad, bad == 0)
    rep.notes.append({"q": q, "d": d, "nonzero_sum_at": nonzero_at, "epsilon": None if eps is None else _fmt(eps)})

    if search and e is not None:
        constraints = [c for c in range(1, q) if int(chi.exponents[c]) != e]
        sols, nodes = linear_search(F, constraints, r)
        space = math.comb(q - 2, r - 2)
        rep.add(
            {**inp, "space": space, "nodes": nodes},
            "linear-uniqueness",
            [A],
            [list(x) for x in sols],
            [list(x) for x in sols] == [A],
        )
    return rep


# ---------------------------------------------------------------------------
# Gauss sum closed forms


def _odd_prime_powers(bound: int) -> list[tuple[int, int, int]]:
    out = []
    for p in range(3, bound + 1, 2):
        if not is_prime(p):
            continue
        q, s = p, 1
        while q <= bound:
            out.append((q, p, s))
            q, s = q * p, s + 1
    return sorted(out)


def verify_gauss_formulas(Q: int = 361, cache=None, grid_qs=None) -> VerificationReport:
    """Every applicable closed form on every character of that order, q <= Q, plus the
    supersingularity and purity implications wherever the clique number is sqrt(q)."""
    rep = VerificationReport("gauss", {"Q": Q})
    table = [["p", "s", "d", "j", "value", "formula", "match"]]
    for q, p, s in _odd_prime_powers(Q):
        F = field_of_order(q)
        rep.provenance[str(q)] = F.descriptor
        for d in divisors(q - 1):
            if d < 2:
                continue
            cases = applicable_cases(p, s, d)
            if not cases:
                if lcm(p, d) <= DIRECT_RECORD_CONDUCTOR:
                    G = gauss_sum(make_character(F, d))
                    table.append([p, s, d, 1, _fmt(G.value), "", "n/a"])
                    rep.notes.append({"q": q, "d": d, "j": 1, "value": _fmt(G.value), "supersingular": None})
                continue
            for j in range(1, d):
                if math.gcd(j, d) != 1:
                    continue
                G = gauss_sum(make_character(F, d, j))
                for cf in cases:
                    ok = cf.matches(G.value)
                    rep.add({"q": q, "d": d, "j": j}, f"gauss-{cf.case}", str(cf), _fmt(G.value), ok)
                    table.append([p, s, d, j, _fmt(G.value), str(cf), "PASS" if ok else "FAIL"])
    squares = grid_qs if grid_qs is not None else [q for q, _, s in _odd_prime_powers(Q) if s % 2 == 0]
    for q in squares:
        F = field_of_order(q)
        r = _square_root(q)
        for d in valid_d(q):
            w = cached_max_clique(build_gp(F, d), cache).omega
            if w != r:
                continue
            inp = {"q": q, "d": d}
            t = is_supersingular(F.p, d)
            rep.add(inp, "supersingular-when-omega-sqrt-q", "present", t, t is not None)
            impure = [j for j in range(1, d) if not is_pure(make_character(F, d, j)).pure]
            rep.add(inp, "pure-when-omega-sqrt-q", [], impure, not impure)
    rep.table = table
    return rep


# ---------------------------------------------------------------------------
# inequalities


def clique_replay(q: int, a: int) -> tuple[bool, Fraction, Fraction]:
    """|A|^2 - |A| <= sqrt(q) |A| (1 - |A|/q), both sides squared (both are nonnegative)."""
    lhs = Fraction(a * a - a)
    rhs = Fraction(a, 1) * (1 - Fraction(a, q))
    return lhs * lhs <= q * rhs * rhs, lhs * lhs, q * rhs * rhs


def verify_inequalities(trials: int = 1000, seed: int = 0, qs=INEQUALITY_FIELDS, cache=None) -> VerificationReport:
    qs = list(qs)
    rep = VerificationReport("inequalities", {"trials": trials, "seed": seed, "q": qs})
    rng = SplitMix64(seed)
    for q in qs:
        rep.provenance[str(q)] = field_of_order(q).descriptor
    for t in range(trials):
        q = rng.choice(qs)
        F = field_of_order(q)
        d = rng.choice([x for x in divisors(q - 1) if x > 1])
        j = rng.choice([x for x in range(1, d) if math.gcd(x, d) == 1])
        A = rng.subset(range(q), 1 + rng.below(7), 8)
        B = rng.subset(range(q), 1 + rng.below(7), 8)
        inp = {"trial": t, "q": q, "d": d, "j": j, "A": A, "B": B}
        try:
            val = parseval_sum(F, A)
            ok = True
        except ParsevalViolation:
            val, ok = None, False
        rep.add({"trial": t, "q": q, "A": A}, "parseval", q * len(A) - len(A) ** 2, val, ok)
        res = double_char_sum_bound(F, A, B, make_character(F, d, j))
        rep.add(inp, "char-sum-bound", f"|S|^2 <= {res.bound_squared}", res.norm_squared if res.norm_squared is not None else _fmt(res.total), res.holds)
    for q in qs:
        F = field_of_order(q)
        full = list(range(q))
        res = double_char_sum_bound(F, full, full, make_character(F, 2))
        rep.add({"q": q, "A": "F_q", "B": "F_q"}, "char-sum-bound-full-field", "0 <= 0", f"{res.norm_squared} <= {res.bound_squared}", res.holds and res.total.is_zero() and res.bound_squared == 0)
        for d in valid_d(q):
            a = cached_max_clique(build_gp(F, d), cache).omega
            ok, lhs, rhs = clique_replay(q, a)
            rep.add({"q": q, "d": d, "clique_size": a}, "clique-size-replay", f"{lhs} <= {rhs}", ok, ok)
    return rep


# ---------------------------------------------------------------------------
# Peisert graphs


def _peisert_samples(graphs: dict, samples: int, rng: SplitMix64) -> list[tuple[int, str, list[int]]]:
    out = []
    qs = sorted(graphs)
    kinds = ("affine-subfield", "random", "perturbed-clique")
    for i in range(samples):
        q = qs[i % len(qs)]
        kind = kinds[(i // len(qs)) % len(kinds)]
        G, witness = graphs[q]
        F = G.field
        r = math.isqrt(q)
        a = 1 + rng.below(q - 1)
        b = rng.below(q)
        if kind == "affine-subfield":
            base = sorted(F.subfield(F.s // 2))
            A = [F.add(F.mul(a, x), b) for x in base]
        elif kind == "random":
            A = rng.sample(range(q), r)
        else:
            A = [F.add(F.mul(a, x), b) for x in witness]
            drop = rng.below(r)
            outside = [v for v in range(q) if v not in A]
            A[drop] = rng.choice(outside)
        out.append((q, kind, sorted(A)))
    return out


def verify_peisert(qs=PEISERT_FIELDS, samples: int = 200, seed: int = 0, cache=None) -> VerificationReport:
    qs = list(qs)
    rep = VerificationReport("peisert", {"q": qs, "samples": samples, "seed": seed})
    graphs = {}
    for q in qs:
        F = field_of_order(q)
        rep.provenance[str(q)] = F.descriptor
        G = build_peisert(F)
        cert = cached_max_clique(G, cache)
        graphs[q] = (G, cert.witness)
        r = math.isqrt(q)
        inp = {"q": q}
        if (F.s // 2) % 2 == 1:
            rep.add(inp, "peisert-clique-number", r, cert.omega, cert.omega == r)
        ok = peisert_trivial_bound_check(G, cert.witness)
        rep.add(inp, "peisert-trivial-bound", f"<= {r}", cert.omega, ok)
        A = sorted(F.subfield(F.s // 2))
        res = pec_check(G, A)
        rep.add({**inp, "A": "subfield"}, "peisert-vanishing", res.clique, res.vanishing, res.agree)
    if 9 in graphs:
        inv = peisert_generator_invariance(graphs[9][0].field)
        rep.add({"q": 9}, "peisert-generator-invariance", True, {str(k): v for k, v in inv.items()}, all(inv.values()))

    rng = SplitMix64(seed)
    for q, kind, A in _peisert_samples(graphs, samples, rng):
        res = pec_check(graphs[q][0], A)
        rep.add({"q": q, "kind": kind, "A": A}, "peisert-vanishing", res.clique, res.vanishing, res.agree)

    for q in qs:
        G = graphs[q][0]
        F = G.field
        if F.s % 4:
            continue
        r4 = F.s // 4
        scan = h_scan(G, r4)
        for rec in scan.records:
            rep.add({"q": q, "r": r4, "h": rec.h}, "peisert-kernel-criterion", rec.criterion, rec.direct, rec.agree)
        w = scan.witnesses
        rep.notes.append(
            {
                "q": q,
                "scan_records": len(scan.records),
                "disagreements": scan.disagreements,
                "conclusion": scan.conclusion,
                "witness_h": w[0] if w else None,
                "working_h": len(w),
            }
        )
        omega = math.isqrt(q) if not scan.subfield_maximal else None
        if omega is not None:
            try:
                cliques = enumerate_max_cliques_through(G, (0, 1), omega)
                rep.add({"q": q}, "peisert-two-max-cliques-through-0-1", ">= 2", len(cliques), len(cliques) >= 2)
                rep.notes.append({"q": q, "max_cliques_through_0_1": [list(c) for c in cliques]})
            except EnumerationCapExceeded as exc:
                rep.notes.append({"q": q, "max_cliques_through_0_1": f"not attempted: {exc}"})
    return rep


def verify_all(jobs: int = 1, cache=None, seed: int = 0) -> list[VerificationReport]:
    out = [verify_main(jobs=jobs, cache=cache)]
    for q, d in ((9, 4), (9, 2), (25, 3), (25, 2), (25, 6), (49, 2), (49, 4), (49, 8)):
        out.append(verify_fourier(q, d))
    out.append(verify_gauss_formulas(cache=cache))
    out.append(verify_inequalities(seed=seed, cache=cache))
    out.append(verify_peisert(seed=seed, cache=cache))
    return out
