"""Combinatorial obstruction witnesses and exact feasibility of the
tube/non-tube weight inequalities.

Feasibility uses Fourier-Motzkin elimination over exact rationals with
strictness tracking: a derived bound is strict iff either parent is strict.
Row growth is kept tame by deduplication per coefficient vector and by
dropping rows dominated by another row given the strict positivity of the
variables, which the system always asserts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graphs import (
    Graph,
    GraphError,
    bits_of,
    induced_connected,
    popcount,
    subsets_by_size,
)

OBSTRUCTION_B_MAX_VERTICES = 12
FEASIBLE_MAX_VARIABLES = 12


@dataclass(frozen=True)
class ObstructionWitness:
    """Kind 'A': a non-tube containing a nontrivial tube.
    Kind 'B': a set partitioned into k nontrivial tubes and k' <= k non-tubes."""

    kind: str
    tube: Optional[int] = None
    non_tube: Optional[int] = None
    subset: Optional[int] = None
    tube_partition: tuple[int, ...] = ()
    nontube_partition: tuple[int, ...] = ()

    def to_json(self) -> dict:
        if self.kind == "A":
            return {
                "kind": "A",
                "tube": bits_of(self.tube),
                "non_tube": bits_of(self.non_tube),
            }
        return {
            "kind": "B",
            "subset": bits_of(self.subset),
            "tube_partition": [bits_of(t) for t in self.tube_partition],
            "nontube_partition": [bits_of(d) for d in self.nontube_partition],
        }


def obstruction_a(g: Graph) -> Optional[ObstructionWitness]:
    """First (smallest, lexicographic) witness of a non-tube containing a
    nontrivial tube.

    It suffices to scan pairs (nontrivial tube T, vertex v with no edge into
    T): any witnessing non-tube D contains a connected component of size >= 2,
    which is such a T, and some vertex of D detached from it.
    """
    n = g.num_vertices
    for size in range(2, n):
        for t in subsets_by_size(n, size):
            if not induced_connected(g, t):
                continue
            for v in range(n):
                bit = 1 << v
                if bit & t:
                    continue
                if g.adj[v] & t == 0:
                    return ObstructionWitness(kind="A", tube=t, non_tube=t | bit)
    return None


def obstruction_b(g: Graph) -> Optional[ObstructionWitness]:
    """First witness of a subset partitionable into k nontrivial tubes and
    into k' <= k non-tubes.

    Dynamic program over submasks: kmax[S] is the largest number of blocks in
    a partition of S into nontrivial tubes (None if impossible), kmin[S] the
    smallest into non-tubes.  Blocks are forced to contain the lowest bit of
    the remaining mask, so each partition is generated once and greedy
    reconstruction yields the lexicographically first one.
    """
    n = g.num_vertices
    if n > OBSTRUCTION_B_MAX_VERTICES:
        raise GraphError(f"obstruction B search capped at {OBSTRUCTION_B_MAX_VERTICES} vertices")
    full = g.vertex_mask

    tube_ok = [False] * (full + 1)
    nontube_ok = [False] * (full + 1)
    for s in range(1, full + 1):
        if popcount(s) >= 2:
            if induced_connected(g, s):
                tube_ok[s] = True
            else:
                nontube_ok[s] = True

    def solve(block_ok, best):
        """best = max or min; table[S] = optimal block count or None."""
        table: list[Optional[int]] = [None] * (full + 1)
        table[0] = 0
        for s in range(1, full + 1):
            low = s & -s
            opt = None
            # iterate submasks of s containing the lowest bit
            rest = s ^ low
            sub = rest
            while True:
                block = sub | low
                if block_ok[block] and table[s ^ block] is not None:
                    cand = 1 + table[s ^ block]
                    if opt is None or best(cand, opt) == cand:
                        opt = cand
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            table[s] = opt
        return table

    kmax = solve(tube_ok, max)
    kmin = solve(nontube_ok, min)

    def reconstruct(s, table, block_ok):
        """Greedy: smallest-bitmask optimal block containing the lowest bit."""
        blocks = []
        while s:
            low = s & -s
            rest = s ^ low
            target = table[s]
            best_block = None
            # enumerate candidate blocks in ascending bitmask order
            subs = []
            sub = rest
            while True:
                subs.append(sub | low)
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            for block in sorted(subs):
                if block_ok[block] and table[s ^ block] is not None \
                        and 1 + table[s ^ block] == target:
                    best_block = block
                    break
            blocks.append(best_block)
            s ^= best_block
        return tuple(blocks)

    for size in range(2, n + 1):
        for s in subsets_by_size(n, size):
            if kmax[s] is not None and kmin[s] is not None and kmin[s] <= kmax[s]:
                return ObstructionWitness(
                    kind="B",
                    subset=s,
                    tube_partition=reconstruct(s, kmax, tube_ok),
                    nontube_partition=reconstruct(s, kmin, nontube_ok),
                )
    return None


# -- linear system ----------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str  # one of '<', '<=', '>', '>=', '='
    rhs: Fraction


@dataclass(frozen=True)
class LinearSystem:
    """Rational linear constraints on the variables c_0, ..., c_{n-2}."""

    num_vars: int
    constraints: tuple[Constraint, ...]

    def to_json(self) -> list[dict]:
        return [
            {
                "coeffs": [_frac(c) for c in row.coeffs],
                "rel": row.rel,
                "rhs": _frac(row.rhs),
            }
            for row in self.constraints
        ]


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def w1w2_system(g: Graph) -> LinearSystem:
    """Necessary weight conditions on (c_0, c_1, ..., c_{n-2}):

    0 < c_j <= 1 for all j; c_0 + sum_T c > 1 per nontrivial tube T;
    c_0 + sum_D c <= 1 per non-tube D; total (with c_M = 1) exceeding 2.
    Variable 0 is c_0; variable i+1 carries graph vertex i.
    """
    n = g.num_vertices
    nv = n + 1
    rows = []
    zero, one = Fraction(0), Fraction(1)

    def unit(j):
        return tuple(one if i == j else zero for i in range(nv))

    for j in range(nv):
        rows.append(Constraint(unit(j), ">", zero))
        rows.append(Constraint(unit(j), "<=", one))

    def subset_row(s):
        return tuple(
            one if (j == 0 or (j >= 1 and s >> (j - 1) & 1)) else zero
            for j in range(nv)
        )

    for size in range(n, 1, -1):
        for s in subsets_by_size(n, size):
            if induced_connected(g, s):
                rows.append(Constraint(subset_row(s), ">", one))
    for size in range(n, 1, -1):
        for s in subsets_by_size(n, size):
            if not induced_connected(g, s):
                rows.append(Constraint(subset_row(s), "<=", one))

    rows.append(Constraint(tuple(one for _ in range(nv)), ">", one))
    return LinearSystem(nv, tuple(rows))


# -- Fourier-Motzkin --------------------------------------------------------


@dataclass
class _Row:
    # normalized form: coeffs . x  (<= | <)  rhs
    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    strict: bool


def _normalize(coeffs, rhs, strict) -> _Row:
    """Scale by a positive rational so entries are coprime integers."""
    denoms = [c.denominator for c in coeffs] + [rhs.denominator]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // _gcd(lcm, d)
    ints = [int(c * lcm) for c in coeffs] + [int(rhs * lcm)]
    g = 0
    for v in ints:
        g = _gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return _Row(tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1]), strict)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _to_upper_rows(sys: LinearSystem) -> list[_Row]:
    rows = []
    for con in sys.constraints:
        coeffs = con.coeffs
        if con.rel in ("<=", "<"):
            rows.append(_normalize(coeffs, con.rhs, con.rel == "<"))
        elif con.rel in (">=", ">"):
            rows.append(_normalize(tuple(-c for c in coeffs), -con.rhs, con.rel == ">"))
        elif con.rel == "=":
            rows.append(_normalize(coeffs, con.rhs, False))
            rows.append(_normalize(tuple(-c for c in coeffs), -con.rhs, False))
        else:
            raise ValueError(f"unknown relation {con.rel!r}")
    return rows


def _dedupe(rows: list[_Row]) -> list[_Row]:
    """Keep the strongest row per coefficient vector."""
    best: dict[tuple, _Row] = {}
    for r in rows:
        key = r.coeffs
        cur = best.get(key)
        if cur is None or (r.rhs, not r.strict) < (cur.rhs, not cur.strict):
            best[key] = r
    return list(best.values())


def _prune_dominated(rows: list[_Row], num_vars: int) -> list[_Row]:
    """Drop rows implied by another row plus strict positivity of variables.

    If the row set certifies x_j > 0 for variable j (a row -a x_j <= b with
    b < 0, or < 0), then any row whose coefficients exceed another's only on
    such variables (with rhs no smaller) is redundant: the surplus
    coefficient mass can only increase the left side.  The certificate rows
    themselves are exempt from pruning so every dropped row stays implied by
    what remains; without that exemption the justification can turn circular
    (e.g. a trivial constant row would "dominate" the very positivity row it
    relies on).
    """
    positive = set()
    certificates = set()
    for idx, r in enumerate(rows):
        if r.rhs < 0 or (r.strict and r.rhs == 0):
            nz = [j for j, c in enumerate(r.coeffs) if c != 0]
            if len(nz) == 1 and r.coeffs[nz[0]] < 0:
                positive.add(nz[0])
                certificates.add(idx)
    if not positive:
        return rows
    keep = [True] * len(rows)
    for i, r in enumerate(rows):
        if not keep[i]:
            continue
        for j, r2 in enumerate(rows):
            if i == j or not keep[j] or j in certificates:
                continue
            # does r imply r2?
            if r.rhs > r2.rhs:
                continue
            diff_vars = [v for v in range(num_vars) if r.coeffs[v] != r2.coeffs[v]]
            if not all(r.coeffs[v] > r2.coeffs[v] and v in positive for v in diff_vars):
                continue
            if r2.strict and not (r.strict or diff_vars or r.rhs < r2.rhs):
                continue
            keep[j] = False
    return [r for i, r in enumerate(rows) if keep[i]]


@dataclass
class _Stage:
    var: int
    lowers: list[_Row]  # negative coefficient on var: bound from below
    uppers: list[_Row]  # positive coefficient on var: bound from above


def feasible(sys: LinearSystem) -> Optional[tuple[Fraction, ...]]:
    """One exact rational solution of the system, or None if infeasible.

    Eliminates variables by Fourier-Motzkin, then back-substitutes choosing
    the midpoint of each variable's final interval (or a unit offset from a
    one-sided bound).  The returned point is re-verified against every
    original constraint.
    """
    if sys.num_vars > FEASIBLE_MAX_VARIABLES:
        raise ValueError(f"feasibility check capped at {FEASIBLE_MAX_VARIABLES} variables")
    rows = _prune_dominated(_dedupe(_to_upper_rows(sys)), sys.num_vars)
    remaining = list(range(sys.num_vars))
    stages: list[_Stage] = []
    eliminated = 0

    while remaining:
        # pick the variable minimizing the number of generated products
        def cost(v):
            lo = sum(1 for r in rows if r.coeffs[v] < 0)
            up = sum(1 for r in rows if r.coeffs[v] > 0)
            return lo * up

        var = min(remaining, key=cost)
        remaining.remove(var)
        lowers = [r for r in rows if r.coeffs[var] < 0]
        uppers = [r for r in rows if r.coeffs[var] > 0]
        others = [r for r in rows if r.coeffs[var] == 0]
        stages.append(_Stage(var, lowers, uppers))
        eliminated += 1

        new_rows = []
        for lo in lowers:
            for up in uppers:
                a, b = -lo.coeffs[var], up.coeffs[var]
                coeffs = tuple(
                    lo.coeffs[j] * b + up.coeffs[j] * a for j in range(sys.num_vars)
                )
                rhs = lo.rhs * b + up.rhs * a
                new_rows.append(_normalize(coeffs, rhs, lo.strict or up.strict))
        # constant rows: 0 (<|<=) rhs
        kept = []
        for r in new_rows:
            if any(c != 0 for c in r.coeffs):
                kept.append(r)
                continue
            if r.rhs < 0 or (r.strict and r.rhs == 0):
                return None
        rows = _prune_dominated(_dedupe(others + kept), sys.num_vars)

    # back-substitute in reverse elimination order
    values: dict[int, Fraction] = {}

    def evaluate(row: _Row, var: int) -> Fraction:
        acc = Fraction(0)
        for j, c in enumerate(row.coeffs):
            if j == var or c == 0:
                continue
            acc += c * values[j]
        return acc

    for stage in reversed(stages):
        lo_bound = None
        lo_strict = False
        up_bound = None
        up_strict = False
        for r in stage.lowers:
            # coeffs[var] * x <= rhs - rest with coeffs[var] < 0: lower bound
            bound = (r.rhs - evaluate(r, stage.var)) / r.coeffs[stage.var]
            if lo_bound is None or bound > lo_bound:
                lo_bound, lo_strict = bound, r.strict
            elif bound == lo_bound and r.strict:
                lo_strict = True
        for r in stage.uppers:
            bound = (r.rhs - evaluate(r, stage.var)) / r.coeffs[stage.var]
            if up_bound is None or bound < up_bound:
                up_bound, up_strict = bound, r.strict
            elif bound == up_bound and r.strict:
                up_strict = True
        if lo_bound is None and up_bound is None:
            values[stage.var] = Fraction(0)
        elif lo_bound is None:
            values[stage.var] = up_bound - 1
        elif up_bound is None:
            values[stage.var] = lo_bound + 1
        elif lo_bound == up_bound:
            if lo_strict or up_strict:
                raise RuntimeError("internal error: empty interval survived elimination")
            values[stage.var] = lo_bound
        else:
            values[stage.var] = (lo_bound + up_bound) / 2

    point = tuple(values[j] for j in range(sys.num_vars))
    if not satisfies(sys, point):
        raise RuntimeError("internal error: back-substituted point fails re-verification")
    return point


def satisfies(sys: LinearSystem, point: tuple[Fraction, ...]) -> bool:
    for con in sys.constraints:
        lhs = sum(c * x for c, x in zip(con.coeffs, point))
        ok = {
            "<": lhs < con.rhs,
            "<=": lhs <= con.rhs,
            ">": lhs > con.rhs,
            ">=": lhs >= con.rhs,
            "=": lhs == con.rhs,
        }[con.rel]
        if not ok:
            return False
    return True
