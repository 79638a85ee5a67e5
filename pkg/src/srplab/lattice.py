"""Intersection lattices of resolution dual graphs.

Vertices are exceptional curves E_i with self-intersection E_i^2 <= -1 and a
genus; edges are transversal intersection points.  A cycle is a vector of
nonnegative integers Z = sum z_i E_i.  All pairings are exact integers.

Canonical pairings come from adjunction, K.E_i = -E_i^2 - 2 + 2 g_i, and the
arithmetic genus is p_a(Z) = 1 + (Z^2 + Z.K) / 2.  A graph is rational when
p_a of its fundamental cycle vanishes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    BoundTooLarge,
    Disconnected,
    NotAntiNef,
    NotMinimalResolution,
    NotNegativeDefinite,
    NotRational,
)

Cycle = tuple[int, ...]


@dataclass(frozen=True)
class DualGraph:
    """A weighted dual graph; build it with ``DualGraph.make`` or ``from_json``."""

    self_intersections: tuple[int, ...]
    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    matrix: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def make(cls, vertices: Sequence[tuple[int, int]], edges: Sequence[Sequence[int]]) -> "DualGraph":
        if not vertices:
            raise ValueError("a dual graph needs at least one vertex")
        selfs = tuple(int(s) for s, _ in vertices)
        genera = tuple(int(g) for _, g in vertices)
        if any(s > -1 for s in selfs):
            raise ValueError(f"self-intersections must be <= -1, got {selfs}")
        if any(g < 0 for g in genera):
            raise ValueError(f"genera must be nonnegative, got {genera}")
        n = len(selfs)
        es = []
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"bad edge {list(e)} for {n} vertices")
            es.append((min(i, j), max(i, j)))
        es.sort()
        mat = [[0] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = selfs[i]
        for i, j in es:
            mat[i][j] += 1
            mat[j][i] += 1
        return cls(selfs, genera, tuple(es), tuple(tuple(r) for r in mat))

    @classmethod
    def from_dict(cls, d: dict) -> "DualGraph":
        return cls.make([(v["self"], v.get("genus", 0)) for v in d["vertices"]], d.get("edges", []))

    @classmethod
    def from_json(cls, text: str) -> "DualGraph":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "vertices": [{"self": s, "genus": g} for s, g in zip(self.self_intersections, self.genera)],
            "edges": [list(e) for e in self.edges],
        }

    def __len__(self) -> int:
        return len(self.self_intersections)

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(len(self)) if j != i and self.matrix[i][j]]

    def pair(self, Z: Sequence[int], W: Sequence[int]) -> int:
        n = len(self)
        return sum(Z[i] * self.matrix[i][j] * W[j] for i in range(n) for j in range(n) if Z[i] and W[j])

    def dot_curve(self, Z: Sequence[int], i: int) -> int:
        """Z . E_i"""
        row = self.matrix[i]
        return sum(z * row[j] for j, z in enumerate(Z))

    def canonical(self, i: int) -> int:
        """K . E_i by adjunction."""
        return -self.self_intersections[i] - 2 + 2 * self.genera[i]

    def pa(self, Z: Sequence[int]) -> int:
        zk = sum(z * self.canonical(i) for i, z in enumerate(Z))
        twice = 2 + self.pair(Z, Z) + zk
        assert twice % 2 == 0, "Z^2 + Z.K is always even"
        return twice // 2

    def is_antinef(self, Z: Sequence[int]) -> bool:
        return all(self.dot_curve(Z, i) <= 0 for i in range(len(self)))

    @property
    def is_minimal(self) -> bool:
        """No smooth rational (-1)-curve."""
        return not any(s == -1 and g == 0 for s, g in zip(self.self_intersections, self.genera))


def leading_minors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Leading principal minors, by fraction-exact elimination."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    minors = []
    det = Fraction(1)
    for k in range(n):
        pivot = a[k][k]
        if pivot == 0:
            # a zero pivot means this minor vanishes; later ones need a full determinant
            minors.append(0)
            for m in range(k + 1, n):
                minors.append(_det([row[: m + 1] for row in matrix[: m + 1]]))
            return minors
        det *= pivot
        minors.append(int(det))
        for r in range(k + 1, n):
            f = a[r][k] / pivot
            if f:
                for c in range(k, n):
                    a[r][c] -= f * a[k][c]
    return minors


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(n):
        p = next((r for r in range(k, n) if a[r][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] / a[k][k]
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return int(det)


def validate_graph(g: DualGraph) -> DualGraph:
    """Check connectivity and negative definiteness; returns ``g``."""
    n = len(g)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in g.neighbours(i):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        raise Disconnected(f"vertices {sorted(set(range(n)) - seen)} are not connected to vertex 0")
    minors = leading_minors(g.matrix)
    for k, d in enumerate(minors, start=1):
        if d == 0 or (d > 0) != (k % 2 == 0):
            raise NotNegativeDefinite(f"leading minor of order {k} is {d}")
    return g


def fundamental_cycle(g: DualGraph, start: int = 0) -> Cycle:
    """Laufer's sequence: from E_start add E_j while Z.E_j > 0."""
    Z = [0] * len(g)
    Z[start] = 1
    while True:
        j = next((j for j in range(len(g)) if g.dot_curve(Z, j) > 0), None)
        if j is None:
            return tuple(Z)
        Z[j] += 1


def is_rational(g: DualGraph) -> bool:
    return g.pa(fundamental_cycle(g)) == 0


def _leq(Z: Sequence[int], W: Sequence[int]) -> bool:
    return all(z <= w for z, w in zip(Z, W))


@dataclass(frozen=True)
class CycleInvariants:
    Z: Cycle
    e: int
    ll: int
    ord: int
    pa: int
    mu: Optional[int] = None
    mu_lower_form: Optional[int] = None
    note: str = ""

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["Z"] = list(self.Z)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CycleInvariants":
        d = dict(d)
        d["Z"] = tuple(d["Z"])
        return cls(**d)


def cycle_invariants(g: DualGraph, Z: Sequence[int], c: Optional[int] = None) -> CycleInvariants:
    """mu = -M.Z + 1, e = -Z^2, ll = min{r : rM >= Z}, ord = max{r : Z >= rM}.

    The mu formula needs a rational graph.  Otherwise mu is omitted and, when
    a constant ``c`` is supplied, -M.Z + 1 - c is reported instead.
    """
    Z = tuple(int(z) for z in Z)
    if len(Z) != len(g) or any(z < 0 for z in Z) or not any(Z):
        raise ValueError(f"{Z} is not a nonzero effective cycle on {len(g)} curves")
    if not g.is_antinef(Z):
        raise NotAntiNef(f"{Z} has positive intersection with some E_i")
    M = fundamental_cycle(g)
    assert _leq(M, Z), "a nonzero anti-nef cycle dominates the fundamental cycle"
    ll = max(-(-z // m) for z, m in zip(Z, M))
    o = min(z // m for z, m in zip(Z, M))
    mz = -g.pair(M, Z)
    if is_rational(g):
        return CycleInvariants(Z, -g.pair(Z, Z), ll, o, g.pa(Z), mu=mz + 1)
    lower = None if c is None else mz + 1 - c
    return CycleInvariants(Z, -g.pair(Z, Z), ll, o, g.pa(Z), None, lower,
                           "graph is not rational; mu is not determined by Z")


def enumerate_antinef(
    g: DualGraph,
    bound: int,
    upper: Optional[Sequence[int]] = None,
    cap: int = 500_000,
) -> list[Cycle]:
    """All anti-nef Z with M <= Z <= upper, in lexicographic order.

    ``upper`` defaults to bound * max(M) in every coordinate.  The search is
    a depth-first fill in vertex order; a vertex is pruned as soon as its
    pairing is positive even with every unfilled neighbour at its minimum.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    n = len(g)
    M = fundamental_cycle(g)
    if upper is None:
        upper = (bound * max(M),) * n
    upper = tuple(upper)
    nbrs = [g.neighbours(i) for i in range(n)]
    out: list[Cycle] = []
    Z = list(M)

    def rec(k: int) -> None:
        if k == n:
            out.append(tuple(Z))
            if len(out) > cap:
                raise BoundTooLarge(f"more than {cap} anti-nef cycles below {upper}")
            return
        for v in range(M[k], upper[k] + 1):
            Z[k] = v
            # unfilled coordinates sit at M_j and can only grow, which never
            # lowers Z.E_i for a filled vertex i; so a positive value is final
            if any(j < k and g.dot_curve(Z, j) > 0 for j in nbrs[k]):
                break  # raising z_k only makes these worse
            if g.dot_curve(Z, k) > 0:
                continue  # raising z_k lowers Z.E_k
            rec(k + 1)
        Z[k] = M[k]

    rec(0)
    return out


def brute_force_antinef(g: DualGraph, upper: Sequence[int], lower: Optional[Sequence[int]] = None) -> list[Cycle]:
    """Filter the whole box; exponential, used for verification only."""
    lower = lower or fundamental_cycle(g)
    ranges = [range(lo, hi + 1) for lo, hi in zip(lower, upper)]
    return [Z for Z in itertools.product(*ranges) if any(Z) and g.is_antinef(Z)]


@dataclass(frozen=True)
class GapRow:
    Z: Cycle
    mu: int
    e: int
    ll: int
    ord: int
    forward_gap: int
    reverse_gap: int

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["Z"] = list(self.Z)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GapRow":
        d = dict(d)
        d["Z"] = tuple(d["Z"])
        return cls(**d)


def dao_gap_scan(g: DualGraph, bound: int) -> list[GapRow]:
    """Forward and reverse gaps for every anti-nef Z in the enumeration box.

    Each gap is computed from the invariants and from the pairing identity;
    a disagreement raises AssertionError.
    """
    if not is_rational(g):
        raise NotRational("Dao gaps use mu = -M.Z + 1, valid for rational graphs")
    M = fundamental_cycle(g)
    rows = []
    for Z in enumerate_antinef(g, bound):
        inv = cycle_invariants(g, Z)
        fwd = (inv.mu - 1) * inv.ll - inv.e
        rev = inv.e - (inv.mu - 1) * inv.ord
        llM_minus_Z = [inv.ll * m - z for m, z in zip(M, Z)]
        Z_minus_ordM = [z - inv.ord * m for m, z in zip(M, Z)]
        assert fwd == -g.pair(llM_minus_Z, Z), f"forward identity fails at {Z}"
        assert rev == -g.pair(Z, Z_minus_ordM), f"reverse identity fails at {Z}"
        rows.append(GapRow(Z, inv.mu, inv.e, inv.ll, inv.ord, fwd, rev))
    return rows


def srp_candidate_search(g: DualGraph, bound: int, verify_cap: int = 2_000_000) -> list[Cycle]:
    """Anti-nef Z, not a multiple of M, with -M.Z' < -M.Z for all anti-nef Z' < Z.

    These are candidates on the minimal resolution only.  Every candidate is
    re-checked by brute-force filtering of the box [M, Z].
    """
    if not g.is_minimal:
        raise NotMinimalResolution("graph contains a smooth rational (-1)-curve")
    if not is_rational(g):
        raise NotRational("candidate search assumes a rational graph")
    M = fundamental_cycle(g)
    cycles = enumerate_antinef(g, bound)
    weight = {Z: -g.pair(M, Z) for Z in cycles}
    multiples = {tuple(k * m for m in M) for k in range(1, bound * max(M) + 1)}
    found = []
    for Z in cycles:
        if Z in multiples:
            continue
        below = [W for W in cycles if W != Z and _leq(W, Z)]
        if all(weight[W] < weight[Z] for W in below):
            found.append(Z)
    for Z in found:
        volume = 1
        for z, m in zip(Z, M):
            volume *= z - m + 1
        if volume > verify_cap:
            raise BoundTooLarge(f"cannot re-verify {Z}: box of {volume} cycles")
        mz = -g.pair(M, Z)
        for W in brute_force_antinef(g, Z):
            if W != Z:
                assert -g.pair(M, W) < mz, f"candidate {Z} is dominated by {W}"
    return found


def _chain(n: int) -> DualGraph:
    return DualGraph.make([(-2, 0)] * n, [(i, i + 1) for i in range(n - 1)])


NAMED_GRAPHS = {
    "A1": _chain(1),
    "A2": _chain(2),
    "A3": _chain(3),
    "D4": DualGraph.make([(-2, 0)] * 4, [(0, 1), (0, 2), (0, 3)]),
    # chain 0..6 with vertex 7 attached at 4: arms of length 4, 2 and 1
    "E8": DualGraph.make([(-2, 0)] * 8, [(i, i + 1) for i in range(6)] + [(4, 7)]),
}


def named_graph(name: str) -> DualGraph:
    try:
        return NAMED_GRAPHS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown graph {name!r}; known: {sorted(NAMED_GRAPHS)}") from None
