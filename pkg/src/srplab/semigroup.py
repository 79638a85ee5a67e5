"""Numerical semigroups and the maximal-factorization order function.

For a numerical semigroup H with minimal generators n_1 < ... < n_e we use

    ord(h) = max{ r : h is a sum of r elements of H_+ }        (h in H)

with ord(0) = 0.  Every positive element of H is itself a sum of minimal
generators, so splitting each summand of a decomposition into generators
never lowers the number of parts.  Hence ord(h) is also the maximal length
of a factorization of h in the minimal generators, and that is what the
dynamic programme below computes.  Grouping the parts of a maximal
factorization into r blocks shows h lies in r H_+ exactly when ord(h) >= r.
"""

from __future__ import annotations

import heapq
import threading
from functools import reduce
from math import gcd
from typing import Iterable, Optional

from .errors import ApexNotInSemigroup, EmptyInput, GcdNotOne


def _minimal_generators(gens: list[int]) -> tuple[int, ...]:
    kept: list[int] = []
    top = max(gens)
    reach = [False] * (top + 1)
    reach[0] = True
    for g in sorted(set(gens)):
        if reach[g]:
            continue
        kept.append(g)
        for x in range(g, top + 1):
            if reach[x - g]:
                reach[x] = True
    return tuple(kept)


class NumericalSemigroup:
    """A numerical semigroup given by generators.

    Redundant generators are dropped on construction.  The ord table is the
    only mutable state; it grows on demand under a lock and is never shrunk.
    """

    def __init__(self, gens: Iterable[int]):
        gens = [int(g) for g in gens]
        if not gens:
            raise EmptyInput("at least one generator is required")
        if any(g <= 0 for g in gens):
            raise ValueError(f"generators must be positive integers, got {gens}")
        if reduce(gcd, gens) != 1:
            raise GcdNotOne(f"gcd{tuple(sorted(set(gens)))} = {reduce(gcd, gens)}")
        self.generators: tuple[int, ...] = _minimal_generators(gens)
        self._apery_n1 = self._apery(self.generators[0])
        n1 = self.generators[0]
        self.frobenius: int = max(self._apery_n1) - n1
        # Selmer's formula
        self.genus: int = sum(w // n1 for w in self._apery_n1)
        self._lock = threading.Lock()
        self._ord: list[Optional[int]] = [0]

    # -- basic data ------------------------------------------------------

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @property
    def embedding_dimension(self) -> int:
        return len(self.generators)

    @property
    def largest_generator(self) -> int:
        return self.generators[-1]

    def __repr__(self) -> str:
        return f"NumericalSemigroup{self.generators}"

    def __eq__(self, other) -> bool:
        return isinstance(other, NumericalSemigroup) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def _apery(self, m: int) -> list[int]:
        # Dijkstra on residues mod m, edge weights = generators
        dist: list[Optional[int]] = [None] * m
        dist[0] = 0
        heap = [(0, 0)]
        while heap:
            d, r = heapq.heappop(heap)
            if d != dist[r]:
                continue
            for g in self.generators:
                nd, nr = d + g, (r + g) % m
                if dist[nr] is None or nd < dist[nr]:
                    dist[nr] = nd
                    heapq.heappush(heap, (nd, nr))
        return dist  # type: ignore[return-value]

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        n1 = self.generators[0]
        return n >= self._apery_n1[n % n1]

    def apery_set(self, m: int) -> list[int]:
        """Smallest element of H in each residue class mod ``m``, sorted."""
        if m <= 0 or not self.contains(m):
            raise ApexNotInSemigroup(f"{m} is not a positive element of {self}")
        return sorted(self._apery(m))

    def gaps(self) -> list[int]:
        return [n for n in range(1, self.frobenius + 1) if not self.contains(n)]

    def elements(self, upto: int) -> list[int]:
        return [n for n in range(upto + 1) if self.contains(n)]

    # -- ord -------------------------------------------------------------

    def _grow(self, limit: int) -> None:
        with self._lock:
            table = self._ord
            start = len(table)
            if limit < start:
                return
            gens = self.generators
            new = table[:]  # readers keep seeing a consistent list
            for h in range(start, limit + 1):
                best: Optional[int] = None
                if self.contains(h):
                    for g in gens:
                        if g > h:
                            break
                        prev = new[h - g]
                        if prev is not None and (best is None or prev + 1 > best):
                            best = prev + 1
                new.append(best)
            self._ord = new

    def ord(self, h: int) -> Optional[int]:
        """Maximal number of parts of ``h`` in H_+; ``None`` when h is a gap."""
        if h < 0:
            raise ValueError("ord is defined for nonnegative integers only")
        if h >= len(self._ord):
            self._grow(max(h, 2 * len(self._ord)))
        return self._ord[h]

    def ord_table(self, limit: int) -> dict[int, int]:
        """Map h -> ord(h) for every h in H with h <= limit."""
        self._grow(limit)
        table = self._ord
        return {h: table[h] for h in range(limit + 1) if table[h] is not None}

    def in_r_fold(self, h: int, r: int) -> bool:
        """True iff h lies in r H_+ (sums of exactly r positive elements)."""
        if h < 0 or r < 0:
            raise ValueError("h and r must be nonnegative")
        if r == 0:
            return h == 0
        o = self.ord(h)
        return o is not None and o >= r

    def info(self, limit: Optional[int] = None) -> dict:
        n1 = self.generators[0]
        if limit is None:
            limit = self.frobenius + self.largest_generator + 1
        return {
            "generators": list(self.generators),
            "frobenius": self.frobenius,
            "genus": self.genus,
            "gaps": self.gaps(),
            "apery_set": {"modulus": n1, "elements": self.apery_set(n1)},
            "ord_limit": limit,
            "ord_table": {str(h): o for h, o in self.ord_table(limit).items()},
        }


def create(gens: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup(gens)


def parse_generators(text: str) -> NumericalSemigroup:
    """Parse ``"4,5,11"`` (spaces allowed) into a semigroup."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise EmptyInput("no generators given")
    return NumericalSemigroup(int(p) for p in parts)
