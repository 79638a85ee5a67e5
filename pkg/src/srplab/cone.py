"""Combinatorics of the tangent cone G(k[H]) and of G(k[[s, t^H]]).

G(k[H]) is graded by ord and finely graded by the t-exponent, with every
fine-graded piece one-dimensional and spanned by the initial form of t^h.
Multiplication by a monomial therefore acts on monomials, and

    (t^{n_1})* is G-regular  <=>  ord(h + n_1) = ord(h) + 1 for all h in H.

G(k[H]) has dimension one, so depth >= 1 is the same as Cohen-Macaulay.
Because s is a degree-one variable, G(k[[s, t^H]]) = G(k[H])[S] and its depth
is depth G(k[H]) + 1.  Going modulo S gives back G(k[H]), so the socle of
H^0 of that quotient is read off from t-monomials h with
ord(h + n_i) >= ord(h) + 2 for every minimal generator n_i.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

from .errors import LimitTooSmall
from .semigroup import NumericalSemigroup


@dataclass(frozen=True)
class ConeReport:
    generators: tuple[int, ...]
    cm_up_to: int
    is_cm_certified: bool
    failure_witness: Optional[int] = None

    @property
    def depth_tangent_cone(self) -> int:
        """depth G(k[H]) as established up to ``cm_up_to``."""
        return 1 if self.is_cm_certified else 0

    @property
    def depth_with_s(self) -> int:
        """depth G(k[[s, t^H]]) = depth G(k[H]) + 1."""
        return self.depth_tangent_cone + 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["generators"] = list(self.generators)
        d["depth_tangent_cone"] = self.depth_tangent_cone
        d["depth_with_s"] = self.depth_with_s
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ConeReport":
        return cls(tuple(d["generators"]), d["cm_up_to"], d["is_cm_certified"], d["failure_witness"])


@dataclass(frozen=True)
class SocleEntry:
    degree: int
    witness: int


@dataclass(frozen=True)
class SocleReport:
    generators: tuple[int, ...]
    max_degree: int
    entries: tuple[SocleEntry, ...] = field(default_factory=tuple)

    @property
    def min_socle_degree(self) -> Optional[int]:
        return self.entries[0].degree if self.entries else None

    def degrees(self) -> list[int]:
        return sorted({e.degree for e in self.entries})

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "max_degree": self.max_degree,
            "entries": [[e.degree, e.witness] for e in self.entries],
            "min_socle_degree": self.min_socle_degree,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SocleReport":
        return cls(
            tuple(d["generators"]),
            d["max_degree"],
            tuple(SocleEntry(deg, w) for deg, w in d["entries"]),
        )


def default_limit(H: NumericalSemigroup) -> int:
    return H.frobenius + 50 * H.largest_generator


def tangent_cone_cm(H: NumericalSemigroup, limit: Optional[int] = None) -> ConeReport:
    """Check ord(h + n_1) = ord(h) + 1 for every h in H with h <= limit.

    A clean scan certifies Cohen-Macaulayness only up to ``limit``.
    """
    n1 = H.multiplicity
    if limit is None:
        limit = default_limit(H)
    if limit < H.frobenius + n1 + 1:
        raise LimitTooSmall(f"limit must be >= frobenius + n_1 + 1 = {H.frobenius + n1 + 1}")
    table = H.ord_table(limit + n1)
    for h in range(limit + 1):
        o = table.get(h)
        if o is None:
            continue
        if table[h + n1] != o + 1:
            return ConeReport(H.generators, limit, False, h)
    return ConeReport(H.generators, limit, True, None)


def hilbert_slice(H: NumericalSemigroup, k: int) -> int:
    """Number of h in H with ord(h) = k, i.e. dim_k m^k / m^{k+1} of k[H]."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    table = H.ord_table(k * H.largest_generator)
    return sum(1 for o in table.values() if o == k)


def socle_degrees(H: NumericalSemigroup, max_degree: int) -> SocleReport:
    """Monomial socle of H^0 of G(k[H]) in degrees <= max_degree.

    Since ord(h) >= h / n_e, scanning h <= max_degree * n_e is exhaustive.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    top = max_degree * H.largest_generator
    table = H.ord_table(top + H.largest_generator)
    entries = []
    for h in range(1, top + 1):
        o = table.get(h)
        if o is None or o > max_degree:
            continue
        if all(table[h + g] >= o + 2 for g in H.generators):
            entries.append(SocleEntry(o, h))
    entries.sort(key=lambda e: (e.degree, e.witness))
    return SocleReport(H.generators, max_degree, tuple(entries))
