"""Monomial ideals of k[[s, t^H]] and of the monomial shadow of R_{C,P}.

A monomial is a pair (a, h) with a >= 0 and h in H, standing for s^a t^h.
In the point-divisor model the same pair stands for f T^{a+h} with f having
a pole of order h at P: the T-cofactor a and the pole order h play the roles
of the s- and t-exponents, and m^r membership is governed by a + ord(h) in
both models.  Everything here except integral closure and multiplicity is
model independent.

(a, h) divides (a', h')  iff  a <= a' and h' - h lies in H.

Useful facts, used throughout:

* m^l is generated by the monomials with a + ord(h) = l, and (a, h) lies in
  m^l iff a + ord(h) >= l.  A proper divisor (a', h') of (a, h) has
  ord(h') <= ord(h) - ord(h - h') by superadditivity, so it drops below l.
* Multiplying by s raises a + ord(h) by exactly one, so m^{l+1} : s = m^l.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    CapExceeded,
    ExponentNotInSemigroup,
    ModelUnsupported,
    NotMPrimary,
    SemigroupMismatch,
    ZeroDivisorIdeal,
)
from .semigroup import NumericalSemigroup

SEMIGROUP_RING = "semigroup"
POINT_DIVISOR = "point"
MODELS = (SEMIGROUP_RING, POINT_DIVISOR)


class Monomial(NamedTuple):
    a: int
    h: int

    def __add__(self, other):  # type: ignore[override]
        return Monomial(self.a + other.a, self.h + other.h)

    def __str__(self) -> str:
        parts = []
        if self.a:
            parts.append("s" if self.a == 1 else f"s^{self.a}")
        if self.h:
            parts.append("t" if self.h == 1 else f"t^{self.h}")
        return "*".join(parts) or "1"


S = Monomial(1, 0)
ONE = Monomial(0, 0)

_TERM = re.compile(r"^(s|t)(?:\^(\d+))?$")


def parse_monomial(text: str) -> Monomial:
    """Parse ``s^a*t^h`` (either factor optional, ``1`` for the unit)."""
    body = re.sub(r"\s+", "", text)
    if body in ("", "1"):
        return ONE
    a = h = 0
    for factor in body.split("*"):
        m = _TERM.match(factor)
        if not m:
            raise ValueError(f"cannot parse monomial factor {factor!r} in {text!r}")
        e = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "s":
            a += e
        else:
            h += e
    return Monomial(a, h)


def parse_monomials(text: str) -> list[Monomial]:
    return [parse_monomial(p) for p in text.split(";") if p.strip()]


@dataclass(frozen=True, eq=False)
class StaircaseIdeal:
    """Monomial ideal given by its (unique) minimal monomial generators."""

    semigroup: NumericalSemigroup
    gens: tuple[Monomial, ...]
    model: str = SEMIGROUP_RING

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StaircaseIdeal)
            and self.semigroup == other.semigroup
            and self.model == other.model
            and self.gens == other.gens
        )

    def __hash__(self) -> int:
        return hash((self.semigroup, self.model, self.gens))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self) -> str:
        return f"StaircaseIdeal({self.semigroup.generators}, {self})"

    def __contains__(self, m: Monomial) -> bool:
        return membership(self, m)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (ONE,)

    @property
    def is_m_primary(self) -> bool:
        return any(g.h == 0 for g in self.gens) and any(g.a == 0 for g in self.gens)

    @cached_property
    def _profile(self) -> tuple[list[Optional[int]], Optional[int], int]:
        # alpha(h) = least a with (a, h) in I; constant (= tail) for h >= cut
        H = self.semigroup
        if not self.gens:
            return [], None, 0
        cut = max(g.h for g in self.gens) + H.frobenius + 1
        tail = min(g.a for g in self.gens)
        alpha: list[Optional[int]] = [None] * max(cut, 0)
        for g in self.gens:
            for h in range(g.h, cut):
                if H.contains(h - g.h) and (alpha[h] is None or g.a < alpha[h]):
                    alpha[h] = g.a
        return alpha, tail, cut

    def min_a(self, h: int) -> Optional[int]:
        """Least a with (a, h) in the ideal, or None if there is none."""
        if not self.semigroup.contains(h):
            return None
        alpha, tail, cut = self._profile
        return alpha[h] if h < cut else tail

    def to_text(self) -> str:
        return "; ".join(str(g) for g in self.gens)


def _check_same(I: StaircaseIdeal, J: StaircaseIdeal) -> None:
    if I.semigroup != J.semigroup:
        raise SemigroupMismatch(f"{I.semigroup} vs {J.semigroup}")
    if I.model != J.model:
        raise SemigroupMismatch(f"ring models differ: {I.model} vs {J.model}")


def divides(H: NumericalSemigroup, f: Monomial, m: Monomial) -> bool:
    return f.a <= m.a and H.contains(m.h - f.h)


def normalize(
    H: NumericalSemigroup, gens: Iterable[Sequence[int]], model: str = SEMIGROUP_RING
) -> StaircaseIdeal:
    """Minimal generating set under divisibility."""
    if model not in MODELS:
        raise ValueError(f"unknown ring model {model!r}")
    best: dict[int, int] = {}
    for g in gens:
        a, h = int(g[0]), int(g[1])
        if a < 0 or not H.contains(h):
            raise ExponentNotInSemigroup(f"({a}, {h}) is not an exponent of k[[s, t^H]] for {H}")
        if h not in best or a < best[h]:
            best[h] = a
    kept: list[Monomial] = []
    for a, h in sorted((a, h) for h, a in best.items()):
        if not any(k.a <= a and H.contains(h - k.h) for k in kept):
            kept.append(Monomial(a, h))
    return StaircaseIdeal(H, tuple(sorted(kept)), model)


def membership(I: StaircaseIdeal, m: Sequence[int]) -> bool:
    a, h = m
    least = I.min_a(h)
    return least is not None and a >= least


def unit_ideal(H: NumericalSemigroup, model: str = SEMIGROUP_RING) -> StaircaseIdeal:
    return StaircaseIdeal(H, (ONE,), model)


def principal(H: NumericalSemigroup, m: Sequence[int], model: str = SEMIGROUP_RING) -> StaircaseIdeal:
    return normalize(H, [m], model)


@lru_cache(maxsize=512)
def power_of_max(H: NumericalSemigroup, l: int, model: str = SEMIGROUP_RING) -> StaircaseIdeal:
    """m^l, generated by the monomials with a + ord(h) = l."""
    if l < 0:
        raise ValueError("power must be nonnegative")
    if l == 0:
        return unit_ideal(H, model)
    table = H.ord_table(l * H.largest_generator)
    gens = [Monomial(l - o, h) for h, o in table.items() if o <= l]
    return StaircaseIdeal(H, tuple(sorted(gens)), model)


def maximal_ideal(H: NumericalSemigroup, model: str = SEMIGROUP_RING) -> StaircaseIdeal:
    return power_of_max(H, 1, model)


def is_subset(I: StaircaseIdeal, J: StaircaseIdeal) -> bool:
    _check_same(I, J)
    return all(membership(J, g) for g in I.gens)


def ideal_sum(I: StaircaseIdeal, J: StaircaseIdeal) -> StaircaseIdeal:
    _check_same(I, J)
    return normalize(I.semigroup, I.gens + J.gens, I.model)


def add_monomials(I: StaircaseIdeal, ms: Iterable[Sequence[int]]) -> StaircaseIdeal:
    return normalize(I.semigroup, list(I.gens) + [tuple(m) for m in ms], I.model)


def product(I: StaircaseIdeal, J: StaircaseIdeal) -> StaircaseIdeal:
    _check_same(I, J)
    return normalize(I.semigroup, (f + g for f in I.gens for g in J.gens), I.model)


def power(I: StaircaseIdeal, k: int) -> StaircaseIdeal:
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = unit_ideal(I.semigroup, I.model)
    for _ in range(k):
        result = product(result, I)
    return result


def intersection(I: StaircaseIdeal, J: StaircaseIdeal) -> StaircaseIdeal:
    _check_same(I, J)
    H = I.semigroup
    if I.is_zero or J.is_zero:
        return StaircaseIdeal(H, (), I.model)
    top = max(g.h for g in I.gens + J.gens) + H.frobenius + H.multiplicity + 1
    gens = []
    for h in range(top + 1):
        x, y = I.min_a(h), J.min_a(h)
        if x is not None and y is not None:
            gens.append((max(x, y), h))
    return normalize(H, gens, I.model)


def colon(I: StaircaseIdeal, J: StaircaseIdeal) -> StaircaseIdeal:
    """(I : J) as the intersection of the (I : g) over generators g of J.

    Minimal generators (a, h) of the colon satisfy a <= max a_f and h < B with
    B = frobenius + n_1 + max h_f + 1 (f over generators of I): a larger a can
    be lowered by one, and for h >= B both h - n_1 and h - n_1 + e - h_f
    exceed the frobenius number, so (a, h - n_1) is in the colon and divides.
    """
    _check_same(I, J)
    if J.is_zero:
        raise ZeroDivisorIdeal("cannot take a colon by the zero ideal")
    H = I.semigroup
    if I.is_zero:
        return StaircaseIdeal(H, (), I.model)
    bound = H.frobenius + H.multiplicity + max(f.h for f in I.gens) + 1
    gens = []
    for h in range(bound):
        if not H.contains(h):
            continue
        need = 0
        for g in J.gens:
            least = I.min_a(h + g.h)
            if least is None:
                need = None
                break
            need = max(need, least - g.a)
        if need is not None:
            gens.append((need, h))
    return normalize(H, gens, I.model)


def mu(I: StaircaseIdeal, check: bool = False) -> int:
    """Minimal number of generators.

    With ``check`` the count is confirmed against m*I: a monomial generator
    is minimal exactly when it does not lie in m*I.
    """
    if check and I.gens:
        mI = product(maximal_ideal(I.semigroup, I.model), I)
        assert not any(membership(mI, g) for g in I.gens), "non-minimal generator"
    return len(I.gens)


def order(I: StaircaseIdeal) -> int:
    """Largest r with I contained in m^r."""
    if I.is_zero:
        raise ValueError("the zero ideal has infinite order")
    H = I.semigroup
    return min(g.a + H.ord(g.h) for g in I.gens)


def loewy_length(I: StaircaseIdeal) -> int:
    """Least r with m^r contained in I."""
    if not I.is_m_primary:
        raise NotMPrimary(f"{I} is not m-primary")
    H = I.semigroup
    a0 = min(g.a for g in I.gens if g.h == 0)
    h0 = min(g.h for g in I.gens if g.a == 0)
    # (a, h) with a >= a0 or h >= h0 + frobenius + 1 is in I; ord(h) <= h / n_1
    bound = a0 + (h0 + H.frobenius + 1) // H.multiplicity + 1
    for r in range(bound + 1):
        if all(membership(I, g) for g in power_of_max(H, r, I.model).gens):
            return r
    raise AssertionError(f"Loewy length search exceeded its proven bound {bound}")


# -- closures ---------------------------------------------------------------


@dataclass(frozen=True)
class RatliffRushResult:
    ideal: StaircaseIdeal
    certified: bool
    certificate: Optional[str]
    steps: int


def ratliff_rush(I: StaircaseIdeal, cap: int = 6) -> RatliffRushResult:
    """Union of the chain I^{k+1} : I^k, k = 0, 1, ..., cap.

    The chain is increasing.  Stabilization is declared once two consecutive
    steps leave it unchanged.  A stabilized value is only *certified* equal
    to the Ratliff-Rush closure by one of:

    * ``integral-closure``: it equals the integral closure, which contains
      the Ratliff-Rush closure (semigroup-ring model only);
    * ``power-of-max``: I = m^l; if x m^{ln} is in m^{ln+l} then x s^{ln} is,
      and since s lowers the m-adic order by exactly one x lies in m^l.

    Raises CapExceeded (with the union so far) if the chain has not settled.
    """
    if not I.is_m_primary:
        raise NotMPrimary(f"{I} is not m-primary")
    H = I.semigroup
    if I.is_unit:
        return RatliffRushResult(I, True, "unit", 0)
    chain = [I]
    lower = unit_ideal(H, I.model)
    upper = I
    for k in range(1, cap + 1):
        lower, upper = upper, product(upper, I)
        chain.append(ideal_sum(chain[-1], colon(upper, lower)))
        if len(chain) >= 3 and chain[-1] == chain[-2] == chain[-3]:
            break
    else:
        raise CapExceeded(
            f"Ratliff-Rush chain not stable after {cap} steps",
            partial=RatliffRushResult(chain[-1], False, None, cap),
        )
    result = chain[-1]
    l = order(I)
    if I == power_of_max(H, l, I.model):
        if result != I:
            raise AssertionError(f"chain left m^{l} although powers of m are Ratliff-Rush closed")
        return RatliffRushResult(result, True, "power-of-max", k)
    if I.model == SEMIGROUP_RING and result == integral_closure(I):
        return RatliffRushResult(result, True, "integral-closure", k)
    return RatliffRushResult(result, False, None, k)


def newton_boundary(I: StaircaseIdeal) -> list[tuple[int, int]]:
    """Vertices of the compact Newton boundary, from the h-axis to the a-axis."""
    if not I.is_m_primary:
        raise NotMPrimary(f"{I} is not m-primary")
    # undominated exponents, by increasing a (hence strictly decreasing h)
    pts = []
    for a, h in sorted((g.a, g.h) for g in I.gens):
        if not pts or h < pts[-1][1]:
            pts.append((a, h))
    chain: list[tuple[int, int]] = []
    for p in pts:
        while len(chain) >= 2:
            (x0, y0), (x1, y1) = chain[-2], chain[-1]
            # drop chain[-1] unless it is strictly below the segment chain[-2] -> p
            if (x1 - x0) * (p[1] - y0) - (p[0] - x0) * (y1 - y0) <= 0:
                chain.pop()
            else:
                break
        chain.append(p)
    return chain


def in_newton_polyhedron(boundary: list[tuple[int, int]], a: int, h: int) -> bool:
    if a < 0 or h < 0:
        return False
    for (x0, y0), (x1, y1) in zip(boundary, boundary[1:]):
        if (x1 - x0) * (h - y0) - (y1 - y0) * (a - x0) < 0:
            return False
    return True


def _require_semigroup_model(I: StaircaseIdeal, what: str) -> None:
    if I.model != SEMIGROUP_RING:
        raise ModelUnsupported(f"{what} is only implemented for k[[s, t^H]], not the {I.model} model")


def integral_closure(I: StaircaseIdeal) -> StaircaseIdeal:
    """Monomials of k[[s, t^H]] in the Newton polyhedron of I."""
    _require_semigroup_model(I, "integral closure")
    if I.is_unit:
        return I
    H = I.semigroup
    boundary = newton_boundary(I)
    a_top = max(g.a for g in I.gens)
    h_top = max(g.h for g in I.gens) + H.frobenius + H.multiplicity + 1
    gens = []
    for h in range(h_top + 1):
        if not H.contains(h):
            continue
        for a in range(a_top + 1):
            if in_newton_polyhedron(boundary, a, h):
                gens.append((a, h))
                break
    return normalize(H, gens, I.model)


def multiplicity(I: StaircaseIdeal) -> int:
    """e(I) = twice the area of the region under the Newton boundary."""
    _require_semigroup_model(I, "multiplicity")
    if I.is_unit:
        return 0
    boundary = newton_boundary(I)
    poly = [(0, 0)] + boundary[::-1]
    twice = 0
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        twice += x0 * y1 - x1 * y0
    return abs(twice)


def mfull_via_s(I: StaircaseIdeal) -> bool:
    """Whether m I : s = I.  False only means s is not a witness."""
    if not I.is_m_primary:
        raise NotMPrimary(f"{I} is not m-primary")
    H = I.semigroup
    mI = product(maximal_ideal(H, I.model), I)
    return colon(mI, principal(H, S, I.model)) == I


__all__ = [
    "CapExceeded",
    "Monomial",
    "StaircaseIdeal",
    "RatliffRushResult",
    "add_monomials",
    "colon",
    "divides",
    "ideal_sum",
    "integral_closure",
    "intersection",
    "is_subset",
    "loewy_length",
    "maximal_ideal",
    "membership",
    "mfull_via_s",
    "mu",
    "multiplicity",
    "newton_boundary",
    "normalize",
    "order",
    "parse_monomial",
    "parse_monomials",
    "power",
    "power_of_max",
    "principal",
    "product",
    "ratliff_rush",
    "unit_ideal",
]
