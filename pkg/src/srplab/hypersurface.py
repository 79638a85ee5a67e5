"""Hilbert functions of homogeneous hypersurfaces A = k[[x_0..x_d]]/(f), deg f = n.

The associated graded ring is the graded hypersurface itself, so

    mu(m^s) = dim A_s = C(s+d, d) - C(s+d-n, d),   e(m^s) = n s^d,   ll(m^s) = s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial


@dataclass(frozen=True)
class HypersurfaceSpec:
    d: int
    n: int

    def __post_init__(self):
        if self.d < 2 or self.n < 2:
            raise ValueError(f"need d >= 2 and n >= 2, got d={self.d}, n={self.n}")


def _binom(m: int, d: int) -> int:
    return comb(m, d) if m >= d else 0


def hilbert_mu(spec: HypersurfaceSpec, s: int) -> int:
    """Number of generators of m^s."""
    if s < 1:
        raise ValueError("s must be >= 1")
    mu = _binom(s + spec.d, spec.d) - _binom(s + spec.d - spec.n, spec.d)
    if spec.d == 2 and s >= spec.n - 2:
        assert mu == s * spec.n - spec.n * (spec.n - 3) // 2
    return mu


def hilbert_row(spec: HypersurfaceSpec, s: int) -> dict:
    return {"s": s, "mu": hilbert_mu(spec, s), "e": spec.n * s ** spec.d, "ll": s}


def required_c(spec: HypersurfaceSpec, s: int) -> Fraction:
    """Least c with (mu(m^s) - d + 1 + c) (d-1)! ll(m^s) >= e(m^s)."""
    e = spec.n * s ** spec.d
    return Fraction(e, factorial(spec.d - 1) * s) - hilbert_mu(spec, s) + spec.d - 1


@dataclass(frozen=True)
class RequiredConstant:
    spec: HypersurfaceSpec
    s_max: int
    values: tuple[Fraction, ...]

    @property
    def supremum(self) -> Fraction:
        return max(self.values)

    @property
    def attained_at(self) -> int:
        """Smallest s reaching the supremum."""
        return 1 + self.values.index(self.supremum)

    @property
    def window(self) -> tuple[int, int]:
        return (self.s_max // 2, self.s_max)

    @property
    def divergent(self) -> bool:
        """c(s) strictly increases across the last half of the scan."""
        lo, hi = self.window
        tail = self.values[lo - 1 : hi]
        return len(tail) > 1 and all(x < y for x, y in zip(tail, tail[1:]))

    def to_dict(self, with_values: bool = True) -> dict:
        d = {
            "d": self.spec.d,
            "n": self.spec.n,
            "s_max": self.s_max,
            "supremum": str(self.supremum),
            "attained_at": self.attained_at,
            "divergent": self.divergent,
            "window": list(self.window),
        }
        if with_values:
            d["values"] = [str(v) for v in self.values]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RequiredConstant":
        return cls(HypersurfaceSpec(d["d"], d["n"]), d["s_max"], tuple(Fraction(v) for v in d["values"]))


def required_constant(spec: HypersurfaceSpec, s_max: int) -> RequiredConstant:
    if s_max < spec.n:
        raise ValueError(f"s_max must be >= n = {spec.n}")
    return RequiredConstant(spec, s_max, tuple(required_c(spec, s) for s in range(1, s_max + 1)))
