"""Strong Rees property verdicts for powers of the maximal ideal.

HOLDS is only ever issued from a sufficient criterion (Cohen-Macaulay
tangent cone, or a socle-degree bound when depth G = 1).  FAILS always
carries a monomial witness J with m^l strictly inside J and mu(J) >= mu(m^l),
re-verified from scratch before it is returned.  Anything else is UNKNOWN;
an exhausted monomial scan proves nothing about non-monomial ideals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .cone import ConeReport, SocleReport, socle_degrees, tangent_cone_cm, hilbert_slice
from .errors import (
    BoxTooLarge,
    ContradictionWithPaper,
    NonMonotoneVerdicts,
    PreconditionViolated,
    PropagationFailed,
)
from .ideals import (
    POINT_DIVISOR,
    S,
    SEMIGROUP_RING,
    Monomial,
    StaircaseIdeal,
    add_monomials,
    divides,
    ideal_sum,
    is_subset,
    loewy_length,
    maximal_ideal,
    membership,
    mu,
    multiplicity,
    normalize,
    order,
    parse_monomials,
    power,
    power_of_max,
    principal,
    product,
    ratliff_rush,
)
from .semigroup import NumericalSemigroup


class Status(str, enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    UNKNOWN = "UNKNOWN"


class Reason(str, enum.Enum):
    CONE_CM = "ConeCM"
    SOCLE_BOUND = "SocleBound"
    POINT_CRITERION = "PointCriterion"
    MONOMIAL_WITNESS = "MonomialWitness"
    PROPAGATED = "Propagated"
    SCAN_EXHAUSTED = "ScanExhausted"


@dataclass(frozen=True)
class Bounds:
    """Search limits.  ``None`` picks the documented default for each."""

    cone_limit: Optional[int] = None
    socle_degree: Optional[int] = None
    point_search: Optional[int] = None
    box: Optional[tuple[int, int]] = None
    candidate_cap: int = 5000
    rr_cap: int = 6

    def to_dict(self) -> dict:
        return {
            "cone_limit": self.cone_limit,
            "socle_degree": self.socle_degree,
            "point_search": self.point_search,
            "box": list(self.box) if self.box else None,
            "candidate_cap": self.candidate_cap,
            "rr_cap": self.rr_cap,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Bounds":
        d = dict(d)
        if d.get("box") is not None:
            d["box"] = tuple(d["box"])
        return cls(**d)


def default_box(H: NumericalSemigroup, l: int) -> tuple[int, int]:
    return (l, l * H.largest_generator + H.frobenius + 1)


@dataclass(frozen=True)
class SrpVerdict:
    generators: tuple[int, ...]
    power: int
    status: Status
    reason: Reason
    mu_power: int
    witness: Optional[StaircaseIdeal] = None
    facts: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)

    @property
    def witness_mu(self) -> Optional[int]:
        return None if self.witness is None else mu(self.witness)

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "power": self.power,
            "status": self.status.value,
            "reason": self.reason.value,
            "mu_power": self.mu_power,
            "witness": None if self.witness is None else self.witness.to_text(),
            "witness_model": None if self.witness is None else self.witness.model,
            "witness_mu": self.witness_mu,
            "facts": self.facts,
            "bounds": self.bounds,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SrpVerdict":
        witness = None
        if d["witness"] is not None:
            H = NumericalSemigroup(d["generators"])
            witness = normalize(H, parse_monomials(d["witness"]), d["witness_model"])
        return cls(
            tuple(d["generators"]),
            d["power"],
            Status(d["status"]),
            Reason(d["reason"]),
            d["mu_power"],
            witness,
            d["facts"],
            d["bounds"],
        )


# -- witness verification --------------------------------------------------


def verify_witness(H: NumericalSemigroup, l: int, J: StaircaseIdeal) -> bool:
    """Independent check that J strictly contains m^l with mu(J) >= mu(m^l).

    m^l is rebuilt as an honest l-fold product of m, membership is tested by
    plain divisibility and mu is recounted after a fresh normalization.
    """
    ml = power(maximal_ideal(H, J.model), l)
    jg = normalize(H, J.gens, J.model).gens

    def member(gens: Sequence[Monomial], x: Monomial) -> bool:
        return any(divides(H, g, x) for g in gens)

    contains = all(member(jg, g) for g in ml.gens)
    strict = any(not member(ml.gens, g) for g in jg)
    return contains and strict and len(jg) >= len(ml.gens)


# -- point criterion -------------------------------------------------------


@dataclass(frozen=True)
class PointWitness:
    h: int
    ideal: StaircaseIdeal
    indexing: str


def _point_candidates(H: NumericalSemigroup, r: int, bound: int, indexing: str) -> list[int]:
    table = H.ord_table(bound + H.largest_generator)
    out = []
    for h in range(bound + 1):
        o = table.get(h)
        if o is None:
            continue
        if indexing == "proof":
            # h in (r-1)H_+ but not rH_+, and h + H_+ inside (r+1)H_+
            ok = o == r - 1 and all(table[h + g] >= r + 1 for g in H.generators)
        else:
            # statement form with k = r - 1: h in kH_+ \ (k+1)H_+, h + n_i in (k+2)H_+,
            # concluding for m^{k+1}
            k = r - 1
            ok = o >= k and not o >= k + 1 and all(H.in_r_fold(h + g, k + 2) for g in H.generators)
        if ok:
            out.append(h)
    return out


def point_srp_criterion(
    H: NumericalSemigroup,
    r: int,
    search_bound: Optional[int] = None,
    model: str = POINT_DIVISOR,
) -> Optional[PointWitness]:
    """Smallest h giving a verified witness m^r + (t^h) with the same mu as m^r.

    Every candidate must pass the mu comparison; the engine, not the
    indexing of the criterion, decides.
    """
    if r < 2:
        raise PreconditionViolated("the point criterion needs r >= 2")
    if search_bound is None:
        search_bound = r * H.largest_generator
    if search_bound < r * H.largest_generator:
        raise PreconditionViolated(f"search_bound must be >= r * n_e = {r * H.largest_generator}")
    mr = power_of_max(H, r, model)
    target = mu(mr)
    seen = set()
    for indexing in ("proof", "statement"):
        for h in _point_candidates(H, r, search_bound, indexing):
            if h in seen:
                continue
            seen.add(h)
            J = add_monomials(mr, [(0, h)])
            if mu(J) == target and verify_witness(H, r, J):
                return PointWitness(h, J, indexing)
    return None


# -- monomial scan ---------------------------------------------------------


@dataclass(frozen=True)
class ClimbRecord:
    seed: Monomial
    seed_mu: int
    end: StaircaseIdeal
    end_mu: int


@dataclass
class ReesScan:
    power: int
    mu_power: int
    box: tuple[int, int]
    candidates: int
    witness: Optional[StaircaseIdeal] = None
    seed: Optional[Monomial] = None
    scanned: list = field(default_factory=list)

    @property
    def max_scanned_mu(self) -> Optional[int]:
        return max((r.end_mu for r in self.scanned), default=None)


def _climb(start: StaircaseIdeal, candidates: Sequence[Monomial], target: int) -> StaircaseIdeal:
    """Add candidates while mu stays >= target until a full pass adds nothing."""
    J = start
    grown = True
    while grown:
        grown = False
        for c in candidates:
            if membership(J, c):
                continue
            K = add_monomials(J, [c])
            if mu(K) >= target:
                J, grown = K, True
    return J


def rees_candidates(H: NumericalSemigroup, l: int, box: tuple[int, int]) -> list[Monomial]:
    """Monomials (a, h) outside m^l, i.e. a + ord(h) < l, inside the box."""
    amax, hmax = box
    table = H.ord_table(hmax)
    return [
        Monomial(a, h)
        for h, o in sorted(table.items())
        for a in range(min(amax, l - 1 - o) + 1)
    ]


def monomial_rees_scan(
    H: NumericalSemigroup,
    l: int,
    box: Optional[tuple[int, int]] = None,
    candidate_cap: int = 5000,
    model: str = SEMIGROUP_RING,
) -> ReesScan:
    """Look for J strictly above m^l with mu(J) >= mu(m^l) among monomial ideals.

    Each candidate c seeds J = m^l + (c), which is then grown greedily inside
    the box while mu does not drop below mu(m^l + (c)).  The first climb that
    ends at mu >= mu(m^l) is the witness.  Finding nothing proves nothing
    about non-monomial ideals.
    """
    if box is None:
        box = default_box(H, l)
    ml = power_of_max(H, l, model)
    target = mu(ml)
    cands = rees_candidates(H, l, box)
    if len(cands) > candidate_cap:
        raise BoxTooLarge(f"{len(cands)} candidates exceed the cap {candidate_cap}")
    scan = ReesScan(l, target, tuple(box), len(cands))
    for c in cands:
        J = add_monomials(ml, [c])
        m = mu(J)
        end = _climb(J, cands, m)
        record = ClimbRecord(c, m, end, mu(end))
        scan.scanned.append(record)
        if record.end_mu >= target:
            scan.witness, scan.seed = end, c
            break
    return scan


# -- propagation -----------------------------------------------------------


def propagate_failure(H: NumericalSemigroup, l: int, I: StaircaseIdeal) -> StaircaseIdeal:
    """Turn a witness for m^l into one for m^{l+1}: J = s I + m^{l+1}."""
    model = I.model
    ml, ml1 = power_of_max(H, l, model), power_of_max(H, l + 1, model)
    if not (is_subset(ml, I) and I != ml and mu(I) == mu(ml)):
        raise PreconditionViolated(f"{I} is not a witness against SRP of m^{l}")
    sI = product(principal(H, S, model), I)
    if product(maximal_ideal(H, model), I) != ideal_sum(sI, ml1):
        raise PropagationFailed(f"m*I != s*I + m^{l + 1} for witness {I}")
    J = ideal_sum(sI, ml1)
    if not (is_subset(ml1, J) and J != ml1 and mu(J) == mu(ml1)):
        raise PropagationFailed(f"s*I + m^{l + 1} = {J} is not a witness for m^{l + 1}")
    return J


# -- verdicts --------------------------------------------------------------


def _facts(H: NumericalSemigroup, l: int, cone: ConeReport, socle: Optional[SocleReport], model: str, rr_cap: int) -> dict:
    rr = ratliff_rush(power_of_max(H, l, model), cap=rr_cap)
    facts = {
        "cone_cm_up_to": cone.cm_up_to,
        "cone_cm_certified": cone.is_cm_certified,
        "cone_failure_witness": cone.failure_witness,
        "depth_tangent_cone": cone.depth_tangent_cone,
        "depth_G": cone.depth_with_s,
        "rr_closed": rr.ideal == power_of_max(H, l, model),
        "rr_certificate": rr.certificate,
        "h1_finite_length": "not decided",
    }
    if socle is not None:
        facts["socle_scanned_to"] = socle.max_degree
        facts["min_socle_degree"] = socle.min_socle_degree
    return facts


def _tripwire(H: NumericalSemigroup, l: int, cone: ConeReport, socle: Optional[SocleReport], witness) -> None:
    if witness is None:
        return
    if cone.is_cm_certified:
        raise ContradictionWithPaper(
            f"{H}: m^{l} has a witness {witness} although the tangent cone is CM up to {cone.cm_up_to}"
        )
    if socle is not None and all(e.degree >= l for e in socle.entries) and socle.max_degree >= l - 1:
        raise ContradictionWithPaper(f"{H}: m^{l} has a witness {witness} below the socle bound")


def srp_status(
    H: NumericalSemigroup,
    l: int,
    bounds: Optional[Bounds] = None,
    model: str = SEMIGROUP_RING,
    cross_check: bool = False,
) -> SrpVerdict:
    """Verdict on the strong Rees property of m^l.

    Pipeline: CM tangent cone -> socle bound -> point criterion -> monomial
    scan -> UNKNOWN.  With ``cross_check`` the falsifiers also run after a
    HOLDS verdict and any witness raises ContradictionWithPaper.
    """
    if l < 1:
        raise PreconditionViolated("power must be >= 1")
    bounds = bounds or Bounds()
    cone = tangent_cone_cm(H, bounds.cone_limit)
    ml = power_of_max(H, l, model)
    target = mu(ml)
    used = bounds.to_dict()
    used["cone_limit"] = cone.cm_up_to

    def verdict(status, reason, witness=None, socle=None):
        return SrpVerdict(H.generators, l, status, reason, target, witness,
                          _facts(H, l, cone, socle, model, bounds.rr_cap), used)

    def falsify() -> tuple[Optional[Reason], Optional[StaircaseIdeal]]:
        if l >= 2:
            pw = point_srp_criterion(H, l, bounds.point_search, model)
            if pw is not None:
                return Reason.POINT_CRITERION, pw.ideal
        box = bounds.box or default_box(H, l)
        used["box"] = list(box)
        scan = monomial_rees_scan(H, l, box, bounds.candidate_cap, model)
        if scan.witness is not None:
            return Reason.MONOMIAL_WITNESS, scan.witness
        return None, None

    if cone.is_cm_certified:
        if cross_check:
            _tripwire(H, l, cone, None, falsify()[1])
        return verdict(Status.HOLDS, Reason.CONE_CM)

    # depth G = 1 exactly here: G(k[H]) has depth 0 and S is G-regular
    socle = socle_degrees(H, bounds.socle_degree or max(l, 1))
    used["socle_degree"] = socle.max_degree
    below = [e for e in socle.entries if e.degree < l]
    if not below and socle.max_degree >= l - 1:
        if cross_check:
            _tripwire(H, l, cone, socle, falsify()[1])
        return verdict(Status.HOLDS, Reason.SOCLE_BOUND, socle=socle)

    reason, witness = falsify()
    if witness is not None:
        if not verify_witness(H, l, witness):
            raise AssertionError(f"witness {witness} for m^{l} failed re-verification")
        _tripwire(H, l, cone, socle, witness)
        return verdict(Status.FAILS, reason, witness, socle)
    return verdict(Status.UNKNOWN, Reason.SCAN_EXHAUSTED, socle=socle)


@dataclass(frozen=True)
class ThresholdReport:
    generators: tuple[int, ...]
    max_power: int
    verdicts: tuple[SrpVerdict, ...]
    holds_up_to: int
    first_failure: Optional[int]

    @property
    def threshold(self) -> Optional[int]:
        """n with SRP exactly for 1 <= l <= n, when the scan pins it down."""
        if self.first_failure is not None and self.first_failure == self.holds_up_to + 1:
            return self.holds_up_to
        return None

    @property
    def unbounded(self) -> bool:
        """No failure up to max_power and a CM tangent cone certificate."""
        return self.first_failure is None and all(v.reason == Reason.CONE_CM for v in self.verdicts)

    def describe(self) -> str:
        if self.threshold is not None:
            return str(self.threshold)
        if self.first_failure is None:
            return f">= {self.holds_up_to}" if self.holds_up_to == self.max_power else f">= {self.holds_up_to} (unknown beyond)"
        return f"between {self.holds_up_to} and {self.first_failure - 1}"

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "max_power": self.max_power,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "holds_up_to": self.holds_up_to,
            "first_failure": self.first_failure,
            "threshold": self.threshold,
            "unbounded": self.unbounded,
            "describe": self.describe(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ThresholdReport":
        return cls(
            tuple(d["generators"]),
            d["max_power"],
            tuple(SrpVerdict.from_dict(v) for v in d["verdicts"]),
            d["holds_up_to"],
            d["first_failure"],
        )


def srp_threshold(
    H: NumericalSemigroup,
    max_power: int,
    bounds: Optional[Bounds] = None,
    model: str = SEMIGROUP_RING,
) -> ThresholdReport:
    """Verdicts for l = 1..max_power, with failures propagated upward.

    Once m^l fails, m^{l+1} gets the witness s*I + m^{l+1}; a HOLDS
    certificate after a failure raises NonMonotoneVerdicts.
    """
    if max_power < 1:
        raise PreconditionViolated("max_power must be >= 1")
    bounds = bounds or Bounds()
    verdicts: list[SrpVerdict] = []
    witness: Optional[StaircaseIdeal] = None
    first_failure = None
    for l in range(1, max_power + 1):
        if witness is None:
            v = srp_status(H, l, bounds, model)
            if v.status == Status.FAILS:
                witness, first_failure = v.witness, l
        else:
            cone = tangent_cone_cm(H, bounds.cone_limit)
            socle = socle_degrees(H, max(l, 1))
            if cone.is_cm_certified or not any(e.degree < l for e in socle.entries):
                raise NonMonotoneVerdicts(f"{H}: m^{first_failure} fails but m^{l} holds")
            witness = propagate_failure(H, l - 1, witness)
            if not verify_witness(H, l, witness):
                raise PropagationFailed(f"propagated witness for m^{l} failed re-verification")
            v = SrpVerdict(H.generators, l, Status.FAILS, Reason.PROPAGATED,
                           mu(power_of_max(H, l, model)), witness,
                           _facts(H, l, cone, socle, model, bounds.rr_cap), bounds.to_dict())
        verdicts.append(v)
    holds_up_to = 0
    for v in verdicts:
        if v.status != Status.HOLDS:
            break
        holds_up_to = v.power
    return ThresholdReport(H.generators, max_power, tuple(verdicts), holds_up_to, first_failure)


# -- Takahashi-Dao ---------------------------------------------------------


@dataclass(frozen=True)
class DaoRow:
    label: str
    mu: int
    loewy_length: int
    order: int
    e: int
    forward_gap: int
    reverse_gap: int
    closed_form_gap: Optional[int] = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, d: dict) -> "DaoRow":
        return cls(**d)


def dao_row(I: StaircaseIdeal, label: str, closed_form: Optional[int] = None) -> DaoRow:
    m, ll, o, e = mu(I), loewy_length(I), order(I), multiplicity(I)
    return DaoRow(label, m, ll, o, e, (m - 1) * ll - e, e - (m - 1) * o, closed_form)


def dao_check(
    H: NumericalSemigroup,
    max_power: int = 0,
    ideals: Sequence[StaircaseIdeal] = (),
) -> list[DaoRow]:
    """Forward gap (mu-1)*ll - e and reverse gap e - (mu-1)*ord per ideal.

    For powers of m the forward gap is also computed from the closed form
    (mu(m^l) - 1) * l - l^2 * e(m), with mu from the Hilbert slices and
    e(m) = n_1, independently of the staircase engine.
    """
    rows = []
    e_m = H.multiplicity
    for l in range(1, max_power + 1):
        mu_slices = sum(hilbert_slice(H, k) for k in range(l + 1))
        closed = (mu_slices - 1) * l - l * l * e_m
        rows.append(dao_row(power_of_max(H, l), f"m^{l}", closed))
    for i, I in enumerate(ideals):
        rows.append(dao_row(I, I.to_text() or f"ideal[{i}]"))
    return rows


def med_check(H: NumericalSemigroup) -> bool:
    """Maximal embedding dimension: mu(m) = e(m) + dim - 1 with dim = 2."""
    m = maximal_ideal(H)
    return mu(m) == multiplicity(m) + 1


@dataclass(frozen=True)
class OrdinaryPointReport:
    genus: int
    generators: tuple[int, ...]
    max_power: int
    valuation_matches: tuple[bool, ...]
    square_is_reduction: bool
    maximal_embedding_dimension: bool

    @property
    def all_pass(self) -> bool:
        return all(self.valuation_matches) and self.square_is_reduction and self.maximal_embedding_dimension

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "generators": list(self.generators),
            "max_power": self.max_power,
            "valuation_matches": list(self.valuation_matches),
            "square_is_reduction": self.square_is_reduction,
            "maximal_embedding_dimension": self.maximal_embedding_dimension,
            "all_pass": self.all_pass,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OrdinaryPointReport":
        return cls(d["genus"], tuple(d["generators"]), d["max_power"],
                   tuple(d["valuation_matches"]), d["square_is_reduction"],
                   d["maximal_embedding_dimension"])


def ordinary_point_check(g: int, n_max: int) -> OrdinaryPointReport:
    """Monomial checks for H = <g+1, ..., 2g+1> in the point-divisor model.

    For each n <= n_max the valuation a + floor(h/(g+1)) >= n must cut out
    exactly m^n.  The report also records whether m^2 = Q m for
    Q = (T, t^{g+1}) and whether H has maximal embedding dimension.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    H = NumericalSemigroup(range(g + 1, 2 * g + 2))
    q = g + 1
    matches = []
    for n in range(1, n_max + 1):
        top = n * q + 2 * g + 1
        w_ideal = normalize(
            H,
            [(max(0, n - h // q), h) for h in range(top + 1) if H.contains(h)],
            POINT_DIVISOR,
        )
        matches.append(w_ideal == power_of_max(H, n, POINT_DIVISOR))
    m = maximal_ideal(H, POINT_DIVISOR)
    Q = normalize(H, [(1, 0), (0, q)], POINT_DIVISOR)
    return OrdinaryPointReport(
        g, H.generators, n_max, tuple(matches),
        power_of_max(H, 2, POINT_DIVISOR) == product(Q, m),
        med_check(H),
    )


# -- classification scan ---------------------------------------------------


@dataclass
class ClassificationReport:
    family_size: int
    climb_results: list
    monomial_srp: list
    powers_of_m: set

    @property
    def all_climbs_are_powers(self) -> bool:
        return all(J in self.powers_of_m for J in self.climb_results)

    @property
    def all_srp_are_powers(self) -> bool:
        return all(J in self.powers_of_m for J in self.monomial_srp)


def classification_scan(
    H: NumericalSemigroup,
    box: tuple[int, int],
    base: Optional[StaircaseIdeal] = None,
    family_cap: int = 20000,
) -> ClassificationReport:
    """Monomial ideals containing ``base`` (default (s^A, t^B) for box (A, B)).

    Every member is climbed to a maximal element of {J' >= J : mu(J') >= mu(J)}
    inside the family; those maxima, and all members with the strong Rees
    property among monomial ideals, are compared against powers of m.  The
    family must contain every monomial ideal above ``base``, which holds when
    the box covers everything outside ``base``.
    """
    A, B = box
    if base is None:
        base = normalize(H, [(A, 0)] + [(0, h) for h in range(B, B + H.largest_generator + 1) if H.contains(h)])
    cands = [Monomial(a, h) for h in range(B + 1) if H.contains(h) for a in range(A + 1)
             if not membership(base, (a, h))]
    family = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for J in frontier:
            for c in cands:
                if membership(J, c):
                    continue
                K = add_monomials(J, [c])
                if K not in family:
                    family.add(K)
                    nxt.append(K)
                    if len(family) > family_cap:
                        raise BoxTooLarge(f"family exceeds {family_cap} ideals")
        frontier = nxt
    members = sorted(family, key=lambda J: (len(J.gens), J.gens))
    mus = {J: mu(J) for J in members}

    def larger(J):
        return [K for K in members if K != J and is_subset(J, K)]

    srp = [J for J in members if all(mus[K] < mus[J] for K in larger(J))]
    climbs = []
    for J in members:
        top = _climb(J, cands, mus[J])
        while True:
            up = [K for K in larger(top) if mus[K] >= mus[J]]
            if not up:
                break
            top = up[0]
        climbs.append(top)
    depth = max(order(J) for J in members) + 1
    powers = {power_of_max(H, l) for l in range(depth + 1)}
    return ClassificationReport(len(members), climbs, srp, powers)
