"""Replayable reference fixtures, one named check per worked example.

Each check returns ``(passed, detail)``.  ``srplab papercheck`` prints the
matrix; the pytest acceptance module asserts the same facts on its own.
"""

from __future__ import annotations

from math import comb
from typing import Callable

from .cone import socle_degrees, tangent_cone_cm
from .hypersurface import HypersurfaceSpec, required_constant
from .ideals import (
    add_monomials,
    integral_closure,
    maximal_ideal,
    membership,
    mfull_via_s,
    mu,
    power_of_max,
    ratliff_rush,
)
from .lattice import NAMED_GRAPHS, cycle_invariants, dao_gap_scan, fundamental_cycle, srp_candidate_search
from .semigroup import NumericalSemigroup
from .srp import (
    Status,
    classification_scan,
    dao_check,
    med_check,
    monomial_rees_scan,
    ordinary_point_check,
    srp_threshold,
)

Check = Callable[[], tuple[bool, str]]


def triple_generators(a: int, n: int) -> tuple[int, int, int]:
    """(a, a+1, (a-1)(a+1) - a n), the family whose minimal socle degree is n."""
    if a <= 2 * n:
        raise ValueError("the family needs a > 2n")
    return (a, a + 1, (a - 1) * (a + 1) - a * n)


def _failed(facts: dict) -> tuple[bool, str]:
    bad = [k for k, v in facts.items() if not v]
    return not bad, "ok" if not bad else "failed: " + ", ".join(bad)


def check_4_5_11() -> tuple[bool, str]:
    H = NumericalSemigroup([4, 5, 11])
    m2 = power_of_max(H, 2)
    J = add_monomials(m2, [(0, 11)])
    return _failed({
        "mu(m)=4": mu(maximal_ideal(H)) == 4,
        "mu(m^2)=7": mu(m2) == 7,
        "mu(m^2+t^11)=7": mu(J) == 7,
        "m^2 RR-closed": ratliff_rush(m2).ideal == m2,
        "m^2 m-full": mfull_via_s(m2),
        "t^11 in closure": membership(integral_closure(m2), (0, 11)) and not membership(m2, (0, 11)),
        "cone witness 11": tangent_cone_cm(H).failure_witness == 11,
    })


def check_triple(a: int, n: int) -> Check:
    def run() -> tuple[bool, str]:
        H = NumericalSemigroup(triple_generators(a, n))
        w = (n - 1) * a + H.generators[2]
        rep = srp_threshold(H, n + 3)
        v = rep.verdicts[n]
        ok, detail = _failed({
            "socle degree": socle_degrees(H, n).min_socle_degree == n,
            "threshold": rep.threshold == n,
            "witness": v.status == Status.FAILS and v.witness == add_monomials(power_of_max(H, n + 1), [(0, w)]),
            "propagates": all(x.status == Status.FAILS for x in rep.verdicts[n:]),
        })
        return ok, f"{H.generators}: threshold {rep.describe()}; {detail}"
    return run


def check_cm_consistency() -> tuple[bool, str]:
    facts = {}
    for gens in ([3, 4, 5], [2, 3], [1]):
        H = NumericalSemigroup(gens)
        for l in range(1, 6):
            scan = monomial_rees_scan(H, l)
            facts[f"{gens} l={l}"] = scan.witness is None and all(
                r.end_mu <= scan.mu_power for r in scan.scanned
            )
    return _failed(facts)


def check_dao() -> tuple[bool, str]:
    a = dao_check(NumericalSemigroup([3, 4, 5]), 5)
    b = dao_check(NumericalSemigroup([4, 5, 11]), 1)
    return _failed({
        "<3,4,5> gap 0": all(r.forward_gap == 0 == r.closed_form_gap for r in a),
        "<4,5,11> gap < 0": b[0].forward_gap < 0,
        "med <3,4,5>": med_check(NumericalSemigroup([3, 4, 5])),
        "no med <4,5,11>": not med_check(NumericalSemigroup([4, 5, 11])),
    })


def check_ordinary_points() -> tuple[bool, str]:
    return _failed({f"g={g}": ordinary_point_check(g, 6).all_pass for g in (1, 2, 3)})


def check_lattice() -> tuple[bool, str]:
    A1 = NAMED_GRAPHS["A1"]
    facts = {}
    inv = cycle_invariants(A1, (1,))
    facts["A1 (mu,e,ll)"] = (inv.mu, inv.e, inv.ll) == (3, 2, 1)
    facts["A1 nM gap 0"] = all(
        (i.mu - 1) * i.ll - i.e == 0 for i in (cycle_invariants(A1, (n,)) for n in range(1, 6))
    )
    for name in ("A2", "A3", "D4", "E8"):
        rows = dao_gap_scan(NAMED_GRAPHS[name], 4)
        facts[f"{name} gaps >= 0"] = all(r.forward_gap >= 0 and r.reverse_gap >= 0 for r in rows)
    for name in ("A1", "A2"):
        facts[f"{name} no candidates"] = not srp_candidate_search(NAMED_GRAPHS[name], 4)
    for name in ("A3", "D4"):
        facts[f"{name} candidates"] = bool(srp_candidate_search(NAMED_GRAPHS[name], 4))
    return _failed(facts)


def check_hypersurface() -> tuple[bool, str]:
    facts = {}
    for n in range(3, 11):
        facts[f"d=2 n={n}"] = required_constant(HypersurfaceSpec(2, n), 100).supremum == comb(n - 1, 2)
    facts["d=3 n=4 bounded"] = not required_constant(HypersurfaceSpec(3, 4), 10**4).divergent
    for n in range(5, 9):
        facts[f"d=3 n={n} divergent"] = required_constant(HypersurfaceSpec(3, n), 10**4).divergent
    return _failed(facts)


def check_classification() -> tuple[bool, str]:
    rep = classification_scan(NumericalSemigroup([1]), (5, 5))
    return _failed({
        "climbs end at powers": rep.all_climbs_are_powers,
        "srp members are powers": rep.all_srp_are_powers,
    })


CHECKS: dict[str, Check] = {
    "semigroup <4,5,11>": check_4_5_11,
    "triple a=10 n=2": check_triple(10, 2),
    "triple a=14 n=3": check_triple(14, 3),
    "CM cone consistency": check_cm_consistency,
    "Dao gaps": check_dao,
    "ordinary points": check_ordinary_points,
    "resolution lattice": check_lattice,
    "hypersurfaces": check_hypersurface,
    "classification over N": check_classification,
}


def run_all() -> list[tuple[str, bool, str]]:
    out = []
    for name, check in CHECKS.items():
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failed fixture, not a crash of the matrix
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, ok, detail))
    return out
