import json

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from srplab.errors import Disconnected, NotAntiNef, NotMinimalResolution, NotNegativeDefinite, NotRational
from srplab.lattice import (
    NAMED_GRAPHS,
    CycleInvariants,
    DualGraph,
    GapRow,
    cycle_invariants,
    dao_gap_scan,
    enumerate_antinef,
    fundamental_cycle,
    is_rational,
    leading_minors,
    named_graph,
    srp_candidate_search,
    validate_graph,
)

A1, A2, A3, D4, E8 = (NAMED_GRAPHS[k] for k in ("A1", "A2", "A3", "D4", "E8"))


def test_validation_examples():
    assert is_rational(validate_graph(A1))
    assert leading_minors(A2.matrix) == [-2, 3]
    g = validate_graph(DualGraph.make([(-1, 1)], []))
    # an elliptic (-1)-curve may not be contracted smoothly, so the graph stays minimal
    assert g.is_minimal and g.pa(fundamental_cycle(g)) == 1 and not is_rational(g)
    assert not DualGraph.make([(-1, 0), (-3, 0)], [(0, 1)]).is_minimal


@pytest.mark.parametrize("n", range(1, 8))
def test_chain_determinants(n):
    # det of -A_n Cartan is n + 1
    chain = DualGraph.make([(-2, 0)] * n, [(i, i + 1) for i in range(n - 1)])
    minors = leading_minors(chain.matrix)
    assert [abs(m) for m in minors] == list(range(2, n + 2))


def test_validation_errors():
    with pytest.raises(Disconnected):
        validate_graph(DualGraph.make([(-2, 0), (-2, 0)], []))
    with pytest.raises(NotNegativeDefinite):
        validate_graph(DualGraph.make([(-1, 0), (-1, 0)], [(0, 1)]))
    # affine D4 tilde is only semidefinite
    with pytest.raises(NotNegativeDefinite):
        validate_graph(DualGraph.make([(-2, 0)] * 5, [(0, 1), (0, 2), (0, 3), (0, 4)]))
    with pytest.raises(ValueError):
        DualGraph.make([(0, 0)], [])


def test_fundamental_cycles():
    assert fundamental_cycle(A1) == (1,)
    assert fundamental_cycle(A2) == (1, 1)
    assert fundamental_cycle(D4) == (2, 1, 1, 1)
    assert fundamental_cycle(E8) == (2, 3, 4, 5, 6, 4, 2, 3)


@pytest.mark.parametrize("name", sorted(NAMED_GRAPHS))
def test_fundamental_cycle_start_independent_and_minimal(name):
    g = NAMED_GRAPHS[name]
    M = fundamental_cycle(g)
    assert {fundamental_cycle(g, i) for i in range(len(g))} == {M}
    assert g.is_antinef(M)
    for i in range(len(g)):
        smaller = list(M)
        smaller[i] -= 1
        assert not any(smaller) or not g.is_antinef(smaller) or min(smaller) < 0
    if len(g) <= 4:
        assert oracles.fundamental_cycle_brute(g.matrix, 3) == M


def test_invariants_examples():
    inv = cycle_invariants(A1, (1,))
    assert (inv.mu, inv.e, inv.ll, inv.ord, inv.pa) == (3, 2, 1, 1, 0)
    inv = cycle_invariants(A1, (2,))
    assert (inv.mu, inv.e, inv.ll) == (5, 8, 2)
    inv = cycle_invariants(A2, (1, 1))
    assert (inv.mu, inv.e, inv.ll) == (3, 2, 1)
    with pytest.raises(NotAntiNef):
        cycle_invariants(A2, (2, 0))


def test_invariants_non_rational_graph():
    g = DualGraph.make([(-1, 1)], [])
    inv = cycle_invariants(g, (2,), c=1)
    assert inv.mu is None and inv.mu_lower_form == 2 + 1 - 1 and inv.note


def test_enumeration_examples():
    assert enumerate_antinef(A1, 3) == [(1,), (2,), (3,)]
    two = enumerate_antinef(A2, 2)
    assert two == [(1, 1), (1, 2), (2, 1), (2, 2)]


@pytest.mark.parametrize("name, bound", [("A2", 4), ("A3", 3), ("D4", 2), ("D4", 3)])
def test_enumeration_matches_brute_force(name, bound):
    g = NAMED_GRAPHS[name]
    M = fundamental_cycle(g)
    upper = [bound * max(M)] * len(g)
    assert enumerate_antinef(g, bound) == oracles.antinef_box(g.matrix, M, upper)


@st.composite
def trees(draw):
    n = draw(st.integers(1, 5))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    selfs = [draw(st.integers(-4, -2)) for _ in range(n)]
    return DualGraph.make([(s, 0) for s in selfs], [(p, i + 1) for i, p in enumerate(parents)])


@given(trees())
def test_random_trees(g):
    try:
        validate_graph(g)
    except NotNegativeDefinite:
        assume(False)
    M = fundamental_cycle(g)
    assert {fundamental_cycle(g, i) for i in range(len(g))} == {M}
    upper = [2 * max(M)] * len(g)
    cycles = enumerate_antinef(g, 2)
    assert cycles == oracles.antinef_box(g.matrix, M, upper)
    assert all(all(z >= m for z, m in zip(Z, M)) for Z in cycles)
    if is_rational(g):
        for row in dao_gap_scan(g, 2):
            assert row.forward_gap >= 0 and row.reverse_gap >= 0


@given(trees(), st.integers(1, 4))
def test_multiples_of_m_have_zero_forward_gap(g, n):
    try:
        validate_graph(g)
    except NotNegativeDefinite:
        assume(False)
    assume(is_rational(g))
    M = fundamental_cycle(g)
    inv = cycle_invariants(g, [n * m for m in M])
    assert (inv.mu - 1) * inv.ll - inv.e == 0


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "D4", "E8"])
def test_gap_identities_and_signs(name):
    g = NAMED_GRAPHS[name]
    M = fundamental_cycle(g)
    for row in dao_gap_scan(g, 4 if name != "E8" else 2):
        ll_m = [row.ll * m - z for m, z in zip(M, row.Z)]
        assert row.forward_gap == -oracles.pairing(g.matrix, ll_m, row.Z) >= 0
        z_m = [z - row.ord * m for m, z in zip(M, row.Z)]
        assert row.reverse_gap == -oracles.pairing(g.matrix, row.Z, z_m) >= 0


def test_gap_scan_needs_rational_graph():
    with pytest.raises(NotRational):
        dao_gap_scan(DualGraph.make([(-1, 1)], []), 2)


def test_candidates_more_than_two_curves():
    assert srp_candidate_search(A1, 4) == []
    assert srp_candidate_search(A3, 4)
    assert srp_candidate_search(D4, 4)


def test_two_curve_candidates_are_verified_cycles():
    # (2, 1) on A2: anti-nef, only (1, 1) below it, and -M.Z rises from 2 to 3
    assert A2.is_antinef((2, 1))
    M = fundamental_cycle(A2)
    assert -A2.pair(M, (1, 1)) == 2 and -A2.pair(M, (2, 1)) == 3
    assert (2, 1) in srp_candidate_search(A2, 4)


def test_candidate_preconditions():
    blown_up = DualGraph.make([(-1, 0), (-3, 0)], [(0, 1)])
    validate_graph(blown_up)
    with pytest.raises(NotMinimalResolution):
        srp_candidate_search(blown_up, 2)
    with pytest.raises(NotRational):
        srp_candidate_search(DualGraph.make([(-2, 1)], []), 2)


def test_json_graph_round_trip():
    text = '{"vertices":[{"self":-2,"genus":0},{"self":-3,"genus":0}],"edges":[[1,0]]}'
    g = DualGraph.from_json(text)
    assert g.edges == ((0, 1),)
    assert DualGraph.from_dict(json.loads(json.dumps(g.to_dict()))) == g
    row = dao_gap_scan(A2, 2)[1]
    assert GapRow.from_dict(json.loads(json.dumps(row.to_dict()))) == row
    inv = cycle_invariants(D4, (2, 1, 1, 1))
    assert CycleInvariants.from_dict(json.loads(json.dumps(inv.to_dict()))) == inv


def test_named_graph_lookup():
    assert named_graph("d4") is D4
    with pytest.raises(ValueError):
        named_graph("Z9")
