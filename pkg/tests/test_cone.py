import pytest
from hypothesis import given, strategies as st

from oracles import max_factorization_lengths
from strategies import generator_lists
from srplab.cone import ConeReport, SocleReport, hilbert_slice, socle_degrees, tangent_cone_cm
from srplab.errors import LimitTooSmall
from srplab.semigroup import NumericalSemigroup
from srplab.regression import triple_generators


def test_4_5_11_cone_not_cm():
    rep = tangent_cone_cm(NumericalSemigroup([4, 5, 11]))
    assert not rep.is_cm_certified and rep.failure_witness == 11
    assert rep.depth_tangent_cone == 0 and rep.depth_with_s == 1


@pytest.mark.parametrize("gens", [[3, 4, 5], [2, 3], [1], [5, 6, 7, 8], [3, 5]])
def test_cm_examples(gens):
    rep = tangent_cone_cm(NumericalSemigroup(gens))
    assert rep.is_cm_certified and rep.failure_witness is None and rep.depth_with_s == 2


def test_limit_must_cover_conductor():
    H = NumericalSemigroup([4, 5, 11])
    with pytest.raises(LimitTooSmall):
        tangent_cone_cm(H, limit=11)
    assert tangent_cone_cm(H, limit=12).failure_witness == 11


def test_hilbert_slices():
    assert [hilbert_slice(NumericalSemigroup([4, 5, 11]), k) for k in range(5)] == [1, 3, 3, 4, 4]
    assert [hilbert_slice(NumericalSemigroup([3, 4, 5]), k) for k in range(5)] == [1, 3, 3, 3, 3]


def test_socle_examples():
    assert socle_degrees(NumericalSemigroup([4, 5, 11]), 3).entries[0].witness == 11
    rep = socle_degrees(NumericalSemigroup([10, 11, 79]), 3)
    assert rep.min_socle_degree == 2 and rep.entries[0].witness == 89
    assert socle_degrees(NumericalSemigroup([3, 4, 5]), 5).entries == ()


@pytest.mark.parametrize("a, n", [(5, 1), (7, 3), (10, 2), (14, 3), (20, 4), (50, 7), (31, 5)])
def test_triple_family_socle_degree(a, n):
    H = NumericalSemigroup(triple_generators(a, n))
    rep = socle_degrees(H, n)
    witness = (n - 1) * a + H.generators[2]
    assert rep.min_socle_degree == n
    assert [e.witness for e in rep.entries if e.degree == n] == [witness]


def _oracle_cm(gens, limit):
    best = max_factorization_lengths(gens, limit + min(gens))
    n1 = min(gens)
    return next((h for h in sorted(best) if h <= limit and best.get(h + n1) != best[h] + 1), None)


@given(generator_lists(max_value=12))
def test_cm_scan_matches_oracle(gens):
    H = NumericalSemigroup(gens)
    limit = H.frobenius + H.multiplicity + 40
    rep = tangent_cone_cm(H, limit)
    assert rep.failure_witness == _oracle_cm(H.generators, limit)


@given(generator_lists(max_value=12), st.integers(0, 5))
def test_slice_matches_oracle(gens, k):
    H = NumericalSemigroup(gens)
    best = max_factorization_lengths(H.generators, k * H.largest_generator)
    assert hilbert_slice(H, k) == sum(1 for o in best.values() if o == k)


@given(generator_lists(max_value=12), st.integers(1, 4))
def test_socle_entries_match_definition(gens, d):
    H = NumericalSemigroup(gens)
    top = d * H.largest_generator
    best = max_factorization_lengths(H.generators, top + H.largest_generator)
    expected = sorted(
        (best[h], h) for h in best
        if 0 < h <= top and best[h] <= d and all(best[h + g] >= best[h] + 2 for g in H.generators)
    )
    assert [(e.degree, e.witness) for e in socle_degrees(H, d).entries] == expected


@given(st.integers(2, 9).flatmap(lambda a: st.tuples(st.just(a), st.integers(1, 4))))
def test_arithmetic_sequences_are_cm(pair):
    a, k = pair
    assert tangent_cone_cm(NumericalSemigroup(range(a, a + k + 1))).is_cm_certified


def test_reports_round_trip():
    H = NumericalSemigroup([10, 11, 79])
    rep = tangent_cone_cm(H)
    assert ConeReport.from_dict(rep.to_dict()) == rep
    soc = socle_degrees(H, 3)
    assert SocleReport.from_dict(soc.to_dict()) == soc
