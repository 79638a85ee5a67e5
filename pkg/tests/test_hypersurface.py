import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

import oracles
from srplab.hypersurface import (
    HypersurfaceSpec,
    RequiredConstant,
    hilbert_mu,
    hilbert_row,
    required_c,
    required_constant,
)


def test_examples():
    assert hilbert_mu(HypersurfaceSpec(2, 4), 4) == 14
    assert hilbert_mu(HypersurfaceSpec(2, 3), 1) == 3
    assert hilbert_mu(HypersurfaceSpec(3, 5), 10) == 230


@given(st.integers(2, 4), st.integers(2, 6), st.integers(1, 9))
def test_mu_matches_monomial_count(d, n, s):
    assert hilbert_mu(HypersurfaceSpec(d, n), s) == oracles.hypersurface_mu(d, n, s)


@pytest.mark.parametrize("n", range(3, 11))
def test_surface_closed_form_and_constant(n):
    spec = HypersurfaceSpec(2, n)
    for s in range(max(n - 2, 1), 40):
        assert hilbert_mu(spec, s) == s * n - n * (n - 3) // 2
    rep = required_constant(spec, 100)
    assert rep.supremum == comb(n - 1, 2)
    assert all(v == comb(n - 1, 2) for v in rep.values[max(n - 3, 0):])
    assert not rep.divergent


def test_threefold_slopes():
    # c(s+1) - c(s) tends to n(n-4)/2
    for n in range(4, 9):
        spec = HypersurfaceSpec(3, n)
        assert required_c(spec, 501) - required_c(spec, 500) == Fraction(n * (n - 4), 2)


def test_threefold_divergence_flags():
    assert not required_constant(HypersurfaceSpec(3, 4), 2000).divergent
    assert all(required_constant(HypersurfaceSpec(3, n), 2000).divergent for n in (5, 6, 7, 8))


def test_preconditions():
    with pytest.raises(ValueError):
        HypersurfaceSpec(1, 3)
    with pytest.raises(ValueError):
        required_constant(HypersurfaceSpec(2, 5), 4)
    with pytest.raises(ValueError):
        hilbert_mu(HypersurfaceSpec(2, 3), 0)


def test_row_and_round_trip():
    assert hilbert_row(HypersurfaceSpec(2, 3), 2) == {"s": 2, "mu": 6, "e": 12, "ll": 2}
    rep = required_constant(HypersurfaceSpec(3, 5), 20)
    assert RequiredConstant.from_dict(json.loads(json.dumps(rep.to_dict()))) == rep
