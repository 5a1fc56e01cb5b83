from __future__ import annotations

from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from normcurve.binform import (
    BinForm,
    bf_coord_change,
    bf_gcd,
    bf_mul,
    bf_partial,
    bf_random,
    toeplitz_block,
)
from normcurve.exactfield import FieldSpec

Q = FieldSpec.rationals()
P = FieldSpec.prime()


def F(*coeffs, field=Q):
    return BinForm.make(coeffs, field)


U0, U1 = F(1, 0), F(0, 1)


def test_partial_examples():
    assert bf_partial(F(1, 0, 0, 0), 0) == F(3, 0, 0)
    assert bf_partial(F(0, 1, 0), 1) == F(1, 0)


def test_partial_of_constant_rejected():
    with pytest.raises(ValueError):
        bf_partial(F(5), 0)


def test_euler_example():
    f = F(1, 0, 2, 0)  # U0^3 + 2 U0 U1^2
    lhs = bf_mul(U0, bf_partial(f, 0)) + bf_mul(U1, bf_partial(f, 1))
    assert lhs == f.scale(3)


def test_mul_examples():
    assert bf_mul(U0, U1) == F(0, 1, 0)
    f = F(3, -1, 2)
    assert bf_mul(f, F(1)) == f
    assert bf_mul(U0 + U1, U0 + U1) == F(1, 2, 1)


def test_gcd_examples():
    assert bf_gcd([F(0, 1, 0, 0), F(0, 0, 1, 0)]) == F(0, 1, 0)
    assert bf_gcd([U0, U1]) == F(1)
    assert bf_gcd([F(0, 6, 0, 0, 0), F(0, 0, 9, 0, 0), F(0, 0, 0, 0, 3)]) == U1


def test_gcd_tracks_u0_content():
    assert bf_gcd([F(1, 0, 0), F(1, 1, 0)]) == F(1, 0)  # U0^2, U0^2 + U0 U1 -> U0
    assert bf_gcd([F(1, 0, 0, 0)]) == F(1, 0, 0, 0)


def test_gcd_of_zero_forms_rejected():
    with pytest.raises(ValueError):
        bf_gcd([F(0, 0)])


def test_coord_change_examples():
    f = F(2, -3, 5)
    assert bf_coord_change(f, [[1, 0], [0, 1]]) == f
    assert bf_coord_change(F(1, 0, 0), [[0, 1], [1, 0]]) == F(0, 0, 1)
    with pytest.raises(ValueError):
        bf_coord_change(f, [[1, 2], [2, 4]])


def _mat(rng):
    while True:
        m = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            return m


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


@given(st.integers(0, 2**32), st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_coord_change_composition(seed, d):
    rng = Random(seed)
    f = bf_random(d, rng, Q)
    g1, g2 = _mat(rng), _mat(rng)
    assert bf_coord_change(bf_coord_change(f, g1), g2) == bf_coord_change(f, _matmul(g1, g2))


@given(st.integers(0, 2**32), st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_chain_rule(seed, d):
    rng = Random(seed)
    f = bf_random(d, rng, Q)
    g = _mat(rng)
    h = bf_coord_change(f, g)
    for i in (0, 1):
        rhs = BinForm.zero(d - 1, Q)
        for j in (0, 1):
            rhs = rhs + bf_coord_change(bf_partial(f, j), g).scale(g[j][i])
        assert bf_partial(h, i) == rhs


@given(st.integers(0, 2**32), st.integers(1, 8), st.sampled_from([Q, P]))
@settings(max_examples=80, deadline=None)
def test_euler_relation(seed, d, field):
    f = bf_random(d, Random(seed), field)
    lhs = bf_mul(F(1, 0, field=field), bf_partial(f, 0)) + bf_mul(F(0, 1, field=field), bf_partial(f, 1))
    assert lhs == f.scale(d)


def test_random_determinism_and_spread():
    assert bf_random(3, Random(4), Q) == bf_random(3, Random(4), Q)
    assert len(bf_random(3, Random(4), Q).coeffs) == 4
    assert all(-20 <= c <= 20 for c in bf_random(9, Random(1), Q).coeffs)
    draws = {bf_random(3, Random(s), Q) for s in range(100)}
    assert len(draws) >= 99
    assert len({bf_random(3, Random(s), P) for s in range(100)}) >= 99


def test_toeplitz_examples():
    block = toeplitz_block(F(1), 3)
    assert block.row_lists() == [[int(i == j) for j in range(4)] for i in range(4)]
    assert toeplitz_block(U1, 1).row_lists() == [[0, 0], [1, 0], [0, 1]]


@given(st.integers(0, 2**32), st.integers(0, 5), st.integers(0, 5), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_toeplitz_matches_mul_and_composes(seed, df, dg, k):
    rng = Random(seed)
    f, g = bf_random(df, rng, Q), bf_random(dg, rng, Q)
    assert toeplitz_block(f, dg).apply(list(g.coeffs)) == list(bf_mul(f, g).coeffs)
    lhs = toeplitz_block(bf_mul(f, g), k)
    rhs = toeplitz_block(f, k + dg) @ toeplitz_block(g, k)
    assert lhs == rhs
