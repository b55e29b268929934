import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domqubo import QuboPoly, add_scaled, evaluate, square_affine, to_matrix
from domqubo.poly import SYMMETRIC, UPPER, from_matrix

from _support import assignments

EXP1 = QuboPoly(
    4,
    {0: -5, 1: -3, 2: -8, 3: -6},
    {(0, 1): 4, (0, 2): 8, (1, 2): 2, (2, 3): 10},
)


def test_canonicalisation():
    p = QuboPoly(3, {0: 1, 1: 0}, {(1, 0): 2, (2, 2): 3, (0, 2): 0})
    assert dict(p.linear) == {0: 1.0, 2: 3.0}
    assert dict(p.quadratic) == {(0, 1): 2.0}


def test_canonicalisation_idempotent():
    p = QuboPoly(3, {0: 1.5}, {(2, 1): -1, (1, 1): 2}, 4)
    q = QuboPoly(p.num_vars, p.linear, p.quadratic, p.offset)
    assert p == q
    for x in assignments(3):
        assert evaluate(p, x) == evaluate(q, x)


def test_out_of_range_index():
    with pytest.raises(IndexError):
        QuboPoly(2, {2: 1.0})
    with pytest.raises(IndexError):
        QuboPoly(2, {}, {(0, 5): 1.0})


def test_add_scaled_examples():
    p = QuboPoly(2, {0: 3}, {(0, 1): -2}, 1)
    assert add_scaled(QuboPoly(2), p, 1) == p
    assert add_scaled(p, p, -1).is_zero()
    r = add_scaled(QuboPoly(2, {0: 1}), QuboPoly(2, {}, {(0, 1): 1}), 4)
    assert dict(r.linear) == {0: 1.0}
    assert dict(r.quadratic) == {(0, 1): 4.0}


def test_square_affine_single():
    p = square_affine({0: 1}, -1)
    assert dict(p.linear) == {0: -1.0}
    assert not p.quadratic
    assert p.offset == 1.0


def test_square_affine_empty():
    assert square_affine({}, 0).is_zero()


def test_square_affine_vertex0_coverage():
    coeffs = {0: 1, 1: 1, 2: 1, 4: -1, 5: -1}
    p = square_affine(coeffs, -1, 6)
    assert evaluate(p, [1, 0, 0, 0, 0, 0]) == 0.0
    for x in assignments(6):
        assert evaluate(p, x) == (sum(c * x[i] for i, c in coeffs.items()) - 1) ** 2


def test_evaluate_exp1():
    assert evaluate(EXP1, (1, 0, 0, 1)) == -11
    assert evaluate(EXP1, (0, 0, 1, 1)) == -4
    assert evaluate(EXP1, (0, 0, 0, 0)) == 0


def test_evaluate_length_mismatch():
    with pytest.raises(ValueError):
        evaluate(EXP1, (1, 0, 0))


def test_to_matrix_symmetric_exp1():
    m = to_matrix(EXP1)
    assert m.convention == SYMMETRIC
    assert m.entries.tolist() == [[-5, 2, 4, 0], [2, -3, 1, 0], [4, 1, -8, 5], [0, 0, 5, -6]]
    assert m.offset == 0


def test_to_matrix_upper_exp1():
    m = to_matrix(EXP1, UPPER)
    assert m.entries.tolist() == [[-5, 4, 8, 0], [0, -3, 2, 0], [0, 0, -8, 10], [0, 0, 0, -6]]
    for x in assignments(4):
        assert m.energy(x) == evaluate(EXP1, x)


def test_to_matrix_zero():
    m = to_matrix(QuboPoly(3))
    assert not m.entries.any() and m.offset == 0


def test_to_matrix_rejects_unknown_convention():
    with pytest.raises(ValueError):
        to_matrix(EXP1, "lower")


def test_matrix_text():
    assert to_matrix(EXP1).to_text().splitlines() == [
        "-5 2 4 0",
        "2 -3 1 0",
        "4 1 -8 5",
        "0 0 5 -6",
        "offset: 0",
    ]
    half = to_matrix(QuboPoly(2, {}, {(0, 1): 1}, 2.5)).to_text()
    assert half.splitlines() == ["0 0.5", "0.5 0", "offset: 2.5"]


def test_from_matrix_inverts_both_conventions():
    for conv in (SYMMETRIC, UPPER):
        m = to_matrix(EXP1, conv)
        assert from_matrix(m.entries, m.offset) == EXP1


def test_energies_matches_evaluate():
    X = np.array(list(assignments(4)))
    assert EXP1.energies(X).tolist() == [evaluate(EXP1, x) for x in X]


half_integers = st.integers(-40, 40).map(lambda k: k / 2)


@st.composite
def polys(draw, max_vars=8):
    n = draw(st.integers(0, max_vars))
    lin = draw(st.dictionaries(st.integers(0, max(n - 1, 0)), half_integers, max_size=n)) if n else {}
    pairs = list(itertools.combinations(range(n), 2))
    quad = draw(st.dictionaries(st.sampled_from(pairs), half_integers, max_size=len(pairs))) if pairs else {}
    return QuboPoly(n, lin, quad, draw(half_integers))


@settings(max_examples=200, deadline=None)
@given(polys())
def test_matrix_equals_poly_all_assignments(p):
    for conv in (SYMMETRIC, UPPER):
        m = to_matrix(p, conv)
        if conv == SYMMETRIC:
            assert (m.entries == m.entries.T).all()
        else:
            assert not np.tril(m.entries, -1).any()
        for x in assignments(p.num_vars):
            assert m.energy(x) == evaluate(p, x)


@settings(max_examples=200, deadline=None)
@given(polys(6), polys(6), half_integers)
def test_add_scaled_linear(p, q, s):
    n = max(p.num_vars, q.num_vars)
    p, q = p.resized(n), q.resized(n)
    r = add_scaled(p, q, s)
    for x in assignments(n):
        assert evaluate(r, x) == evaluate(p, x) + s * evaluate(q, x)


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=6), st.integers(-4, 4))
def test_square_affine_brute_force(coeffs, c):
    p = square_affine(coeffs, c, 6)
    for x in assignments(6):
        assert evaluate(p, x) == (sum(a * x[i] for i, a in coeffs.items()) + c) ** 2
