import itertools
import random

import pytest

from domqubo import (
    InfeasibleModelError,
    QuboPoly,
    bit_length,
    clique_penalty,
    coverage_penalty,
    evaluate,
    independence_penalty,
    perfect_penalty,
    slack_encoding,
)
from domqubo.penalties import CLIQUE, COVERAGE, INDEPENDENCE, PERFECT, slack_bits

from _support import all_graphs, assignments, complete_graph, fig3, random_graph

P = 5.0


def image(enc):
    return {enc.value(bits) for bits in itertools.product((0, 1), repeat=enc.width)}


@pytest.mark.parametrize("n, expected", [(1, 1), (4, 3), (8, 4), (7, 3), (2, 2)])
def test_bit_length(n, expected):
    assert bit_length(n) == expected


def test_bit_length_rejects_zero():
    with pytest.raises(ValueError):
        bit_length(0)


@pytest.mark.parametrize("n, coeffs", [(3, (1, 1)), (4, (1, 2)), (5, (1, 2, 1)), (9, (1, 2, 4, 1))])
def test_slack_encoding_examples(n, coeffs):
    enc = slack_encoding(n)
    assert enc.coefficients == coeffs
    assert image(enc) == set(range(n))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_slack_encoding_small_arity_rejected(n):
    with pytest.raises(ValueError):
        slack_encoding(n)


def test_slack_encoding_structure():
    for n in range(3, 200):
        enc = slack_encoding(n)
        m = bit_length(n - 1)
        assert enc.width == m == slack_bits(n)
        assert enc.coefficients[:-1] == tuple(2**i for i in range(m - 1))
        assert sum(enc.coefficients) == n - 1
        assert enc.coefficients[-1] >= 1


def test_coverage_single_variable():
    t = coverage_penalty([2], 4, P)
    assert t.kind == COVERAGE and t.slack_vars == ()
    assert t.poly == QuboPoly(3, {2: -P}, {}, P)  # P(x2 - 1)^2


def test_coverage_pair():
    t = coverage_penalty([3, 2], 4, P)
    assert t.poly == QuboPoly(4, {2: -P, 3: -P}, {(2, 3): P}, P)


def test_coverage_four_with_slacks():
    t = coverage_penalty([0, 1, 2, 3], 8, P)
    assert t.slack_vars == (8, 9)
    for x in assignments(10):
        r = x[0] + x[1] + x[2] + x[3] - (x[8] + 2 * x[9]) - 1
        assert evaluate(t.poly, x) == P * r * r


def test_coverage_empty_is_infeasible():
    with pytest.raises(InfeasibleModelError):
        coverage_penalty([], 0, P)


def test_coverage_slack_collision():
    with pytest.raises(ValueError):
        coverage_penalty([0, 1, 2], 2, P)


@pytest.mark.parametrize("n", range(1, 11))
def test_coverage_soundness(n):
    t = coverage_penalty(range(n), n, P)
    width = len(t.slack_vars)
    for x in assignments(n):
        values = [evaluate(t.poly, list(x) + list(s)) for s in assignments(width)]
        if sum(x) >= 1:
            assert min(values) == 0
        else:
            assert min(values) >= P
        assert min(values) >= 0


def test_independence():
    t = independence_penalty(0, 1, P)
    assert t.kind == INDEPENDENCE
    assert dict(t.poly.quadratic) == {(0, 1): P} and not t.poly.linear
    assert evaluate(t.poly, [1, 0]) == 0
    assert evaluate(t.poly, [1, 1]) == P
    with pytest.raises(ValueError):
        independence_penalty(1, 1, P)


def test_independence_counts_violated_edges():
    g = fig3()
    terms = [independence_penalty(u, v, P, g.n).poly for u, v in g.sorted_edges()]
    for x in assignments(g.n):
        total = sum(evaluate(t, x) for t in terms)
        assert total == P * sum(1 for u, v in g.edges if x[u] and x[v])


def test_perfect_fig3_structure():
    t = perfect_penalty(fig3(), P)
    assert t.kind == PERFECT and t.slack_vars == ()
    assert t.poly.offset == -4 * P
    # +P per vertex plus +P per incident edge
    assert dict(t.poly.linear) == {0: 3 * P, 1: 3 * P, 2: 4 * P, 3: 2 * P}
    assert dict(t.poly.quadratic) == {e: -2 * P for e in [(0, 1), (0, 2), (1, 2), (2, 3)]}


def test_perfect_fig3_values():
    t = perfect_penalty(fig3(), P)
    assert evaluate(t.poly, [0, 0, 1, 0]) == 0
    assert evaluate(t.poly, [1, 0, 1, 0]) == P


def _cut_minus_outside(g, x):
    cut = sum(1 for u, v in g.edges if x[u] != x[v])
    return cut - (g.n - sum(x))


def _dominating(g, x):
    return all(x[v] or any(x[u] for u in g.neighbors(v)) for v in range(g.n))


def test_perfect_equals_cut_count_brute_force():
    for n in range(1, 7):
        graphs = all_graphs(n) if n <= 4 else [random_graph(random.Random(n * 100 + i), n) for i in range(40)]
        for g in graphs:
            t = perfect_penalty(g, P)
            for x in assignments(n):
                v = evaluate(t.poly, x)
                assert v == P * _cut_minus_outside(g, x)
                if _dominating(g, x):
                    assert v >= 0


def test_clique_fig3():
    t = clique_penalty(4, fig3().edges, P)
    assert t.kind == CLIQUE
    assert t.poly == QuboPoly(4, {}, {(0, 3): P, (1, 3): P})
    assert evaluate(t.poly, [0, 0, 1, 1]) == 0


def test_clique_fig3_matches_printed_form():
    t = clique_penalty(4, fig3().edges, P)
    for x in assignments(4):
        c = sum(x)
        inner = x[0] * x[1] + x[0] * x[2] + x[1] * x[2] + x[2] * x[3]
        assert evaluate(t.poly, x) == P * (0.5 * c * (c - 1) - inner)


def test_clique_complete_graph_is_zero():
    assert clique_penalty(5, complete_graph(5).edges, P).poly.is_zero()


def test_clique_brute_force():
    for n in range(1, 6):
        for g in all_graphs(n) if n <= 4 else [random_graph(random.Random(i), n) for i in range(30)]:
            t = clique_penalty(g.n, g.edges, P)
            for x in assignments(n):
                c = sum(x)
                inner = sum(1 for u, v in g.edges if x[u] and x[v])
                v = evaluate(t.poly, x)
                assert v == P * (c * (c - 1) // 2 - inner)
                assert v >= 0
