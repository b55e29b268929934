"""Quadratic penalties for the domination constraint families.

Four families are covered:

* coverage: ``x_1 + ... + x_n >= 1`` (closed, open or power-graph
  neighbourhoods), squared with a binary slack when ``n >= 3``;
* independence: ``x_i * x_j = 0``;
* perfect: cut edges between ``D`` and ``V \\ D`` equal ``|V \\ D|``;
* clique: ``D`` induces a complete graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InfeasibleModelError
from .graph import Graph
from .poly import QuboPoly, square_affine

__all__ = [
    "COVERAGE",
    "INDEPENDENCE",
    "PERFECT",
    "CLIQUE",
    "SlackEncoding",
    "PenaltyTerm",
    "bit_length",
    "slack_bits",
    "slack_encoding",
    "coverage_penalty",
    "independence_penalty",
    "perfect_penalty",
    "clique_penalty",
]

COVERAGE = "coverage"
INDEPENDENCE = "independence"
PERFECT = "perfect"
CLIQUE = "clique"


def bit_length(n: int) -> int:
    """Number of binary digits of ``n`` (``n >= 1``)."""
    if n < 1:
        raise ValueError(f"bit_length needs n >= 1, got {n}")
    return int(n).bit_length()


def slack_bits(arity: int) -> int:
    """Slack variables a coverage constraint over ``arity`` variables consumes."""
    return 0 if arity <= 2 else bit_length(arity - 1)


@dataclass(frozen=True)
class SlackEncoding:
    """Binary slack ``S = sum(C_i * b_i)`` whose image is exactly ``{0, ..., n-1}``.

    Coefficients are powers of two, least significant first, with the last
    one shrunk so the maximum equals ``n - 1``.
    """

    n: int
    coefficients: tuple

    @property
    def width(self) -> int:
        return len(self.coefficients)

    def value(self, bits: Sequence[int]) -> int:
        return sum(c * b for c, b in zip(self.coefficients, bits, strict=True))


def slack_encoding(n: int) -> SlackEncoding:
    if n < 3:
        raise ValueError(f"slack encoding needs arity n >= 3, got {n}")
    m = bit_length(n - 1)
    low = [1 << i for i in range(m - 1)]
    return SlackEncoding(n, tuple(low + [(n - 1) - sum(low)]))


@dataclass(frozen=True)
class PenaltyTerm:
    poly: QuboPoly
    kind: str
    slack_vars: tuple = field(default=())


def coverage_penalty(variables: Iterable[int], next_free_index: int, P: float, num_vars: int | None = None) -> PenaltyTerm:
    """Penalty for ``sum(x_v for v in variables) >= 1``.

    One variable gives ``P (x - 1)^2``, two give ``P (1 - a - b + ab)``;
    three or more are squared as ``P (sum x - S - 1)^2`` with a fresh binary
    slack ``S`` occupying ``next_free_index`` onwards.
    """
    vs = sorted(set(int(v) for v in variables))
    if not vs:
        raise InfeasibleModelError("coverage constraint over an empty variable set can never hold")
    n = len(vs)
    slacks: tuple = ()
    if n == 1:
        core = square_affine({vs[0]: 1.0}, -1.0)
    elif n == 2:
        a, b = vs
        core = QuboPoly(max(vs) + 1, {a: -1.0, b: -1.0}, {(a, b): 1.0}, 1.0)
    else:
        enc = slack_encoding(n)
        slacks = tuple(range(next_free_index, next_free_index + enc.width))
        coeffs = {v: 1.0 for v in vs}
        for s, c in zip(slacks, enc.coefficients):
            if s in coeffs:
                raise ValueError(f"slack index {s} collides with a constrained variable")
            coeffs[s] = -float(c)
        core = square_affine(coeffs, -1.0)
    needed = max(vs + list(slacks)) + 1
    if num_vars is None:
        num_vars = needed
    elif num_vars < needed:
        raise ValueError(f"num_vars={num_vars} too small, need {needed}")
    return PenaltyTerm(core.resized(num_vars).scaled(P), COVERAGE, slacks)


def independence_penalty(i: int, j: int, P: float, num_vars: int | None = None) -> PenaltyTerm:
    if i == j:
        raise ValueError("independence penalty needs two distinct variables")
    if num_vars is None:
        num_vars = max(i, j) + 1
    return PenaltyTerm(QuboPoly(num_vars, {}, {(i, j): P}), INDEPENDENCE)


def perfect_penalty(g: Graph, P: float, num_vars: int | None = None) -> PenaltyTerm:
    """``P * (cut_edges(D) - |V \\ D|)``, left unsquared.

    Non-negative whenever ``D`` dominates ``g``; zero exactly when every
    vertex outside ``D`` has a single neighbour in it.
    """
    if num_vars is None:
        num_vars = g.n
    lin = {v: P for v in range(g.n)}
    quad = {}
    for u, v in g.sorted_edges():
        lin[u] += P
        lin[v] += P
        quad[(u, v)] = -2.0 * P
    return PenaltyTerm(QuboPoly(num_vars, lin, quad, -P * g.n), PERFECT)


def clique_penalty(num_vertices: int, edges, P: float, num_vars: int | None = None) -> PenaltyTerm:
    """``P * (|D|(|D|-1)/2 - edges inside D)``: one ``P`` per non-adjacent pair in ``D``."""
    if num_vars is None:
        num_vars = num_vertices
    edge_set = {(min(u, v), max(u, v)) for u, v in edges}
    c = {v: 1.0 for v in range(num_vertices)}
    # c(c-1)/2 expanded as 0.5*(sum x)^2 - 0.5*sum x
    half_c_sq = square_affine(c, 0.0, num_vars)
    lin = {i: 0.5 * a - 0.5 for i, a in half_c_sq.linear.items()}
    quad = {k: 0.5 * a for k, a in half_c_sq.quadratic.items()}
    for e in edge_set:
        quad[e] = quad.get(e, 0.0) - 1.0
    poly = QuboPoly(num_vars, lin, quad).scaled(P)
    return PenaltyTerm(poly, CLIQUE)
