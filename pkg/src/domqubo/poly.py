"""Quadratic pseudo-Boolean polynomials and their QUBO matrices."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "QuboPoly",
    "QuboMatrix",
    "SYMMETRIC",
    "UPPER",
    "add_scaled",
    "square_affine",
    "combine",
    "evaluate",
    "to_matrix",
    "from_matrix",
]

SYMMETRIC = "symmetric"
UPPER = "upper-triangular"


def _canonical(num_vars, linear, quadratic):
    lin: dict[int, float] = {}
    quad: dict[tuple[int, int], float] = {}
    for i, c in linear.items():
        i = int(i)
        if not 0 <= i < num_vars:
            raise IndexError(f"variable {i} outside [0, {num_vars})")
        lin[i] = lin.get(i, 0.0) + float(c)
    for (i, j), c in quadratic.items():
        i, j = int(i), int(j)
        for w in (i, j):
            if not 0 <= w < num_vars:
                raise IndexError(f"variable {w} outside [0, {num_vars})")
        if i == j:
            # x*x == x on binaries
            lin[i] = lin.get(i, 0.0) + float(c)
            continue
        key = (i, j) if i < j else (j, i)
        quad[key] = quad.get(key, 0.0) + float(c)
    lin = {i: c for i, c in sorted(lin.items()) if c != 0.0}
    quad = {k: c for k, c in sorted(quad.items()) if c != 0.0}
    return lin, quad


@dataclass(frozen=True, eq=False)
class QuboPoly:
    """Canonical quadratic polynomial over binary variables ``x_0..x_{num_vars-1}``.

    ``linear`` maps index to coefficient, ``quadratic`` maps ``(i, j)``
    with ``i < j`` to coefficient. Zero coefficients are dropped and
    ``x_i**2`` terms are folded into the linear part. The constructor
    canonicalises whatever it is given.
    """

    num_vars: int
    linear: Mapping = MappingProxyType({})
    quadratic: Mapping = MappingProxyType({})
    offset: float = 0.0

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        lin, quad = _canonical(self.num_vars, self.linear, self.quadratic)
        object.__setattr__(self, "linear", MappingProxyType(lin))
        object.__setattr__(self, "quadratic", MappingProxyType(quad))
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def zero(cls, num_vars: int = 0) -> "QuboPoly":
        return cls(num_vars)

    def __eq__(self, other):
        if not isinstance(other, QuboPoly):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.offset == other.offset
            and dict(self.linear) == dict(other.linear)
            and dict(self.quadratic) == dict(other.quadratic)
        )

    def __hash__(self):
        return hash((self.num_vars, self.offset, tuple(self.linear.items()), tuple(self.quadratic.items())))

    def __repr__(self):
        return (
            f"QuboPoly(num_vars={self.num_vars}, linear={dict(self.linear)}, "
            f"quadratic={dict(self.quadratic)}, offset={self.offset})"
        )

    def is_zero(self) -> bool:
        return not self.linear and not self.quadratic and self.offset == 0.0

    def resized(self, num_vars: int) -> "QuboPoly":
        return QuboPoly(num_vars, self.linear, self.quadratic, self.offset)

    def scaled(self, s: float) -> "QuboPoly":
        return add_scaled(QuboPoly(self.num_vars), self, s)

    def max_abs_coefficient(self) -> float:
        coeffs = list(self.linear.values()) + list(self.quadratic.values())
        return max((abs(c) for c in coeffs), default=0.0)

    def dense(self):
        """Return ``(lin, W)``: linear vector and strictly-upper coupling matrix."""
        n = self.num_vars
        lin = np.zeros(n)
        W = np.zeros((n, n))
        for i, c in self.linear.items():
            lin[i] = c
        for (i, j), c in self.quadratic.items():
            W[i, j] = c
        return lin, W

    def energies(self, X) -> np.ndarray:
        """Vectorised evaluation over the rows of a 0/1 array."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.num_vars:
            raise ValueError(f"assignments have {X.shape[1]} columns, polynomial has {self.num_vars} variables")
        lin, W = self.dense()
        return X @ lin + np.einsum("ri,ij,rj->r", X, W, X) + self.offset


def combine(num_vars: int, terms: Iterable) -> QuboPoly:
    """Sum ``scale * poly`` over ``(poly, scale)`` pairs into one polynomial."""
    lin: dict = {}
    quad: dict = {}
    offset = 0.0
    for poly, scale in terms:
        if poly.num_vars > num_vars:
            raise ValueError(f"term has {poly.num_vars} variables, target only {num_vars}")
        for i, c in poly.linear.items():
            lin[i] = lin.get(i, 0.0) + scale * c
        for k, c in poly.quadratic.items():
            quad[k] = quad.get(k, 0.0) + scale * c
        offset += scale * poly.offset
    return QuboPoly(num_vars, lin, quad, offset)


def add_scaled(target: QuboPoly, term: QuboPoly, scale: float) -> QuboPoly:
    """Return ``target + scale * term`` in canonical form."""
    return combine(target.num_vars, [(target, 1.0), (term, scale)])


def square_affine(coeffs: Mapping, constant: float, num_vars: int | None = None) -> QuboPoly:
    """Expand ``(sum_i coeffs[i] * x_i + constant) ** 2`` using ``x**2 == x``."""
    items = sorted((int(i), float(c)) for i, c in coeffs.items())
    if num_vars is None:
        num_vars = max((i for i, _ in items), default=-1) + 1
    lin: dict = {}
    quad: dict = {}
    for a, (i, ci) in enumerate(items):
        lin[i] = lin.get(i, 0.0) + ci * ci + 2.0 * ci * constant
        for j, cj in items[a + 1:]:
            quad[(i, j)] = quad.get((i, j), 0.0) + 2.0 * ci * cj
    return QuboPoly(num_vars, lin, quad, constant * constant)


def evaluate(poly: QuboPoly, assignment) -> float:
    bits = list(assignment)
    if len(bits) != poly.num_vars:
        raise ValueError(f"assignment has length {len(bits)}, polynomial has {poly.num_vars} variables")
    total = poly.offset
    for i, c in poly.linear.items():
        if bits[i]:
            total += c
    for (i, j), c in poly.quadratic.items():
        if bits[i] and bits[j]:
            total += c
    return total


@dataclass(frozen=True, eq=False)
class QuboMatrix:
    """Dense QUBO matrix with its constant offset kept alongside."""

    n: int
    entries: np.ndarray
    convention: str
    offset: float = 0.0

    def energy(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(x @ self.entries @ x) + self.offset

    def to_text(self) -> str:
        rows = [" ".join(_fmt(v) for v in row) for row in self.entries]
        return "\n".join(rows + [f"offset: {_fmt(self.offset)}"]) + "\n"


def _fmt(v) -> str:
    v = float(v)
    if v == 0.0:
        return "0"
    return str(int(v)) if v.is_integer() and abs(v) < 2**53 else repr(v)


def to_matrix(poly: QuboPoly, convention: str = SYMMETRIC) -> QuboMatrix:
    """Standard-form matrix ``Q`` with ``x^T Q x + offset == poly(x)``.

    The symmetric form splits each pair coefficient evenly across
    ``(i, j)`` and ``(j, i)``; the upper-triangular form keeps it whole at
    ``(i, j)``, ``i < j``.
    """
    if convention not in (SYMMETRIC, UPPER):
        raise ValueError(f"unknown matrix convention {convention!r}")
    n = poly.num_vars
    Q = np.zeros((n, n))
    for i, c in poly.linear.items():
        Q[i, i] = c
    for (i, j), c in poly.quadratic.items():
        if convention == SYMMETRIC:
            Q[i, j] = Q[j, i] = c / 2.0
        else:
            Q[i, j] = c
    return QuboMatrix(n, Q, convention, poly.offset)


def from_matrix(Q, offset: float = 0.0) -> QuboPoly:
    """Inverse of :func:`to_matrix` for either convention (or any square matrix)."""
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    if Q.shape != (n, n):
        raise ValueError("matrix is not square")
    lin = {i: Q[i, i] for i in range(n)}
    quad = {(i, j): Q[i, j] + Q[j, i] for i in range(n) for j in range(i + 1, n)}
    return QuboPoly(n, lin, quad, offset)
