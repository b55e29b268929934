"""Desk-scale QUBO minimisation: exhaustive enumeration and simulated annealing."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import SizeLimitError
from .poly import QuboPoly, evaluate

__all__ = [
    "SolveResult",
    "AnnealParams",
    "DEFAULT_MAX_VARS",
    "max_exhaustive_vars",
    "solve_exhaustive",
    "solve_anneal",
    "flip_delta",
]

DEFAULT_MAX_VARS = 26
_LOW_BITS = 16
_BLOCK = 1 << 22


def max_exhaustive_vars() -> int:
    """Exhaustive size guard, overridable through ``DOMQUBO_MAX_EXHAUSTIVE``."""
    env = os.environ.get("DOMQUBO_MAX_EXHAUSTIVE")
    return int(env) if env else DEFAULT_MAX_VARS


@dataclass(frozen=True)
class SolveResult:
    min_energy: float
    argmin: list
    evaluations: int
    method: str
    seed: int | None = None


@dataclass(frozen=True)
class AnnealParams:
    sweeps: int = 1000
    restarts: int = 8
    t_initial: float | None = None  # None: largest |coefficient|
    t_final: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if self.sweeps < 1 or self.restarts < 1:
            raise ValueError("sweeps and restarts must be positive")
        if not self.t_final > 0:
            raise ValueError("final temperature must be positive")
        if self.t_initial is not None and self.t_initial < self.t_final:
            raise ValueError("initial temperature must be >= final temperature")


def _poly_of(model_or_poly) -> QuboPoly:
    return model_or_poly if isinstance(model_or_poly, QuboPoly) else model_or_poly.poly


def _bits_table(width: int) -> np.ndarray:
    # row r holds the bits of r, most significant first
    r = np.arange(1 << width, dtype=np.int64)[:, None]
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)[None, :]
    return ((r >> shifts) & 1).astype(np.float64)


def _tol(scale: float) -> float:
    return 1e-9 * max(1.0, scale)


def _index_to_bits(idx: int, n: int) -> tuple:
    return tuple((idx >> (n - 1 - i)) & 1 for i in range(n))


def solve_exhaustive(model, max_vars: int | None = None, argmin_cap: int = 64) -> SolveResult:
    """Enumerate all ``2**n`` assignments and return the global minimum.

    Assignment ``x`` is visited as the integer whose most significant bit
    is ``x_0``, so the natural order is lexicographic and the returned
    argmins are the lexicographically smallest ones.
    """
    poly = _poly_of(model)
    if max_vars is None:
        max_vars = max_exhaustive_vars()
    n = poly.num_vars
    if n > max_vars:
        raise SizeLimitError(
            f"{n} variables exceed the exhaustive limit of {max_vars}; use the annealer "
            f"or raise DOMQUBO_MAX_EXHAUSTIVE"
        )
    if n == 0:
        return SolveResult(poly.offset, [()], 1, "exhaustive")

    lin, W = poly.dense()
    L = min(n, _LOW_BITS)
    H = n - L
    lo = slice(H, n)
    Xl = _bits_table(L)
    e_low = Xl @ lin[lo] + np.einsum("ri,ij,rj->r", Xl, W[lo, lo], Xl)
    tol = _tol(poly.max_abs_coefficient() * n + abs(poly.offset))

    best = math.inf
    found: list = []
    batch = max(1, _BLOCK >> L)
    for start in range(0, 1 << H, batch):
        stop = min(1 << H, start + batch)
        if H:
            h = np.arange(start, stop, dtype=np.int64)[:, None]
            Xh = ((h >> np.arange(H - 1, -1, -1, dtype=np.int64)[None, :]) & 1).astype(np.float64)
            e_high = Xh @ lin[:H] + np.einsum("ri,ij,rj->r", Xh, W[:H, :H], Xh)
            block = e_high[:, None] + e_low[None, :] + (Xh @ W[:H, lo]) @ Xl.T
        else:
            block = e_low[None, :]
        flat = block.ravel()
        m = float(flat.min())
        if m < best - tol:
            best = m
            found = []
        if m <= best + tol and len(found) < argmin_cap:
            hits = np.flatnonzero(flat <= best + tol)[: argmin_cap - len(found)]
            base = start << L
            found.extend(int(base + k) for k in hits)

    argmin = [_index_to_bits(i, n) for i in sorted(found)]
    energy = evaluate(poly, argmin[0])
    return SolveResult(energy, argmin, 1 << n, "exhaustive")


def flip_delta(lin, W_sym, x, i) -> float:
    """Energy change from flipping bit ``i`` of ``x``; ``W_sym`` is the symmetric coupling matrix."""
    field_i = lin[i] + W_sym[i] @ x
    return (1.0 - 2.0 * x[i]) * field_i


def solve_anneal(model, params: AnnealParams | None = None) -> SolveResult:
    """Single-flip Metropolis annealing with geometric cooling.

    Restarts run side by side; restart ``r`` draws its initial state and
    acceptance thresholds from ``SeedSequence([seed, r])``, so results do
    not depend on how restarts are batched.
    """
    params = params or AnnealParams()
    poly = _poly_of(model)
    n = poly.num_vars
    if n == 0 or (not poly.linear and not poly.quadratic):
        return SolveResult(poly.offset, [tuple([0] * n)], 1, "anneal", params.seed)

    lin, W = poly.dense()
    Ws = W + W.T
    R, S = params.restarts, params.sweeps
    t0 = params.t_initial if params.t_initial is not None else poly.max_abs_coefficient()
    t0 = max(t0, params.t_final)
    temps = t0 * (params.t_final / t0) ** (np.arange(S) / max(S - 1, 1))

    rngs = [np.random.default_rng(np.random.SeedSequence([params.seed, r])) for r in range(R)]
    x = np.stack([rng.integers(0, 2, n) for rng in rngs]).astype(np.float64)
    uniforms = np.stack([rng.random((S, n)) for rng in rngs])  # (R, S, n)

    local = lin[None, :] + x @ Ws  # local field per restart
    energy = poly.energies(x)
    best_e = energy.copy()
    best_x = x.copy()
    evaluations = R
    for s in range(S):
        T = temps[s]
        for i in range(n):
            delta = (1.0 - 2.0 * x[:, i]) * local[:, i]
            accept = (delta <= 0) | (uniforms[:, s, i] < np.exp(-np.maximum(delta, 0) / T))
            if accept.any():
                step = np.where(accept, 1.0 - 2.0 * x[:, i], 0.0)
                x[:, i] += step
                local += step[:, None] * Ws[i][None, :]
                energy += np.where(accept, delta, 0.0)
                better = energy < best_e - 1e-12
                if better.any():
                    best_e[better] = energy[better]
                    best_x[better] = x[better]
            evaluations += R

    exact = [evaluate(poly, bx.astype(int)) for bx in best_x]
    m = min(exact)
    tol = _tol(poly.max_abs_coefficient() * n + abs(poly.offset))
    winners = sorted({tuple(int(b) for b in best_x[r]) for r in range(R) if exact[r] <= m + tol})
    return SolveResult(evaluate(poly, winners[0]), winners, evaluations, "anneal", params.seed)
