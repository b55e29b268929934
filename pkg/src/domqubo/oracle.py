"""Combinatorial ground truth for the domination variants.

Nothing here touches the QUBO polynomial: predicates are checked directly
on the graph and minimum sets are found by subset enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import SizeLimitError
from .formulations import Kind, QuboModel, Variant, coverage_sets
from .graph import Graph, bfs_distances
from .poly import evaluate

__all__ = [
    "ORACLE_MAX_VERTICES",
    "VerificationReport",
    "is_variant_set",
    "variant_violations",
    "oracle_gamma",
    "verify_solution",
]

ORACLE_MAX_VERTICES = 24


def _d_count(g: Graph, v: int, D: set) -> int:
    return sum(1 for u in g.neighbors(v) if u in D)


def _undominated(g: Graph, D: set):
    for v in range(g.n):
        if v not in D and _d_count(g, v, D) == 0:
            yield v


def variant_violations(g: Graph, D, variant: Variant) -> list:
    """Human-readable reasons why ``D`` fails the variant's definition (empty if it holds)."""
    D = set(D)
    lab = g.labels
    out = []
    kind = variant.kind

    if kind is Kind.K_DOMINATION:
        reach = set()
        for u in sorted(D):
            reach.update(t for t, d in enumerate(bfs_distances(g, u)) if d is not None and d <= variant.k)
        out += [f"vertex {lab[v]} not within distance {variant.k} of D" for v in range(g.n) if v not in reach]
        return out

    out += [f"coverage at vertex {lab[v]} not met" for v in _undominated(g, D)]
    if variant.open_neighborhoods:
        # total: members of D also need a neighbour in D
        out += [f"vertex {lab[v]} in D has no neighbour in D" for v in sorted(D) if _d_count(g, v, D) == 0]
    if variant.independent:
        out += [f"edge ({lab[u]},{lab[v]}) violates independence" for u, v in g.sorted_edges() if u in D and v in D]
    if variant.perfect:
        for v in range(g.n):
            c = _d_count(g, v, D)
            if v not in D and c > 1:
                out.append(f"vertex {lab[v]} has {c} neighbours in D (perfect needs 1)")
    if variant.clique:
        out += [
            f"pair ({lab[u]},{lab[v]}) not an edge"
            for u, v in combinations(sorted(D), 2)
            if not g.has_edge(u, v)
        ]
    return out


def is_variant_set(g: Graph, D, variant: Variant) -> bool:
    return not variant_violations(g, D, variant)


def oracle_gamma(g: Graph, variant: Variant, max_vertices: int = ORACLE_MAX_VERTICES):
    """Smallest set satisfying the variant as ``(size, witness)``, or ``None`` if none exists.

    Subsets are tried by increasing size, lexicographically within a size,
    so the witness is the lexicographically first minimum set.
    """
    if g.n > max_vertices:
        raise SizeLimitError(f"oracle enumeration limited to {max_vertices} vertices, graph has {g.n}")
    for size in range(g.n + 1):
        for D in combinations(range(g.n), size):
            if is_variant_set(g, D, variant):
                return size, list(D)
    return None


@dataclass
class VerificationReport:
    feasible: bool
    violated_constraints: list = field(default_factory=list)
    set_size: int = 0
    penalty_residual: float = 0.0
    energy: float = 0.0
    vertex_set: list = field(default_factory=list)

    def summary(self) -> str:
        verdict = "feasible" if self.feasible else "infeasible"
        return f"{verdict}: size {self.set_size}, residual {_num(self.penalty_residual)}"


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _slack_imbalance(g: Graph, model: QuboModel, bits: list) -> list:
    """Coverage slack groups whose squared residual is non-zero at ``bits``."""
    sets = coverage_sets(g, model.variant)
    out = []
    for grp in model.vmap.slack_groups:
        covered = sum(bits[u] for u in sets[grp.vertex])
        slack = sum(c * bits[i] for i, c in zip(grp.indices, grp.coefficients))
        if covered >= 1 and covered - slack - 1 != 0:
            out.append(f"slack bits at vertex {g.labels[grp.vertex]} leave residual {_num(covered - slack - 1)}")
    return out


def verify_solution(g: Graph, model: QuboModel, assignment) -> VerificationReport:
    """Check an assignment against the graph directly and against the model's energy."""
    bits = [int(b) for b in assignment]
    if len(bits) != model.num_vars:
        raise ValueError(f"assignment has length {len(bits)}, model has {model.num_vars} variables")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("assignment entries must be 0 or 1")
    if g.fingerprint() != model.graph_fingerprint:
        raise ValueError("graph does not match the one the model was compiled from")

    D = model.vertex_projection(bits)
    energy = evaluate(model.poly, bits)
    residual = energy - len(D)
    violations = variant_violations(g, D, model.variant)
    violations += _slack_imbalance(g, model, bits)
    if not violations and abs(residual) > 1e-9 * max(1.0, abs(energy)):
        violations.append(f"penalty residual {_num(residual)} is non-zero")
    feasible = not violations
    return VerificationReport(feasible, violations, len(D), residual, energy, D)
