"""QUBO models for the minimum dominating set problem and its variants."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InfeasibleModelError
from .graph import Graph, closed_neighborhood, graph_power, open_neighborhood
from .penalties import (
    COVERAGE,
    clique_penalty,
    coverage_penalty,
    independence_penalty,
    perfect_penalty,
    slack_bits,
    slack_encoding,
)
from .poly import QuboPoly, combine

__all__ = [
    "Kind",
    "Variant",
    "PenaltyWeights",
    "SlackGroup",
    "VariableMap",
    "QuboModel",
    "ALL_KINDS",
    "build_model",
    "variable_count",
    "variable_bound",
    "feasible_energy_offset",
    "coverage_graph",
    "coverage_sets",
]


class Kind(str, Enum):
    CLASSIC = "classic"
    INDEPENDENT = "independent"
    TOTAL = "total"
    PERFECT = "perfect"
    CLIQUE = "clique"
    INDEPENDENT_PERFECT = "independent-perfect"
    TOTAL_PERFECT = "total-perfect"
    K_DOMINATION = "k-domination"


ALL_KINDS = tuple(Kind)

_SYMBOLS = {
    Kind.CLASSIC: "gamma",
    Kind.INDEPENDENT: "gamma_i",
    Kind.TOTAL: "gamma_t",
    Kind.PERFECT: "gamma_per",
    Kind.CLIQUE: "gamma_cl",
    Kind.INDEPENDENT_PERFECT: "gamma_iper",
    Kind.TOTAL_PERFECT: "gamma_tper",
    Kind.K_DOMINATION: "gamma_k",
}


@dataclass(frozen=True)
class Variant:
    """A domination variant; ``k`` is set only for k-domination."""

    kind: Kind
    k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.K_DOMINATION:
            if self.k is None or int(self.k) < 1:
                raise ValueError("k-domination needs an integer k >= 1")
            object.__setattr__(self, "k", int(self.k))
        elif self.k is not None:
            raise ValueError(f"variant {self.kind.value} takes no k")

    @classmethod
    def parse(cls, name: str, k: int | None = None) -> "Variant":
        try:
            kind = Kind(name.strip().lower().replace("_", "-"))
        except ValueError:
            names = ", ".join(x.value for x in Kind)
            raise ValueError(f"unknown variant {name!r}; expected one of {names}") from None
        return cls(kind, k)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self.kind]

    @property
    def open_neighborhoods(self) -> bool:
        return self.kind in (Kind.TOTAL, Kind.TOTAL_PERFECT)

    @property
    def independent(self) -> bool:
        return self.kind in (Kind.INDEPENDENT, Kind.INDEPENDENT_PERFECT)

    @property
    def perfect(self) -> bool:
        return self.kind in (Kind.PERFECT, Kind.INDEPENDENT_PERFECT, Kind.TOTAL_PERFECT)

    @property
    def clique(self) -> bool:
        return self.kind is Kind.CLIQUE

    def __str__(self):
        return self.name if self.k is None else f"{self.name}(k={self.k})"


@dataclass(frozen=True)
class PenaltyWeights:
    """Per-family penalty coefficients."""

    coverage: float
    independence: float
    perfect: float
    clique: float

    @classmethod
    def uniform(cls, P: float) -> "PenaltyWeights":
        return cls(P, P, P, P)

    @classmethod
    def default(cls, variant: Variant, P: float) -> "PenaltyWeights":
        """Uniform ``P``, except coverage is doubled when the perfect family is present.

        The perfect penalty is unsquared and credits ``-P`` for every
        undominated vertex, which cancels a coverage weight of ``P``
        exactly (the empty set then scores 0). With coverage at ``2P``
        each violation still costs at least ``P``.
        """
        if variant.perfect:
            return cls(2 * P, P, P, P)
        return cls.uniform(P)

    def as_dict(self) -> dict:
        return {"coverage": self.coverage, "independence": self.independence, "perfect": self.perfect, "clique": self.clique}

    def validate(self):
        for name, w in self.as_dict().items():
            if not w > 0:
                raise ValueError(f"penalty weight for {name} must be positive, got {w}")


@dataclass(frozen=True)
class SlackGroup:
    vertex: int
    kind: str
    indices: tuple
    coefficients: tuple

    def describe(self, labels=None) -> str:
        lab = labels[self.vertex] if labels is not None else str(self.vertex)
        return f"{self.kind}@{lab}"


@dataclass(frozen=True)
class VariableMap:
    """Vertex variables ``0..num_vertex_vars-1`` followed by contiguous slack groups."""

    num_vertex_vars: int
    slack_groups: tuple = ()

    def __post_init__(self):
        nxt = self.num_vertex_vars
        for grp in self.slack_groups:
            if tuple(grp.indices) != tuple(range(nxt, nxt + len(grp.indices))):
                raise ValueError("slack indices must be contiguous and start after the vertex variables")
            nxt += len(grp.indices)

    @property
    def total(self) -> int:
        return self.num_vertex_vars + sum(len(g.indices) for g in self.slack_groups)

    @property
    def num_slack_vars(self) -> int:
        return self.total - self.num_vertex_vars

    def group_of(self, index: int) -> SlackGroup | None:
        for grp in self.slack_groups:
            if index in grp.indices:
                return grp
        return None

    def roles(self, labels=None):
        """Yield ``(index, role, description)`` for every variable."""
        for v in range(self.num_vertex_vars):
            yield v, "vertex", labels[v] if labels is not None else str(v)
        for grp in self.slack_groups:
            for b, (idx, c) in enumerate(zip(grp.indices, grp.coefficients)):
                yield idx, "slack", f"{grp.describe(labels)}#bit{b}*{_num(c)}"


def _num(c):
    return str(int(c)) if float(c).is_integer() else repr(float(c))


@dataclass(frozen=True, eq=False)
class QuboModel:
    poly: QuboPoly
    vmap: VariableMap
    variant: Variant
    penalty: float
    weights: PenaltyWeights
    graph_fingerprint: str
    graph: Graph | None = None

    def __post_init__(self):
        if self.poly.num_vars != self.vmap.total:
            raise ValueError(f"polynomial has {self.poly.num_vars} variables, map has {self.vmap.total}")

    @property
    def num_vars(self) -> int:
        return self.poly.num_vars

    def vertex_projection(self, assignment) -> list:
        bits = list(assignment)
        return [v for v in range(self.vmap.num_vertex_vars) if bits[v]]


def coverage_graph(g: Graph, variant: Variant) -> Graph:
    """Graph whose neighbourhoods the coverage constraints range over."""
    if variant.kind is Kind.K_DOMINATION:
        return graph_power(g, variant.k)
    return g


def coverage_sets(g: Graph, variant: Variant) -> list:
    """Per-vertex variable sets that must each contain a chosen vertex."""
    h = coverage_graph(g, variant)
    sets = []
    for v in range(h.n):
        s = open_neighborhood(h, v) if variant.open_neighborhoods else closed_neighborhood(h, v)
        if not s:
            raise InfeasibleModelError(
                f"vertex {g.labels[v]!r} is isolated and can never be totally dominated", vertex=v
            )
        sets.append(s)
    return sets


def variable_count(g: Graph, variant: Variant) -> int:
    """Variables :func:`build_model` would allocate, computed without building."""
    return g.n + sum(slack_bits(len(s)) for s in coverage_sets(g, variant))


def variable_bound(g: Graph, variant: Variant | None = None) -> int:
    """``|V| + 2|E|`` taken over the coverage graph."""
    h = g if variant is None else coverage_graph(g, variant)
    return h.n + 2 * h.num_edges


def build_model(g: Graph, variant: Variant, penalty: float | None = None, weights: PenaltyWeights | None = None) -> QuboModel:
    """Compile ``min |D|`` under the variant's constraints into a QUBO model.

    ``penalty`` defaults to ``|V| + 1``; ``weights`` overrides the
    per-family coefficients derived from it.
    """
    if g.n == 0:
        raise ValueError("cannot build a model for a graph with no vertices")
    P = float(g.n + 1 if penalty is None else penalty)
    if not P > 0:
        raise ValueError(f"penalty must be positive, got {P}")
    if weights is None:
        weights = PenaltyWeights.default(variant, P)
    weights.validate()

    sets = coverage_sets(g, variant)
    groups = []
    nxt = g.n
    for v, s in enumerate(sets):
        width = slack_bits(len(s))
        if width:
            enc = slack_encoding(len(s))
            groups.append(SlackGroup(v, COVERAGE, tuple(range(nxt, nxt + width)), enc.coefficients))
            nxt += width
    vmap = VariableMap(g.n, tuple(groups))
    total = vmap.total

    terms = [(QuboPoly(total, {v: 1.0 for v in range(g.n)}), 1.0)]
    slack_start = {grp.vertex: grp.indices[0] for grp in groups}
    for v, s in enumerate(sets):
        t = coverage_penalty(s, slack_start.get(v, total), weights.coverage, total)
        terms.append((t.poly, 1.0))
    if variant.independent:
        for u, v in g.sorted_edges():
            terms.append((independence_penalty(u, v, weights.independence, total).poly, 1.0))
    if variant.perfect:
        terms.append((perfect_penalty(g, weights.perfect, total).poly, 1.0))
    if variant.clique:
        terms.append((clique_penalty(g.n, g.edges, weights.clique, total).poly, 1.0))

    return QuboModel(combine(total, terms), vmap, variant, P, weights, g.fingerprint(), g)


def feasible_energy_offset(model: QuboModel) -> float:
    """Energy minus ``|D|`` at any feasible point with balanced slacks.

    Every penalty here vanishes on feasible points, so this is always 0.
    """
    return 0.0
