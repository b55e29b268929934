"""Worked QUBO models for the 4-vertex example graph, written out by hand in sympy.

The expressions are transcribed term by term (vertex variables x0..x3,
slack variables from x4 upward) and expanded independently of the
package's polynomial code.
"""

import sympy as sp

P = sp.Symbol("P")
x = sp.symbols("x0:12")
x0, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = x
half = sp.Rational(1, 2)

objective = x0 + x1 + x2 + x3

classic = (
    objective
    + P * (x0 + x1 + x2 - (x4 + x5) - 1) ** 2
    + P * (x1 + x0 + x2 - (x6 + x7) - 1) ** 2
    + P * (x2 + x0 + x1 + x3 - (x8 + 2 * x9) - 1) ** 2
    + P * (1 - x3 - x2 + x3 * x2)
)

independence = P * x0 * x1 + P * x0 * x2 + P * x1 * x2 + P * x2 * x3

perfect = (
    P
    * (
        x0 * (1 - x1) + x1 * (1 - x0) + x0 * (1 - x2) + x2 * (1 - x0)
        + x1 * (1 - x2) + x2 * (1 - x1) + x2 * (1 - x3) + x3 * (1 - x2)
    )
    - P * 4
    + P * (x0 + x1 + x2 + x3)
)

clique = P * (
    half * (x0 + x1 + x2 + x3) * (x0 + x1 + x2 + x3 - 1)
    - (x0 * x1 + x0 * x2 + x1 * x2 + x2 * x3)
)


def _total(slack_sign):
    return (
        objective
        + P * (1 - x1 - x2 + x1 * x2)
        + P * (1 - x0 - x2 + x0 * x2)
        + P * (x0 + x1 + x3 + slack_sign * (x4 + x5) - 1) ** 2
        + P * (x2 - 1) ** 2
    )


# the worked example prints +(x4 + x5); the general slack construction subtracts
total_printed = _total(+1)
total = _total(-1)

k2 = (
    objective
    + P * (x0 + x1 + x2 + x3 - (x4 + 2 * x5) - 1) ** 2
    + P * (x1 + x0 + x2 + x3 - (x6 + 2 * x7) - 1) ** 2
    + P * (x2 + x0 + x1 + x3 - (x8 + 2 * x9) - 1) ** 2
    + P * (x3 + x2 + x0 + x1 - (x10 + 2 * x11) - 1) ** 2
)

GOLDEN = {
    "classic": (classic, 10),
    "independent": (classic + independence, 10),
    "total": (total, 6),
    "perfect": (classic + perfect, 10),
    "clique": (classic + clique, 10),
    "independent-perfect": (classic + independence + perfect, 10),
    "total-perfect": (total + perfect, 6),
    "k-domination": (k2, 12),
}


def reduced_terms(expr, num_vars):
    """Expand with x**2 == x; return {frozenset(vars): sympy coefficient in P}."""
    poly = sp.Poly(sp.expand(expr), *x[:num_vars])
    terms = {}
    for monom, coeff in poly.terms():
        key = frozenset(i for i, e in enumerate(monom) if e)
        if len(key) > 2:
            raise AssertionError(f"cubic term {key} in a QUBO expression")
        terms[key] = sp.expand(terms.get(key, 0) + coeff)
    return {k: c for k, c in terms.items() if c != 0}


def numeric_terms(expr, num_vars, p_value):
    out = {}
    for k, c in reduced_terms(expr, num_vars).items():
        v = c.subs(P, p_value)
        if v != 0:
            out[k] = float(v)
    return out


def model_terms(poly):
    out = {frozenset(): poly.offset} if poly.offset else {}
    out.update({frozenset([i]): c for i, c in poly.linear.items()})
    out.update({frozenset(k): c for k, c in poly.quadratic.items()})
    return out
