"""Command-line interface: compile, solve, verify, oracle, info.

Exit codes: 0 success, 2 unreadable input, 3 infeasible by construction,
4 bad arguments, 5 no feasible set / infeasible assignment, 6 model too
large for exhaustive search.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InfeasibleModelError, ParseError, SizeLimitError
from .formulations import Kind, QuboModel, Variant, build_model, variable_bound
from .graph import read_graph
from .io import dumps_model, matrix_text, read_assignment, read_model, write_model
from .oracle import oracle_gamma, verify_solution
from .poly import SYMMETRIC, UPPER
from .solvers import AnnealParams, solve_anneal, solve_exhaustive

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE_BUILD = 3
EXIT_USAGE = 4
EXIT_INFEASIBLE = 5
EXIT_TOO_LARGE = 6

_FORMATS = {"json": None, "matrix-sym": SYMMETRIC, "matrix-ut": UPPER}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _variant(args) -> Variant:
    if args.variant == Kind.K_DOMINATION.value:
        if args.k is None:
            raise UsageError("--k is required for k-domination")
    elif args.k is not None:
        raise UsageError("--k is only valid with --variant k-domination")
    return Variant.parse(args.variant, args.k)


def _fmt_set(labels, D) -> str:
    return "{" + ", ".join(labels[v] for v in D) + "}"


def _num(x) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def _load_graph(path):
    g = read_graph(path)
    if g.n == 0:
        raise ParseError(f"{path}: graph has no vertices")
    return g


def cmd_compile(args) -> int:
    g = _load_graph(args.graph)
    variant = _variant(args)
    if args.penalty is not None and not args.penalty > 0:
        raise UsageError("--penalty must be positive")
    model = build_model(g, variant, args.penalty)
    conv = _FORMATS[args.format]
    text = dumps_model(model) if conv is None else matrix_text(model, conv)
    summary = f"variables: {model.num_vars} (bound: {variable_bound(g, variant)})"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    model = read_model(args.model)
    if model.graph is None:
        raise ParseError("model document carries no graph; use 'verify' with an explicit graph")
    if args.method == "exhaustive":
        if any(v is not None for v in (args.sweeps, args.restarts)):
            raise UsageError("--sweeps/--restarts apply only to --method anneal")
        result = solve_exhaustive(model)
    else:
        defaults = AnnealParams()
        params = AnnealParams(
            sweeps=args.sweeps or defaults.sweeps,
            restarts=args.restarts or defaults.restarts,
            seed=args.seed if args.seed is not None else defaults.seed,
        )
        result = solve_anneal(model, params)

    g = model.graph
    reports = [(a, verify_solution(g, model, a)) for a in result.argmin]
    best, report = next(((a, r) for a, r in reports if r.feasible), reports[0])
    verdict = "feasible" if report.feasible else "infeasible"
    print(f"energy {_num(result.min_energy)}; D = {_fmt_set(g.labels, report.vertex_set)}; {verdict}")
    print(f"assignment: {''.join(str(b) for b in best)}")
    print(f"method: {result.method}; evaluations: {result.evaluations}; optimal assignments listed: {len(result.argmin)}")
    if report.feasible:
        return EXIT_OK
    for v in report.violated_constraints:
        print(f"  violated: {v}")
    if result.method == "exhaustive":
        print(f"no feasible set: the {model.variant} variant admits none on this graph")
    else:
        print("no feasible solution found by the annealer")
    return EXIT_INFEASIBLE


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    model = read_model(args.model)
    bits = read_assignment(args.assignment)
    if len(bits) != model.num_vars:
        raise UsageError(f"assignment has {len(bits)} bits, model has {model.num_vars} variables")
    if g.fingerprint() != model.graph_fingerprint:
        raise UsageError("graph does not match the model's graph_fingerprint")
    report = verify_solution(g, model, bits)
    print(f"{'feasible' if report.feasible else 'infeasible'}; D = {_fmt_set(g.labels, report.vertex_set)}")
    print(f"size {report.set_size}, residual {_num(report.penalty_residual)}, energy {_num(report.energy)}")
    for v in report.violated_constraints:
        print(f"  violated: {v}")
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    variant = _variant(args)
    found = oracle_gamma(g, variant)
    if found is None:
        print(f"{variant.symbol}: infeasible")
        return EXIT_INFEASIBLE
    size, D = found
    suffix = f" (k = {variant.k})" if variant.k is not None else ""
    print(f"{variant.symbol} = {size}, D = {_fmt_set(g.labels, D)}{suffix}")
    return EXIT_OK


def _info_lines(model: QuboModel):
    labels = model.graph.labels if model.graph is not None else None
    yield f"variant: {model.variant}"
    yield f"penalty: {_num(model.penalty)}  weights: " + ", ".join(
        f"{k}={_num(v)}" for k, v in model.weights.as_dict().items()
    )
    yield f"variables: {model.num_vars} ({model.vmap.num_vertex_vars} vertex, {model.vmap.num_slack_vars} slack)"
    yield f"{'index':>5}  {'role':<6}  provenance"
    for idx, role, desc in model.vmap.roles(labels):
        yield f"{idx:>5}  {role:<6}  {desc}"
    poly = model.poly
    coeffs = list(poly.linear.values()) + list(poly.quadratic.values())
    yield f"terms: {len(poly.linear)} linear, {len(poly.quadratic)} quadratic; offset {_num(poly.offset)}"
    if coeffs:
        yield f"coefficient range: [{_num(min(coeffs))}, {_num(max(coeffs))}]"
    else:
        yield "coefficient range: empty"


def cmd_info(args) -> int:
    model = read_model(args.model)
    for line in _info_lines(model):
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    variants = [k.value for k in Kind]
    p = _Parser(prog="domqubo", description="Compile dominating-set variants to QUBO, solve and verify.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compile", help="compile a graph into a QUBO model")
    c.add_argument("graph")
    c.add_argument("--variant", choices=variants, default="classic")
    c.add_argument("--k", type=int)
    c.add_argument("--penalty", type=float, help="base penalty P (default |V|+1)")
    c.add_argument("--format", choices=list(_FORMATS), default="json")
    c.add_argument("--out")
    c.set_defaults(func=cmd_compile)

    s = sub.add_parser("solve", help="minimise a compiled model and verify the result")
    s.add_argument("model")
    s.add_argument("--method", choices=["exhaustive", "anneal"], default="exhaustive")
    s.add_argument("--seed", type=int)
    s.add_argument("--sweeps", type=int)
    s.add_argument("--restarts", type=int)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check an assignment against graph and model")
    v.add_argument("graph")
    v.add_argument("model")
    v.add_argument("assignment")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact minimum set by subset enumeration")
    o.add_argument("graph")
    o.add_argument("--variant", choices=variants, default="classic")
    o.add_argument("--k", type=int)
    o.set_defaults(func=cmd_oracle)

    i = sub.add_parser("info", help="describe a compiled model")
    i.add_argument("model")
    i.set_defaults(func=cmd_info)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleModelError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE_BUILD
    except SizeLimitError as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
