"""``fpm`` command line: solvers, oracle, reducer, generator and balance checker.

Exit codes: 0 success, 1 usage or parse error, 2 no solution / infeasible,
3 not found at the stated confidence.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .approx import solve_alpha_positive, solve_beta_limited
from .exact import ExactQuery, run_exact
from .graph import (ColoredGraph, FairnessSpec, Matching, MatchingError,
                    SolveReport, is_balanced, matching_edges_json,
                    parse_graph, parse_rational, random_graph, serialize_graph)
from .oracle import DEFAULT_MAX_EDGES, OracleCapExceeded, brute_force_opt
from .rainbow import RainbowBudgetExceeded, RainbowQuery, find_rainbow_matching
from .reduce import (ReductionLayout, Sat3Error, decode_assignment, parse_dimacs_3sat3,
                     reduce_to_path)

EXIT_OK, EXIT_USAGE, EXIT_NO_SOLUTION, EXIT_NOT_FOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _read(path: str) -> bytes:
    return sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()


def _load_graph(args) -> tuple[ColoredGraph, str]:
    data = _read(args.input)
    return parse_graph(data.decode("utf-8")), hashlib.sha256(data).hexdigest()


def _spec(alpha: Fraction, beta: Fraction) -> FairnessSpec:
    if not 0 <= alpha <= beta <= 1:
        raise UsageError(f"need 0 <= alpha <= beta <= 1, got alpha={alpha}, beta={beta}")
    return FairnessSpec(alpha, beta)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("FPM_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"FPM_SEED must be an integer, got {env!r}") from None


def _matching_json(g: ColoredGraph, m: Matching) -> dict:
    return {
        "size": m.size,
        "edges": matching_edges_json(g, m),
        "edge_indices": [i + 1 for i in m.sorted_indices()],
        "fractions": {str(c + 1): _frac(f) for c, f in enumerate(m.fractions())},
    }


def _emit(args, envelope: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        out = json.dumps(envelope, indent=2) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if getattr(args, "output", None) and args.output != "-":
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _envelope(args, input_hash: str | None, result, **extra) -> dict:
    env = {"tool": "fpm", "version": __version__, "command": args.command,
           "input_hash": input_hash, "result": result}
    env.update(extra)
    return env


def _report_lines(report: SolveReport | None, g: ColoredGraph) -> list[str]:
    if report is None:
        return ["no solution"]
    d = report.to_json(g)
    return [f"size {d['size']}  (probed T = {d['probed_T']})",
            f"certified shares in [{d['certified_lower']}, {d['certified_upper']}]",
            "edges " + " ".join(f"{u}-{v}:{c}" for u, v, c in d["edges"]),
            "fractions " + " ".join(f"{c}={f}" for c, f in d["fractions"].items())]


def cmd_gen(args) -> int:
    if args.n < 2 or args.l < 1:
        raise UsageError("need n >= 2 and l >= 1")
    if not 0 <= args.edge_prob <= 1:
        raise UsageError("edge probability must lie in [0, 1]")
    g = random_graph(args.n, args.l, args.edge_prob, _seed(args))
    text = serialize_graph(g, comments=[
        f"fpm gen n={args.n} l={args.l} p={_frac(args.edge_prob)} seed={_seed(args)}"])
    if args.output and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _read_matching(path: str, g: ColoredGraph) -> list[int]:
    """Edge indices (1-based) as whitespace-separated integers or a JSON report."""
    text = _read(path).decode("utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        result = data.get("result", data)
        if not isinstance(result, dict) or "edge_indices" not in result:
            raise UsageError("JSON matching file has no 'edge_indices'")
        raw = result["edge_indices"]
    else:
        raw = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line and not line.startswith("c"):
                raw.extend(int(x) for x in line.split())
    return [int(i) - 1 for i in raw]


def cmd_check(args) -> int:
    g, h = _load_graph(args)
    spec = _spec(args.alpha, args.beta)
    indices = _read_matching(args.matching, g)
    try:
        if len(set(indices)) != len(indices):
            raise MatchingError("edge listed twice")
        m = Matching.of(g, indices)
    except MatchingError as exc:
        _emit(args, _envelope(args, h, "invalid", reason=str(exc)), [f"invalid: {exc}"])
        return EXIT_USAGE
    if m.size == 0:
        _emit(args, _envelope(args, h, "invalid", reason="empty matching"),
              ["invalid: empty matching has undefined balance"])
        return EXIT_USAGE
    ok = is_balanced(m, g, spec)
    body = _matching_json(g, m)
    _emit(args, _envelope(args, h, "balanced" if ok else "unbalanced", matching=body),
          [("balanced" if ok else "unbalanced") + f" (size {m.size})",
           "fractions " + " ".join(f"{c}={f}" for c, f in body["fractions"].items())])
    return EXIT_OK if ok else EXIT_NO_SOLUTION


def cmd_approx(args) -> int:
    spec = _spec(args.alpha, args.beta)
    if spec.alpha == 0:
        raise UsageError("alpha = 0 is the beta-limited case; use 'fpm beta-limited --beta B'")
    g, h = _load_graph(args)
    report = solve_alpha_positive(g, spec)
    return _finish_report(args, g, h, report)


def cmd_beta_limited(args) -> int:
    spec = _spec(Fraction(0), args.beta)
    g, h = _load_graph(args)
    report = solve_beta_limited(g, spec)
    return _finish_report(args, g, h, report)


def _finish_report(args, g, h, report) -> int:
    result = report.to_json(g) if report is not None else "no_solution"
    _emit(args, _envelope(args, h, result), _report_lines(report, g))
    return EXIT_OK if report is not None else EXIT_NO_SOLUTION


def cmd_exact(args) -> int:
    spec = _spec(args.alpha, args.beta)
    if args.k < 1:
        raise UsageError("k must be >= 1")
    if not 0 < args.fail_prob < 1:
        raise UsageError("--fail-prob must lie strictly between 0 and 1")
    g, h = _load_graph(args)
    seed = _seed(args)
    out = run_exact(g, ExactQuery(args.k, spec, seed, args.fail_prob))
    if out.matching is not None:
        body = _matching_json(g, out.matching)
        body["trials_run"] = out.trials_run
        body["success_trial"] = out.success_trial
        body["composition"] = list(out.composition.parts) if out.composition else None
        _emit(args, _envelope(args, h, body, seed=seed),
              [f"found size {args.k} after {out.trials_run} trials",
               "edges " + " ".join(f"{u}-{v}:{c}" for u, v, c in body["edges"])])
        return EXIT_OK
    if out.proven_absent:
        _emit(args, _envelope(args, h, "infeasible", seed=seed),
              [f"no fair matching of size {args.k} exists"])
        return EXIT_NO_SOLUTION
    conf = 1 - args.fail_prob
    _emit(args, _envelope(args, h, "not_found", confidence=_frac(conf), seed=seed,
                          trials_run=out.trials_run),
          [f"not found after {out.trials_run} trials (confidence {_frac(conf)})"])
    return EXIT_NOT_FOUND


def cmd_oracle(args) -> int:
    spec = _spec(args.alpha, args.beta)
    g, h = _load_graph(args)
    res = brute_force_opt(g, spec, max_edges=args.max_edges)
    if res.opt_matching is None:
        _emit(args, _envelope(args, h, {"opt_size": 0}), ["opt_size 0"])
        return EXIT_NO_SOLUTION
    body = {"opt_size": res.opt_size, **_matching_json(g, res.opt_matching),
            "min_color": [res.min_color[0] + 1, res.min_color[1]]}
    _emit(args, _envelope(args, h, body),
          [f"opt_size {res.opt_size}",
           "edges " + " ".join(f"{u}-{v}:{c}" for u, v, c in body["edges"])])
    return EXIT_OK


def cmd_rainbow(args) -> int:
    if args.k < 1:
        raise UsageError("k must be >= 1")
    g, h = _load_graph(args)
    try:
        m = find_rainbow_matching(g, RainbowQuery(args.k, args.budget))
    except RainbowBudgetExceeded as exc:
        _emit(args, _envelope(args, h, "budget_exceeded", reason=str(exc)), [str(exc)])
        return EXIT_NOT_FOUND
    if m is None:
        _emit(args, _envelope(args, h, "none"), [f"no rainbow matching of size {args.k}"])
        return EXIT_NO_SOLUTION
    body = _matching_json(g, m)
    _emit(args, _envelope(args, h, body),
          ["edges " + " ".join(f"{u}-{v}:{c}" for u, v, c in body["edges"])])
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = parse_dimacs_3sat3(_read(args.input).decode("utf-8"))
    layout = reduce_to_path(f)
    text = serialize_graph(layout.graph, comments=[
        f"3SAT-3 path instance: n={f.num_vars} m={f.num_clauses}",
        f"alpha = beta = {_frac(layout.spec.alpha)}"])
    if args.output and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.layout:
        Path(args.layout).write_text(json.dumps(layout.to_json(), indent=2) + "\n",
                                     encoding="utf-8")
    return EXIT_OK


def cmd_decode(args) -> int:
    layout = ReductionLayout.from_json(json.loads(_read(args.layout).decode("utf-8")))
    indices = _read_matching(args.matching, layout.graph)
    m = Matching.of(layout.graph, indices)
    assignment = decode_assignment(layout, m)
    values = {str(i + 1): int(b) for i, b in enumerate(assignment)}
    _emit(args, _envelope(args, None, {"assignment": values}),
          [" ".join(f"x{i}={b}" for i, b in values.items())])
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, *, needs_input: bool = True) -> None:
    if needs_input:
        p.add_argument("-i", "--input", required=True, help="graph file (.fpm), '-' for stdin")
    p.add_argument("-o", "--output", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpm", description="Proportionally fair matching on edge-colored graphs.")
    parser.add_argument("--version", action="version", version=f"fpm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="random edge-colored graph")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p.add_argument("-p", "--edge-prob", type=_rational, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen, format="text")

    p = sub.add_parser("check", help="is a matching (alpha, beta)-balanced?")
    _add_common(p)
    p.add_argument("-m", "--matching", required=True,
                   help="1-based edge indices, or a JSON report with 'edge_indices'")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("approx", help="round-based approximation for alpha > 0")
    _add_common(p)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("beta-limited", help="polynomial approximation for alpha = 0")
    _add_common(p)
    p.add_argument("--beta", type=_rational, required=True)
    p.set_defaults(func=cmd_beta_limited)

    p = sub.add_parser("exact", help="color-coding search for a fair matching of size k")
    _add_common(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.add_argument("--seed", type=int, help="defaults to $FPM_SEED, then 0")
    p.add_argument("--fail-prob", type=_rational, default=Fraction(1, 1000))
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("oracle", help="exhaustive optimum for small graphs")
    _add_common(p)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("rainbow", help="rainbow matching of size k")
    _add_common(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--budget", type=int, help="node-expansion limit")
    p.set_defaults(func=cmd_rainbow)

    p = sub.add_parser("reduce", help="3SAT-3 formula (DIMACS) to path instance")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--layout", help="write the gadget layout JSON here")
    p.set_defaults(func=cmd_reduce, format="text")

    p = sub.add_parser("decode", help="assignment from a balanced matching of a reduced instance")
    p.add_argument("--layout", required=True)
    p.add_argument("-m", "--matching", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_decode)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OracleCapExceeded, Sat3Error, OSError) as exc:
        print(f"fpm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
