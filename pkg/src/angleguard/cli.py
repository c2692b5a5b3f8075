"""``angleguard`` command line: run suites, generate instances, list suites.

Exit status: 0 pass, 1 suite failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import AngleguardError
from .generators import GENERATOR_KINDS, generate
from .linalg import ToleranceConfig
from .suites import SUITES, SuiteConfig, _jsonable, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _module(text: str) -> tuple[int, int]:
    try:
        m, n = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MxN, got {text!r}") from None
    if m < 1 or n < 1:
        raise argparse.ArgumentTypeError("module dimensions must be positive")
    return m, n


def _param(text: str) -> tuple[str, object]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="angleguard", description="Randomized verification of angle and orthogonality characterizations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run a named suite and emit a JSON report")
    run.add_argument("--suite", required=True)
    run.add_argument("--dim", type=int, help="space dimension for real suites (default: random in 2..8)")
    run.add_argument("--module", type=_module, default=(3, 3), help="module shape MxN (default 3x3)")
    run.add_argument("--algebra", choices=("full", "diagonal"), default="full")
    run.add_argument("--trials", type=int, default=100)
    run.add_argument("--samples", type=int, default=16, help="sampled pairs per map or condition")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--tol", type=float, help="absolute and relative tolerance")
    run.add_argument("--out", help="write the report here instead of stdout")

    gen = sub.add_parser("generate", help="emit one generated instance as JSON")
    gen.add_argument("--kind", required=True, choices=GENERATOR_KINDS)
    gen.add_argument("--dim", type=int)
    gen.add_argument("--module", type=_module)
    gen.add_argument("--algebra", choices=("full", "diagonal"))
    gen.add_argument("--tag", help="counterexample registry tag")
    gen.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE",
                     help="extra generator parameter; VALUE is parsed as JSON when possible")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out")

    sub.add_parser("list-suites", help="list suite names with the statement each one checks")
    return p


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def _tol(value: float | None) -> ToleranceConfig:
    if value is None:
        return ToleranceConfig()
    base = ToleranceConfig()
    return ToleranceConfig(abs_tol=value, rel_tol=value, psd_slack=base.psd_slack)


def _run(args) -> int:
    if args.suite not in SUITES:
        print(f"angleguard: unknown suite {args.suite!r}; try list-suites", file=sys.stderr)
        return EXIT_USAGE
    cfg = SuiteConfig(suite=args.suite, dim=args.dim, module_shape=(*args.module, args.algebra), trials=args.trials,
                      seed=args.seed, tol=_tol(args.tol), out_path=args.out, samples=args.samples)
    report = run_suite(cfg)
    _emit(report.to_json(), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _generate(args) -> int:
    params = dict(args.param)
    if args.dim is not None:
        params["dim"] = args.dim
    if args.module is not None:
        params["m"], params["n"] = args.module
    if args.algebra is not None:
        params["algebra"] = args.algebra
    if args.tag is not None:
        params["tag"] = args.tag
    out = generate(args.kind, params, args.seed)
    _emit(json.dumps(_jsonable(out), indent=2), args.out)
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list-suites":
            for name, spec in SUITES.items():
                print(f"{name}\t{spec.statement}")
            return EXIT_PASS
        if args.command == "run":
            return _run(args)
        return _generate(args)
    except AngleguardError as exc:
        print(f"angleguard: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"angleguard: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
