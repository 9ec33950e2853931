"""Command line interface: ``harmritz {bounds,example1,sweep,campaign}``.

Exit codes: 0 success, 2 configuration / input error, 3 numerical failure
(for example a shift equal to an eigenvalue).
"""
import argparse
import re
import sys
from dataclasses import fields

from ..bounds import full_report
from ..config import DEFAULT_THRESHOLDS, Thresholds
from ..errors import ConfigError, HarmRitzError, NumericError
from ..numkernel import check_shift, orthonormalize
from ..studybench import (
    EXAMPLE1_GRID,
    Grid,
    InstanceSpec,
    default_grid,
    elsner_campaign,
    example1,
    hermitian_sharpness_campaign,
    random_campaign,
    route_equivalence_campaign,
    sandwich_campaign,
    tau_sweep,
)
from ..studybench.instances import pick_target
from .mmio import read_matrix_market
from .report_io import emit_report

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

COMPLEX_HELP = ('complex literal "a+bi": real part, imaginary part, or both, '
                'e.g. 2, -1.5e-3, 3i, 1-2i, 0.5+0i ("j" also accepted)')
_COMPLEX_RE = re.compile(r"^[+-]?[0-9.eE+\-infINF]*[ij]?$")


def parse_complex(text):
    s = text.strip().replace(" ", "")
    if not s or not _COMPLEX_RE.match(s):
        raise ConfigError(f"bad complex literal {text!r}")
    if s[-1] in "ij" and not s.lower().endswith("inf"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError:
        raise ConfigError(f"bad complex literal {text!r}") from None


def _target(text):
    if text == "nearest":
        return text
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"--target must be 'nearest' or an index, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _add_common(p):
    p.add_argument("--out", help="output file (default: standard output)")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    g = p.add_argument_group("thresholds (all relative, all positive)")
    for f in fields(Thresholds):
        g.add_argument(f"--threshold-{f.name.replace('_', '-')}", dest=f"thr_{f.name}",
                       type=float, metavar="X", help=f"default {f.default:g}")


def build_parser():
    p = _Parser(prog="harmritz",
                description="Harmonic Rayleigh-Ritz extraction and convergence bound checks.",
                epilog="Exit codes: 0 ok, 2 configuration error, 3 numerical failure.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    b = sub.add_parser("bounds", help="full bound report for matrix and subspace files")
    b.add_argument("--matrix", required=True, help="Matrix Market file with A")
    b.add_argument("--subspace", help="Matrix Market file whose columns span K")
    b.add_argument("--tau", required=True, help=f"target shift; {COMPLEX_HELP}")
    b.add_argument("--target", default="nearest",
                   help="eigenvalue to track: 'nearest' to tau, or index in (Re, Im) order")
    _add_common(b)

    e = sub.add_parser("example1", help="the 3x3 worked example")
    e.add_argument("--epsilon", type=float, help="perturbation of V(3,1); omit for exact K")
    e.add_argument("--tau", default="1", help=f"shift (default 1); {COMPLEX_HELP}")
    _add_common(e)

    s = sub.add_parser("sweep", help="reports over a grid of shifts")
    s.add_argument("--matrix", help="Matrix Market file with A (default: the 3x3 example)")
    s.add_argument("--subspace", help="Matrix Market file whose columns span K")
    s.add_argument("--epsilon", type=float, default=1e-6,
                   help="3x3 example perturbation when no --matrix is given (default 1e-6)")
    s.add_argument("--grid", help="re0:re1:n,im0:im1:n; default brackets the spectrum "
                                  "(3x3 example: -3:10:27,-2:2:9)")
    s.add_argument("--target", default=None,
                   help="'nearest' or index in (Re, Im) order (3x3 example default: 1, i.e. 2)")
    _add_common(s)

    c = sub.add_parser("campaign", help="seeded random property campaigns")
    c.add_argument("--kind", default="random",
                   choices=("random", "sandwich", "hermitian", "routes", "elsner", "all"))
    c.add_argument("--count", type=int, default=100, help="number of instances")
    c.add_argument("--n-max", type=int, default=16, help="largest matrix order (random)")
    c.add_argument("--m-max", type=int, default=8, help="largest subspace dimension (random)")
    c.add_argument("--seed", type=int, default=0)
    _add_common(c)
    return p


def _thresholds(args):
    kw = {f.name: getattr(args, f"thr_{f.name}") for f in fields(Thresholds)}
    try:
        return DEFAULT_THRESHOLDS.with_overrides(**kw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _cmd_bounds(args, thr):
    A = read_matrix_market(args.matrix)
    if A.shape[0] != A.shape[1]:
        raise ConfigError(f"A must be square, got {A.shape}")
    tau = parse_complex(args.tau)
    check_shift(A, tau)
    if not args.subspace:
        raise ConfigError("bounds needs --subspace")
    V = orthonormalize(read_matrix_market(args.subspace)).matrix
    if V.shape[0] != A.shape[0]:
        raise ConfigError(f"subspace has {V.shape[0]} rows, A has order {A.shape[0]}")
    lam, x = pick_target(A, tau, _target(args.target))
    return full_report(A, tau, lam, x, V, thr,
                       instance={"matrix": args.matrix, "subspace": args.subspace})


def _cmd_sweep(args, thr):
    if args.matrix:
        if not args.subspace:
            raise ConfigError("sweep with --matrix needs --subspace")
        spec = InstanceSpec("arrays", A=read_matrix_market(args.matrix),
                            V=read_matrix_market(args.subspace),
                            target=_target(args.target or "nearest"))
        grid = Grid.parse(args.grid) if args.grid else default_grid(spec.A)
    else:
        spec = InstanceSpec.example1(args.epsilon)
        if args.target:
            spec = InstanceSpec(spec.source, tau=spec.tau, target=_target(args.target),
                                epsilon=spec.epsilon)
        grid = Grid.parse(args.grid) if args.grid else EXAMPLE1_GRID
    return tau_sweep(spec, grid, thr)


def _cmd_campaign(args):
    if args.count < 0:
        raise ConfigError("--count must be >= 0")
    runs = {
        "random": lambda: random_campaign(args.count, args.n_max, args.m_max, args.seed),
        "sandwich": lambda: sandwich_campaign(args.count, seed=args.seed),
        "hermitian": lambda: hermitian_sharpness_campaign(args.count, seed=args.seed),
        "routes": lambda: route_equivalence_campaign(args.count, seed=args.seed),
        "elsner": lambda: elsner_campaign(args.count, seed=args.seed),
    }
    kinds = list(runs) if args.kind == "all" else [args.kind]
    return [runs[k]() for k in kinds]


def run(argv):
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_CONFIG
        thr = _thresholds(args)
        if args.command == "bounds":
            result = _cmd_bounds(args, thr)
        elif args.command == "example1":
            result = example1(args.epsilon, parse_complex(args.tau), thr)
        elif args.command == "sweep":
            result = _cmd_sweep(args, thr)
        else:
            result = _cmd_campaign(args)
        text = emit_report(result, args.format, args.out)
        if args.out is None:
            sys.stdout.write(text)
        if args.command == "campaign" and any(s.n_violations for s in result):
            print("harmritz: campaign found inequality violations", file=sys.stderr)
        return EXIT_OK
    except NumericError as exc:
        print(f"harmritz: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except HarmRitzError as exc:
        print(f"harmritz: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main(argv=None):
    return run(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
