"""Command-line front end: ``regdist <subcommand> ...``.

Exit codes: 0 when the query is answered (whatever the verdict), 2 for
invalid input, 3 when a verification run fails one of its checks.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._exact import as_extended, fmt
from .decide import GEOMETRIC_N, SpaceSpec, atom_requirements, regularity
from .experiments import EXPERIMENTS, output_dir, read_config, run_experiment
from .grammar import format_sequence, parse_sequence
from .lr import InvalidQuery
from .report import classical_markdown, example48_markdown
from .seqcore import admissibility_bounds, boyd_indices
from .standardize import StandardizationError, build_map, dump_csv

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _spec_args(p: argparse.ArgumentParser, family: bool = True):
    if family:
        p.add_argument("family", choices=["B", "F", "b", "f"])
    p.add_argument("-n", type=int, default=1, help="dimension")
    p.add_argument("-p", required=True, help="decimal, rational p/q, or inf")
    p.add_argument("-q", required=True, help="decimal, rational p/q, or inf")
    p.add_argument("--sigma", required=True, help='sequence literal, e.g. "2^(1*j)*(1+j)^-1"')
    p.add_argument("--N", dest="N", default=None, help="frequency sequence (default 2^(1*j))")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="regdist", description="Regular-distribution queries for B and F spaces of generalised smoothness.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", help="is the space inside L1_loc?")
    _spec_args(p)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("standardize", help="dump k(j) and beta_j = sigma_k(j)")
    p.add_argument("--sigma", required=True)
    p.add_argument("--N", dest="N", default=None)
    p.add_argument("-J", type=int, default=100)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("boyd", help="ratio bounds and Boyd indices of a sequence")
    p.add_argument("--sigma", required=True)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("atoms", help="smoothness and moment orders for atoms")
    _spec_args(p)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("verify", help="run a verification experiment from a config file")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--config", required=True)
    p.add_argument("--name", default=None, help="output file stem")
    p.add_argument("--format", choices=["csv"], default="csv")

    p = sub.add_parser("report", help="regenerate a markdown table")
    p.add_argument("kind", choices=["classical", "example48"])
    p.add_argument("-n", type=int, default=1)
    p.add_argument("--format", choices=["markdown"], default="markdown")
    return parser


def _spec(args) -> SpaceSpec:
    N = parse_sequence(args.N) if args.N else GEOMETRIC_N
    return SpaceSpec(args.family, args.n, as_extended(args.p), as_extended(args.q), parse_sequence(args.sigma), N)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def cmd_decide(args) -> int:
    spec = _spec(args)
    print(_dump(regularity(spec).to_dict(spec)))
    return EXIT_OK


def cmd_standardize(args) -> int:
    sigma = parse_sequence(args.sigma)
    N = parse_sequence(args.N) if args.N else GEOMETRIC_N
    smap = build_map(sigma, N, args.J)
    if args.format == "csv":
        dump_csv(smap, sigma, sys.stdout)
    else:
        print(
            _dump(
                {
                    "sigma": format_sequence(sigma),
                    "N": format_sequence(N),
                    "kappa0": smap.kappa0,
                    "kappa1": smap.kappa1,
                    "j0": smap.j0,
                    "c0": smap.c0,
                    "mu0": smap.mu0,
                    "mu1": smap.mu1,
                    "k": list(smap.k),
                }
            )
        )
    return EXIT_OK


def cmd_boyd(args) -> int:
    sigma = parse_sequence(args.sigma)
    rep = admissibility_bounds(sigma)
    bi = boyd_indices(sigma)
    print(
        _dump(
            {
                "sigma": format_sequence(sigma),
                "d0": rep.d0,
                "d1": rep.d1,
                "admissible": rep.is_admissible,
                "alpha": fmt(bi.alpha) if bi.exact else bi.alpha,
                "beta": fmt(bi.beta) if bi.exact else bi.beta,
            }
        )
    )
    return EXIT_OK


def cmd_atoms(args) -> int:
    spec = _spec(args)
    req = atom_requirements(spec.sigma, spec.N, spec.p, spec.q, spec.family, spec.n)
    print(
        _dump(
            {
                "family": spec.family,
                "M_min": req.M_min,
                "L_min": req.L_min,
                "M_bound": fmt(req.M_bound),
                "L_bound": fmt(req.L_bound),
                "moment_conditions": req.moment_conditions,
            }
        )
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = read_config(args.config)
    cfg.setdefault("experiment", args.experiment)
    if cfg["experiment"] != args.experiment:
        raise InvalidQuery(f"config runs {cfg['experiment']!r}, command asked for {args.experiment!r}")
    manifest = run_experiment(cfg, name=args.name, out_dir=output_dir())
    print(_dump(manifest))
    return EXIT_OK if manifest["passed"] else EXIT_FAILED


def cmd_report(args) -> int:
    text = classical_markdown(args.n) if args.kind == "classical" else example48_markdown(args.n)
    sys.stdout.write(text)
    return EXIT_OK


_COMMANDS = {
    "decide": cmd_decide,
    "standardize": cmd_standardize,
    "boyd": cmd_boyd,
    "atoms": cmd_atoms,
    "verify": cmd_verify,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except StandardizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (ValueError, OSError) as exc:
        # InvalidQuery, SequenceSyntaxError and config errors are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
