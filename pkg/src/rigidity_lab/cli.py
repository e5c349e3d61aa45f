"""``rigidity-lab`` command line.

Exit codes: 0 success / rigid / pass, 2 flexible, 3 invalid input,
4 audit violation.
"""

import argparse
import json
from pathlib import Path
import sys

from . import __version__
from .certificate import classify, global_audit
from .config import ToleranceConfig
from .errors import MixedSigns, NumericalBreakdown, RigidityLabError
from .export import to_dot
from .fuzz import fuzz
from .generators import generate
from .numeric import VelocityField, is_infinitesimally_rigid
from .offio import format_off, load_polytope

EXIT_OK, EXIT_FLEXIBLE, EXIT_INVALID, EXIT_VIOLATION = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INVALID)


def _common(sp):
    sp.add_argument("--eps-sign", type=float, default=1e-9)
    sp.add_argument("--eps-rank", type=float, default=1e-8)
    sp.add_argument("--eps-convex", type=float, default=1e-10)
    sp.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    sp.add_argument("--base", type=int, nargs=3, metavar=("I", "J", "K"),
                    help="base triangle (default: face 0)")
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.add_argument("--format", choices=("json", "text", "dot", "off"))
    sp.add_argument("--seed", type=int)


def build_parser():
    parser = _Parser(prog="rigidity-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("generate", help="write a generated polytope as OFF")
    sp.add_argument("kind")
    sp.add_argument("params", nargs="*")
    _common(sp)

    sp = sub.add_parser("validate", help="check an OFF file")
    sp.add_argument("off")
    _common(sp)

    sp = sub.add_parser("rigidity", help="decide infinitesimal rigidity")
    sp.add_argument("off")
    _common(sp)

    sp = sub.add_parser("certify", help="run the inversion audit on a velocity field")
    sp.add_argument("off")
    sp.add_argument("field")
    _common(sp)

    sp = sub.add_parser("fuzz", help="audit random velocity fields")
    sp.add_argument("off")
    sp.add_argument("--trials", type=int, default=1000)
    _common(sp)

    sp = sub.add_parser("export", help="DOT rendering of the edge orientation")
    sp.add_argument("off")
    sp.add_argument("field")
    _common(sp)
    return parser


def _config(args):
    return ToleranceConfig(eps_sign=args.eps_sign, eps_rank=args.eps_rank,
                           eps_convex=args.eps_convex, exact=args.exact)


def _emit(args, text):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _param(x):
    try:
        return int(x)
    except ValueError:
        return x


def _load(args, config):
    return load_polytope(args.off, base=args.base, config=config)


def _read_field(path, config):
    return VelocityField.from_json(Path(path).read_text(), exact=config.exact)


def cmd_generate(args, config):
    p = generate(args.kind, *map(_param, args.params), seed=args.seed, config=config)
    _emit(args, format_off(p))
    print(f"n={p.n} E={len(p.edges)} F={len(p.faces)} strict={str(p.strict).lower()}",
          file=sys.stderr)
    return EXIT_OK


def cmd_validate(args, config):
    p = _load(args, config)
    info = {"schema": 1, "valid": True, "n": p.n, "E": len(p.edges), "F": len(p.faces),
            "euler": p.euler_characteristic(), "strict": p.strict, "base": list(p.base)}
    _emit(args, _dump(info))
    return EXIT_OK


def cmd_rigidity(args, config):
    p = _load(args, config)
    v = is_infinitesimally_rigid(p, config=config)
    report = {"schema": 1, "n": p.n, "E": len(p.edges), "F": len(p.faces),
              "strict": p.strict, "base": list(v.base), "mode": config.mode,
              "kernel_dimension": v.full.dimension,
              "planted_kernel_dimension": v.planted.dimension,
              "gap_ratio": v.full.singular_value_gap,
              "planted_gap_ratio": v.planted.singular_value_gap,
              "verdict": "rigid" if v.rigid else "flexible"}
    if not v.rigid:
        anchor = Path(args.out) if args.out else Path(args.off)
        wpath = anchor.with_name(anchor.stem + ".witness.json")
        wpath.write_text(v.witness.to_json() + "\n")
        report["witness"] = str(wpath)
    if args.format == "text":
        _emit(args, f"{report['verdict']}: kernel {v.full.dimension}, "
                    f"planted {v.planted.dimension}\n")
    else:
        _emit(args, _dump(report))
    return EXIT_OK if v.rigid else EXIT_FLEXIBLE


def cmd_certify(args, config):
    p = _load(args, config)
    f = _read_field(args.field, config)
    rep = global_audit(p, f, config=config)
    if args.format == "text":
        _emit(args, f"{rep.verdict} {json.dumps(rep.to_dict()['detail'])}\n")
    else:
        _emit(args, _dump(rep.to_dict()))
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_fuzz(args, config):
    p = _load(args, config)
    seed = 0 if args.seed is None else args.seed
    summary = fuzz(p, args.trials, seed, config=config)
    _emit(args, _dump(summary))
    return EXIT_OK if summary["sound"] else EXIT_VIOLATION


def cmd_export(args, config):
    p = _load(args, config)
    f = _read_field(args.field, config)
    _emit(args, to_dot(classify(p, f, config)))
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "validate": cmd_validate, "rigidity": cmd_rigidity,
            "certify": cmd_certify, "fuzz": cmd_fuzz, "export": cmd_export}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
        return COMMANDS[args.command](args, config)
    except (RigidityLabError, OSError, ValueError, KeyError) as err:
        kind = "numerical breakdown" if isinstance(err, NumericalBreakdown) else \
            "inadmissible field" if isinstance(err, MixedSigns) else "invalid input"
        print(f"rigidity-lab: {kind}: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
