"""Command line entry point: ``gls analyze FAMILY_FILE``."""

import argparse
import os
import sys

from .familyfile import InputError, load_family
from .pipeline import analyze
from .report import exit_code, render_struct, render_text

_STAGES = ("pre-gls", "strata", "dnc", "kinks")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gls",
        description="decide algorithmic generic log smoothness of a"
                    " one-parameter family")
    sub = parser.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="analyze a family description file")
    an.add_argument("file", help="path to the family description file")
    an.add_argument("--format", choices=("text", "struct"), default="text",
                    help="output format (default: text)")
    an.add_argument("--max-kink", type=int, metavar="N",
                    help="override the kink search bound")
    an.add_argument("--stage-until", choices=_STAGES, metavar="STAGE",
                    help="stop after the named stage (%s)"
                         % ", ".join(_STAGES))
    an.add_argument("--double-dual", "--theta", action="store_true",
                    dest="double_dual",
                    help="use the double dual of the relative derivations"
                         " for the differential locus")
    an.add_argument("--no-differential", action="store_true",
                    help="skip the differential log-regularity locus")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        fam = load_family(args.file)
        max_kink = args.max_kink
        if max_kink is None and os.environ.get("GLS_MAX_KINK"):
            try:
                max_kink = int(os.environ["GLS_MAX_KINK"])
            except ValueError:
                raise InputError("GLS_MAX_KINK must be an integer")
        if max_kink is not None:
            if max_kink < 1:
                raise InputError("--max-kink must be at least 1")
            fam.max_kink = max_kink
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    report = analyze(fam, stage_until=args.stage_until,
                     with_differential=not args.no_differential,
                     double_dual=args.double_dual)
    if args.format == "struct":
        print(render_struct(report))
    else:
        print(render_text(report), end="")
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
