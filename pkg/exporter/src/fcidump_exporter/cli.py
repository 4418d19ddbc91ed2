"""Command line entry point: export --molecule <name> --out <dir>."""

from __future__ import annotations

import argparse
import sys

from .export import ExportError, export_fcidump
from .molecules import MOLECULES


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fcidump-export",
        description="Generate FCIDUMP fixtures and metadata for the benchmark molecules.")
    sub = parser.add_subparsers(dest="command", required=True)
    export = sub.add_parser("export", help="write FCIDUMP + metadata JSON")
    export.add_argument("--molecule", required=True,
                        choices=sorted(MOLECULES) + ["all"])
    export.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args(argv)

    names = sorted(MOLECULES) if args.molecule == "all" else [args.molecule]
    try:
        for name in names:
            fcidump, metadata = export_fcidump(MOLECULES[name], args.out)
            print(f"{name}: wrote {fcidump} and {metadata}")
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
