"""Command-line front end.

Commands:

- ``verify``: sweep catalog entries over their default or overridden grids.
- ``derive``: apply a derivation scheme to an identity source file, print the
  derived identity, and grid-verify it (optionally matching a catalog entry).
- ``integrals``: compare the exact Beta values against the quadrature oracle.
- ``export-catalog``: write every entry as an identity source file.

Exit codes: 0 all verified (skips permitted), 1 at least one failure or
mismatch, 2 usage or parse errors.  Structured reports are deterministic:
the same configuration (including the seed) produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

import mpmath as mp

from . import __version__
from .catalog import entry_ids, export_catalog, get_entry, iter_grid, verify_grid
from .descriptors import FAILED, SKIPPED_POLE, SKIPPED_PRECONDITION, VERIFIED, binding_key
from .dsl import parse_identity, print_identity
from .errors import DslSyntaxError, EmptyGridError, ShapeError, UnknownEntryError
from .integrals import BetaArgs, beta_integral_exact, beta_integral_quadrature
from .terms import collect_names
from .transforms import (
    check_derived,
    frisch_transform,
    klamkin_transform,
    match_against_entry,
    moment_transform,
)

GRID_PARAMS = ("n", "m", "r", "s", "t", "u")


def _parse_values(spec: str) -> tuple[Fraction, ...]:
    """Parse a grid axis: ``0..10`` or a comma list like ``1,2,7/2``."""
    spec = spec.strip()
    if ".." in spec:
        lo_text, hi_text = spec.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"empty range {spec!r}")
        return tuple(Fraction(v) for v in range(lo, hi + 1))
    return tuple(Fraction(part.strip()) for part in spec.split(","))


def _fraction_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _grid_overrides(args, prefix: str = "") -> dict[str, tuple[Fraction, ...]]:
    overrides = {}
    for name in GRID_PARAMS:
        spec = getattr(args, f"{prefix}{name}", None)
        if spec is not None:
            overrides[name] = _parse_values(spec)
    return overrides


def _sample_grid(grid, count: int, seed: int):
    bindings = sorted(iter_grid(grid), key=binding_key)
    if count >= len(bindings):
        return bindings
    rng = random.Random(seed)
    return rng.sample(bindings, count)


def _write_report(path: str, report: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(report, handle, indent=2)
        handle.write("\n")


def _jobs(args) -> int:
    jobs = args.jobs
    cap = os.environ.get("COMBIDENT_MAX_JOBS")
    if cap is not None:
        jobs = min(jobs, max(1, int(cap)))
    return max(1, jobs)


# -- verify -------------------------------------------------------------------

def _witness_record(result) -> dict:
    return {
        "binding": {name: _fraction_str(v) for name, v in sorted(result.binding.items())},
        "lhs": str(result.lhs),
        "rhs": str(result.rhs),
        "detail": result.witness or "",
    }


def cmd_verify(args) -> int:
    if args.id == "all":
        selection = list(entry_ids())
    else:
        selection = [part.strip() for part in args.id.split(",") if part.strip()]
    overrides = _grid_overrides(args)
    jobs = _jobs(args)

    entries_report = []
    any_failed = False
    for entry_id in selection:
        entry = get_entry(entry_id)  # raises UnknownEntryError
        grid = dict(entry.default_grid)
        for name, values in overrides.items():
            if name in grid:
                grid[name] = values
        if args.sample is not None:
            bindings = _sample_grid(grid, args.sample, args.seed)
            counts = {VERIFIED: 0, FAILED: 0, SKIPPED_POLE: 0, SKIPPED_PRECONDITION: 0}
            witnesses = []
            from .catalog import verify_entry

            for binding in bindings:
                result = verify_entry(entry_id, binding)
                counts[result.status] += 1
                if result.status == FAILED and len(witnesses) < 10:
                    witnesses.append(result)
            report_counts, report_witnesses, total = counts, witnesses, len(bindings)
        else:
            grid_report = verify_grid(entry_id, grid, jobs=jobs)
            report_counts = grid_report.counts
            report_witnesses = list(grid_report.witnesses)
            total = grid_report.total
        failed = report_counts[FAILED]
        any_failed = any_failed or failed > 0
        entries_report.append(
            {
                "id": entry.id,
                "title": entry.title,
                "anchor": entry.anchor,
                "total": total,
                "counts": dict(sorted(report_counts.items())),
                "witnesses": [_witness_record(w) for w in report_witnesses],
            }
        )
        if args.format == "human":
            counts = report_counts
            status = "FAIL" if failed else "ok"
            print(
                f"{entry.id:6s} {status:4s} verified={counts[VERIFIED]:<5d}"
                f" pole={counts[SKIPPED_POLE]:<4d} pre={counts[SKIPPED_PRECONDITION]:<4d}"
                f" failed={failed:<3d} | {entry.title} [{entry.anchor}]"
            )

    if args.out:
        _write_report(
            args.out,
            {
                "run_meta": {
                    "tool": "combident",
                    "version": __version__,
                    "command": "verify",
                    "selection": selection,
                    "grid_overrides": {
                        name: [_fraction_str(v) for v in values]
                        for name, values in sorted(overrides.items())
                    },
                    "sample": args.sample,
                    "seed": args.seed,
                    "jobs": jobs,
                },
                "entries": entries_report,
            },
        )
    return 1 if any_failed else 0


# -- derive -------------------------------------------------------------------

_DERIVED_GRID_DEFAULTS = {
    "n": tuple(Fraction(v) for v in range(9)),
    "m": tuple(Fraction(v) for v in range(5)),
    "r": (Fraction(8), Fraction(12), Fraction(25, 2)),
    "s": (Fraction(1), Fraction(2)),
    "t": (Fraction(7), Fraction(9)),
    "u": (Fraction(0), Fraction(1), Fraction(3, 2)),
}


def cmd_derive(args) -> int:
    try:
        source = open(args.input, "r", encoding="utf-8").read()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    desc = parse_identity(source)

    if args.scheme == "frisch":
        derived = frisch_transform(desc, direction=args.direction)
    elif args.scheme == "klamkin":
        derived = klamkin_transform(desc, direction=args.direction)
    else:
        if args.m is None:
            print("error: --m is required for the moment scheme", file=sys.stderr)
            return 2
        derived = moment_transform(desc, args.m, variant=args.variant)

    derived_desc = derived.to_descriptor()
    text = print_identity(derived_desc)
    print(f"# derived: {derived.provenance}")
    print(text, end="")
    if args.out_dsl:
        with open(args.out_dsl, "w", encoding="utf-8") as handle:
            handle.write(f"# derived: {derived.provenance}\n")
            handle.write(text)

    # grid-verify the derived identity over its free parameters
    overrides = _grid_overrides(args, prefix="grid_")
    names = set()
    for spec in derived.lhs + derived.rhs:
        names |= collect_names(spec.term) | spec.lo.names() | spec.hi.names()
    names.discard("k")
    grid = {}
    for name in sorted(names):
        grid[name] = overrides.get(name) or _DERIVED_GRID_DEFAULTS.get(name)
        if grid[name] is None:
            grid[name] = (Fraction(1), Fraction(2))
    counts = {VERIFIED: 0, FAILED: 0, SKIPPED_POLE: 0, SKIPPED_PRECONDITION: 0}
    witnesses = []
    for binding in sorted(iter_grid(grid), key=binding_key):
        result = check_derived(derived, binding)
        counts[result.status] += 1
        if result.status == FAILED and len(witnesses) < 10:
            witnesses.append(result)
    print(
        f"# verification: verified={counts[VERIFIED]} pole={counts[SKIPPED_POLE]}"
        f" pre={counts[SKIPPED_PRECONDITION]} failed={counts[FAILED]}"
    )

    match_ok = True
    match_note = None
    if args.match:
        report = match_against_entry(derived, args.match)
        match_ok = report.ok
        factors = ", ".join(_fraction_str(f) for f in report.factors[:6])
        match_note = {
            "entry": args.match,
            "ok": report.ok,
            "checked": report.checked,
            "factors": [_fraction_str(f) for f in report.factors],
            "detail": report.detail,
        }
        print(f"# match {args.match}: {'ok' if report.ok else 'MISMATCH'} (factors: {factors})")

    if args.out:
        _write_report(
            args.out,
            {
                "run_meta": {
                    "tool": "combident",
                    "version": __version__,
                    "command": "derive",
                    "scheme": args.scheme,
                    "input": os.path.basename(args.input),
                    "direction": args.direction,
                    "variant": args.variant,
                    "m": args.m,
                    "seed": args.seed,
                },
                "derived": {
                    "provenance": derived.provenance,
                    "source": text,
                    "counts": dict(sorted(counts.items())),
                    "witnesses": [_witness_record(w) for w in witnesses],
                    "match": match_note,
                },
            },
        )
    return 1 if (counts[FAILED] or not match_ok) else 0


# -- integrals ------------------------------------------------------------------

def cmd_integrals(args) -> int:
    pairs = []
    if args.pair:
        a_text, b_text = args.pair
        pairs.append((Fraction(a_text), Fraction(b_text)))
    else:
        pairs = [
            (Fraction(a), Fraction(b))
            for a in range(args.max_exp + 1)
            for b in range(args.max_exp + 1)
        ]
    worst = mp.mpf(0)
    skipped = 0
    rows = []
    for a, b in pairs:
        if a < 0 or b < 0:
            skipped += 1
            continue
        args_pair = BetaArgs(a, b)
        exact = beta_integral_exact(args_pair)
        estimate = beta_integral_quadrature(args_pair, nodes=args.nodes)
        error = abs(estimate - mp.mpf(exact.numerator) / exact.denominator)
        worst = max(worst, error)
        rows.append((a, b, exact, estimate, error))
    if args.pair:
        for a, b, exact, estimate, error in rows:
            print(
                f"a={_fraction_str(a)} b={_fraction_str(b)} exact={exact}"
                f" estimate={mp.nstr(estimate, 20)} error={mp.nstr(error, 3)}"
            )
    print(
        f"checked {len(rows)} exponent pairs (nodes={args.nodes});"
        f" max |quadrature - exact| = {mp.nstr(worst, 3)}; skipped {skipped}"
    )
    if args.out:
        _write_report(
            args.out,
            {
                "run_meta": {
                    "tool": "combident",
                    "version": __version__,
                    "command": "integrals",
                    "max_exp": args.max_exp,
                    "nodes": args.nodes,
                },
                "checked": len(rows),
                "max_error": mp.nstr(worst, 12),
                "skipped": skipped,
                "tolerance": "1e-10",
                "within_tolerance": bool(worst <= mp.mpf("1e-10")),
            },
        )
    return 0 if worst <= mp.mpf("1e-10") else 1


def cmd_export(args) -> int:
    written = export_catalog(args.out_dir)
    print(f"wrote {len(written)} identity files to {args.out_dir}")
    return 0


# -- entry point ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combident",
        description="verify and derive binomial-sum identities in exact arithmetic",
    )
    parser.add_argument("--version", action="version", version=f"combident {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="verify catalog entries over grids")
    verify.add_argument("--id", default="all", help="entry id, comma list, or 'all'")
    for name in GRID_PARAMS:
        verify.add_argument(
            f"--{name}", default=None, help=f"override the {name} axis (e.g. 0..10 or 1,2,7/2)"
        )
    verify.add_argument("--out", default=None, help="write a JSON report here")
    verify.add_argument("--format", choices=("human", "quiet"), default="human")
    verify.add_argument("--jobs", type=int, default=1, help="worker threads for grid sweeps")
    verify.add_argument("--sample", type=int, default=None, help="sample this many bindings")
    verify.add_argument("--seed", type=int, default=0, help="seed for sampled grids")
    verify.set_defaults(func=cmd_verify)

    derive = sub.add_parser("derive", help="derive an identity from a source file")
    derive.add_argument("--scheme", choices=("frisch", "klamkin", "moment"), required=True)
    derive.add_argument("--input", required=True, help="identity source file")
    derive.add_argument("--direction", choices=("forward", "transposed"), default="forward")
    derive.add_argument(
        "--variant",
        choices=("direct", "swapped", "reflected", "swapped_reflected"),
        default="direct",
        help="moment scheme variant",
    )
    derive.add_argument("--m", type=int, default=None, help="moment order")
    derive.add_argument("--match", default=None, help="catalog entry to compare against")
    derive.add_argument("--out", default=None, help="write a JSON report here")
    derive.add_argument("--out-dsl", default=None, help="write the derived identity here")
    for name in GRID_PARAMS:
        derive.add_argument(
            f"--grid-{name}", dest=f"grid_{name}", default=None,
            help=f"override the {name} axis for verification",
        )
    derive.add_argument("--seed", type=int, default=0)
    derive.set_defaults(func=cmd_derive)

    integrals = sub.add_parser("integrals", help="exact Beta values vs quadrature")
    integrals.add_argument("--max-exp", type=int, default=20)
    integrals.add_argument("--nodes", type=int, default=64)
    integrals.add_argument("--pair", nargs=2, metavar=("A", "B"), default=None)
    integrals.add_argument("--out", default=None)
    integrals.set_defaults(func=cmd_integrals)

    export = sub.add_parser("export-catalog", help="write the catalog as source files")
    export.add_argument("--out-dir", required=True)
    export.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownEntryError as exc:
        print(f"error: unknown entry {exc.args[0]!r}", file=sys.stderr)
        return 2
    except DslSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ShapeError, EmptyGridError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
