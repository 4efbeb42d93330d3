"""Command line: inspect groups, enumerate cells, run verification sweeps.

Exit codes: 0 for success, 1 when a sweep observed a VIOLATED verdict, 2
for usage or configuration errors. Reports go to stdout and are
deterministic for a fixed command line, seed, and version; progress notes,
banners, timing, and cache statistics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import __version__
from .cache import DiskCache, resolve_cache_dir
from .cells import (
    ENUMERATION_CAP,
    CellRecord,
    EnumerationCapError,
    balandraud_details,
    enumerate_cells,
    kernels_at,
    make_record,
    normalize_s,
)
from .groups import GroupAxiomError, GroupSpecError, all_subgroups, build_group
from .specs import SubsetSpecError, parse_group_tokens, parse_subset_spec
from .theorems import DRIVER_NAMES, SweepConfig, SweepConfigError, run_sweep

_FORMATS = ("jsonl", "csv", "table")


def _resolve_format(value: str | None) -> str:
    if value:
        return value
    return "table" if sys.stdout.isatty() else "jsonl"


def _emit_jsonl(record: dict) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")


def _print_table(header: list[str], rows: list[list[str]]) -> None:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    line = "  ".join(h.ljust(widths[i]) for i, h in enumerate(header))
    sys.stdout.write(line.rstrip() + "\n")
    sys.stdout.write("  ".join("-" * w for w in widths) + "\n")
    for row in rows:
        sys.stdout.write("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip() + "\n")


def _add_group_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("group", help="group spec: Z<n>, Z<a>xZ<b>..., D<n>, S<n>, Q8, cayley:<path>")
    p.add_argument("--wide", action="store_true",
                   help="allow group orders up to 1024 instead of 64")


def _add_format_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=_FORMATS, default=None,
                   help="output format (default: table on a tty, else jsonl)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cellkit",
        description="Cells, kernels, and stabilizers of subsets of finite groups, "
                    "with sumset-theorem verification sweeps.")
    parser.add_argument("--version", action="version", version=f"cellkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cells", help="enumerate cells and kernels of one subset")
    _add_group_arg(p)
    p.add_argument("set", help="subset spec, e.g. \"{0,1,6,7}\"")
    p.add_argument("--umax", type=int, default=None,
                   help="largest deficiency to list (default |S|-1)")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=None, help="seed closures drawn in sampled mode")
    p.add_argument("--seed", type=int, default=None, help="rng seed for sampled mode")
    p.add_argument("--enum-cap", type=int, default=ENUMERATION_CAP,
                   help="largest group order accepted for exhaustive enumeration")
    p.add_argument("--cache-dir", default=None,
                   help="cache directory (default: $CELLKIT_CACHE_DIR if set)")
    _add_format_arg(p)
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("subgroup", help="the canonical subgroup attached to one subset")
    _add_group_arg(p)
    p.add_argument("set", help="subset spec, e.g. \"{0,1,6,7}\"")
    p.add_argument("--enum-cap", type=int, default=ENUMERATION_CAP)
    _add_format_arg(p)
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("info", help="basic facts about a group")
    _add_group_arg(p)
    _add_format_arg(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("verify", help="sweep theorem checkers over instance families")
    p.add_argument("--groups", required=True,
                   help="comma-separated group specs; Z2..Z10 ranges expand")
    p.add_argument("--theorem", required=True,
                   help=f"comma-separated from: {', '.join(DRIVER_NAMES)}, or 'all'")
    p.add_argument("--set", dest="set_spec", default=None,
                   help="restrict S to one spec: \"{i,j,...}\", all:<k>, or rand:<k>:<n>:<seed>")
    p.add_argument("--smin", type=int, default=1, help="smallest |S| swept (default 1)")
    p.add_argument("--smax", type=int, default=None, help="largest |S| swept (default: group order)")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=100_000,
                   help="sampled instances per S or per group (default 100000)")
    p.add_argument("--s-samples", type=int, default=5,
                   help="sampled subsets S per group (default 5)")
    p.add_argument("--seed", type=int, default=None, help="base seed; required in sampled mode")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--enum-cap", type=int, default=ENUMERATION_CAP)
    p.add_argument("--max-instances", type=int, default=1 << 22,
                   help="refuse any single task larger than this many instances")
    p.add_argument("--wide", action="store_true")
    _add_format_arg(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _cell_row(rec: CellRecord, kernel_sizes: dict[int, int]) -> dict:
    return {
        "kind": "cell",
        "cell": rec.cell.spec_string(),
        "bits": f"0x{rec.cell.bits:x}",
        "size": len(rec.cell),
        "product": rec.product.spec_string(),
        "product_size": len(rec.product),
        "deficiency": rec.deficiency,
        "is_kernel": len(rec.cell) == kernel_sizes.get(rec.deficiency),
        "is_subgroup": rec.is_subgroup,
        "contains_identity": rec.contains_identity,
    }


def cmd_cells(args: argparse.Namespace) -> int:
    g = build_group(args.group, wide=args.wide)
    raw = parse_subset_spec(args.set, g)
    if not raw:
        print("error: the empty set has no cells; give a nonempty set", file=sys.stderr)
        return 2
    s, shifted = normalize_s(raw)
    umax = args.umax if args.umax is not None else max(len(s) - 1, 0)
    if umax < 0:
        print(f"error: --umax must be nonnegative, got {umax}", file=sys.stderr)
        return 2
    if args.mode == "sampled" and (args.samples is None or args.seed is None):
        print("error: sampled mode requires --samples and --seed", file=sys.stderr)
        return 2
    cache_dir = resolve_cache_dir(args.cache_dir)
    cache = DiskCache(cache_dir) if cache_dir is not None else None

    def compute() -> list[list[int]]:
        records = enumerate_cells(s, umax, args.mode, count=args.samples, seed=args.seed,
                                  cap=args.enum_cap)
        return [[r.cell.bits, r.product.bits] for r in records]

    key = {"command": "cells", "version": __version__, "group": g.label, "s_bits": s.bits,
           "umax": umax, "mode": args.mode, "samples": args.samples, "seed": args.seed}
    t0 = time.monotonic()
    pairs = cache.get_or_compute(key, compute) if cache else compute()
    records = [make_record(g, int(c), int(p)) for c, p in pairs]
    kernel_records = [kernels_at(s, u, records) for u in range(umax + 1)]
    kernel_sizes = {kr.u: len(kr.kernels[0].cell) for kr in kernel_records if kr.kernels}
    details = balandraud_details(s, cap=args.enum_cap)

    manifest = {"kind": "manifest", "command": "cells", "tool": "cellkit",
                "version": __version__, "group": g.label, "set": s.spec_string(),
                "normalized_from": raw.spec_string() if shifted else None,
                "umax": umax, "mode": args.mode, "samples": args.samples, "seed": args.seed}
    cell_rows = [_cell_row(r, kernel_sizes) for r in records]
    kernel_rows = [{
        "kind": "kernel_summary", "u": kr.u, "kernel_count": len(kr.kernels),
        "kernel_size": len(kr.kernels[0].cell) if kr.kernels else None,
        "kernels": [k.cell.spec_string() for k in kr.kernels],
        "unique_identity_kernel": kr.unique_identity_kernel.cell.spec_string()
        if kr.unique_identity_kernel else None,
    } for kr in kernel_records]
    balandraud_row = {"kind": "balandraud", "subgroup": details.subgroup.spec_string(),
                      "subgroup_size": len(details.subgroup), "u_star": details.u_star,
                      "case": details.case}

    fmt = _resolve_format(args.format)
    if fmt == "jsonl":
        _emit_jsonl(manifest)
        for row in cell_rows + kernel_rows + [balandraud_row]:
            _emit_jsonl(row)
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        fields = ["cell", "bits", "size", "product_size", "deficiency",
                  "is_kernel", "is_subgroup", "contains_identity"]
        writer.writerow(fields)
        for row in cell_rows:
            writer.writerow([row[f] for f in fields])
        for row in kernel_rows + [balandraud_row]:
            print(json.dumps(row, sort_keys=True), file=sys.stderr)
    else:
        print(f"cells of S = {s.spec_string()} in {g.label} (umax {umax}, {args.mode})")
        if shifted:
            print(f"  normalized from {raw.spec_string()} by dividing out element {shifted}")
        _print_table(
            ["cell", "size", "deficiency", "kernel", "subgroup", "has-identity"],
            [[row["cell"], str(row["size"]), str(row["deficiency"]),
              "yes" if row["is_kernel"] else "", "yes" if row["is_subgroup"] else "",
              "yes" if row["contains_identity"] else ""] for row in cell_rows])
        for row in kernel_rows:
            if row["kernel_count"]:
                unique = row["unique_identity_kernel"] or "none"
                print(f"u={row['u']}: {row['kernel_count']} kernel(s) of size "
                      f"{row['kernel_size']}, identity kernel {unique}")
        print(f"subgroup: {balandraud_row['subgroup']} "
              f"(u* = {balandraud_row['u_star']}, case {balandraud_row['case']})")
    if cache is not None:
        print(cache.stats(), file=sys.stderr)
    print(f"cells: {len(records)} cell(s) in {time.monotonic() - t0:.3f}s", file=sys.stderr)
    return 0


def cmd_subgroup(args: argparse.Namespace) -> int:
    g = build_group(args.group, wide=args.wide)
    raw = parse_subset_spec(args.set, g)
    if not raw:
        print("error: give a nonempty set", file=sys.stderr)
        return 2
    s, shifted = normalize_s(raw)
    details = balandraud_details(s, cap=args.enum_cap)
    record = {"kind": "balandraud", "group": g.label, "set": s.spec_string(),
              "normalized_from": raw.spec_string() if shifted else None,
              "subgroup": details.subgroup.spec_string(),
              "subgroup_size": len(details.subgroup),
              "u_star": details.u_star, "case": details.case}
    fmt = _resolve_format(args.format)
    if fmt == "jsonl":
        _emit_jsonl(record)
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["field", "value"])
        for k, v in record.items():
            writer.writerow([k, v])
    else:
        print(f"group:    {record['group']}")
        print(f"set:      {record['set']}"
              + (f" (normalized from {record['normalized_from']})" if shifted else ""))
        print(f"subgroup: {record['subgroup']} (size {record['subgroup_size']})")
        print(f"u*:       {record['u_star']}")
        print(f"case:     {record['case']}")
    return 0


def cmd_info(args: argparse.Namespace) -> int:
    g = build_group(args.group, wide=args.wide)
    t = g.mul_array()
    center = [i for i in range(g.order) if (t[i] == t[:, i]).all()]
    record = {"kind": "info", "group": g.label, "order": g.order,
              "abelian": g.is_abelian, "center_size": len(center)}
    if g.order <= 24:
        subs = all_subgroups(g)
        record["subgroup_count"] = len(subs)
        record["subgroup_sizes"] = sorted(len(h) for h in subs)
    else:
        record["subgroup_count"] = None
    fmt = _resolve_format(args.format)
    if fmt == "jsonl":
        _emit_jsonl(record)
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["field", "value"])
        for k, v in record.items():
            writer.writerow([k, v])
    else:
        for k, v in record.items():
            if k != "kind":
                print(f"{k}: {v}")
    return 0


def _parse_theorems(text: str) -> tuple[str, ...]:
    names: list[str] = []
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        if token == "all":
            names.extend(DRIVER_NAMES)
        elif token in DRIVER_NAMES:
            names.append(token)
        else:
            raise SweepConfigError(
                f"unknown theorem {token!r}; expected one of {', '.join(DRIVER_NAMES)} or 'all'")
    out: list[str] = []
    for name in names:
        if name not in out:
            out.append(name)
    if not out:
        raise SweepConfigError("no theorems selected")
    return tuple(out)


def cmd_verify(args: argparse.Namespace) -> int:
    groups = tuple(parse_group_tokens(args.groups))
    theorems = _parse_theorems(args.theorem)
    cfg = SweepConfig(
        groups=groups, theorems=theorems, mode=args.mode, samples=args.samples,
        s_samples=args.s_samples, seed=args.seed, s_min=args.smin, s_max=args.smax,
        set_spec=args.set_spec, wide=args.wide, jobs=args.jobs,
        enumeration_cap=args.enum_cap, max_instances=args.max_instances)
    cfg.validate()
    fmt = _resolve_format(args.format)
    # jobs is deliberately absent: the report is a function of what was
    # verified, and the worker count never changes that
    manifest = {"kind": "manifest", "command": "verify", "tool": "cellkit",
                "version": __version__, "groups": list(groups), "theorems": list(theorems),
                "mode": cfg.mode, "samples": cfg.samples, "s_samples": cfg.s_samples,
                "seed": cfg.seed, "smin": cfg.s_min, "smax": cfg.s_max,
                "set": cfg.set_spec, "max_instances": cfg.max_instances}
    t0 = time.monotonic()
    if fmt == "jsonl":
        _emit_jsonl(manifest)
        result = run_sweep(cfg, sink=_emit_jsonl)
        _emit_jsonl({"kind": "summary", **result.summary})
    else:
        result = run_sweep(cfg, sink=None)
        if fmt == "csv":
            writer = csv.writer(sys.stdout)
            writer.writerow(["theorem", "group", "status", "count"])
            for theorem, per_group in sorted(result.summary["counts"].items()):
                for group, statuses in sorted(per_group.items()):
                    for status, count in sorted(statuses.items()):
                        writer.writerow([theorem, group, status, count])
        else:
            rows = []
            for theorem, per_group in sorted(result.summary["counts"].items()):
                for group, statuses in sorted(per_group.items()):
                    rows.append([theorem, group] + [str(statuses.get(s, 0)) for s in
                                ("HOLDS", "VIOLATED", "NOT_APPLICABLE", "FINDING")])
            _print_table(["theorem", "group", "holds", "violated", "n/a", "finding"], rows)
            print(f"instances: {result.summary['instances']}")
            for rec in result.violations:
                print("violated: " + json.dumps(rec, sort_keys=True))
            for rec in result.findings:
                print("finding: " + json.dumps(rec, sort_keys=True))
            for rec in result.errors:
                print("error: " + json.dumps(rec, sort_keys=True))
    for theorem, group in result.summary["exploration"]:
        print(f"cellkit: {group} is not abelian; {theorem} ran in exploration mode "
              f"(failures become FINDING, not VIOLATED)", file=sys.stderr)
    for rec in result.errors:
        print(f"cellkit: skipped {rec['theorem']} on {rec['group']}: {rec['message']}",
              file=sys.stderr)
    print(f"verify: {result.summary['instances']} instance(s) in "
          f"{time.monotonic() - t0:.3f}s", file=sys.stderr)
    return 1 if result.violated else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GroupSpecError, GroupAxiomError, SubsetSpecError, SweepConfigError,
            EnumerationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
