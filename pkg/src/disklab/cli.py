"""Batch front end.

Subcommands: gen, analyze, majorant, balayage, maximal, borichev.
Input is the plain-text point format of seqfile; output is text, CSV,
or JSON on stdout.  Exit codes: 0 success, 2 when the command's
headline verdict is the failing one (GROWING majorant mass, diverging
embedding series, growing antichain supremum), 1 on any error.  No
environment variables, no timestamps: identical invocations produce
identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import seqfile, sequences
from .blaschke import blaschke_defect, blaschke_sum, separation_constant
from .dyadic import DyadicWeights, aggregate_sup, antichain_report, antichain_supremum
from .geometry import DyadicIndex, whitney_square
from .harmonic import (DiskMeasure, balayage_sup, carleson_embedding_report,
                       poisson_kernel, tail_sum_report, window_sup)
from .majorant import majorant_test, weight_report
from .maximal import bump_envelope, nontangential_max, weak_l1

FORMATS = ("text", "csv", "json")


class CliError(Exception):
    pass


def _scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    if x is None:
        return "NA"
    return str(x)


def _emit_text(report: dict) -> str:
    lines = [f"disklab {report['command']}"]
    if report.get("input") is not None:
        lines.append(f"input: {report['input']}")
    for key, val in report.get("params", {}).items():
        lines.append(f"param {key}: {_scalar(val)}")
    summary = report.get("summary", {})
    if summary:
        lines.append("summary:")
        for key, val in summary.items():
            lines.append(f"  {key}: {_scalar(val)}")
    for table in report.get("tables", []):
        lines.append(f"table {table['name']} [{len(table['rows'])} rows]:")
        lines.append("  " + "  ".join(table["columns"]))
        for row in table["rows"]:
            lines.append("  " + "  ".join(_scalar(v) for v in row))
    if report.get("verdict") is not None:
        lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def _emit_csv(report: dict) -> str:
    lines = [f"# command,{report['command']}"]
    if report.get("input") is not None:
        lines.append(f"# input,{report['input']}")
    for key, val in report.get("params", {}).items():
        lines.append(f"# param,{key},{_scalar(val)}")
    for key, val in report.get("summary", {}).items():
        lines.append(f"# summary,{key},{_scalar(val)}")
    for table in report.get("tables", []):
        lines.append(f"# table,{table['name']}")
        lines.append(",".join(table["columns"]))
        for row in table["rows"]:
            lines.append(",".join(_scalar(v) for v in row))
    if report.get("verdict") is not None:
        lines.append(f"# verdict,{report['verdict']}")
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True) + "\n"
    if fmt == "csv":
        return _emit_csv(report)
    return _emit_text(report)


def _load(path: str) -> seqfile.SequenceFile:
    try:
        return seqfile.read_path(path)
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror or e}") from None
    except seqfile.ParseError as e:
        raise CliError(f"{path}: {e}") from None


def _disk_sequence(sf: seqfile.SequenceFile, path: str):
    if sf.mode != seqfile.MODE_CIRCLE:
        raise CliError(f"{path}: this command works on disk sequences")
    try:
        return sf.point_sequence()
    except ValueError as e:
        raise CliError(f"{path}: {e}") from None


def _parse_spec(spec: str):
    name, _, tail = spec.partition(":")
    kwargs = {}
    if tail:
        for item in tail.split(","):
            key, sep, raw = item.partition("=")
            if not sep or not key:
                raise CliError(f"bad generator argument {item!r} (want key=value)")
            if ";" in raw:
                try:
                    kwargs[key] = [float(v) for v in raw.split(";") if v]
                except ValueError:
                    raise CliError(f"bad list value {raw!r}") from None
                continue
            for cast in (int, float):
                try:
                    kwargs[key] = cast(raw)
                    break
                except ValueError:
                    continue
            else:
                kwargs[key] = raw
    return name, kwargs


def _parse_levels(text: str):
    text = text.strip()
    for dash in ("..", "-"):
        if dash in text:
            lo, _, hi = text.partition(dash)
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise CliError(f"bad level range {text!r}") from None
            if hi_i < lo_i:
                raise CliError(f"empty level range {text!r}")
            return list(range(lo_i, hi_i + 1))
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise CliError(f"bad level list {text!r}") from None


def cmd_gen(args):
    name, kwargs = _parse_spec(args.spec)
    comments = [f"disklab gen {args.spec}"]
    if name == "sharp_family":
        from .maximal import counterexample_family
        try:
            fam = counterexample_family(
                alpha=float(kwargs.pop("alpha", 1.0)),
                beta=float(kwargs.pop("beta", 4.0)),
                eps_rule=str(kwargs.pop("eps", "const")),
                size=int(kwargs.pop("size", 1000)))
        except (ValueError, TypeError) as e:
            raise CliError(str(e)) from None
        if kwargs:
            raise CliError(f"unknown arguments for sharp_family: {sorted(kwargs)}")
        comments.append(f"tags: {' '.join(fam.tags)}")
        text = seqfile.format_points(fam.xs, fam.ys, values=fam.phis,
                                     mode=seqfile.MODE_HALFPLANE, comments=comments)
    else:
        try:
            builder = sequences.GENERATORS[name]
        except KeyError:
            known = ", ".join(sorted(sequences.GENERATORS) + ["sharp_family"])
            raise CliError(f"unknown generator {name!r} (known: {known})") from None
        try:
            cfg = builder(**kwargs)
        except (ValueError, TypeError) as e:
            raise CliError(str(e)) from None
        comments.append(f"tags: {' '.join(cfg.tags)}")
        if cfg.sequence is not None:
            text = seqfile.format_sequence(cfg.sequence, comments=comments)
        elif cfg.measure is not None:
            text = seqfile.format_measure(cfg.measure, comments=comments)
        elif cfg.scaled is not None:
            try:
                pts = cfg.scaled.materialize()
            except ValueError as e:
                raise CliError(str(e)) from None
            text = seqfile.format_points([p.x for p in pts], [p.y for p in pts],
                                         mode=seqfile.MODE_HALFPLANE, comments=comments)
        else:
            raise CliError(f"{name} produced nothing writable")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        report = {"command": "gen", "input": args.spec,
                  "params": {"output": args.output},
                  "summary": {"lines": text.count("\n")}, "tables": [],
                  "verdict": None}
        return report, 0
    sys.stdout.write(text)
    return None, 0


def cmd_analyze(args):
    sf = _load(args.file)
    seq = _disk_sequence(sf, args.file)
    defect = blaschke_defect(seq)
    gaps = seq.one_minus_abs()
    weights = gaps * defect.values
    rows = [[i, float(p.re), float(p.im), float(gaps[i]),
             float(defect.values[i]), float(weights[i])]
            for i, p in enumerate(seq)]
    try:
        sep = float(separation_constant(seq))
    except ValueError:
        sep = None
    wr = weight_report(seq, values=defect.values)
    report = {
        "command": "analyze",
        "input": args.file,
        "params": {"format": args.format},
        "summary": {
            "n_points": len(seq),
            "blaschke_sum": float(blaschke_sum(seq)),
            "separation_constant": sep,
            "defect_max": float(defect.values.max()),
            "overflow_points": int(np.count_nonzero(defect.overflow)),
            "weight_vanishing": bool(wr.vanishing),
            "weight_bounded": bool(wr.bounded),
            "weight_summable": bool(wr.summable),
            "weight_total": float(wr.partial_sums[-1]) if len(seq) else 0.0,
        },
        "tables": [{
            "name": "points",
            "columns": ["idx", "re", "im", "gap", "defect", "weight"],
            "rows": rows,
        }],
        "verdict": None,
    }
    return report, 0


def cmd_majorant(args):
    sf = _load(args.file)
    seq = _disk_sequence(sf, args.file)
    levels = _parse_levels(args.levels)
    if not levels:
        raise CliError("no levels given")
    if seq.values is not None:
        values = np.asarray(seq.values, dtype=float)
        source = "file"
    else:
        values = blaschke_defect(seq).values
        source = "defect"
    try:
        verdict = majorant_test(seq, levels, values=values,
                                feas_tol=args.tol_feas, gap_tol=args.tol_gap)
    except ValueError as e:
        raise CliError(str(e)) from None
    rows = []
    for lv in verdict.levels:
        rows.append([lv.depth, lv.status,
                     None if lv.mass is None else float(lv.mass),
                     None if lv.dual_value is None else float(lv.dual_value),
                     None if lv.gap is None else float(lv.gap),
                     None if lv.concentration is None else float(lv.concentration)])
    report = {
        "command": "majorant",
        "input": args.file,
        "params": {"levels": levels, "tol_feas": args.tol_feas,
                   "tol_gap": args.tol_gap, "values": source,
                   "format": args.format},
        "summary": {
            "n_points": len(seq),
            "trend": verdict.trend,
            "singular_like": bool(verdict.singular_like),
            "singular_theta": (None if verdict.singular_theta is None
                               else float(verdict.singular_theta)),
        },
        "tables": [{
            "name": "levels",
            "columns": ["depth", "status", "mass", "dual", "gap", "concentration"],
            "rows": rows,
        }],
        "verdict": verdict.trend,
    }
    return report, 2 if verdict.trend == "GROWING" else 0


def _measure_from_source(source: str):
    if source.startswith("circles:"):
        body = source[len("circles:"):]
        try:
            alphas = [float(v) for v in body.split(",") if v]
        except ValueError:
            raise CliError(f"bad circle masses {body!r}") from None
        if not alphas:
            raise CliError("circles spec needs at least one mass")
        return sequences.measure_circles(alphas).measure, source
    if source.startswith("ray:"):
        parts = source.split(":")
        density = parts[1] if len(parts) > 1 and parts[1] else "one"
        try:
            generations = int(parts[2]) if len(parts) > 2 else 10
        except ValueError:
            raise CliError(f"bad ray generation count {parts[2]!r}") from None
        try:
            return sequences.measure_ray(density, generations).measure, source
        except ValueError as e:
            raise CliError(str(e)) from None
    sf = _load(source)
    if sf.mode != seqfile.MODE_CIRCLE:
        raise CliError(f"{source}: balayage works on disk measures")
    try:
        return sf.measure(), source
    except ValueError as e:
        raise CliError(f"{source}: {e}") from None


def cmd_balayage(args):
    mu, label = _measure_from_source(args.source)
    if mu.n_atoms == 0:
        raise CliError("empty measure")
    depth = args.depth
    if not 1 <= depth <= 24:
        raise CliError("depth must lie in [1, 24]")
    bsup = balayage_sup(mu, depth)
    win_depth = min(depth, 14)
    win_rows = []
    for n in range(1, win_depth + 1):
        side = 2.0 ** -n
        sup, theta = window_sup(mu, side)
        win_rows.append([n, side, float(sup), float(theta), float(sup / side)])
    embed = carleson_embedding_report(mu, win_depth)
    tail = tail_sum_report(mu, min(depth, 30))
    tail_rows = [[r.n, float(r.tail_mass), float(r.partial)] for r in tail.rows]
    report = {
        "command": "balayage",
        "input": label,
        "params": {"depth": depth, "format": args.format},
        "summary": {
            "n_atoms": int(mu.n_atoms),
            "total_mass": mu.total_mass(),
            "balayage_sup": float(bsup.value),
            "balayage_sup_theta": float(bsup.theta),
            "refine_ratio": float(bsup.refine_ratio),
            "carleson_constant": max((r[4] for r in win_rows), default=0.0),
            "embedding_verdict": embed.verdict,
            "tail_sum_verdict": tail.verdict,
            "tail_sum_total": float(tail.total),
        },
        "tables": [
            {"name": "windows",
             "columns": ["n", "side", "sup", "theta", "sup_over_side"],
             "rows": win_rows},
            {"name": "tail_sums",
             "columns": ["n", "tail_mass", "partial"],
             "rows": tail_rows},
        ],
        "verdict": embed.verdict,
    }
    return report, 2 if embed.verdict == "DIVERGING" else 0


_STEP_TABLE_CAP = 64


def cmd_maximal(args):
    sf = _load(args.file)
    if sf.values is None:
        raise CliError(f"{args.file}: maximal analysis needs a value column")
    if sf.values.min() < 0.0:
        raise CliError(f"{args.file}: values must be nonnegative")
    window = None
    if args.window:
        try:
            a, b = (float(v) for v in args.window.split(","))
        except ValueError:
            raise CliError(f"bad window {args.window!r} (want A,B)") from None
        if not b > a:
            raise CliError("window must satisfy A < B")
        window = (a, b)
    if sf.mode == seqfile.MODE_CIRCLE:
        seq = _disk_sequence(sf, args.file)
        points, values, mode = seq, sf.values, "circle"
    else:
        points, values, mode = sf.halfplane_points(), sf.values, "halfplane"
    try:
        step = nontangential_max(points, values, args.aperture, mode)
        env = bump_envelope(points, values, args.aperture, mode)
        step_stats = weak_l1(step, window=window if mode == "halfplane" else None)
        env_stats = weak_l1(env, window=window if mode == "halfplane" else None)
    except ValueError as e:
        raise CliError(str(e)) from None
    cells = list(zip(step.edges.tolist(), step.values.tolist())) \
        if mode == "circle" else \
        list(zip(step.edges[:-1].tolist(), step.values.tolist()))
    rows = [[float(e), float(v)] for e, v in cells[:_STEP_TABLE_CAP]]
    report = {
        "command": "maximal",
        "input": args.file,
        "params": {"aperture": args.aperture, "mode": mode,
                   "window": None if window is None else list(window),
                   "format": args.format},
        "summary": {
            "n_points": len(sf),
            "step_cells": len(cells),
            "step_cells_truncated": len(cells) > _STEP_TABLE_CAP,
            "step_sup": float(step.sup()),
            "step_weak_l1": float(step_stats.sup),
            "step_weak_l1_level": float(step_stats.t_star),
            "step_vanishing": bool(step_stats.vanishing),
            "envelope_weak_l1": float(env_stats.sup),
            "envelope_weak_l1_level": float(env_stats.t_star),
            "envelope_vanishing": bool(env_stats.vanishing),
        },
        "tables": [{
            "name": "step_cells",
            "columns": ["edge", "value"],
            "rows": rows,
        }],
        "verdict": None,
    }
    return report, 0


def cmd_borichev(args):
    if args.chain is not None:
        if not 1 <= args.chain <= 24:
            raise CliError("chain length must lie in [1, 24]")
        weights = DyadicWeights({
            (n, 1): poisson_kernel(whitney_square(DyadicIndex(n, 1)).center, 0.0)
            for n in range(1, args.chain + 1)})
        rep = antichain_report(weights, args.depth)
        best = antichain_supremum(weights)
        label = f"chain:{args.chain}"
        n_nodes = len(weights.items)
    else:
        if args.file is None:
            raise CliError("pass a sequence file or --chain N")
        sf = _load(args.file)
        seq = _disk_sequence(sf, args.file)
        values = (np.asarray(sf.values, dtype=float) if sf.values is not None
                  else blaschke_defect(seq).values)
        try:
            weights = aggregate_sup(seq, values, args.depth or 30)
            rep = antichain_report(weights, args.depth)
            best = antichain_supremum(weights)
        except ValueError as e:
            raise CliError(str(e)) from None
        label = args.file
        n_nodes = len(seq)
    rows = [[int(d), float(v)] for d, v in zip(rep.depths, rep.values)]
    report = {
        "command": "borichev",
        "input": label,
        "params": {"depth": args.depth, "format": args.format},
        "summary": {
            "nodes": n_nodes,
            "supremum": float(best.value),
            "trend": rep.trend,
            "witness_size": len(best.witness),
            "witness": [[int(n), int(k)] for n, k in best.witness],
        },
        "tables": [{
            "name": "depth_sweep",
            "columns": ["depth", "supremum"],
            "rows": rows,
        }],
        "verdict": rep.trend,
    }
    return report, 2 if rep.trend == "GROWING" else 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="disklab",
                description="Diagnostics for point sequences and measures in the unit disk")
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=FORMATS, default="text")

    g = sub.add_parser("gen", help="write a generated configuration")
    g.add_argument("spec", help="name or name:key=value,... "
                                "(lists use ';', e.g. circles:alphas=0.5;0.25)")
    g.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    add_format(g)
    g.set_defaults(fn=cmd_gen)

    a = sub.add_parser("analyze", help="per-point defect and weight tables")
    a.add_argument("file")
    add_format(a)
    a.set_defaults(fn=cmd_analyze)

    m = sub.add_parser("majorant", help="grid majorant programs with certificates")
    m.add_argument("file")
    m.add_argument("--levels", default="6,7,8")
    m.add_argument("--tol-feas", type=float, default=1e-7)
    m.add_argument("--tol-gap", type=float, default=1e-6)
    add_format(m)
    m.set_defaults(fn=cmd_majorant)

    b = sub.add_parser("balayage", help="swept-mass profile and window tables")
    b.add_argument("source", help="file, circles:A1,A2,..., or ray:DENSITY[:GENERATIONS]")
    b.add_argument("--depth", type=int, default=12)
    add_format(b)
    b.set_defaults(fn=cmd_balayage)

    x = sub.add_parser("maximal", help="shadow maximal functions and weak-L1 statistics")
    x.add_argument("file")
    x.add_argument("--aperture", type=float, default=1.0)
    x.add_argument("--window", default=None, help="A,B measurement window (half-plane)")
    add_format(x)
    x.set_defaults(fn=cmd_maximal)

    d = sub.add_parser("borichev", help="antichain supremum over dyadic weights")
    d.add_argument("file", nargs="?", default=None)
    d.add_argument("--depth", type=int, default=None)
    d.add_argument("--chain", type=int, default=None,
                   help="use the built-in (n,1) kernel chain of this length")
    add_format(d)
    d.set_defaults(fn=cmd_borichev)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.fn(args)
    except CliError as e:
        print(f"disklab: error: {e}", file=sys.stderr)
        return 1
    except seqfile.ParseError as e:
        print(f"disklab: error: {e}", file=sys.stderr)
        return 1
    if report is not None:
        sys.stdout.write(emit(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
