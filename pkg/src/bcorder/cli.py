"""Command-line front end.

Subcommands: classify, dcurve, phase-map, region, symmetry, verify-paper.
Channel pairs come either from --bsc/--bec (crossover and erasure rates) or
from --channel1/--channel2 (JSON files, or the built-in name "paper6vi"
whose two halves are picked by flag position).  All output paths are
deterministic: the same parsed configuration always produces byte-identical
CSV and JSON, and SVG output is self-contained 800x600 with no external
references.

Exit codes: 0 on success (and on all checks passing), 1 when verify-paper
finds a failing check, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from xml.sax.saxutils import escape

import numpy as np

from .bscbec import BscBecPair, DegeneratePairError, PairTag, classify_pair, d_curve
from .channels import ChannelFormatError, Dmc, bec, bsc, detect_c_symmetry, load_channel, split_input_pair
from .classify import (
    test_degraded,
    test_dominant_c_symmetry,
    test_essentially_less_noisy,
    test_less_noisy,
    test_more_capable,
)
from .probcore import Dist, DomainError, binary_entropy
from .regions import (
    RegionFrontier,
    frontier_csv,
    outer_bound_eq_ob,
    outer_bound_vx,
    superposition_region,
    theorem1_region,
    theorem2_region,
)
from .verifysuite import check_names, run_suite

__all__ = ["RunConfig", "CliError", "build_parser", "main", "entrypoint"]

BUILTIN_PAIR = "paper6vi"
REGION_NAMES = ("ib", "theorem1", "theorem2", "ob", "vx")

SVG_W, SVG_H = 800, 600
_ML, _MR, _MT, _MB = 80, 24, 40, 56

_TAG_COLORS = {
    PairTag.DEGRADED_BSC_SIDE.value: "#4477aa",
    PairTag.LESS_NOISY_BEC_SIDE.value: "#66ccee",
    PairTag.MORE_CAPABLE_BEC_SIDE.value: "#228833",
    PairTag.ESSENTIALLY_LESS_NOISY_BSC_SIDE.value: "#ccbb44",
}
_SERIES_COLORS = ("#4477aa", "#ee6677", "#228833", "#ccbb44", "#aa3377")


class CliError(ValueError):
    """Invalid command-line input; maps to exit code 2."""


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """One validated invocation: exactly one command plus its parameters."""

    command: str
    bsc_p: float | None = None
    bec_e: float | None = None
    channel1: str | None = None
    channel2: str | None = None
    p: float | None = None
    e: float | None = None
    samples: int = 1001
    grid: int = 50
    tol: float = 1e-9
    seed: int = 0
    out: str | None = None
    fmt: str = "text"
    which: tuple[str, ...] = ()
    input_class: str | None = None
    normalize: bool = False
    list_checks: bool = False
    check: str | None = None
    tolerance: float | None = None


# ---------------------------------------------------------------------------
# argument parsing


def _add_pair_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--bsc", dest="bsc_p", type=float, metavar="P", help="crossover rate of a binary symmetric channel")
    sp.add_argument("--bec", dest="bec_e", type=float, metavar="E", help="erasure rate of a binary erasure channel")
    sp.add_argument("--channel1", metavar="CHAN", help=f"channel file (JSON) or builtin name '{BUILTIN_PAIR}'")
    sp.add_argument("--channel2", metavar="CHAN", help=f"channel file (JSON) or builtin name '{BUILTIN_PAIR}'")
    sp.add_argument("--normalize", action="store_true", help="renormalize near-stochastic rows on load")


def _add_common(sp: argparse.ArgumentParser, formats: tuple[str, ...], default_fmt: str, grid: int) -> None:
    sp.add_argument("--grid", type=int, default=grid, metavar="N", help="resolution knob (sweep step is 1/N)")
    sp.add_argument("--tol", type=float, default=1e-9, metavar="X", help="verdict tolerance")
    sp.add_argument("--seed", type=int, default=0, metavar="N", help="seed for any randomized search")
    sp.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    sp.add_argument("--format", dest="fmt", choices=formats, default=default_fmt, help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcorder",
        description="orderings, regions and reference checks for two-receiver broadcast channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="run the ordering tests on a channel pair")
    _add_pair_flags(sp)
    _add_common(sp, ("text", "json"), "text", 50)

    sp = sub.add_parser("dcurve", help="sample the gap curve of a (p, e) pair")
    sp.add_argument("--p", type=float, required=True, metavar="P", help="crossover rate")
    sp.add_argument("--e", type=float, required=True, metavar="E", help="erasure rate")
    sp.add_argument("--samples", type=int, default=1001, metavar="N", help="number of sample points")
    _add_common(sp, ("csv", "svg", "json"), "csv", 50)

    sp = sub.add_parser("phase-map", help="regime map over the (p, e) rectangle")
    _add_common(sp, ("csv", "svg", "json"), "csv", 50)

    sp = sub.add_parser("region", help="rate-region frontiers for a channel pair")
    _add_pair_flags(sp)
    sp.add_argument(
        "--which",
        default="ib,ob",
        metavar="LIST",
        help="comma list from: " + ",".join(REGION_NAMES),
    )
    sp.add_argument(
        "--class",
        dest="input_class",
        metavar="CLASS",
        help="input-law class: 'uniform', 'uniform01', or a JSON file of laws",
    )
    _add_common(sp, ("csv", "svg", "json"), "csv", 50)

    sp = sub.add_parser("symmetry", help="cyclic-symmetry report for one or two channels")
    _add_pair_flags(sp)
    _add_common(sp, ("text", "json"), "text", 50)

    sp = sub.add_parser("verify-paper", help="run the built-in golden-value check suite")
    sp.add_argument("--list", dest="list_checks", action="store_true", help="list check names and exit")
    sp.add_argument("--check", metavar="NAME", help="run a single named check")
    sp.add_argument("--tolerance", type=float, metavar="X", help="override every selected check's tolerance")
    _add_common(sp, ("text", "json"), "text", 32)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    values = {k: v for k, v in vars(args).items() if k in fields and v is not None}
    if "which" in values and isinstance(values["which"], str):
        values["which"] = tuple(s.strip() for s in values["which"].split(",") if s.strip())
    return RunConfig(**values)


def _validate(cfg: RunConfig) -> None:
    if cfg.grid < 2:
        raise CliError("--grid must be at least 2")
    if cfg.tol <= 0:
        raise CliError("--tol must be positive")
    if cfg.command == "dcurve" and cfg.samples < 2:
        raise CliError("--samples must be at least 2")
    if cfg.command == "region":
        bad = [w for w in cfg.which if w not in REGION_NAMES]
        if bad:
            raise CliError(f"unknown region name(s): {', '.join(bad)}; choose from {', '.join(REGION_NAMES)}")
        if not cfg.which:
            raise CliError("--which selected no regions")
    if cfg.command in ("classify", "region"):
        has_rates = cfg.bsc_p is not None and cfg.bec_e is not None
        has_files = cfg.channel1 is not None and cfg.channel2 is not None
        mixed = (cfg.bsc_p is not None or cfg.bec_e is not None) and (
            cfg.channel1 is not None or cfg.channel2 is not None
        )
        if mixed or not (has_rates or has_files):
            raise CliError("give either --bsc P with --bec E, or --channel1 with --channel2")
    if cfg.command == "symmetry":
        if cfg.bsc_p is None and cfg.bec_e is None and cfg.channel1 is None and cfg.channel2 is None:
            raise CliError("give at least one channel (--bsc, --bec, --channel1 or --channel2)")
    if cfg.command == "verify-paper" and cfg.check is not None and cfg.check not in check_names():
        raise CliError(f"unknown check name {cfg.check!r}; use --list to see the available names")


# ---------------------------------------------------------------------------
# channel resolution and output plumbing


def _load_channel_source(source: str, role: int, normalize: bool) -> Dmc:
    if source == BUILTIN_PAIR:
        y1, y2 = split_input_pair()
        return y1 if role == 1 else y2
    return load_channel(source, normalize=normalize)


def _resolve_pair(cfg: RunConfig) -> tuple[Dmc, Dmc, str, str]:
    """Channel pair plus display names, in flag order (channel 1 first)."""
    if cfg.channel1 is not None:
        c1 = _load_channel_source(cfg.channel1, 1, cfg.normalize)
        c2 = _load_channel_source(cfg.channel2, 2, cfg.normalize)
        n1 = f"{cfg.channel1} (as channel 1)" if cfg.channel1 == BUILTIN_PAIR else cfg.channel1
        n2 = f"{cfg.channel2} (as channel 2)" if cfg.channel2 == BUILTIN_PAIR else cfg.channel2
        return c1, c2, n1, n2
    _check_rates(cfg.bsc_p, cfg.bec_e)
    return bsc(cfg.bsc_p), bec(cfg.bec_e), "BSC side", "BEC side"


def _check_rates(p: float, e: float) -> None:
    if not 0.0 <= p <= 0.5:
        raise CliError("--bsc must lie in [0, 0.5]")
    if not 0.0 <= e <= 1.0:
        raise CliError("--bec must lie in [0, 1]")


def _fmt9(v: float) -> str:
    s = f"{v:.9f}"
    return "0.000000000" if s == "-0.000000000" else s


def _emit(cfg: RunConfig, payload: str) -> None:
    if cfg.out is None:
        sys.stdout.write(payload)
    else:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(payload)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, Dist):
        return [float(x) for x in v.probs]
    if isinstance(v, Dmc):
        return {"rows": v.rows.tolist(), "output_labels": list(v.output_labels)}
    if v is None or isinstance(v, (str, bool)):
        return v
    return str(v)


def _json_doc(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# SVG plumbing (self-contained, fixed 800x600 viewport)


def _xmap(x: float, x0: float, x1: float) -> float:
    return _ML + (x - x0) / (x1 - x0) * (SVG_W - _ML - _MR)


def _ymap(y: float, y0: float, y1: float) -> float:
    return SVG_H - _MB - (y - y0) / (y1 - y0) * (SVG_H - _MT - _MB)


def _svg_open(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" '
        f'viewBox="0 0 {SVG_W} {SVG_H}" font-family="sans-serif">',
        f'<rect x="0" y="0" width="{SVG_W}" height="{SVG_H}" fill="white"/>',
        f'<text x="{SVG_W / 2:.1f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>',
    ]


def _svg_axes(x0, x1, y0, y1, xlabel: str, ylabel: str) -> list[str]:
    parts = [
        f'<rect x="{_ML}" y="{_MT}" width="{SVG_W - _ML - _MR}" height="{SVG_H - _MT - _MB}" '
        'fill="none" stroke="#222222" stroke-width="1"/>'
    ]
    for i in range(5):
        xv = x0 + (x1 - x0) * i / 4.0
        yv = y0 + (y1 - y0) * i / 4.0
        px = _xmap(xv, x0, x1)
        py = _ymap(yv, y0, y1)
        parts.append(
            f'<line x1="{px:.1f}" y1="{SVG_H - _MB}" x2="{px:.1f}" y2="{SVG_H - _MB + 5}" stroke="#222222"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{SVG_H - _MB + 20}" text-anchor="middle" font-size="12">{xv:.3g}</text>'
        )
        parts.append(f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" y2="{py:.1f}" stroke="#222222"/>')
        parts.append(
            f'<text x="{_ML - 8}" y="{py + 4:.1f}" text-anchor="end" font-size="12">{yv:.3g}</text>'
        )
    parts.append(
        f'<text x="{(_ML + SVG_W - _MR) / 2:.1f}" y="{SVG_H - 12}" text-anchor="middle" '
        f'font-size="14">{escape(xlabel)}</text>'
    )
    parts.append(
        f'<text x="20" y="{(_MT + SVG_H - _MB) / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 20 {(_MT + SVG_H - _MB) / 2:.1f})">{escape(ylabel)}</text>'
    )
    return parts


def _svg_polyline(xs, ys, x0, x1, y0, y1, color: str, width: float = 2.0, dash: str | None = None) -> str:
    pts = " ".join(f"{_xmap(x, x0, x1):.2f},{_ymap(y, y0, y1):.2f}" for x, y in zip(xs, ys))
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"{extra}/>'


def _svg_legend(entries: list[tuple[str, str]]) -> list[str]:
    parts = []
    x = SVG_W - _MR - 240
    y = _MT + 14
    for label, color in entries:
        parts.append(f'<rect x="{x}" y="{y - 9}" width="18" height="9" fill="{color}"/>')
        parts.append(f'<text x="{x + 24}" y="{y}" font-size="12">{escape(label)}</text>')
        y += 18
    return parts


def _svg_close(parts: list[str]) -> str:
    return "\n".join(parts + ["</svg>"]) + "\n"


# ---------------------------------------------------------------------------
# classify


def _finest_class(res: dict, n1: str, n2: str) -> str:
    d21, d12 = res["degraded_2_wrt_1"].holds, res["degraded_1_wrt_2"].holds
    if d21 and d12:
        return f"degraded in both directions ({n1} and {n2} are equivalent up to postprocessing)"
    if d21:
        return f"degraded ({n2} degraded w.r.t. {n1})"
    if d12:
        return f"degraded ({n1} degraded w.r.t. {n2})"
    l1, l2 = res["less_noisy_1"].holds, res["less_noisy_2"].holds
    if l1 or l2:
        return f"less noisy ({n1 if l1 else n2})"
    m1, m2 = res["more_capable_1"].holds, res["more_capable_2"].holds
    if m1 or m2:
        return f"more capable ({n1 if m1 else n2})"
    e1, e2 = res["essentially_less_noisy_1"], res["essentially_less_noisy_2"]
    if e1.holds or e2.holds:
        side = n1 if e1.holds else n2
        cls = (e1 if e1.holds else e2).diagnostics.get("sufficient_class", "uniform")
        return f"essentially less noisy ({side}), sufficient class: {cls}"
    return "none established at the tested resolution"


def cmd_classify(cfg: RunConfig) -> int:
    c1, c2, n1, n2 = _resolve_pair(cfg)
    step = 1.0 / cfg.grid
    res = {
        "degraded_2_wrt_1": test_degraded(c1, c2, tol=cfg.tol),
        "degraded_1_wrt_2": test_degraded(c2, c1, tol=cfg.tol),
        "less_noisy_1": test_less_noisy(c2, c1, step=step),
        "less_noisy_2": test_less_noisy(c1, c2, step=step),
        "more_capable_1": test_more_capable(c1, c2, step=step),
        "more_capable_2": test_more_capable(c2, c1, step=step),
        "essentially_less_noisy_1": test_essentially_less_noisy(c1, c2, step=step),
        "essentially_less_noisy_2": test_essentially_less_noisy(c2, c1, step=step),
    }
    finest = _finest_class(res, n1, n2)
    if cfg.fmt == "json":
        doc = {
            "channel1": {"name": n1, "inputs": c1.input_size, "outputs": c1.output_size},
            "channel2": {"name": n2, "inputs": c2.input_size, "outputs": c2.output_size},
            "grid": cfg.grid,
            "tol": cfg.tol,
            "tests": {
                k: {"outcome": v.outcome.value, "diagnostics": v.diagnostics} for k, v in res.items()
            },
            "finest_class": finest,
        }
        _emit(cfg, _json_doc(doc))
        return 0
    labels = {
        "degraded_2_wrt_1": f"{n2} degraded w.r.t. {n1}",
        "degraded_1_wrt_2": f"{n1} degraded w.r.t. {n2}",
        "less_noisy_1": f"{n1} less noisy",
        "less_noisy_2": f"{n2} less noisy",
        "more_capable_1": f"{n1} more capable",
        "more_capable_2": f"{n2} more capable",
        "essentially_less_noisy_1": f"{n1} essentially less noisy",
        "essentially_less_noisy_2": f"{n2} essentially less noisy",
    }
    lines = [
        f"channel 1: {n1} ({c1.input_size} inputs, {c1.output_size} outputs)",
        f"channel 2: {n2} ({c2.input_size} inputs, {c2.output_size} outputs)",
    ]
    for key, verdict in res.items():
        lines.append(f"{labels[key]}: {verdict.outcome.value}")
    lines.append(f"finest class: {finest}")
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# dcurve


def cmd_dcurve(cfg: RunConfig) -> int:
    try:
        pair = BscBecPair(cfg.p, cfg.e)
    except DegeneratePairError as exc:
        raise CliError(str(exc)) from exc
    pts = d_curve(pair, samples=cfg.samples)
    if cfg.fmt == "csv":
        rows = ["x,D"] + [f"{x:.9f},{_fmt9(d)}" for x, d in pts]
        _emit(cfg, "\n".join(rows) + "\n")
    elif cfg.fmt == "json":
        _emit(cfg, _json_doc({"p": cfg.p, "e": cfg.e, "samples": cfg.samples, "points": pts}))
    else:
        ys = [d for _, d in pts]
        lo, hi = min(min(ys), 0.0), max(max(ys), 0.0)
        pad = 0.1 * max(hi - lo, 1e-12)
        y0, y1 = lo - pad, hi + pad
        parts = _svg_open(f"gap curve, p = {cfg.p:g}, e = {cfg.e:g}")
        parts += _svg_axes(0.0, 1.0, y0, y1, "input law parameter x", "D(x)")
        parts.append(_svg_polyline([0.0, 1.0], [0.0, 0.0], 0.0, 1.0, y0, y1, "#999999", 1.0, "4,4"))
        parts.append(_svg_polyline([x for x, _ in pts], ys, 0.0, 1.0, y0, y1, "#4477aa"))
        _emit(cfg, _svg_close(parts))
    return 0


# ---------------------------------------------------------------------------
# phase-map


def cmd_phase_map(cfg: RunConfig) -> int:
    n = cfg.grid
    ps = np.linspace(0.0, 0.5, n)
    es = np.linspace(0.0, 1.0, n)
    cells = []
    for p in ps:
        for e in es:
            cls = classify_pair(BscBecPair(float(p), float(e)))
            cells.append((float(p), float(e), cls.tag.value, int(cls.boundary)))
    if cfg.fmt == "csv":
        rows = ["p,e,tag,boundary"] + [f"{p:.9f},{e:.9f},{tag},{b}" for p, e, tag, b in cells]
        _emit(cfg, "\n".join(rows) + "\n")
    elif cfg.fmt == "json":
        _emit(
            cfg,
            _json_doc(
                {
                    "grid": n,
                    "cells": [{"p": p, "e": e, "tag": tag, "boundary": b} for p, e, tag, b in cells],
                }
            ),
        )
    else:
        parts = _svg_open("ordering regimes over (p, e)")
        cw = (SVG_W - _ML - _MR) / n
        ch = (SVG_H - _MT - _MB) / n
        for p, e, tag, _ in cells:
            px = _xmap(p, 0.0, 0.5) - cw / 2.0
            py = _ymap(e, 0.0, 1.0) - ch / 2.0
            parts.append(
                f'<rect x="{px:.2f}" y="{py:.2f}" width="{cw:.2f}" height="{ch:.2f}" '
                f'fill="{_TAG_COLORS[tag]}"/>'
            )
        dense = np.linspace(0.0, 0.5, 201)
        for curve, dash in ((2.0 * dense, None), (4.0 * dense * (1.0 - dense), "6,3"), (binary_entropy(dense), "2,3")):
            keep = curve <= 1.0 + 1e-12
            parts.append(
                _svg_polyline(dense[keep], np.clip(curve[keep], 0.0, 1.0), 0.0, 0.5, 0.0, 1.0, "#111111", 1.5, dash)
            )
        parts += _svg_axes(0.0, 0.5, 0.0, 1.0, "crossover rate p", "erasure rate e")
        parts += _svg_legend(
            [
                ("degraded (e <= 2p)", _TAG_COLORS[PairTag.DEGRADED_BSC_SIDE.value]),
                ("less noisy (e <= 4p(1-p))", _TAG_COLORS[PairTag.LESS_NOISY_BEC_SIDE.value]),
                ("more capable (e <= h(p))", _TAG_COLORS[PairTag.MORE_CAPABLE_BEC_SIDE.value]),
                ("essentially less noisy", _TAG_COLORS[PairTag.ESSENTIALLY_LESS_NOISY_BSC_SIDE.value]),
            ]
        )
        _emit(cfg, _svg_close(parts))
    return 0


# ---------------------------------------------------------------------------
# region


def _load_input_class(source: str, m: int, normalize: bool) -> list[Dist]:
    if source == "uniform":
        return [Dist.uniform(m)]
    if source == "uniform01":
        if m < 2:
            raise CliError("uniform01 needs an input alphabet of size at least 2")
        probs = np.zeros(m)
        probs[0] = probs[1] = 0.5
        return [Dist(probs)]
    try:
        with open(source) as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise CliError(f"class file not found: {source}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"class file {source} is not valid JSON: {exc}") from exc
    members = data["members"] if isinstance(data, dict) and "members" in data else data
    if not isinstance(members, list) or not members:
        raise CliError(f"class file {source} must hold a nonempty list of input laws")
    out = []
    for row in members:
        arr = np.asarray(row, dtype=float)
        if arr.ndim != 1 or arr.size != m:
            raise CliError(f"class member of length {arr.size} does not match input size {m}")
        if normalize:
            total = arr.sum()
            if total <= 0:
                raise CliError("class member has nonpositive mass")
            arr = arr / total
        try:
            out.append(Dist(arr))
        except DomainError as exc:
            raise CliError(f"class file {source}: {exc}") from exc
    return out


def _resolve_region_pair(cfg: RunConfig) -> tuple[Dmc, Dmc, str, str]:
    """(dominant, weak) plus names; --bsc/--bec pick dominance by regime."""
    if cfg.channel1 is not None:
        return _resolve_pair(cfg)
    _check_rates(cfg.bsc_p, cfg.bec_e)
    chan_s, chan_b = bsc(cfg.bsc_p), bec(cfg.bec_e)
    tag = classify_pair(BscBecPair(cfg.bsc_p, cfg.bec_e)).tag
    if tag is PairTag.ESSENTIALLY_LESS_NOISY_BSC_SIDE:
        return chan_s, chan_b, "BSC side", "BEC side"
    return chan_b, chan_s, "BEC side", "BSC side"


def cmd_region(cfg: RunConfig) -> int:
    a, b, n1, n2 = _resolve_region_pair(cfg)
    if a.input_size != b.input_size:
        raise CliError("the two channels must share an input alphabet")
    m = a.input_size
    step = 1.0 / cfg.grid
    members = _load_input_class(cfg.input_class, m, cfg.normalize) if cfg.input_class else None
    frontiers: dict[str, RegionFrontier] = {}
    for name in cfg.which:
        if name == "ib":
            constraint = None
            if members is not None:
                if len(members) != 1:
                    raise CliError("ib accepts a --class with exactly one member (a marginal constraint)")
                constraint = members[0]
            frontiers[name] = superposition_region(a, b, marginal_constraint=constraint, step=step)
        elif name == "theorem1":
            frontiers[name] = theorem1_region(a, b, members or [Dist.uniform(m)], step=step)
        elif name == "theorem2":
            frontiers[name] = theorem2_region(a, b, members or [Dist.uniform(m)], step=step)
        elif name == "ob":
            frontiers[name] = outer_bound_eq_ob(a, b, step=step)
        else:
            frontiers[name] = outer_bound_vx(a, b, step=step)
    print(f"dominant: {n1}; weak: {n2}; step {step:g}", file=sys.stderr)
    if cfg.fmt == "csv":
        if len(frontiers) == 1:
            _emit(cfg, frontier_csv(next(iter(frontiers.values()))))
        else:
            rows = ["which,r1,r2"]
            for name in cfg.which:
                rows += [f"{name},{pt.r1:.9f},{pt.r2:.9f}" for pt in frontiers[name].points]
            _emit(cfg, "\n".join(rows) + "\n")
    elif cfg.fmt == "json":
        doc = {
            "dominant": n1,
            "weak": n2,
            "step": step,
            "frontiers": {
                name: {
                    "points": [[pt.r1, pt.r2] for pt in fr.points],
                    "max_r1": fr.max_r1,
                    "max_r2": fr.max_r2,
                    "diagnostics": fr.diagnostics,
                }
                for name, fr in frontiers.items()
            },
        }
        _emit(cfg, _json_doc(doc))
    else:
        x1 = max(fr.max_r1 for fr in frontiers.values()) * 1.08 + 1e-9
        y1 = max(fr.max_r2 for fr in frontiers.values()) * 1.08 + 1e-9
        parts = _svg_open(f"rate frontiers ({n1} dominant)")
        parts += _svg_axes(0.0, x1, 0.0, y1, "r1 (dominant receiver)", "r2 (weak receiver)")
        legend = []
        for i, name in enumerate(cfg.which):
            fr = frontiers[name]
            color = _SERIES_COLORS[i % len(_SERIES_COLORS)]
            xs = [pt.r1 for pt in fr.points]
            ys = [pt.r2 for pt in fr.points]
            if len(xs) == 1:
                xs, ys = [0.0, xs[0]], [ys[0], ys[0]]
            parts.append(_svg_polyline(xs, ys, 0.0, x1, 0.0, y1, color))
            legend.append((name, color))
        parts += _svg_legend(legend)
        _emit(cfg, _svg_close(parts))
    return 0


# ---------------------------------------------------------------------------
# symmetry


def cmd_symmetry(cfg: RunConfig) -> int:
    chans: list[tuple[str, Dmc]] = []
    if cfg.channel1 is not None:
        chans.append((cfg.channel1, _load_channel_source(cfg.channel1, 1, cfg.normalize)))
    if cfg.channel2 is not None:
        chans.append((cfg.channel2, _load_channel_source(cfg.channel2, 2, cfg.normalize)))
    if cfg.bsc_p is not None:
        if not 0.0 <= cfg.bsc_p <= 0.5:
            raise CliError("--bsc must lie in [0, 0.5]")
        chans.append((f"BSC({cfg.bsc_p:g})", bsc(cfg.bsc_p)))
    if cfg.bec_e is not None:
        if not 0.0 <= cfg.bec_e <= 1.0:
            raise CliError("--bec must lie in [0, 1]")
        chans.append((f"BEC({cfg.bec_e:g})", bec(cfg.bec_e)))
    report: dict = {"channels": []}
    for name, chan in chans:
        try:
            wit = detect_c_symmetry(chan)
        except DomainError as exc:
            report["channels"].append({"name": name, "status": f"search unavailable: {exc}"})
            continue
        if wit is None:
            report["channels"].append({"name": name, "status": "no cyclic symmetry found"})
        else:
            report["channels"].append(
                {"name": name, "status": "c-symmetric", "generator": list(wit.generator)}
            )
    if len(chans) == 2:
        dom = test_dominant_c_symmetry(chans[0][1], chans[1][1], step=1.0 / cfg.grid)
        report["uniform_dominance"] = {
            "first_over_second": dom.outcome.value,
            "diagnostics": dom.diagnostics,
        }
    if cfg.fmt == "json":
        _emit(cfg, _json_doc(report))
        return 0
    lines = []
    for entry in report["channels"]:
        if "generator" in entry:
            gen = ", ".join(str(g) for g in entry["generator"])
            lines.append(f"{entry['name']}: c-symmetric, generator ({gen})")
        else:
            lines.append(f"{entry['name']}: {entry['status']}")
    if "uniform_dominance" in report:
        lines.append(
            f"uniform-input dominance of {chans[0][0]} over {chans[1][0]}: "
            + report["uniform_dominance"]["first_over_second"]
        )
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# verify-paper


def cmd_verify_paper(cfg: RunConfig) -> int:
    if cfg.list_checks:
        _emit(cfg, "\n".join(check_names()) + "\n")
        return 0
    report = run_suite(grid=cfg.grid, seed=cfg.seed, only=cfg.check, tolerance=cfg.tolerance)
    if cfg.fmt == "json":
        _emit(cfg, report.to_json())
    else:
        _emit(cfg, "\n".join(report.text_lines()) + "\n")
    return 0 if report.all_pass else 1


# ---------------------------------------------------------------------------


_DISPATCH = {
    "classify": cmd_classify,
    "dcurve": cmd_dcurve,
    "phase-map": cmd_phase_map,
    "region": cmd_region,
    "symmetry": cmd_symmetry,
    "verify-paper": cmd_verify_paper,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = _config_from_args(args)
        _validate(cfg)
        return _DISPATCH[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ChannelFormatError, DomainError, DegeneratePairError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
