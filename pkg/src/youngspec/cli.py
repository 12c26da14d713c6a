"""Command-line interface: seeded, reproducible runs with JSON/CSV output.

Every stochastic subcommand requires an explicit seed; rerunning any
command with the same configuration reproduces the numerical payload
byte for byte (only the wall-clock provenance field differs), including
under different --jobs settings.

Exit codes: 0 success, 2 configuration/validation error, 3 numerical
failure propagated from the library.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .combinatorics import (
    count_r_plane_trees,
    dh_moment,
    gen_catalan,
    limit_moment,
)
from .errors import ConfigError, YoungSpecError
from .limitlaw import (
    beta_product_moment,
    beta_product_samples,
    cdf_grid,
    contour_moment,
    density_grid,
    dh_density,
    dh_cdf,
    edge_exponent_fit,
    support_edge,
)
from .matrices import ENTRY_KINDS, EntryDistribution, truncate_standardize
from .partitions import Partition, balance_ratio, make_partition, render, staircase
from .spectra import (
    Histogram,
    StepCDF,
    ensemble_spectra,
    histogram,
    ks_distance,
    levy_distance,
    shape_ensemble_spectra,
    Spectrum,
)
from .streams import substream

STOCHASTIC = {"simulate", "sample-law", "triangular"}


@dataclass
class RunConfig:
    """Resolved configuration of one CLI invocation."""

    subcommand: str
    parts: list[int] | None = None
    r: int | None = None
    dilation: int | None = None
    entries: str = "complex-gaussian"
    trunc: float | None = None
    replicas: int | None = None
    kmax: int | None = None
    bins: int | None = None
    range: list[float] | None = None
    grid: int | None = None
    tol: float | None = None
    samples: int | None = None
    size: int | None = None
    window: list[float] | None = None
    seed: int | None = None
    jobs: int = 1
    out: str | None = None
    format: str = "json"
    oracle_trees: bool = False
    tree_max_k: int | None = None
    vertices: int | None = None


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_float_pair(text: str) -> list[float]:
    toks = text.split(",")
    if len(toks) != 2:
        raise ConfigError(f"expected lo,hi — got {text!r}")
    return [float(toks[0]), float(toks[1])]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="youngspec",
        description="Diagram-shaped random matrix simulation and limit-law evaluation",
    )
    parser.add_argument("--config", help="JSON file with flag defaults (same keys as the config echo)")
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("shape", help="render a diagram and its basic statistics")
    p.add_argument("--parts", type=_parse_int_list)
    p.add_argument("--dilation", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("moments", help="exact moment table of the order-r limit law")
    p.add_argument("--r", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--oracle-trees", action="store_true", dest="oracle_trees")
    p.add_argument("--tree-max-k", type=int, dest="tree_max_k")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("trees", help="count coloured plane trees by brute force")
    p.add_argument("--r", type=int)
    p.add_argument("--vertices", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("simulate", help="ensemble run of a block- or diagram-shaped model")
    p.add_argument("--r", type=int)
    p.add_argument("--parts", type=_parse_int_list)
    p.add_argument("--dilation", type=int)
    p.add_argument("--entries", choices=ENTRY_KINDS, default="complex-gaussian")
    p.add_argument("--trunc", type=float)
    p.add_argument("--replicas", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--range", type=_parse_float_pair)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("law", help="density/CDF grids and moment cross-checks of the limit law")
    p.add_argument("--r", type=int)
    p.add_argument("--grid", type=int, default=768)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sample-law", help="Monte Carlo draws of the limit law vs its density")
    p.add_argument("--r", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("triangular", help="staircase-shaped simulation against the triangular limit law")
    p.add_argument("--size", type=int)
    p.add_argument("--replicas", type=int)
    p.add_argument("--entries", choices=ENTRY_KINDS, default="complex-gaussian")
    p.add_argument("--seed", type=int)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--window", type=_parse_float_pair, default=[0.2, 2.5])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    return parser


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigError(msg)


def _validate(cfg: RunConfig) -> None:
    sc = cfg.subcommand
    _require(sc is not None, "no subcommand given")
    if sc in STOCHASTIC:
        _require(cfg.seed is not None, f"{sc} requires --seed (no clock fallback)")
        _require(cfg.seed >= 0, "--seed must be nonnegative")
        _require(cfg.jobs >= 1, "--jobs must be >= 1")
    if sc == "shape":
        _require(cfg.parts is not None, "shape requires --parts")
        _require(cfg.dilation is None or cfg.dilation >= 1, "--dilation must be >= 1")
    elif sc == "moments":
        _require(cfg.r is not None and cfg.r >= 1, "moments requires --r >= 1")
        _require(cfg.kmax is not None and cfg.kmax >= 0, "moments requires --kmax >= 0")
    elif sc == "trees":
        _require(cfg.r is not None and cfg.r >= 1, "trees requires --r >= 1")
        _require(cfg.vertices is not None and cfg.vertices >= 1, "trees requires --vertices >= 1")
    elif sc == "simulate":
        _require((cfg.r is not None) != (cfg.parts is not None),
                 "simulate requires exactly one of --r / --parts")
        if cfg.r is not None:
            _require(cfg.r >= 1, "--r must be >= 1")
        _require(cfg.dilation is not None and cfg.dilation >= 1, "simulate requires --dilation >= 1")
        _require(cfg.replicas is not None and cfg.replicas >= 1, "simulate requires --replicas >= 1")
        _require(cfg.kmax >= 0, "--kmax must be >= 0")
        _require(cfg.bins >= 1, "--bins must be >= 1")
        if cfg.range is not None:
            _require(cfg.range[0] < cfg.range[1], "--range lo must be < hi")
        if cfg.trunc is not None:
            _require(cfg.trunc > 0, "--trunc must be positive")
    elif sc == "law":
        _require(cfg.r is not None and cfg.r >= 1, "law requires --r >= 1")
        _require(cfg.grid >= 16, "--grid must be >= 16")
        _require(cfg.tol > 0, "--tol must be positive")
    elif sc == "sample-law":
        _require(cfg.r is not None and cfg.r >= 1, "sample-law requires --r >= 1")
        _require(cfg.samples is not None and cfg.samples >= 1, "sample-law requires --samples >= 1")
        _require(cfg.bins >= 1, "--bins must be >= 1")
    elif sc == "triangular":
        _require(cfg.size is not None and cfg.size >= 1, "triangular requires --size >= 1")
        _require(cfg.replicas is not None and cfg.replicas >= 1, "triangular requires --replicas >= 1")
        _require(cfg.bins >= 1, "--bins must be >= 1")
        _require(cfg.window[0] < cfg.window[1], "--window lo must be < hi")


def _hist_payload(h: Histogram) -> dict:
    return {
        "edges": h.edges.tolist(),
        "counts": h.counts.tolist(),
        "density": h.density.tolist(),
        "below": h.below,
        "above": h.above,
        "total": h.total,
    }


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# -- subcommand handlers -------------------------------------------------


def _run_shape(cfg: RunConfig) -> dict:
    lam = make_partition(cfg.parts)
    shown = lam.dilate(cfg.dilation) if cfg.dilation else lam
    out = {
        "parts": list(lam.parts),
        "length": lam.length(),
        "weight": lam.weight(),
        "conjugate": list(lam.conjugate().parts),
        "diagram": render(shown),
    }
    if lam:
        out["balance_ratio"] = _frac(balance_ratio(lam, cfg.dilation or 1))
        out["balance_ratio_float"] = float(balance_ratio(lam, cfg.dilation or 1))
    if cfg.dilation:
        out["dilation"] = cfg.dilation
        out["dilated_parts"] = list(shown.parts)
        out["dilated_weight"] = shown.weight()
    return out


def _run_moments(cfg: RunConfig) -> dict:
    rows = []
    tree_cap = cfg.tree_max_k if cfg.tree_max_k is not None else 6
    for k in range(cfg.kmax + 1):
        mk = limit_moment(cfg.r, k)
        row = {
            "k": k,
            "gen_catalan": gen_catalan(cfg.r, k),
            "moment": _frac(mk),
            "moment_float": float(mk),
        }
        if cfg.oracle_trees and k <= tree_cap:
            row["tree_count"] = count_r_plane_trees(cfg.r, k + 1)
        rows.append(row)
    return {"r": cfg.r, "kmax": cfg.kmax, "table": rows}


def _run_trees(cfg: RunConfig) -> dict:
    return {
        "r": cfg.r,
        "vertices": cfg.vertices,
        "count": count_r_plane_trees(cfg.r, cfg.vertices),
    }


def _entry_distribution(cfg: RunConfig) -> EntryDistribution:
    dist = EntryDistribution(cfg.entries)
    if cfg.trunc is not None:
        dist = truncate_standardize(dist, cfg.trunc)
    return dist


def _run_simulate(cfg: RunConfig) -> dict:
    dist = _entry_distribution(cfg)
    if cfg.r is not None:
        base = staircase(cfg.r)
        edge = float(support_edge(cfg.r))
    else:
        base = make_partition(cfg.parts)
        edge = None
    spectra = ensemble_spectra(base, cfg.dilation, dist, cfg.replicas, cfg.seed, jobs=cfg.jobs)
    pooled = np.concatenate(spectra)

    table = np.empty((cfg.replicas, cfg.kmax + 1))
    for i, vals in enumerate(spectra):
        for k in range(cfg.kmax + 1):
            table[i, k] = 1.0 if k == 0 else float(np.mean(vals**k))
    moments = [
        {
            "k": k,
            "mean": float(table[:, k].mean()),
            "variance": float(table[:, k].var(ddof=1)) if cfg.replicas > 1 else 0.0,
        }
        for k in range(cfg.kmax + 1)
    ]

    rng = cfg.range if cfg.range is not None else [0.0, 1.05 * edge if edge else float(pooled.max()) * 1.05]
    hist = histogram(Spectrum(values=pooled, dim=pooled.size), cfg.bins, tuple(rng))

    results = {
        "shape": list(base.parts),
        "dilation": cfg.dilation,
        "matrix_dim": int(base.dilate(cfg.dilation).length()),
        "moments": moments,
        "histogram": _hist_payload(hist),
        "pooled_count": int(pooled.size),
        "levy_to_limit": None,
        "ks_to_limit": None,
    }
    if cfg.r is not None:
        limit = cdf_grid(cfg.r)
        ecdf = StepCDF(pooled)
        results["levy_to_limit"] = float(levy_distance(ecdf, limit))
        results["ks_to_limit"] = float(ks_distance(ecdf, limit))
        results["r"] = cfg.r
        results["limit_moments"] = [float(limit_moment(cfg.r, k)) for k in range(cfg.kmax + 1)]
    return results


def _run_law(cfg: RunConfig) -> dict:
    r = cfg.r
    grid = density_grid(r, n=cfg.grid, tol=cfg.tol)
    gcdf = grid.cdf()
    edge = support_edge(r)
    checks = []
    for k in range(cfg.kmax + 1):
        exact = limit_moment(r, k)
        bp = beta_product_moment(r, k)
        cm = contour_moment(r, k)
        gm = grid.moment(k)
        fex = float(exact)
        checks.append({
            "k": k,
            "exact": _frac(exact),
            "beta_product": _frac(bp),
            "beta_product_matches": bp == exact,
            "contour": cm.value,
            "contour_rel_err": abs(cm.value - fex) / fex,
            "grid": gm,
            "grid_rel_err": abs(gm - fex) / fex,
        })
    return {
        "r": r,
        "edge": {"exact": _frac(edge), "float": float(edge)},
        "grid": {"x": grid.x.tolist(), "density": grid.f.tolist(), "abs_err": grid.err.tolist()},
        "cdf": {"x": gcdf.xs.tolist(), "F": gcdf.fs.tolist()},
        "normalization": grid.integral(),
        "edge_fits": {
            "hard": edge_exponent_fit(grid, "lower"),
            "hard_expected": -r / (r + 1.0),
            "soft": edge_exponent_fit(grid, "upper"),
            "soft_expected": 0.5,
        },
        "moment_checks": checks,
    }


def _run_sample_law(cfg: RunConfig) -> dict:
    r = cfg.r
    rng = substream(cfg.seed, 0)
    draws = beta_product_samples(r, cfg.samples, rng)
    edge = float(support_edge(r))
    hist = histogram(Spectrum(values=draws, dim=draws.size), cfg.bins, (0.0, 1.05 * edge))
    mids = 0.5 * (hist.edges[:-1] + hist.edges[1:])
    grid = density_grid(r, n=512)
    gcdf = grid.cdf()
    dens = np.interp(mids, grid.x, grid.f, left=0.0, right=0.0)
    dens[mids >= edge] = 0.0
    ecdf = StepCDF(draws)
    return {
        "r": r,
        "samples": cfg.samples,
        "histogram": _hist_payload(hist),
        "density_at_midpoints": dens.tolist(),
        "ks_to_limit": float(ks_distance(ecdf, gcdf)),
        "levy_to_limit": float(levy_distance(ecdf, gcdf)),
    }


def _run_triangular(cfg: RunConfig) -> dict:
    dist = _entry_distribution(cfg)
    shape = staircase(cfg.size)
    spectra = shape_ensemble_spectra(shape, cfg.size, dist, cfg.replicas, cfg.seed, jobs=cfg.jobs)
    pooled = np.concatenate(spectra)
    moments = []
    for k in range(cfg.kmax + 1):
        ref = dh_moment(k)
        mk = float(np.mean(pooled**k))
        moments.append({
            "k": k,
            "mean": mk,
            "limit": float(ref),
            "rel_err": abs(mk - float(ref)) / float(ref),
        })
    hist = histogram(Spectrum(values=pooled, dim=pooled.size), cfg.bins, (0.0, 1.05 * np.e))
    mids = 0.5 * (hist.edges[:-1] + hist.edges[1:])
    dh_vals = [dh_density(float(x)) for x in mids]

    lo, hi = cfg.window
    ecdf = StepCDF(pooled)
    xs = np.unique(np.concatenate([np.linspace(lo, hi, 321),
                                   pooled[(pooled >= lo) & (pooled <= hi)]]))
    dh_f = np.array([dh_cdf(float(x)) for x in np.linspace(lo, hi, 321)])
    emp_on = ecdf.eval(np.linspace(lo, hi, 321))
    sup = float(np.max(np.abs(emp_on - dh_f)))
    emp_atoms = ecdf.eval(xs)
    dh_atoms = np.array([dh_cdf(float(x)) for x in xs])
    sup = max(sup, float(np.max(np.abs(emp_atoms - dh_atoms))))
    return {
        "size": cfg.size,
        "replicas": cfg.replicas,
        "moments": moments,
        "histogram": _hist_payload(hist),
        "dh_density_at_midpoints": dh_vals,
        "window": list(cfg.window),
        "sup_discrepancy": sup,
    }


_HANDLERS = {
    "shape": _run_shape,
    "moments": _run_moments,
    "trees": _run_trees,
    "simulate": _run_simulate,
    "law": _run_law,
    "sample-law": _run_sample_law,
    "triangular": _run_triangular,
}


# -- record assembly and output ------------------------------------------


def _provenance(cfg: RunConfig, wall: float) -> dict:
    subs: list[list[int]] = []
    if cfg.subcommand in STOCHASTIC and cfg.seed is not None:
        n_sub = {"simulate": cfg.replicas, "triangular": cfg.replicas, "sample-law": 1}[cfg.subcommand]
        subs = [[cfg.seed, i] for i in range(n_sub)]
    return {
        "seed": cfg.seed,
        "substreams": subs,
        "wall_time_s": wall,
        "version": __version__,
    }


def build_record(cfg: RunConfig) -> dict:
    _validate(cfg)
    start = time.perf_counter()
    results = _HANDLERS[cfg.subcommand](cfg)
    wall = time.perf_counter() - start
    return {
        "config": dataclasses.asdict(cfg),
        "results": results,
        "provenance": _provenance(cfg, wall),
    }


def _hist_csv(hist: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["bin_left", "bin_right", "count", "density"])
    for left, right, cnt, dens in zip(hist["edges"][:-1], hist["edges"][1:],
                                      hist["counts"], hist["density"]):
        w.writerow([repr(left), repr(right), repr(cnt), repr(dens)])
    return buf.getvalue()


def _grid_csv(grid: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["x", "density", "abs_err"])
    for x, f, e in zip(grid["x"], grid["density"], grid["abs_err"]):
        w.writerow([repr(x), repr(f), repr(e)])
    return buf.getvalue()


def render_output(record: dict, cfg: RunConfig) -> str:
    if cfg.format == "csv":
        if cfg.subcommand == "law":
            return _grid_csv(record["results"]["grid"])
        if "histogram" in record["results"]:
            return _hist_csv(record["results"]["histogram"])
        raise ConfigError(f"no CSV form for subcommand {cfg.subcommand}")
    if cfg.format == "text" and cfg.subcommand == "shape":
        res = record["results"]
        lines = [res["diagram"], "",
                 f"parts:         {tuple(res['parts'])}",
                 f"length:        {res['length']}",
                 f"weight:        {res['weight']}",
                 f"conjugate:     {tuple(res['conjugate'])}"]
        if "balance_ratio" in res:
            lines.append(f"balance ratio: {res['balance_ratio']} = {res['balance_ratio_float']:.6g}")
        if "dilated_parts" in res:
            lines.append(f"dilated parts: {tuple(res['dilated_parts'])} (weight {res['dilated_weight']})")
        return "\n".join(lines) + "\n"
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


def _merge_config_file(argv: list[str], parser: argparse.ArgumentParser) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    args = parser.parse_args(argv)
    if known.config:
        with open(known.config) as fp:
            stored = json.load(fp)
        if not isinstance(stored, dict):
            raise ConfigError("config file must hold a JSON object")
        if "subcommand" in stored and args.subcommand and stored["subcommand"] != args.subcommand:
            raise ConfigError(
                f"config file is for {stored['subcommand']!r}, not {args.subcommand!r}")
        valid = {f.name for f in dataclasses.fields(RunConfig)}
        explicit = _explicit_dests(argv, parser)
        for key, val in stored.items():
            if key not in valid:
                raise ConfigError(f"unknown config key {key!r}")
            if key == "subcommand":
                continue
            if hasattr(args, key) and key not in explicit:
                setattr(args, key, val)
    return args


def _explicit_dests(argv: list[str], parser: argparse.ArgumentParser) -> set[str]:
    """Flag dests the user actually typed (these beat config-file values)."""
    out = set()
    for tok in argv:
        if tok.startswith("--"):
            out.add(tok[2:].split("=")[0].replace("-", "_"))
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _merge_config_file(argv, parser)
        if not args.subcommand:
            parser.print_help()
            return 2
        fields = {f.name for f in dataclasses.fields(RunConfig)}
        cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
        record = build_record(cfg)
        text = render_output(record, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except YoungSpecError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    if cfg.out:
        with open(cfg.out, "w") as fp:
            fp.write(text)
        if cfg.subcommand == "shape" and cfg.format == "text":
            print(text, end="")
    else:
        print(text, end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
