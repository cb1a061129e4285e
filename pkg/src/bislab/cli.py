"""Experiment runner: parse a config file, dispatch, emit JSON/CSV reports.

Every report embeds the fully resolved config (after defaults), the tool
version, and the seed, so a run is reproducible from its artifact alone.
Exit codes: 0 success, 2 config/usage error, 3 budget guard, 1 internal error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional

import numpy as np
import yaml

from . import __version__
from .errors import BudgetExceeded, ConfigError, ContractViolation
from .probability import AuxiliaryPair, Channel, FiniteDistribution, SystemModel, compose_joint
from .region import (
    RegionSpec,
    SearchConfig,
    boundary_sweep,
    cardinality_sweep,
    check_equivalence,
    extreme_tuple_a2,
    reduction_checks,
    summarize,
)
from .simulate import (
    DEFAULT_EXACT_BUDGET,
    achievability_trend,
    derive_params,
    rate_bookkeeping,
    run_trials,
)
from .typicality import TypicalityParams, default_delta

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = yaml.safe_load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"config is not valid YAML: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a mapping")
    version = cfg.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version must be {SCHEMA_VERSION}, got {version!r}")
    return cfg


def _block(cfg: dict, name: str) -> dict:
    block = cfg.get(name)
    if block is None:
        raise ConfigError(f"missing required config block '{name}'")
    if not isinstance(block, dict):
        raise ConfigError(f"config block '{name}' must be a mapping")
    return block


def parse_model(cfg: dict) -> SystemModel:
    block = _block(cfg, "model")
    try:
        source = FiniteDistribution(
            len(block.get("source", [])), np.asarray(block.get("source", []), dtype=float)
        )
    except (ContractViolation, TypeError, ValueError) as e:
        raise ConfigError(f"model.source: {e}") from e
    model_channels = {}
    for key in ("enroll", "identify"):
        rows = block.get(key)
        if rows is None:
            raise ConfigError(f"model.{key} is required")
        try:
            model_channels[key] = Channel.from_rows(np.asarray(rows, dtype=float))
        except (ContractViolation, TypeError, ValueError) as e:
            raise ConfigError(f"model.{key}: {e}") from e
    try:
        return SystemModel(source, model_channels["enroll"], model_channels["identify"])
    except ContractViolation as e:
        raise ConfigError(f"model: {e}") from e


def parse_aux(cfg: dict, required: bool) -> Optional[AuxiliaryPair]:
    block = cfg.get("aux")
    if block is None:
        if required:
            raise ConfigError("missing required config block 'aux'")
        return None
    channels = {}
    for key in ("u_given_y", "v_given_u"):
        rows = block.get(key)
        if rows is None:
            raise ConfigError(f"aux.{key} is required")
        try:
            channels[key] = Channel.from_rows(np.asarray(rows, dtype=float))
        except (ContractViolation, TypeError, ValueError) as e:
            raise ConfigError(f"aux.{key}: {e}") from e
    try:
        return AuxiliaryPair(channels["u_given_y"], channels["v_given_u"])
    except ContractViolation as e:
        raise ConfigError(f"aux: {e}") from e


def _search_config(block: dict, threads: int) -> SearchConfig:
    try:
        return SearchConfig(
            grid_steps=int(block.get("grid_steps", 8)),
            refinement_rounds=int(block.get("refinement_rounds", 0)),
            tolerance=float(block.get("tolerance", 1e-6)),
            v_grid_steps=int(block.get("v_grid_steps", 0)),
            threads=threads,
        )
    except (ContractViolation, TypeError, ValueError) as e:
        raise ConfigError(f"search settings: {e}") from e


def _r_i_grid(block: dict) -> list:
    grid = block.get("r_i_grid")
    if isinstance(grid, dict):
        for key in ("start", "stop", "count"):
            if key not in grid:
                raise ConfigError(f"r_i_grid needs '{key}'")
        count = int(grid["count"])
        if count < 1:
            raise ConfigError("r_i_grid.count must be positive")
        return [float(v) for v in np.linspace(float(grid["start"]), float(grid["stop"]), count)]
    if isinstance(grid, list) and grid:
        return [float(v) for v in grid]
    raise ConfigError("region.r_i_grid must be a nonempty list or {start, stop, count}")


def _require_seed(cfg: dict) -> int:
    seed = cfg.get("seed")
    if seed is None:
        raise ConfigError("a top-level integer 'seed' is required (no ambient entropy)")
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    return seed


# ---------------------------------------------------------------------------
# Serialization helpers
# ---------------------------------------------------------------------------


def _plain(obj):
    """Recursively convert dataclasses/numpy values to JSON-ready structures."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, float) and (np.isnan(obj) or np.isinf(obj)):
        return None
    return obj


def _json_report(command: str, resolved: dict, payload: dict) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "config": _plain(resolved),
    }
    doc.update(_plain(payload))
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _model_echo(model: SystemModel) -> dict:
    return {
        "source": model.source.probs.tolist(),
        "enroll": model.enroll.rows.tolist(),
        "identify": model.identify.rows.tolist(),
    }


def _aux_echo(aux: AuxiliaryPair) -> dict:
    return {
        "u_given_y": aux.u_given_y.rows.tolist(),
        "v_given_u": aux.v_given_u.rows.tolist(),
    }


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_rates(cfg: dict, args) -> str:
    model = parse_model(cfg)
    aux = parse_aux(cfg, required=True)
    s = summarize(model, aux)
    corner = extreme_tuple_a2(s)
    resolved = {"model": _model_echo(model), "aux": _aux_echo(aux)}
    return _json_report(
        "rates", resolved, {"summary": s, "extreme_tuple_a2": corner}
    )


def cmd_region(cfg: dict, args) -> str:
    model = parse_model(cfg)
    block = _block(cfg, "region")
    variant = str(block.get("variant", "A1"))
    search = _search_config(block, args.threads)
    u_card = int(block.get("u_cardinality") or model.y_size + 2)
    v_card = int(block.get("v_cardinality") or 2)
    try:
        spec = RegionSpec(variant, u_card, v_card)
    except ContractViolation as e:
        raise ConfigError(f"region: {e}") from e
    grid = _r_i_grid(block)
    rows = boundary_sweep(model, spec, search, grid)
    resolved = {
        "model": _model_echo(model),
        "region": {
            "variant": variant,
            "u_cardinality": u_card,
            "v_cardinality": v_card,
            "grid_steps": search.grid_steps,
            "refinement_rounds": search.refinement_rounds,
            "tolerance": search.tolerance,
            "r_i_grid": grid,
        },
    }
    if args.format == "json":
        return _json_report("region", resolved, {"rows": rows})
    lines = ["# config: " + json.dumps(_plain(resolved), sort_keys=True)]
    lines.append("r_i,max_r_s,min_r_j,min_r_l,feasible,grid_steps,variant")
    for row in rows:
        lines.append(
            ",".join(
                [
                    _fmt(row.r_i),
                    _fmt(row.max_r_s),
                    _fmt(row.min_r_j),
                    _fmt(row.min_r_l),
                    "1" if row.feasible else "0",
                    str(search.grid_steps),
                    variant,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def cmd_simulate(cfg: dict, args) -> str:
    model = parse_model(cfg)
    aux = parse_aux(cfg, required=True)
    block = _block(cfg, "simulate")
    seed = _require_seed(cfg)
    trials = int(block.get("trials", 1000))
    delta_rate = float(block.get("delta_rate", 0.05))
    typ_delta = block.get("typicality_delta")
    if typ_delta is None:
        typ_delta = default_delta(compose_joint(model, aux))
    typ = TypicalityParams(float(typ_delta))
    kwargs = {
        "w_mode": str(block.get("w_mode", "uniform")),
        "fresh_codebook": bool(block.get("fresh_codebook", False)),
        "permute": bool(block.get("permute", True)),
        "exact": str(block.get("exact", "auto")),
        "exact_budget": int(block.get("exact_budget", DEFAULT_EXACT_BUDGET)),
        "threads": args.threads,
    }
    resolved = {
        "model": _model_echo(model),
        "aux": _aux_echo(aux),
        "seed": seed,
        "simulate": {
            "trials": trials,
            "delta_rate": delta_rate,
            "typicality_delta": float(typ_delta),
            **{k: v for k, v in kwargs.items() if k != "threads"},
        },
    }
    if "n_list" in block:
        trend = achievability_trend(
            model, aux, delta_rate, typ, [int(v) for v in block["n_list"]],
            trials, seed, **kwargs,
        )
        resolved["simulate"]["n_list"] = [int(v) for v in block["n_list"]]
        return _json_report("simulate", resolved, {"trend": trend})
    n = block.get("n")
    if n is None:
        raise ConfigError("simulate needs 'n' or 'n_list'")
    params = derive_params(model, aux, int(n), delta_rate)
    report = run_trials(model, aux, params, typ, trials, seed, **kwargs)
    resolved["simulate"]["n"] = int(n)
    return _json_report(
        "simulate",
        resolved,
        {"report": report, "rates": rate_bookkeeping(params)},
    )


def cmd_equiv(cfg: dict, args) -> str:
    model = parse_model(cfg)
    block = cfg.get("equiv") or {}
    if not isinstance(block, dict):
        raise ConfigError("config block 'equiv' must be a mapping")
    search = _search_config(block, args.threads)
    report = check_equivalence(model, search)
    resolved = {
        "model": _model_echo(model),
        "equiv": {"grid_steps": search.grid_steps, "tolerance": search.tolerance},
    }
    payload = {
        "report": report,
        "notes": "raw grid points; no time-sharing (convex-hull) closure applied",
    }
    if "cardinality_extra" in block:
        payload["cardinality"] = cardinality_sweep(
            model, search, int(block["cardinality_extra"])
        )
    return _json_report("equiv", resolved, payload)


def cmd_reduce(cfg: dict, args) -> str:
    model = parse_model(cfg)
    block = cfg.get("reduce") or {}
    if not isinstance(block, dict):
        raise ConfigError("config block 'reduce' must be a mapping")
    search = _search_config(block, args.threads)
    report = reduction_checks(model, search)
    resolved = {
        "model": _model_echo(model),
        "reduce": {"grid_steps": search.grid_steps, "tolerance": search.tolerance},
    }
    return _json_report("reduce", resolved, {"report": report})


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

_COMMANDS = {
    "rates": cmd_rates,
    "region": cmd_region,
    "simulate": cmd_simulate,
    "equiv": cmd_equiv,
    "reduce": cmd_reduce,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bislab",
        description="Rate-region computation and binned-identification simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="YAML experiment config")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--threads", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "region" else "json"
    if args.format == "csv" and args.command != "region":
        print("error: --format csv is only supported by 'region'", file=sys.stderr)
        return 2
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        cfg = load_config(args.config)
        text = _COMMANDS[args.command](cfg, args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ContractViolation as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # pragma: no cover - internal failure path
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
