"""Command-line front end: JSON config in, CSV / JSON-lines artifacts out.

Usage::

    ptdyn --config run.json [--out PATH] [--seed N] [--threads N]

The config selects one command (spin-sweep, branch-map, swanson,
lattice, verify) and its parameters; the strict schema shipped as
``ptdyn/schema.json`` documents every field. Each run echoes its fully
resolved configuration (defaults materialized) to
``<output>.config.json`` so any artifact can be reproduced exactly:
identical config and seed give byte-identical files.

Exit status: 0 on success, 2 on validation problems (malformed JSON,
schema violations, unwritable paths, parameter domain errors), 3 on
numerical failures (eigensolver non-convergence, trajectory blow-up,
exponential overflow).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import verify as verify_mod
from .lattice import BlowUpError, LatticeConfig, propagate_rk4
from .linalg import ConvergenceError, DomainError, NormOverflowError, eig_general
from .branches import branch_grid
from .spin import SpinParams, sweep_rows_at
from .swanson import (
    NonRealSpectrumError,
    SwansonParams,
    discriminant_sweep,
    gsw_spectrum,
    transform_chain,
)

__all__ = ["main", "run", "ConfigError", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class ConfigError(Exception):
    """Configuration rejected (schema violation, bad value, bad path)."""


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


# ---------------------------------------------------------------------------
# strict config validation (mirrors schema.json)
# ---------------------------------------------------------------------------

_NUM = (int, float)

_PARAM_SPEC = {
    "spin-sweep": {
        "required": {"j": _NUM, "epsilon": _NUM, "gamma": _NUM,
                     "k_min": _NUM, "k_max": _NUM, "n_points": int},
        "optional": {"convention": (str, None)},
    },
    "branch-map": {
        "required": {"gamma": _NUM},
        "optional": {"re_min": (_NUM, -2.0), "re_max": (_NUM, 2.0),
                     "im_min": (_NUM, -2.0), "im_max": (_NUM, 2.0),
                     "resolution": (int, 201), "branch": (str, "positive")},
    },
    "swanson": {
        "required": {"lam": _NUM, "alpha1": _NUM, "alpha2": _NUM,
                     "beta1": _NUM, "beta2": _NUM},
        "optional": {"n_trunc": (int, 128), "n_levels": (int, 16),
                     "d_min": (_NUM, 0.0), "d_max": (_NUM, 2.0),
                     "d_points": (int, 201)},
    },
    "lattice": {
        "required": {"lam": _NUM, "alpha1": _NUM, "alpha2": _NUM, "beta": _NUM,
                     "n_sites": int, "z_max": _NUM, "dz": _NUM},
        "optional": {"initial_site": (int, 0), "psi0": (list, None)},
    },
    "verify": {
        "required": {},
        "optional": {"names": (list, None)},
    },
}

_ENUMS = {
    ("spin-sweep", "convention"): ("spin", "pauli"),
    ("branch-map", "branch"): ("positive", "negative"),
}


def _type_ok(value, expected) -> bool:
    if expected is int:
        return isinstance(value, int) and not isinstance(value, bool)
    if expected is _NUM:
        return isinstance(value, _NUM) and not isinstance(value, bool)
    return isinstance(value, expected)


def resolve_config(raw: dict) -> dict:
    """Validate a raw config dict and materialize all defaults.

    Unknown keys anywhere are rejected; the returned dict re-validates
    to itself (round-trip property).
    """
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    allowed_top = {"schema_version", "command", "params", "output_path", "seed"}
    unknown = set(raw) - allowed_top
    if unknown:
        raise ConfigError(f"unknown top-level keys: {', '.join(sorted(unknown))}")
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(
            f"schema_version must be {SCHEMA_VERSION}, got {raw.get('schema_version')!r}")
    command = raw.get("command")
    if command not in _PARAM_SPEC:
        raise ConfigError(
            f"command must be one of {sorted(_PARAM_SPEC)}, got {command!r}")
    params = raw.get("params")
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    spec = _PARAM_SPEC[command]
    unknown = set(params) - set(spec["required"]) - set(spec["optional"])
    if unknown:
        raise ConfigError(
            f"unknown keys in params for {command}: {', '.join(sorted(unknown))}")
    resolved = {}
    for key, typ in spec["required"].items():
        if key not in params:
            raise ConfigError(f"missing required parameter {key!r} for {command}")
        if not _type_ok(params[key], typ):
            raise ConfigError(f"parameter {key!r} has the wrong type")
        resolved[key] = params[key]
    for key, (typ, default) in spec["optional"].items():
        if key in params:
            if not _type_ok(params[key], typ):
                raise ConfigError(f"parameter {key!r} has the wrong type")
            resolved[key] = params[key]
        elif default is not None:
            resolved[key] = default
    for (cmd, key), values in _ENUMS.items():
        if cmd == command and key in resolved and resolved[key] not in values:
            raise ConfigError(f"{key!r} must be one of {values}")

    seed = raw.get("seed", 0)
    if not _type_ok(seed, int):
        raise ConfigError("seed must be an integer")
    out = raw.get("output_path")
    if out is not None and not isinstance(out, str):
        raise ConfigError("output_path must be a string")

    # command-specific default materialization
    if command == "spin-sweep" and "convention" not in resolved:
        resolved["convention"] = "pauli" if float(resolved["j"]) == 0.5 else "spin"
    if command == "verify":
        if resolved.get("names") is None:
            resolved["names"] = verify_mod.available_checks()
        else:
            known = set(verify_mod.available_checks())
            bad = [n for n in resolved["names"] if n not in known]
            if bad:
                raise ConfigError(f"unknown verify checks: {', '.join(bad)}")

    cfg = {"schema_version": SCHEMA_VERSION, "command": command,
           "params": resolved, "seed": seed}
    if out is not None:
        cfg["output_path"] = out
    return cfg


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------


def _run_spin_sweep(params: dict, threads: int) -> list[str]:
    p = SpinParams(float(params["j"]), float(params["epsilon"]),
                   float(params["gamma"]), 0.0)
    n_points = params["n_points"]
    if n_points < 2 or not (params["k_min"] < params["k_max"]):
        raise DomainError("need k_min < k_max and n_points >= 2")
    ks = [float(k) for k in
          np.linspace(float(params["k_min"]), float(params["k_max"]), n_points)]
    convention = params["convention"]

    def rows_for(k):
        return sweep_rows_at(p, k, convention)

    if threads > 1 and n_points >= 4 * threads:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(rows_for, ks))
    else:
        parts = [rows_for(k) for k in ks]
    rows = [r for part in parts for r in part]
    lines = ["k,level_index,re_E,im_E,regime"]
    for k, idx, re_e, im_e, regime in rows:
        lines.append(f"{_fmt(k)},{idx},{_fmt(re_e)},{_fmt(im_e)},{regime}")
    return lines


def _run_branch_map(params: dict) -> list[str]:
    grid = branch_grid(float(params["gamma"]),
                       (params["re_min"], params["re_max"]),
                       (params["im_min"], params["im_max"]),
                       params["resolution"], params["branch"])
    lines = ["re_k,im_k,re_val,im_val,arg,is_cut"]
    res = len(grid.re_k_axis)
    for i in range(res):
        for j in range(res):
            v = grid.values[i, j]
            lines.append(
                f"{_fmt(grid.re_k_axis[i])},{_fmt(grid.im_k_axis[j])},"
                f"{_fmt(v.real)},{_fmt(v.imag)},{_fmt(grid.argument[i, j])},"
                f"{1 if grid.discontinuity_mask[i, j] else 0}")
    return lines


def _run_swanson(params: dict):
    p = SwansonParams(float(params["lam"]), float(params["alpha1"]),
                      float(params["alpha2"]), float(params["beta1"]),
                      float(params["beta2"]), params["n_trunc"])
    chain = transform_chain(p)
    report = {
        "gamma1": chain.gamma1,
        "gamma2": chain.gamma2,
        "delta": chain.delta,
        "zeta": [complex(chain.zeta).real, complex(chain.zeta).imag],
        "lambda_tilde": [chain.lambda_tilde.real, chain.lambda_tilde.imag],
        "discriminant": chain.discriminant,
        "regime": chain.regime,
        "h2_block_error": chain.h2_block_error,
        "h3_block_error": chain.h3_block_error,
    }
    gap = p.lam ** 2 - 4.0 * p.beta1 * p.beta2
    n_levels = min(params["n_levels"], p.n_trunc // 4)
    if gap > 0.0:
        analytic = gsw_spectrum(p, n_levels)
        numeric = eig_general(chain.h_gsw).eigenvalues[:n_levels]
        report["spectrum"] = [
            {"n": int(n), "analytic": float(analytic[n]),
             "numeric": [float(numeric[n].real), float(numeric[n].imag)]}
            for n in range(n_levels)
        ]
        report["max_spectrum_deviation"] = float(
            np.abs(numeric - analytic).max())
    else:
        report["spectrum"] = None
        report["spectrum_note"] = (
            f"lam**2 - 4*beta1*beta2 = {gap:.6g} <= 0: closed form not real")
    rows = discriminant_sweep(p.lam, p.alpha1, p.alpha2, p.beta1,
                              float(params["d_min"]), float(params["d_max"]),
                              params["d_points"])
    lines = ["discriminant,re_lambda_tilde,im_lambda_tilde,regime"]
    for d, re_l, im_l, regime in rows:
        lines.append(f"{_fmt(d)},{_fmt(re_l)},{_fmt(im_l)},{regime}")
    return lines, report


def _run_lattice(params: dict) -> list[str]:
    c = LatticeConfig(float(params["lam"]), float(params["alpha1"]),
                      float(params["alpha2"]), float(params["beta"]),
                      params["n_sites"], float(params["z_max"]),
                      float(params["dz"]))
    psi0 = np.zeros(c.n_sites, dtype=complex)
    if params.get("psi0") is not None:
        raw = params["psi0"]
        if len(raw) != c.n_sites:
            raise DomainError(f"psi0 must list {c.n_sites} [re, im] pairs")
        for i, pair in enumerate(raw):
            psi0[i] = complex(float(pair[0]), float(pair[1]))
    else:
        site = params["initial_site"]
        if site >= c.n_sites:
            raise DomainError(f"initial_site {site} outside 0..{c.n_sites - 1}")
        psi0[site] = 1.0
    if np.linalg.norm(psi0) == 0.0:
        raise DomainError("initial field must be nonzero")
    traj = propagate_rk4(c, psi0)
    lines = ["z,site,re_psi,im_psi,norm_sq_total"]
    for s, z in enumerate(traj.z_samples):
        nrm = traj.norms[s]
        for site in range(c.n_sites):
            amp = traj.amplitudes[s, site]
            lines.append(f"{_fmt(z)},{site},{_fmt(amp.real)},{_fmt(amp.imag)},{_fmt(nrm)}")
    return lines


def _run_verify(params: dict, seed: int, threads: int) -> list[str]:
    results = verify_mod.run_suite(params["names"], seed=seed, threads=threads)
    lines = []
    for r in results:
        lines.append(json.dumps({
            "name": r.name,
            "params": r.params,
            "max_err": r.max_err,
            "threshold": r.threshold,
            "pass": r.passed,
        }, sort_keys=True, default=str))
    return lines


def _write_text(path: str, lines: list[str]) -> None:
    try:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise ConfigError(f"cannot write output file {path!r}: {exc}") from exc


def run(config: dict, output_path: str | None = None, seed: int | None = None,
        threads: int = 1) -> int:
    """Execute one resolved command; returns the process exit status."""
    cfg = resolve_config(config)
    if output_path is not None:
        cfg["output_path"] = output_path
    if seed is not None:
        cfg["seed"] = seed
    out = cfg.get("output_path")
    if not out:
        raise ConfigError("an output path is required (config output_path or --out)")

    command = cfg["command"]
    params = cfg["params"]
    extra_files = {}
    if command == "spin-sweep":
        lines = _run_spin_sweep(params, threads)
    elif command == "branch-map":
        lines = _run_branch_map(params)
    elif command == "swanson":
        lines, report = _run_swanson(params)
        extra_files[out + ".chain.json"] = json.dumps(report, indent=2,
                                                      sort_keys=True)
    elif command == "lattice":
        lines = _run_lattice(params)
    else:
        lines = _run_verify(params, cfg["seed"], threads)

    _write_text(out, lines)
    for path, text in extra_files.items():
        _write_text(path, text.split("\n"))
    _write_text(out + ".config.json",
                json.dumps(cfg, indent=2, sort_keys=True).split("\n"))
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ptdyn",
        description="Non-Hermitian Hamiltonian sweeps, maps and verification suites")
    parser.add_argument("--config", required=True, help="path to a JSON run config")
    parser.add_argument("--out", default=None, help="output file (overrides config)")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized suites (overrides config)")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: PTDYN_THREADS or 1)")
    args = parser.parse_args(argv)

    if args.threads is not None:
        threads = args.threads
    else:
        try:
            threads = int(os.environ.get("PTDYN_THREADS", "1"))
        except ValueError:
            print("error: PTDYN_THREADS must be an integer", file=sys.stderr)
            return EXIT_VALIDATION
    threads = max(1, threads)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON config: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    try:
        return run(raw, output_path=args.out, seed=args.seed, threads=threads)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, BlowUpError, NormOverflowError,
            NonRealSpectrumError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
