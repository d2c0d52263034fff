"""Command line front end: ``run``, ``gen`` and ``verify``.

Exit codes: 0 when every check passes, 2 when a numeric check fails,
1 on configuration or I/O errors.
"""

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass

import numpy as np
import scipy

from . import __version__
from ._accel import BACKEND
from .calculus import identity_suite
from .inequalities import evaluate_all
from .lattice import (
    dumps_domain,
    load_domain,
    make_box,
    make_l_shape,
    make_random_connected,
)
from .report import ReportRow, format_float, to_csv, to_json
from .rng import Xorshift64Star
from .spectral import EigensolverError, assemble, eigendecompose, verify_decomposition

MAX_VERTICES = 4096
EXIT_OK, EXIT_CONFIG, EXIT_CHECK = 0, 1, 2


class ConfigError(Exception):
    """Bad configuration, unreadable input, or an inadmissible V / rho."""


@dataclass
class RunConfig:
    domains: list
    potential: str = "zero"
    density: str = "one"
    k_range: object = "all"
    identity_tol: float = 1e-9
    slack_tol: float = 1e-9
    output: str = None
    fmt: str = "csv"
    seed: int = 0
    base_dir: str = "."
    source_hash: str = ""
    strict_k: bool = False


# -- V / rho specs ---------------------------------------------------------

def _parse_number(text, what):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"invalid number {text!r} in {what} spec") from None


def _read_vertex_values(path, domain):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read field file {path}: {exc}") from None
    if isinstance(data, dict) and "vertices" in data:
        verts = [tuple(v) for v in data["vertices"]]
        vals = data.get("values", [])
        if len(verts) != len(vals) or sorted(verts) != list(domain.vertices):
            raise ConfigError(f"field file {path} does not cover the domain vertices exactly")
        out = np.empty(domain.size)
        for v, x in zip(verts, vals):
            out[domain.index(v)] = float(x)
        return out
    vals = data["values"] if isinstance(data, dict) else data
    if not isinstance(vals, list) or len(vals) != domain.size:
        raise ConfigError(f"field file {path} needs {domain.size} values")
    return np.array([float(x) for x in vals])


def build_potential(spec, domain, rng, base_dir="."):
    kind, _, arg = spec.partition(":")
    if kind == "zero":
        return np.zeros(domain.size)
    if kind == "const":
        c = _parse_number(arg, "potential")
        if c < 0:
            raise ConfigError("potential must be nonnegative")
        return np.full(domain.size, c)
    if kind == "uniform":
        vmax = _parse_number(arg, "potential")
        if vmax < 0:
            raise ConfigError("potential must be nonnegative")
        return rng.uniform_array(domain.size, 0.0, vmax)
    if kind == "file":
        vals = _read_vertex_values(os.path.join(base_dir, arg), domain)
        if np.any(vals < 0):
            raise ConfigError("potential must be nonnegative")
        return vals
    raise ConfigError(f"unknown potential spec {spec!r}")


def build_density(spec, domain, rng, base_dir="."):
    kind, _, arg = spec.partition(":")
    if kind == "one":
        return np.ones(domain.size)
    if kind == "const":
        c = _parse_number(arg, "density")
        if c <= 0:
            raise ConfigError("density must be positive")
        return np.full(domain.size, c)
    if kind == "uniform":
        lo_text, _, hi_text = arg.partition(",")
        lo = _parse_number(lo_text, "density")
        hi = _parse_number(hi_text, "density")
        if lo <= 0 or hi < lo:
            raise ConfigError("density must be positive (need 0 < lo <= hi)")
        return rng.uniform_array(domain.size, lo, hi)
    if kind == "file":
        vals = _read_vertex_values(os.path.join(base_dir, arg), domain)
        if np.any(vals <= 0):
            raise ConfigError("density must be positive")
        return vals
    raise ConfigError(f"unknown density spec {spec!r}")


def parse_k_range(value):
    if value in (None, "all"):
        return "all"
    if isinstance(value, str):
        try:
            return [int(tok) for tok in value.split(",") if tok.strip()]
        except ValueError:
            raise ConfigError(f"invalid k list {value!r}") from None
    if isinstance(value, list) and all(isinstance(k, int) for k in value):
        return list(value)
    raise ConfigError(f"invalid k_range {value!r}")


# -- domains ---------------------------------------------------------------

def _parse_dims(text):
    try:
        dims = tuple(int(t) for t in str(text).lower().split("x"))
    except ValueError:
        raise ConfigError(f"invalid --dims {text!r}") from None
    return dims


def build_domain(entry, base_dir="."):
    try:
        if "file" in entry:
            return load_domain(os.path.join(base_dir, entry["file"]))
        shape = entry.get("shape")
        if shape == "box":
            dims = entry["dims"]
            dims = _parse_dims(dims) if isinstance(dims, str) else tuple(dims)
            return make_box(len(dims), dims)
        if shape == "lshape":
            return make_l_shape(2, int(entry["arm"]))
        if shape == "random":
            return make_random_connected(int(entry["n"]), int(entry["size"]), int(entry.get("seed", 0)))
    except OSError as exc:
        raise ConfigError(f"cannot read domain: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid domain entry {entry!r}: {exc}") from None
    raise ConfigError(f"unknown domain entry {entry!r}")


def load_config(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
        data = json.loads(raw.decode("utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("domains"), list):
        raise ConfigError("config needs a 'domains' list")
    tol = data.get("tolerances", {})
    out = data.get("output", {})
    if isinstance(out, str):
        out = {"path": out}
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown report format {fmt!r}")
    return RunConfig(
        domains=data["domains"],
        potential=data.get("potential", "zero"),
        density=data.get("density", "one"),
        k_range=parse_k_range(data.get("k_range", "all")),
        identity_tol=float(tol.get("identity_tol", 1e-9)),
        slack_tol=float(tol.get("slack_tol", 1e-9)),
        output=out.get("path"),
        fmt=fmt,
        seed=int(data.get("seed", 0)),
        base_dir=os.path.dirname(os.path.abspath(path)),
        source_hash=hashlib.sha256(raw).hexdigest(),
    )


# -- core ------------------------------------------------------------------

def _ks_for(cfg, N):
    if cfg.k_range == "all":
        return list(range(1, N))
    bad = [k for k in cfg.k_range if not 1 <= k <= N - 1]
    if bad and cfg.strict_k:
        raise ConfigError(f"k out of range: {bad} (admissible 1..{N - 1})")
    return sorted({k for k in cfg.k_range if 1 <= k <= N - 1})


def evaluate_domain(cfg, index, entry):
    """Rows for one domain and whether every check passed."""
    domain = build_domain(entry, cfg.base_dir)
    if domain.size > MAX_VERTICES:
        raise ConfigError(f"domain has {domain.size} vertices; the cap is {MAX_VERTICES}")
    did = str(entry.get("id", f"d{index}"))
    V = build_potential(entry.get("potential", cfg.potential), domain,
                        Xorshift64Star(cfg.seed, 2 * index), cfg.base_dir)
    rho = build_density(entry.get("density", cfg.density), domain,
                        Xorshift64Star(cfg.seed, 2 * index + 1), cfg.base_dir)
    try:
        op = assemble(domain, V, rho)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    n, N = domain.dimension, domain.size
    ks = _ks_for(cfg, N)
    ok = True
    rows = []
    try:
        dec = eigendecompose(op)
    except EigensolverError as exc:
        print(f"{did}: {exc}", file=sys.stderr)
        return rows, False
    lam = dec.eigenvalues
    rmin, rmax = dec.rho_min, dec.rho_max
    for rec in evaluate_all(dec, n, ks):
        lk = float(lam[rec.k - 1])
        if not rec.degenerate_gap and not rec.slack >= -cfg.slack_tol:
            ok = False
        rows.append(ReportRow(
            did, n, N, rec.k, rec.theorem.value, rec.lhs, rec.rhs, rec.slack,
            rec.trivial, rec.degenerate_gap, lk, rec.lambda_next, rmin, rmax,
            lk <= 1.0 + 4.0 / n,
        ))

    checks = identity_suite(dec, max(ks) if ks else 0)
    ortho, _ = verify_decomposition(op, dec)
    resid = np.abs(op.stiffness @ dec.vectors - op.mass[:, None] * dec.vectors * lam).max(axis=0)
    summary = [(c.name, c.kind, c.value) for c in checks]
    summary.append(("ORTHONORMALITY", "defect", ortho))
    summary.append(("EIGEN_RESIDUAL", "defect", float((resid / (1 + np.abs(lam))).max())))
    for name, kind, value in summary:
        if kind == "defect":
            threshold = cfg.identity_tol
            slack = threshold - value
        else:
            threshold = -cfg.slack_tol
            slack = value - threshold
        if not slack >= 0:
            ok = False
        rows.append(ReportRow(
            did, n, N, None, name, value, threshold, slack, False, False,
            None, None, rmin, rmax, None,
        ))
    return rows, ok


def execute(cfg):
    """(report text, rows, exit code) for a parsed configuration."""
    rows = []
    ok = True
    for index, entry in enumerate(cfg.domains):
        if not isinstance(entry, dict):
            raise ConfigError(f"domain entry {index} is not an object")
        drows, dok = evaluate_domain(cfg, index, entry)
        rows.extend(drows)
        ok = ok and dok
    meta = {
        "config_sha256": cfg.source_hash,
        "seed": cfg.seed,
        "backend": BACKEND,
        "versions": {"lattice_ineq": __version__, "numpy": np.__version__, "scipy": scipy.__version__},
    }
    text = to_json(rows, meta) if cfg.fmt == "json" else to_csv(rows)
    return text, rows, EXIT_OK if ok else EXIT_CHECK


def _write(text, path):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write report {path}: {exc}") from None


# -- verbs -----------------------------------------------------------------

def cmd_run(args):
    cfg = load_config(args.config)
    text, _, code = execute(cfg)
    if cfg.output:
        _write(text, os.path.join(cfg.base_dir, cfg.output))
    else:
        sys.stdout.write(text)
    return code


def cmd_gen(args):
    try:
        if args.shape == "box":
            if not args.dims:
                raise ConfigError("box needs --dims, e.g. 3x3")
            dims = _parse_dims(args.dims)
            domain = make_box(len(dims), dims)
        elif args.shape == "lshape":
            domain = make_l_shape(2, args.arm)
        else:
            domain = make_random_connected(args.n, args.size, args.seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    text = dumps_domain(domain)
    if args.out:
        _write(text, args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _format_table(rows):
    lines = [f"{'k':>4}  {'theorem':<24}{'lhs':>24}{'rhs':>24}{'slack':>24}  flags"]
    for r in rows:
        flags = ",".join(f for f, on in (("trivial", r.trivial), ("degenerate", r.degenerate_gap)) if on)
        k = "" if r.k is None else str(r.k)
        lines.append(
            f"{k:>4}  {r.theorem:<24}{format_float(r.lhs):>24}{format_float(r.rhs):>24}"
            f"{format_float(r.slack):>24}  {flags}"
        )
    return "\n".join(lines) + "\n"


def cmd_verify(args):
    try:
        with open(args.domain, "rb") as fh:
            domain_bytes = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read domain: {exc}") from None
    settings = {
        "domain_sha256": hashlib.sha256(domain_bytes).hexdigest(),
        "potential": args.potential, "rho": args.rho, "k": args.k, "seed": args.seed,
    }
    cfg = RunConfig(
        domains=[{"id": os.path.splitext(os.path.basename(args.domain))[0],
                  "file": os.path.abspath(args.domain)}],
        potential=args.potential,
        density=args.rho,
        k_range=parse_k_range(args.k),
        identity_tol=args.identity_tol,
        slack_tol=args.slack_tol,
        fmt=args.format,
        seed=args.seed,
        source_hash=hashlib.sha256(json.dumps(settings, sort_keys=True).encode()).hexdigest(),
        strict_k=True,
    )
    text, rows, code = execute(cfg)
    sys.stdout.write(_format_table(rows))
    if args.out:
        _write(text, args.out)
    return code


def build_parser():
    p = argparse.ArgumentParser(prog="lattice-ineq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    run = sub.add_parser("run", help="evaluate every domain of a JSON run configuration")
    run.add_argument("--config", required=True)
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="write a domain file")
    gen.add_argument("--shape", choices=("box", "lshape", "random"), required=True)
    gen.add_argument("--dims", help="box side lengths, e.g. 3x3")
    gen.add_argument("--arm", type=int, default=2)
    gen.add_argument("--n", type=int, default=2)
    gen.add_argument("--size", type=int, default=20)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="check one domain file and print a slack table")
    ver.add_argument("domain")
    ver.add_argument("--potential", default="zero")
    ver.add_argument("--rho", default="one")
    ver.add_argument("--k", default="all")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--out")
    ver.add_argument("--format", choices=("csv", "json"), default="csv")
    ver.add_argument("--identity-tol", type=float, default=1e-9)
    ver.add_argument("--slack-tol", type=float, default=1e-9)
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
