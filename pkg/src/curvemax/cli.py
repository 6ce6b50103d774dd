"""Command line front end for experiments and the acceptance suite.

Every subcommand writes a machine-readable artifact (JSON or CSV) to stdout
or to --out, plus a human summary on stderr.  Identical flags and seed give
byte-identical artifacts apart from the timestamp field.  Reported numbers
always travel with a tolerance or standard-error column, and the header
records how per-task random streams derive from the master seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from .acceptance import jsonable, maxop_cases, run_all
from .curve_measure import (dyadic_phase_size, sigma_decay_envelope,
                            sigma_hat_dyadic, sigma_hat_upper_bound)
from .grid import from_callable
from .maxop import sandwich_check, split_check
from .multiplier import log_growth_experiment, sup_search
from .norms import (ball_volume, dilate, make_space, polar_integration_check,
                    quasi_triangle_ratio, rho)
from .oscillatory import (PhasePoly, QuadratureError, sublevel_measure,
                          vdc_bound_check, vinogradov_check)
from .rng import STREAM_CORPUS, STREAM_GRAM, STREAM_KERNEL, substream
from .stable_poisson import (gram_psd_check, sample_kernel_batch,
                             semigroup_check, stable_density_1d,
                             subordination_identity_check)

SEED_DERIVATION = (
    "rng=numpy Philox; stream(seed,id) keyed [seed,id]; "
    "substream(seed,id,i) keyed [seed,(id<<32)^i]; ids: ball-volume=1 "
    "quasi-triangle=2 kernel=3 sup-search=4 maxop=5 corpus=6 gram=7")


class ConfigError(Exception):
    pass


# -- config and flag resolution ----------------------------------------------

def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"config file {path!r}: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    return cfg


def _resolve(ns, cfg, key, default=None, cast=None):
    """Flag beats config file beats default."""
    val = getattr(ns, key, None)
    if val is None:
        val = cfg.get(key)
    if val is None:
        return default
    if cast is not None:
        try:
            val = cast(val)
        except (TypeError, ValueError):
            raise ConfigError(f"bad value for {key}: {val!r}")
    return val


def _resolve_seed(ns, cfg):
    val = ns.seed
    if val is None:
        val = cfg.get("seed")
    if val is None:
        val = os.environ.get("PARABOLIC_SEED")
    if val is None:
        val = 0
    try:
        seed = int(val)
    except (TypeError, ValueError):
        raise ConfigError(f"seed must be an integer, got {val!r}")
    if not 0 <= seed < 2**64:
        raise ConfigError("seed must be a 64-bit unsigned integer")
    return seed


def _resolve_quick(ns, cfg) -> bool:
    return bool(ns.quick or cfg.get("quick", False))


def _parse_int_list(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)
    try:
        return tuple(int(t) for t in str(text).split(","))
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}")


def _parse_float_list(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(float(v) for v in text)
    try:
        return tuple(float(t) for t in str(text).split(","))
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}")


def _check_dim(d: int) -> int:
    if not 1 <= d <= 64:
        raise ConfigError(f"dimension {d} outside [1, 64]")
    return d


def _positive_tol(tol: float) -> float:
    if not tol > 0:
        raise ConfigError(f"tolerance must be positive, got {tol}")
    return tol


# -- emission ------------------------------------------------------------------

def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (list, tuple, dict, np.ndarray)):
        return json.dumps(jsonable(v), sort_keys=True, separators=(",", ":"))
    return str(v)


def _emit(ns, command: str, seed: int, rows, meta: dict, failures) -> None:
    fmt = ns.resolved_format
    stamp = datetime.now(timezone.utc).isoformat()
    if fmt == "json":
        doc = {"command": command, "seed": seed,
               "seed_derivation": SEED_DERIVATION,
               "passed": not failures, "failures": list(failures),
               "meta": jsonable(meta), "rows": jsonable(rows),
               "timestamp": stamp}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# command={command}\n")
        buf.write(f"# seed={seed}\n")
        buf.write(f"# seed-derivation={SEED_DERIVATION}\n")
        for key in sorted(meta):
            buf.write(f"# {key}={_csv_cell(meta[key])}\n")
        for msg in failures:
            buf.write(f"# fail={msg}\n")
        buf.write(f"# timestamp={stamp}\n")
        if rows:
            keys = list(rows[0].keys())
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(keys)
            for row in rows:
                writer.writerow([_csv_cell(row.get(k)) for k in keys])
        text = buf.getvalue()
    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_num(v) -> str:
    if isinstance(v, (float, np.floating)):
        return f"{v:.6g}"
    return str(v)


def _summary(command: str, rows, failures) -> None:
    for row in rows:
        status = "ok " if row.get("passed", True) else "FAIL"
        label = str(row.get("check") or row.get("name") or row.get("case")
                    or row.get("d") or row.get("k", ""))
        shown = [k for k in row
                 if k not in ("check", "name", "case", "passed", "details",
                              "argmax") and row[k] is not None][:6]
        frag = " ".join(f"{k}={_fmt_num(row[k])}" for k in shown)
        print(f"  [{status}] {label} {frag}", file=sys.stderr)
    print(f"{command}: {'PASS' if not failures else 'FAIL'}", file=sys.stderr)
    for msg in failures:
        print(f"  violated: {msg}", file=sys.stderr)


# -- subcommands -----------------------------------------------------------------

def cmd_norm_eval(ns, cfg, seed, quick):
    point = _resolve(ns, cfg, "point")
    d = _resolve(ns, cfg, "d", cast=int)
    vals = None
    if point is not None:
        vals = np.array(_parse_float_list(point))
        if d is not None and d != len(vals):
            raise ConfigError(f"--d {d} disagrees with --point length {len(vals)}")
        d = len(vals)
    d = _check_dim(2 if d is None else d)
    space = make_space(d)
    trials = 2000 if quick else 20000
    rows, failures = [], []

    if vals is not None:
        rows.append({"check": "point-norm", "value": float(rho(vals)),
                     "rel_tol": 1e-15, "passed": True})

    rng = substream(seed, STREAM_CORPUS, 100 + d)
    x = rng.standard_normal((trials, d)) * 10.0 ** rng.uniform(-6, 6, (trials, 1))
    s = 10.0 ** rng.uniform(-3, 3, trials)
    r = rho(x)
    hom = float(np.max(np.abs(rho(dilate(x, s)) - s * r) / (s * r)))
    sym = float(np.max(np.abs(rho(-x) - r) / r))
    quasi = quasi_triangle_ratio(space, trials=trials, seed=seed)
    rows.append({"check": "homogeneity-max-rel-err", "value": hom,
                 "rel_tol": 1e-12, "passed": hom <= 1e-12})
    rows.append({"check": "symmetry-max-rel-err", "value": sym,
                 "rel_tol": 1e-12, "passed": sym <= 1e-12})
    rows.append({"check": "quasi-triangle-ratio", "value": quasi,
                 "limit": 2.0, "passed": quasi <= 2.0})
    if hom > 1e-12:
        failures.append(f"homogeneity relative error {hom:.3e} exceeds 1e-12 at d={d}")
    if sym > 1e-12:
        failures.append(f"symmetry relative error {sym:.3e} exceeds 1e-12 at d={d}")
    if quasi > 2.0:
        failures.append(f"quasi-triangle ratio {quasi:.6f} exceeds 2 at d={d}")

    if d <= 2:
        pol = polar_integration_check(space, lambda p: np.exp(-rho(p)),
                                      tol=5e-2, grid_n=512 if quick else 1024)
        rows.append({"check": "polar-reconstruction", "value": pol.lhs,
                     "reference": pol.rhs, "disc_error": pol.disc_error,
                     "passed": pol.passed})
        if not pol.passed:
            failures.append("polar reconstruction drifted beyond its "
                            f"discretization error at d={d}")
        bv = ball_volume(space, 1.0, samples=10**5 if quick else 10**6,
                         seed=seed)
        exact = 2.0 if d == 1 else 4.0 / 3.0
        ok = abs(bv.value - exact) <= max(4.0 * bv.stderr, 1e-12)
        rows.append({"check": "unit-ball-volume", "value": bv.value,
                     "stderr": bv.stderr, "reference": exact, "passed": ok})
        if not ok:
            failures.append(f"unit ball volume {bv.value:.6f} further than "
                            f"4 sigma from {exact:.6f} at d={d}")
    return rows, {"d": d, "trials": trials}, failures


def cmd_osc_corpus(ns, cfg, seed, quick):
    d_list = _parse_int_list(_resolve(ns, cfg, "d_list", default="2,3,4,5,6"))
    count = _resolve(ns, cfg, "count", default=30 if quick else 200, cast=int)
    if count < 1:
        raise ConfigError("count must be >= 1")
    rows, failures = [], []
    for d in map(_check_dim, d_list):
        rng = substream(seed, STREAM_CORPUS, 200 + d)
        max_vin = max_alt = max_vdc = sub_err = 0.0
        oracle_count = max(1, min(10, count // 3))
        for i in range(count):
            coeffs = (np.sign(rng.standard_normal(d))
                      * 10.0 ** rng.uniform(-1, 3, d))
            b0 = rng.uniform(-3.0, 3.0)
            delta = 10.0 ** rng.uniform(-3, 0)
            vin = vinogradov_check(PhasePoly(tuple(coeffs), constant=b0),
                                   -1.0, 1.0, delta)
            max_vin = max(max_vin, vin.ratio)
            max_alt = max(max_alt, vin.details["alternate_ratio"])
            vdc = vdc_bound_check(PhasePoly(tuple(coeffs)), -1.0, 1.0, tol=1e-8)
            max_vdc = max(max_vdc, vdc.ratio)
            if i < oracle_count:
                from .acceptance import _sublevel_root_oracle
                p = PhasePoly(tuple(coeffs), constant=b0)
                brute = sublevel_measure(p, -1.0, 1.0, delta,
                                         grid_points=400_000)
                sub_err = max(sub_err,
                              abs(brute - _sublevel_root_oracle(p, -1.0, 1.0,
                                                                delta)))
        ok = (math.isfinite(max_vin) and math.isfinite(max_alt)
              and math.isfinite(max_vdc) and sub_err <= 1e-4)
        rows.append({"d": d, "vinogradov_max_ratio": max_vin,
                     "vinogradov_alt_max_ratio": max_alt,
                     "vdc_max_ratio": max_vdc,
                     "sublevel_oracle_max_err": sub_err,
                     "sublevel_tol": 1e-4, "passed": ok})
        if not ok:
            failures.append(f"oscillatory corpus bound failed at d={d} "
                            f"(sublevel err {sub_err:.2e}, tol 1e-4)")
    return rows, {"count": count}, failures


def cmd_sigma_hat(ns, cfg, seed, quick):
    xi_text = _resolve(ns, cfg, "xi")
    if xi_text is None:
        raise ConfigError("sigma-hat requires --xi (comma-separated floats)")
    xi = np.array(_parse_float_list(xi_text))
    _check_dim(len(xi))
    if not np.any(xi):
        raise ConfigError("--xi must be nonzero")
    k_lo = _resolve(ns, cfg, "k_lo", default=-6, cast=int)
    k_hi = _resolve(ns, cfg, "k_hi", default=6, cast=int)
    if k_lo > k_hi:
        raise ConfigError(f"k range [{k_lo}, {k_hi}] is empty")
    tol = _positive_tol(_resolve(ns, cfg, "tol", default=1e-10, cast=float))
    rows, failures = [], []
    for k in range(k_lo, k_hi + 1):
        bound = sigma_hat_upper_bound(xi, k)
        env = sigma_decay_envelope(xi, k)
        val = None
        if 8.0 * dyadic_phase_size(xi, k) <= float(1 << 20):
            try:
                val = sigma_hat_dyadic(xi, k, tol=tol)
            except QuadratureError:
                val = None
        row = {"k": k, "quad_tol": tol, "certified_bound": bound,
               "envelope_scale": env}
        if val is None:
            row.update({"abs": None, "real": None, "imag": None,
                        "passed": True})
        else:
            ok = abs(val) <= min(1.0, bound) + tol + 1e-12
            row.update({"abs": abs(val), "real": val.real, "imag": val.imag,
                        "passed": ok})
            if not ok:
                failures.append(f"certified transform bound violated at k={k}: "
                                f"|value| {abs(val):.6e} > {bound:.6e}")
        rows.append(row)
    return rows, {"xi": list(map(float, xi))}, failures


def cmd_kernel_verify(ns, cfg, seed, quick):
    d = _check_dim(_resolve(ns, cfg, "d", default=2, cast=int))
    samples = _resolve(ns, cfg, "samples",
                       default=50_000 if quick else 200_000, cast=int)
    if samples < 1000:
        raise ConfigError("samples must be >= 1000")
    space = make_space(d)
    rows, failures = [], []

    min_eig = math.inf
    n_sets = 5 if quick else 10
    for i in range(n_sets):
        rng = substream(seed, STREAM_GRAM, 1000 * d + i)
        pts = rng.standard_normal((20, d)) * 10.0 ** rng.uniform(-2, 2, (20, 1))
        min_eig = min(min_eig, gram_psd_check(pts, t=10.0 ** rng.uniform(-1, 1)))
    rows.append({"check": "gram-min-eigenvalue", "value": min_eig,
                 "tol": -1e-8, "passed": min_eig >= -1e-8})
    if min_eig < -1e-8:
        failures.append(f"Gram matrix not PSD: min eigenvalue {min_eig:.3e}")

    pts, _ = sample_kernel_batch(space, 1.0, samples,
                                 substream(seed, STREAM_KERNEL, 10 + d))
    rngf = substream(seed, STREAM_CORPUS, 300 + d)
    n_freq = 10
    freqs = np.array([_annulus(rngf, d) for _ in range(n_freq)])
    target = np.exp(-rho(freqs))
    phase = pts @ (2.0 * math.pi * freqs.T)
    c, s = np.cos(phase), np.sin(phase)
    emp = c.mean(axis=0) + 1j * s.mean(axis=0)
    se = np.sqrt((c.var(axis=0) + s.var(axis=0)) / samples)
    gap = np.abs(emp - target)
    i = int(np.argmax(gap / se))
    cf_ok = bool(np.all(gap <= 3.0 * se))
    rows.append({"check": "char-function-worst-gap", "value": float(gap[i]),
                 "three_sigma": 3.0 * float(se[i]), "passed": cf_ok})
    if not cf_ok:
        failures.append(f"characteristic function gap {gap[i]:.4e} exceeds "
                        f"3 sigma = {3 * se[i]:.4e} at d={d}")

    xis = [_annulus(rngf, d) for _ in range(3)]
    semi = semigroup_check(0.7, 1.3, xis, n_samples=min(samples, 200_000),
                           seed=seed)
    rows.append({"check": "semigroup-fourier-gap", "value": semi.fourier_gap,
                 "tol": 5e-15, "passed": semi.fourier_gap <= 5e-15})
    rows.append({"check": "semigroup-sample-gap", "value": semi.sample_gap,
                 "three_sigma": 3.0 * semi.sample_sigma, "passed": semi.passed})
    if not semi.passed:
        failures.append("convolution semigroup identity violated "
                        f"(fourier gap {semi.fourier_gap:.2e}, sample gap "
                        f"{semi.sample_gap:.2e} vs 3 sigma "
                        f"{3 * semi.sample_sigma:.2e})")

    worst_sub = 0.0
    for x in (0.5, 1.0, 4.0):
        for gamma in (0.25, 0.5, 0.75):
            res = subordination_identity_check(x, gamma, tol=1e-9)
            worst_sub = max(worst_sub, abs(res.lhs - res.rhs) / abs(res.lhs))
    rows.append({"check": "subordination-max-rel-err", "value": worst_sub,
                 "tol": 1e-6, "passed": worst_sub <= 1e-6})
    if worst_sub > 1e-6:
        failures.append(f"subordination identity off by {worst_sub:.2e} "
                        "relative (tol 1e-6)")

    rng = substream(seed, STREAM_CORPUS, 2)
    err_c = err_g = 0.0
    for x in rng.uniform(-3.0, 3.0, 10 if quick else 20):
        err_c = max(err_c, abs(stable_density_1d(1.0, x, tol=1e-9)
                               - 2.0 / (1.0 + 4.0 * math.pi**2 * x**2)))
        err_g = max(err_g, abs(stable_density_1d(2.0, x, tol=1e-9)
                               - math.sqrt(math.pi)
                               * math.exp(-math.pi**2 * x**2)))
    rows.append({"check": "cauchy-density-max-err", "value": err_c,
                 "tol": 1e-6, "passed": err_c <= 1e-6})
    rows.append({"check": "gauss-density-max-err", "value": err_g,
                 "tol": 1e-6, "passed": err_g <= 1e-6})
    if err_c > 1e-6 or err_g > 1e-6:
        failures.append("closed-form density mismatch beyond 1e-6")
    return rows, {"d": d, "samples": samples}, failures


def _annulus(rng, d, lo=0.25, hi=2.5):
    v = rng.standard_normal(d)
    while not np.any(v):
        v = rng.standard_normal(d)
    return dilate(v, rng.uniform(lo, hi) / float(rho(v)))


def _growth_rows(table):
    return [{"d": row.d, "sup_estimate": row.sup_estimate,
             "tail_bound": row.tail_bound, "evals": row.evals,
             "seed": row.seed, "argmax": list(row.argmax),
             "g_lower": row.g_lower} for row in table.rows]


def cmd_multiplier_sup(ns, cfg, seed, quick):
    d = _check_dim(_resolve(ns, cfg, "d", default=2, cast=int))
    budget = _resolve(ns, cfg, "budget", default=120 if quick else 1000,
                      cast=int)
    if budget < 4:
        raise ConfigError("budget must be >= 4")
    tol = _positive_tol(_resolve(ns, cfg, "tol", default=2e-3, cast=float))
    row = sup_search(d, budget=budget, seed=seed, tol=tol)
    ok = math.isfinite(row.sup_estimate) and row.g_lower <= row.sup_estimate
    rows = [{"d": row.d, "sup_estimate": row.sup_estimate,
             "g_lower": row.g_lower, "tail_bound": row.tail_bound,
             "profile_tol": tol, "evals": row.evals, "seed": row.seed,
             "argmax": list(row.argmax), "passed": ok}]
    failures = [] if ok else [f"sup estimate not finite at d={d}"]
    return rows, {"budget": budget}, failures


def cmd_log_growth(ns, cfg, seed, quick):
    default_list = "1,2,4,8" if quick else "1,2,4,8,16"
    d_list = tuple(map(_check_dim, _parse_int_list(
        _resolve(ns, cfg, "d_list", default=default_list))))
    budget = _resolve(ns, cfg, "budget", default=120 if quick else 1000,
                      cast=int)
    if budget < 4:
        raise ConfigError("budget must be >= 4")
    tol = _positive_tol(_resolve(ns, cfg, "tol", default=2e-3, cast=float))
    table = log_growth_experiment(d_list, budget=budget, seed=seed, tol=tol)
    rows = _growth_rows(table)
    sups = [r["sup_estimate"] for r in rows]
    failures = []
    if any(b < a for a, b in zip(sups[:-1], sups[1:])):
        failures.append("sup estimates not monotone under padding embedding")
    if not all(map(math.isfinite, sups)):
        failures.append("non-finite sup estimate")
    meta = {"budget": budget, "profile_tol": tol,
            "fit_slope": table.fit_slope, "fit_intercept": table.fit_intercept}
    return rows, meta, failures


def cmd_maxop_check(ns, cfg, seed, quick):
    d = _resolve(ns, cfg, "d", default=1, cast=int)
    if d not in (1, 2):
        raise ConfigError("maxop-check supports --d 1 or 2")
    mc = _resolve(ns, cfg, "mc", default=500 if quick else 2000, cast=int)
    if mc < 100:
        raise ConfigError("mc must be >= 100")
    rows, failures = [], []
    for case, fn, mins, maxs, shape, win, radii, t_samples, do_split \
            in maxop_cases(d, quick):
        fine = tuple(2 * (s - 1) + 1 for s in shape)
        f_c = from_callable(fn, mins, maxs, shape)
        f_f = from_callable(fn, mins, maxs, fine)
        sc = sandwich_check(f_c, win, radii, t_samples)
        sf = sandwich_check(f_f, win, radii, t_samples)
        halved = sf.violation <= 0.5 * sc.violation + 1e-12
        ok = sc.passed and sf.passed and halved
        rows.append({"case": case, "check": "sandwich",
                     "violation_coarse": sc.violation,
                     "error_coarse": sc.error_bound,
                     "violation_fine": sf.violation,
                     "error_fine": sf.error_bound,
                     "halved": halved, "passed": ok})
        if not ok:
            failures.append(f"sandwich inequality violated beyond the "
                            f"discretization error on case {case} (d={d})")
        if do_split:
            pc = split_check(f_c, win, t_samples, mc_samples=mc, seed=seed)
            pf = split_check(f_f, win, t_samples, mc_samples=mc, seed=seed)
            halved = pf.violation <= 0.5 * pc.violation + 1e-12
            ok = pc.passed and pf.passed and halved
            rows.append({"case": case, "check": "split",
                         "violation_coarse": pc.violation,
                         "error_coarse": pc.error_bound,
                         "violation_fine": pf.violation,
                         "error_fine": pf.error_bound,
                         "halved": halved, "passed": ok})
            if not ok:
                failures.append(f"split inequality violated beyond the "
                                f"MC/discretization error on case {case} "
                                f"(d={d})")
    return rows, {"d": d, "mc_samples": mc}, failures


def cmd_accept(ns, cfg, seed, quick):
    results = run_all(seed=seed, quick=quick)
    rows, failures = [], []
    for res in results:
        rows.append({"criterion": res.number, "name": res.name,
                     "passed": res.passed, "details": res.details})
        marker = "PASS" if res.passed else "FAIL"
        print(f"criterion {res.number} {res.name}: {marker} "
              f"({res.elapsed:.1f} s)", file=sys.stderr)
        if not res.passed:
            failures.append(f"criterion {res.number} ({res.name}) failed; "
                            "see its details row")
    return rows, {"quick": quick}, failures


_HANDLERS = {
    "norm-eval": cmd_norm_eval,
    "osc-corpus": cmd_osc_corpus,
    "sigma-hat": cmd_sigma_hat,
    "kernel-verify": cmd_kernel_verify,
    "multiplier-sup": cmd_multiplier_sup,
    "log-growth": cmd_log_growth,
    "maxop-check": cmd_maxop_check,
    "accept": cmd_accept,
}

# log-growth defaults to CSV (plot-ready table); everything else to JSON.
_DEFAULT_FORMAT = {name: "json" for name in _HANDLERS}
_DEFAULT_FORMAT["log-growth"] = "csv"


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, default=None)
    common.add_argument("--d-list", dest="d_list", default=None)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--seed", default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--quick", action="store_true")
    common.add_argument("--config", default=None)

    parser = argparse.ArgumentParser(
        prog="curvemax",
        description="Experiments and acceptance checks for the anisotropic "
                    "curve maximal-function toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    extras = {
        "norm-eval": [("--point", {})],
        "osc-corpus": [("--count", {"type": int})],
        "sigma-hat": [("--xi", {}), ("--k-lo", {"type": int, "dest": "k_lo"}),
                      ("--k-hi", {"type": int, "dest": "k_hi"})],
        "kernel-verify": [("--samples", {"type": int})],
        "multiplier-sup": [],
        "log-growth": [],
        "maxop-check": [("--mc", {"type": int})],
        "accept": [],
    }
    for name in _HANDLERS:
        p = sub.add_parser(name, parents=[common])
        for flag, kwargs in extras[name]:
            p.add_argument(flag, default=None, **kwargs)
    return parser


def main(argv=None) -> int:
    ns = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(ns.config)
        seed = _resolve_seed(ns, cfg)
        quick = _resolve_quick(ns, cfg)
        ns.resolved_format = (ns.format or cfg.get("format")
                              or _DEFAULT_FORMAT[ns.command])
        if ns.resolved_format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, "
                              f"got {ns.resolved_format!r}")
        rows, meta, failures = _HANDLERS[ns.command](ns, cfg, seed, quick)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    _emit(ns, ns.command, seed, rows, meta, failures)
    _summary(ns.command, rows, failures)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
