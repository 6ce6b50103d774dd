"""Nine-part acceptance suite shared by the CLI and the test gate.

Each criterion is a function of (seed, quick) returning a CriterionResult
whose details pair every reported number with its tolerance or standard
error.  Quick mode shrinks sample counts and budgets but never loosens a
tolerance or swaps out the logic under test, and a fixed seed reproduces
every number bit for bit; the final criterion checks exactly that.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

import numpy as np

from .curve_measure import DyadicWindow, mu_hat, sigma_hat
from .grid import from_callable
from .maxop import sandwich_check, split_check
from .multiplier import (g_profile, induction_diagnostics,
                         log_growth_experiment, nu_hat)
from .norms import dilate, make_space, quasi_triangle_ratio, rho
from .oscillatory import (PhasePoly, sublevel_measure, vdc_bound_check,
                          vinogradov_check)
from .rng import STREAM_CORPUS, STREAM_GRAM, STREAM_KERNEL, substream
from .stable_poisson import (gram_psd_check, sample_kernel_batch,
                             semigroup_check, stable_density_1d,
                             subordination_identity_check)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict
    elapsed: float


def jsonable(x):
    """Recursively convert numpy scalars and containers to plain JSON types."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    return x


def _annulus_point(rng: np.random.Generator, d: int,
                   lo: float = 1.0, hi: float = 2.0) -> np.ndarray:
    v = rng.standard_normal(d)
    while not np.any(v):
        v = rng.standard_normal(d)
    return dilate(v, rng.uniform(lo, hi) / float(rho(v)))


def _finish(number: int, name: str, passed: bool, details: dict,
            t0: float) -> CriterionResult:
    return CriterionResult(number=number, name=name, passed=bool(passed),
                           details=jsonable(details),
                           elapsed=time.perf_counter() - t0)


# -- criterion 1 -------------------------------------------------------------

def criterion_norm_axioms(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Homogeneity and symmetry to 1e-12 relative, quasi-triangle ratio <= 2."""
    t0 = time.perf_counter()
    trials = 1000 if quick else 10**4
    tol = 1e-12
    per_d = {}
    passed = True
    for d in (1, 2, 3, 4, 8, 16, 32, 64):
        rng = substream(seed, STREAM_CORPUS, 100 + d)
        x = rng.standard_normal((trials, d)) * 10.0 ** rng.uniform(-6, 6, (trials, 1))
        s = 10.0 ** rng.uniform(-3, 3, trials)
        r = rho(x)
        hom = float(np.max(np.abs(rho(dilate(x, s)) - s * r) / (s * r)))
        sym = float(np.max(np.abs(rho(-x) - r) / r))
        quasi = quasi_triangle_ratio(make_space(d), trials=trials, seed=seed)
        ok = hom <= tol and sym <= tol and quasi <= 2.0
        passed = passed and ok
        per_d[d] = {"homogeneity_max": hom, "symmetry_max": sym,
                    "rel_tol": tol, "quasi_ratio": quasi, "quasi_limit": 2.0}
    return _finish(1, "norm-axioms", passed,
                   {"trials_per_dim": trials, "per_dimension": per_d}, t0)


# -- criterion 2 -------------------------------------------------------------

def criterion_closed_forms(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Quadrature and density inversion against one-dimensional closed forms."""
    t0 = time.perf_counter()
    rng = substream(seed, STREAM_CORPUS, 2)
    n_freq = 25 if quick else 100
    xs = np.sign(rng.standard_normal(n_freq)) * 10.0 ** rng.uniform(-2, 1.45, n_freq)
    err_sigma = 0.0
    err_mu = 0.0
    for x in xs:
        cf_sigma = 2.0 * np.sinc(2.0 * x) - np.sinc(x)
        err_sigma = max(err_sigma, abs(sigma_hat((x,), tol=1e-11) - cf_sigma))
        err_mu = max(err_mu, abs(mu_hat((x,), tol=1e-11) - np.sinc(2.0 * x)))

    n_pts = 15 if quick else 50
    pts = rng.uniform(-3.0, 3.0, n_pts)
    err_cauchy = 0.0
    err_gauss = 0.0
    for x in pts:
        err_cauchy = max(err_cauchy, abs(
            stable_density_1d(1.0, x, tol=1e-9)
            - 2.0 / (1.0 + 4.0 * math.pi**2 * x**2)))
        err_gauss = max(err_gauss, abs(
            stable_density_1d(2.0, x, tol=1e-9)
            - math.sqrt(math.pi) * math.exp(-math.pi**2 * x**2)))

    details = {
        "curve_transform_max_err": {"value": err_sigma, "tol": 1e-9},
        "solid_transform_max_err": {"value": err_mu, "tol": 1e-9},
        "cauchy_density_max_err": {"value": err_cauchy, "tol": 1e-6},
        "gauss_density_max_err": {"value": err_gauss, "tol": 1e-6},
        "transform_points": n_freq, "density_points": n_pts,
    }
    passed = (err_sigma <= 1e-9 and err_mu <= 1e-9
              and err_cauchy <= 1e-6 and err_gauss <= 1e-6)
    return _finish(2, "closed-form-oracles", passed, details, t0)


# -- criterion 3 -------------------------------------------------------------

def criterion_kernel_certification(seed: int = 0,
                                   quick: bool = False) -> CriterionResult:
    """Gram positivity, empirical characteristic functions, semigroup law."""
    t0 = time.perf_counter()
    n_sets = 10 if quick else 50
    min_eig = math.inf
    for d in (2, 4, 8):
        for i in range(n_sets):
            rng = substream(seed, STREAM_GRAM, 1000 * d + i)
            pts = rng.standard_normal((20, d)) * 10.0 ** rng.uniform(-2, 2, (20, 1))
            t = 10.0 ** rng.uniform(-1, 1)
            min_eig = min(min_eig, gram_psd_check(pts, t=t))
    gram_ok = min_eig >= -1e-8

    n_samples = 10**5 if quick else 10**6
    n_freq = 8 if quick else 20
    cf_ok = True
    worst = {"gap": 0.0, "sigma": math.inf, "ratio": 0.0, "d": 0}
    for d in (1, 2, 4):
        space = make_space(d)
        pts, _ = sample_kernel_batch(space, 1.0,
                                     n_samples, substream(seed, STREAM_KERNEL, 10 + d))
        rngf = substream(seed, STREAM_CORPUS, 300 + d)
        freqs = np.array([_annulus_point(rngf, d, 0.25, 2.5)
                          for _ in range(n_freq)])
        target = np.exp(-rho(freqs))
        w = 2.0 * math.pi * freqs.T
        sum_c = np.zeros(n_freq)
        sum_s = np.zeros(n_freq)
        sq_c = np.zeros(n_freq)
        sq_s = np.zeros(n_freq)
        for start in range(0, n_samples, 200_000):
            phase = pts[start:start + 200_000] @ w
            c, s = np.cos(phase), np.sin(phase)
            sum_c += c.sum(axis=0)
            sum_s += s.sum(axis=0)
            sq_c += (c * c).sum(axis=0)
            sq_s += (s * s).sum(axis=0)
        mean_c, mean_s = sum_c / n_samples, sum_s / n_samples
        var = (sq_c / n_samples - mean_c**2) + (sq_s / n_samples - mean_s**2)
        se = np.sqrt(np.maximum(var, 0.0) / n_samples)
        gap = np.abs(mean_c + 1j * mean_s - target)
        cf_ok = cf_ok and bool(np.all(gap <= 3.0 * se))
        i = int(np.argmax(gap / se))
        if gap[i] / se[i] > worst["ratio"]:
            worst = {"gap": float(gap[i]), "sigma": float(se[i]),
                     "ratio": float(gap[i] / se[i]), "d": d}

    semi = semigroup_check(0.7, 1.3, [[0.3, 1.1], [1.0, 0.2], [0.05, 0.6]],
                           n_samples=50_000 if quick else 200_000, seed=seed)

    details = {
        "gram_min_eigenvalue": {"value": min_eig, "tol": -1e-8},
        "gram_sets_per_dim": n_sets,
        "cf_samples": n_samples, "cf_frequencies_per_dim": n_freq,
        "cf_worst": {"gap": worst["gap"], "three_sigma": 3.0 * worst["sigma"],
                     "d": worst["d"]},
        "semigroup_fourier_gap": {"value": semi.fourier_gap, "tol": 5e-15},
        "semigroup_sample_gap": {"value": semi.sample_gap,
                                 "three_sigma": 3.0 * semi.sample_sigma},
    }
    passed = gram_ok and cf_ok and semi.passed
    return _finish(3, "kernel-certification", passed, details, t0)


# -- criterion 4 -------------------------------------------------------------

def criterion_subordination(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Fractional power identity at a 3 x 3 grid of arguments and exponents."""
    t0 = time.perf_counter()
    worst = 0.0
    table = {}
    for x in (0.5, 1.0, 4.0):
        for gamma in (0.25, 0.5, 0.75):
            res = subordination_identity_check(x, gamma, tol=1e-9)
            rel = abs(res.lhs - res.rhs) / abs(res.lhs)
            worst = max(worst, rel)
            table[f"x={x},gamma={gamma}"] = rel
    details = {"max_rel_err": {"value": worst, "tol": 1e-6},
               "per_point_rel_err": table}
    return _finish(4, "subordination-identity", worst <= 1e-6, details, t0)


# -- criterion 5 -------------------------------------------------------------

def _sublevel_root_oracle(p: PhasePoly, a: float, b: float,
                          delta: float) -> float:
    """Measure of {|p| <= delta} from polynomial roots, no grid involved."""
    cuts = [a, b]
    for shift in (-delta, delta):
        cs = np.array(p.full_coeffs(), dtype=float)
        cs[0] += shift
        roots = np.polynomial.polynomial.polyroots(cs)
        real = roots.real[np.abs(roots.imag) < 1e-9]
        cuts.extend(float(r) for r in real if a < r < b)
    cuts = sorted(set(cuts))
    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if abs(p(0.5 * (lo + hi))) <= delta:
            total += hi - lo
    return total


def criterion_oscillatory_corpus(seed: int = 0,
                                 quick: bool = False) -> CriterionResult:
    """Random polynomial corpus: both decay bounds and the sublevel oracle."""
    t0 = time.perf_counter()
    dims = (2, 3, 4) if quick else (2, 3, 4, 5, 6)
    count = 30 if quick else 200
    oracle_count = 5 if quick else 10
    max_vin = 0.0
    max_vin_alt = 0.0
    max_vdc = 0.0
    max_sublevel_err = 0.0
    for d in dims:
        rng = substream(seed, STREAM_CORPUS, 200 + d)
        for i in range(count):
            coeffs = (np.sign(rng.standard_normal(d))
                      * 10.0 ** rng.uniform(-1, 3, d))
            b0 = rng.uniform(-3.0, 3.0)
            delta = 10.0 ** rng.uniform(-3, 0)
            vin = vinogradov_check(PhasePoly(tuple(coeffs), constant=b0),
                                   -1.0, 1.0, delta)
            max_vin = max(max_vin, vin.ratio)
            max_vin_alt = max(max_vin_alt, vin.details["alternate_ratio"])
            vdc = vdc_bound_check(PhasePoly(tuple(coeffs)), -1.0, 1.0, tol=1e-8)
            max_vdc = max(max_vdc, vdc.ratio)
            if i < oracle_count:
                p = PhasePoly(tuple(coeffs), constant=b0)
                brute = sublevel_measure(p, -1.0, 1.0, delta,
                                         grid_points=400_000)
                exact = _sublevel_root_oracle(p, -1.0, 1.0, delta)
                max_sublevel_err = max(max_sublevel_err, abs(brute - exact))
    details = {
        "dims": list(dims), "polynomials_per_dim": count,
        "vinogradov_max_ratio": max_vin,
        "vinogradov_alternate_max_ratio": max_vin_alt,
        "vdc_max_ratio": max_vdc,
        "sublevel_vs_root_oracle_max_err": {"value": max_sublevel_err,
                                            "tol": 1e-4},
    }
    passed = (math.isfinite(max_vin) and math.isfinite(max_vin_alt)
              and math.isfinite(max_vdc) and max_sublevel_err <= 1e-4)
    return _finish(5, "oscillatory-bounds", passed, details, t0)


# -- criterion 6 -------------------------------------------------------------

def criterion_multiplier_profile(seed: int = 0,
                                 quick: bool = False) -> CriterionResult:
    """Profile vs direct summation, dyadic invariance, base-case envelope."""
    t0 = time.perf_counter()
    rng = substream(seed, STREAM_CORPUS, 6)

    n_oracle = 4 if quick else 10
    max_oracle_err = 0.0
    for _ in range(n_oracle):
        x = float(np.sign(rng.standard_normal()) * 10.0 ** rng.uniform(-1, 1))
        prof = g_profile((x,), tol=1e-7)
        ks = np.arange(-200, 61)
        eta = 2.0**ks * x
        vals = np.abs(2.0 * np.sinc(2.0 * eta) - np.sinc(eta)
                      - np.exp(-(2.0**ks) * abs(x)))
        direct = float(np.sqrt(np.sum(vals**2)))
        max_oracle_err = max(max_oracle_err, abs(prof.g_value - direct))
    oracle_ok = max_oracle_err <= 1e-6

    per_dim = 3 if quick else 13
    inv_ok = True
    worst_inv = {"diff": 0.0, "allowance": math.inf}
    for d in (1, 2, 3, 4):
        rngd = substream(seed, STREAM_CORPUS, 400 + d)
        for _ in range(per_dim):
            xi = _annulus_point(rngd, d, 0.5, 2.0)
            g1 = g_profile(xi, tol=2e-3)
            g2 = g_profile(dilate(xi, 2.0), tol=2e-3)
            diff = abs(g1.g_value - g2.g_value)
            allowance = g1.tail_bound + g2.tail_bound
            if diff > allowance:
                inv_ok = False
            if diff - allowance > worst_inv["diff"] - worst_inv["allowance"]:
                worst_inv = {"diff": diff, "allowance": allowance}

    n_env = 20 if quick else 60
    etas = np.logspace(-4, 4, n_env)
    env_const = 0.0
    for eta in etas:
        ratio = abs(nu_hat((float(eta),), 0, tol=1e-9)) / min(eta, 1.0 / eta)
        env_const = max(env_const, ratio)
    env_ok = math.isfinite(env_const) and env_const < 100.0

    details = {
        "summation_oracle_max_err": {"value": max_oracle_err, "tol": 1e-6},
        "oracle_points": n_oracle,
        "dyadic_invariance_worst": worst_inv,
        "invariance_points_per_dim": per_dim,
        "base_case_envelope_constant": {"value": env_const,
                                        "grid_points": n_env},
    }
    return _finish(6, "multiplier-profile", oracle_ok and inv_ok and env_ok,
                   details, t0)


# -- criterion 7 -------------------------------------------------------------

def criterion_log_growth(seed: int = 0, quick: bool = False) -> CriterionResult:
    """Monotone sup estimates, bounded ratio to log(d+2), induction terms."""
    t0 = time.perf_counter()
    d_list = (1, 2, 4, 8) if quick else (1, 2, 4, 8, 16)
    budget = 120 if quick else 1000
    table = log_growth_experiment(d_list, budget=budget, seed=seed, tol=2e-3)
    sups = [row.sup_estimate for row in table.rows]
    monotone = all(b >= a for a, b in zip(sups[:-1], sups[1:]))
    ratios = [s / math.log(d + 2.0) for s, d in zip(sups, d_list)]
    spread = max(ratios) / min(ratios)

    ind_dims = (2, 4, 8) if quick else (2, 4, 8, 16)
    per_dim = 20 if quick else 100
    max_far = 0.0
    max_near = 0.0
    for d in ind_dims:
        rng = substream(seed, STREAM_CORPUS, 700 + d)
        for _ in range(per_dim):
            diag = induction_diagnostics(_annulus_point(rng, d), tol=2e-3)
            max_far = max(max_far, diag.term_far + diag.term_far_tail)
            max_near = max(max_near, diag.term_near + diag.term_near_tail)
    terms_ok = (math.isfinite(max_far) and math.isfinite(max_near)
                and max_far <= 100.0 and max_near <= 100.0)

    details = {
        "d_list": list(d_list), "budget": budget,
        "sup_estimates": sups,
        "tail_bounds": [row.tail_bound for row in table.rows],
        "monotone": monotone,
        "ratio_to_log": ratios,
        "ratio_spread": {"value": spread, "limit": 3.0},
        "fit_slope": table.fit_slope, "fit_intercept": table.fit_intercept,
        "induction_max_far_term": max_far,
        "induction_max_near_term": max_near,
        "induction_points_per_dim": per_dim,
    }
    passed = monotone and spread < 3.0 and terms_ok
    return _finish(7, "log-growth", passed, details, t0)


# -- criterion 8 -------------------------------------------------------------

def _gauss_mix(centers, weights, spreads):
    centers = [np.asarray(c, dtype=float) for c in centers]

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(len(pts))
        for c, w, s in zip(centers, weights, spreads):
            out += w * np.exp(-np.sum((pts - c) ** 2, axis=1) / s)
        return out

    return fn


def maxop_cases(d: int, quick: bool):
    """Grid corpus for the averaging-operator comparisons.

    Inside the comparison region every read stays where each bump is
    concave, and in 2d the bump centers sit above the box so the parabola
    coordinate of every read moves toward the peak; both keep the
    continuum inequalities strict, so measured violations are purely
    numerical and halve with the grid step.
    """
    if d == 1:
        n = 65 if quick else 129
        t = 128 if quick else 256
        win = DyadicWindow(-3, 0)
        radii = 2.0 ** np.linspace(-3, 0, 7)
        return [("constant", lambda p: np.ones(len(p)), -2.0, 2.0, (n,),
                 win, radii, t, False),
                ("two-bumps", _gauss_mix([[0.0], [0.5]], [0.75, 0.25],
                                         [30.0, 26.0]),
                 -2.0, 2.0, (n,), win, radii, t, True)]
    if d == 2:
        n = 49 if quick else 65
        t = 96 if quick else 160
        win = DyadicWindow(-4, -1)
        radii = 2.0 ** np.linspace(-4, -1, 6)
        return [("bump", _gauss_mix([[0.0, 2.0]], [1.0], [28.0]),
                 (-1.0, -1.0), (1.0, 1.0), (n, n), win, radii, t, True),
                ("two-bumps", _gauss_mix([[0.2, 2.0], [-0.1, 2.3]],
                                         [0.7, 0.3], [28.0, 32.0]),
                 (-1.0, -1.0), (1.0, 1.0), (n, n), win, radii, t, True)]
    raise ValueError("grid comparison cases exist for d = 1 or 2")


def criterion_maxop_reductions(seed: int = 0,
                               quick: bool = False) -> CriterionResult:
    """Sandwich and split inequalities on grids, with refinement halving."""
    t0 = time.perf_counter()
    mc = 500 if quick else 2000
    cases = [(d,) + c for d in (1, 2) for c in maxop_cases(d, quick)]

    passed = True
    rows = []
    for d, name, fn, mins, maxs, shape, window, radii, t_samples, do_split \
            in cases:
        fine_shape = tuple(2 * (n - 1) + 1 for n in shape)
        f_coarse = from_callable(fn, mins, maxs, shape)
        f_fine = from_callable(fn, mins, maxs, fine_shape)
        row = {"d": d, "case": name, "shape": list(shape)}

        sc = sandwich_check(f_coarse, window, radii, t_samples)
        sf = sandwich_check(f_fine, window, radii, t_samples)
        halved = sf.violation <= 0.5 * sc.violation + 1e-12
        row["sandwich"] = {
            "violation_coarse": sc.violation, "error_coarse": sc.error_bound,
            "violation_fine": sf.violation, "error_fine": sf.error_bound,
            "halved": halved,
        }
        passed = passed and sc.passed and sf.passed and halved

        if do_split:
            pc = split_check(f_coarse, window, t_samples, mc_samples=mc,
                             seed=seed)
            pf = split_check(f_fine, window, t_samples, mc_samples=mc,
                             seed=seed)
            s_halved = pf.violation <= 0.5 * pc.violation + 1e-12
            row["split"] = {
                "violation_coarse": pc.violation,
                "error_coarse": pc.error_bound,
                "violation_fine": pf.violation, "error_fine": pf.error_bound,
                "halved": s_halved,
            }
            passed = passed and pc.passed and pf.passed and s_halved
        rows.append(row)

    return _finish(8, "maxop-reductions", passed,
                   {"mc_samples": mc, "cases": rows}, t0)


# -- criterion 9 -------------------------------------------------------------

def criterion_determinism(seed: int = 0, quick: bool = True) -> CriterionResult:
    """Two quick runs of criteria 1-8 must serialize identically."""
    t0 = time.perf_counter()
    blobs = []
    for _ in range(2):
        results = [fn(seed=seed, quick=True) for _, _, fn in _CRITERIA[:8]]
        blobs.append(json.dumps(
            [{"number": r.number, "name": r.name, "passed": r.passed,
              "details": r.details} for r in results],
            sort_keys=True))
    same = blobs[0] == blobs[1]
    details = {"runs_compared": 2, "identical": same,
               "serialized_bytes": len(blobs[0]),
               "rerun_passed": all(
                   json.loads(blobs[0])[i]["passed"] for i in range(8))}
    return _finish(9, "determinism", same, details, t0)


_CRITERIA = (
    (1, "norm-axioms", criterion_norm_axioms),
    (2, "closed-form-oracles", criterion_closed_forms),
    (3, "kernel-certification", criterion_kernel_certification),
    (4, "subordination-identity", criterion_subordination),
    (5, "oscillatory-bounds", criterion_oscillatory_corpus),
    (6, "multiplier-profile", criterion_multiplier_profile),
    (7, "log-growth", criterion_log_growth),
    (8, "maxop-reductions", criterion_maxop_reductions),
    (9, "determinism", criterion_determinism),
)


def run_criterion(number: int, seed: int = 0, quick: bool = False) -> CriterionResult:
    for num, _, fn in _CRITERIA:
        if num == number:
            return fn(seed=seed, quick=quick)
    raise ValueError(f"no criterion numbered {number}")


def run_all(seed: int = 0, quick: bool = False) -> list:
    """All nine criteria in order; criterion 9 always reruns 1-8 in quick mode."""
    return [fn(seed=seed, quick=quick) for _, _, fn in _CRITERIA]
