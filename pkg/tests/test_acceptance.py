"""
End-to-end acceptance suite.

Each ``test_cNN_*`` function checks one acceptance criterion at its
stated tolerance; ``conftest.py`` prints one PASS/FAIL line per criterion
after the run. Shared sweep: 1,000 pairs, seed 42, k and theta drawn
log-uniformly from [0.1, 20].
"""

import math
import shutil
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy import optimize, special

from gammasep.distribution import GammaPair, log_pdf, sample
from gammasep.intersect import IntersectionCase, intersections, verify_intersections
from gammasep.metrics import (
    extended_ks,
    js_divergence_numeric,
    kl_divergence,
    ks_statistic,
    symmetrised_kl,
)
from gammasep.metrics import _cdf_gaps
from gammasep.oracle import (
    EmpiricalCdf,
    alpha_beta_domain_sweep,
    crossings_change_sign,
    empirical_ks,
    kl_quadrature,
    ks_grid_search,
    random_pairs,
)
from gammasep.specfun import BRANCH_POINT

SEED = 42
RANGE = (0.1, 20.0)
LN2 = math.log(2.0)


@pytest.fixture(scope="module")
def sweep():
    return random_pairs(1000, RANGE, RANGE, seed=SEED)


@pytest.fixture
def report(record_property):
    def _report(title, detail):
        record_property("title", title)
        record_property("detail", detail)
        print(f"{title}: {detail}")
    return _report


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_c01_kl_closed_form_vs_quadrature(sweep, report):
    with Timer() as t:
        worst = 0.0
        for pair in sweep:
            ref = kl_quadrature(pair.p, pair.q)
            worst = max(worst, abs(kl_divergence(pair.p, pair.q) - ref) / max(ref, 1e-6))
    report("KL closed form vs quadrature", f"max rel dev {worst:.2e} <= 1e-6, {t.elapsed:.1f}s < 10s")
    assert worst <= 1e-6
    assert t.elapsed < 10.0


def test_c02_skl_equals_kl_sum(report):
    pairs = random_pairs(10_000, RANGE, RANGE, seed=SEED, stream=2)
    with Timer() as t:
        worst = max(abs(symmetrised_kl(pr) - (kl_divergence(pr.p, pr.q) + kl_divergence(pr.q, pr.p)))
                    for pr in pairs)
    report("symmetrised KL equals sum of directions",
           f"max abs dev {worst:.2e} <= 1e-10, {t.elapsed:.2f}s < 1s")
    assert worst <= 1e-10
    assert t.elapsed < 1.0


def test_c03_ks_closed_form_vs_grid(sweep, report):
    with Timer() as t:
        worst = max(abs(ks_statistic(pr)[0] - ks_grid_search(pr)[0]) for pr in sweep)
    report("analytic KS vs grid search", f"max abs dev {worst:.2e} <= 1e-8, {t.elapsed:.1f}s < 30s")
    assert worst <= 1e-8
    assert t.elapsed < 30.0


def test_c04_intersection_correctness(sweep, report):
    residual = 0.0
    no_sign_change = 0
    for pair in sweep:
        res = intersections(pair)
        residual = max(residual, verify_intersections(pair, res))
        if res.case is IntersectionCase.GENERAL and not crossings_change_sign(pair, res):
            no_sign_change += 1
    report("intersection residuals and sign changes",
           f"max residual {residual:.2e} <= 1e-9, {no_sign_change} non-crossings")
    assert residual <= 1e-9
    assert no_sign_change == 0


def test_c05_alpha_beta_above_branch_point(report):
    with Timer() as t:
        result = alpha_beta_domain_sweep(1_000_000, (0.01, 100.0), (0.01, 100.0), seed=SEED)
    report("alpha*beta > -1/e over 1e6 draws",
           f"min {result.min_product:.6f} > {BRANCH_POINT:.6f}, {t.elapsed:.1f}s < 60s")
    assert result.min_product > BRANCH_POINT
    assert t.elapsed < 60.0


def test_c06_exact_spot_values(report):
    d, arg = ks_statistic(GammaPair.from_values(1, 1, 1, 2))
    (x,) = intersections(GammaPair.from_values(1, 1, 2, 1)).points
    report("exact spot values",
           f"D_KS err {abs(d - 0.25):.1e}, x* err {abs(arg - 2 * LN2):.1e}, x=1 err {abs(x - 1):.1e}")
    assert abs(d - 0.25) <= 1e-12
    assert abs(arg - 2.0 * LN2) <= 1e-12
    assert abs(x - 1.0) <= 1e-12


def test_c07_extended_ks_ordering(sweep, report):
    two = one = 0
    violations = []
    for pair in sweep:
        n = len(intersections(pair).points)
        d, _ = ks_statistic(pair)
        e = extended_ks(pair)
        if n == 2:
            two += 1
            if not d < e <= 2.0 * d:
                violations.append((pair, d, e))
        elif n == 1:
            one += 1
            if e != d:
                violations.append((pair, d, e))
    # a violation is rounding absorption when the smaller CDF gap, evaluated
    # through the survival functions, is under half an ulp of D_KS
    absorbed = 0
    for pair, d, e in violations:
        gaps = _cdf_gaps(pair, intersections(pair))
        if e == d and len(gaps) == 2 and min(gaps) <= 0.5 * math.ulp(d):
            absorbed += 1
    report("D_KS < D_EKS <= 2 D_KS for two crossings, equal for one",
           f"{len(violations)} violations among {two} two-crossing / {one} one-crossing pairs, "
           f"{absorbed} of them with the smaller gap below half an ulp of D_KS")
    assert not violations, f"first violation: {violations[0]}"


def _bisection_roots(pair, x_hi):
    p, q = pair.p, pair.q
    grid = np.geomspace(1e-300, x_hi, 100_001)
    diff = ((p.shape - q.shape) * np.log(grid) - grid * (1 / p.scale - 1 / q.scale)
            - special.gammaln(p.shape) - p.shape * math.log(p.scale)
            + special.gammaln(q.shape) + q.shape * math.log(q.scale))
    idx = np.flatnonzero(np.sign(diff[:-1]) * np.sign(diff[1:]) < 0)
    g = lambda x: log_pdf(p, x) - log_pdf(q, x)
    return [optimize.brentq(g, grid[i], grid[i + 1], xtol=1e-300, rtol=1e-15) for i in idx]


def test_c08_two_crossing_substitute_pair(report):
    pair = GammaPair.from_values(2, 1, 1, 2)
    roots = _bisection_roots(pair, 200.0)
    oracle_gaps = [abs(special.gammainc(2, x) - special.gammainc(1, x / 2)) for x in roots]
    oracle_eks = math.fsum(oracle_gaps)
    grid_ks, _ = ks_grid_search(pair)
    d, _ = ks_statistic(pair)
    e = extended_ks(pair)
    report("(2,1) vs (1,2): two crossings, D_EKS ~ 0.184 > D_KS ~ 0.140",
           f"D_KS {d:.6f} (grid {grid_ks:.6f}), D_EKS {e:.6f} (bisection {oracle_eks:.6f})")
    assert len(intersections(pair).points) == len(roots) == 2
    assert abs(d - grid_ks) <= 1e-8 and abs(e - oracle_eks) <= 1e-8
    assert round(e, 3) == 0.184 and round(d, 3) == 0.140
    assert e > d


def test_c09_monte_carlo_ks(report):
    pair = GammaPair.from_values(2, 1, 1, 2)
    with Timer() as t:
        a = EmpiricalCdf.from_samples(sample(pair.p, np.random.default_rng([SEED, 0]), 100_000))
        b = EmpiricalCdf.from_samples(sample(pair.q, np.random.default_rng([SEED, 1]), 100_000))
        emp = empirical_ks(a, b)
    d, _ = ks_statistic(pair)
    report("empirical KS on 1e5 samples near analytic D_KS",
           f"|{emp:.5f} - {d:.5f}| = {abs(emp - d):.5f} <= 0.01, {t.elapsed:.2f}s < 5s")
    assert abs(emp - d) <= 0.01
    assert t.elapsed < 5.0


def test_c10_js_bounds(sweep, report):
    lo, hi, self_max = math.inf, -math.inf, 0.0
    for pair in sweep:
        js = js_divergence_numeric(pair)
        lo, hi = min(lo, js), max(hi, js)
        self_max = max(self_max, js_divergence_numeric(GammaPair(pair.p, pair.p)))
    report("0 <= D_JS <= ln 2, D_JS(p, p) <= 1e-10",
           f"range [{lo:.3e}, {hi:.6f}], ln 2 = {LN2:.6f}, max self {self_max:.1e}")
    assert lo >= 0.0 and hi <= LN2 + 1e-10
    assert self_max <= 1e-10


def test_c11_metric_symmetry(sweep, report):
    worst = {"skl": 0.0, "ks": 0.0, "eks": 0.0, "js": 0.0}
    for pair in sweep:
        rev = pair.swapped()
        worst["skl"] = max(worst["skl"], abs(symmetrised_kl(pair) - symmetrised_kl(rev)))
        worst["ks"] = max(worst["ks"], abs(ks_statistic(pair)[0] - ks_statistic(rev)[0]))
        worst["eks"] = max(worst["eks"], abs(extended_ks(pair) - extended_ks(rev)))
        worst["js"] = max(worst["js"], abs(js_divergence_numeric(pair) - js_divergence_numeric(rev)))
    report("metrics invariant under swapping p and q",
           ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + " <= 1e-10")
    assert max(worst.values()) <= 1e-10


def test_c12_verify_cli_deterministic(report):
    exe = shutil.which("gammasep")
    cmd = [exe] if exe else [sys.executable, "-m", "gammasep"]
    cmd += ["verify", "--trials", "1000", "--seed", "42",
            "--kmin", "0.1", "--kmax", "20", "--tmin", "0.1", "--tmax", "20"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    report("verify CLI exits 0 with byte-identical reports",
           f"exit codes {first.returncode}/{second.returncode}, "
           f"identical={first.stdout == second.stdout}")
    assert first.returncode == 0, first.stdout.decode() + first.stderr.decode()
    assert second.returncode == 0
    assert first.stdout == second.stdout and first.stdout
