"""
Brute-force estimators used to validate the closed forms.

None of these route through the intersection solver or the closed-form
metrics: KL is integrated numerically, the KS supremum is found by a dense
grid scan plus golden-section refinement, the two-sample empirical KS works
on Monte-Carlo draws, and the alpha*beta sweep recomputes the Lambert-W
argument with vectorized scipy special functions.

Randomness is derived per trial (or per chunk) from ``(seed, index)``
through :class:`numpy.random.SeedSequence`, so results do not depend on how
work is split across threads.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy import special

from ._quad import log_space_quad
from .distribution import GammaPair, GammaParams, cdf, log_pdf, mean, mode, quantile
from .errors import DomainError
from .intersect import IntersectionCase, intersections, verify_intersections
from .metrics import kl_divergence, ks_statistic, symmetrised_kl
from .specfun import BRANCH_POINT

__all__ = [
    "OracleConfig",
    "EmpiricalCdf",
    "DomainSweep",
    "CheckResult",
    "VerificationReport",
    "trial_rng",
    "random_pair",
    "random_pairs",
    "kl_quadrature",
    "ks_grid_search",
    "empirical_ks",
    "ks_test_threshold",
    "alpha_beta_domain_sweep",
    "crossings_change_sign",
    "run_verification",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_SWEEP_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleConfig:
    grid_points: int = 100_000
    refine_iters: int = 60
    quad_tol: float = 1e-10
    seed: int = 0
    trials: int = 1000

    def __post_init__(self):
        if self.grid_points < 1000:
            raise DomainError(f"grid_points must be >= 1000, got {self.grid_points}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.refine_iters < 1:
            raise DomainError(f"refine_iters must be >= 1, got {self.refine_iters}")
        if not self.quad_tol > 0.0:
            raise DomainError(f"quad_tol must be positive, got {self.quad_tol}")


_DEFAULT = OracleConfig()


def trial_rng(seed, index, stream=0):
    """Independent generator for trial ``index`` of ``stream`` under ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(stream), int(index)]))


def _log_uniform(rng, lo, hi, size=None):
    if lo == hi:
        return lo if size is None else np.full(size, float(lo))
    draw = np.exp(rng.uniform(math.log(lo), math.log(hi), size))
    return float(draw) if size is None else draw


def random_pair(rng, k_range, theta_range):
    """Pair with shapes and scales drawn log-uniformly from the ranges."""
    kp, kq = (_log_uniform(rng, *k_range) for _ in range(2))
    tp, tq = (_log_uniform(rng, *theta_range) for _ in range(2))
    return GammaPair.from_values(kp, tp, kq, tq)


def random_pairs(n, k_range, theta_range, seed, stream=0):
    return [random_pair(trial_rng(seed, i, stream), k_range, theta_range) for i in range(n)]


def kl_quadrature(p, q, cfg=_DEFAULT):
    """KL(p || q) as the integral of p(x) (ln p(x) - ln q(x)).

    Integrated over [quantile(p, 1e-14), quantile(p, 1 - 1e-12)] in log x.
    """
    x_lo = quantile(p, 1e-14)
    x_hi = quantile(p, 1.0 - 1e-12)

    def integrand(x):
        lp = log_pdf(p, x)
        if lp < -745.0:
            return 0.0
        return math.exp(lp) * (lp - log_pdf(q, x))

    value, _ = log_space_quad(integrand, x_lo, x_hi, (mode(p), mean(p)), cfg.quad_tol)
    return value


def _cdf_gap(pair, x):
    return abs(cdf(pair.p, x) - cdf(pair.q, x))


def _golden_max(f, a, b, iters):
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (fc, c) if fc >= fd else (fd, d)


def _scan_grid(pair, n):
    p, q = pair.p, pair.q
    x_lo = min(quantile(p, 1e-14), quantile(q, 1e-14))
    x_hi = max(quantile(p, 1.0 - 1e-12), quantile(q, 1.0 - 1e-12))
    n_lin = int(round(0.7 * n))
    lin = np.linspace(x_hi / n_lin, x_hi, n_lin)
    geo = np.geomspace(x_lo, x_hi, n - n_lin)
    return np.unique(np.concatenate([geo, lin]))


def ks_grid_search(pair, cfg=_DEFAULT):
    """sup_x |P(x) - Q(x)| by direct maximization.

    Scans a grid of ``cfg.grid_points`` abscissae (70% linear, 30%
    geometric toward the origin) up to the larger 1 - 1e-12 quantile,
    then golden-section refines every near-best local maximum of the scan
    with ``cfg.refine_iters`` steps.

    Returns
    -------
    (sup, arg) : tuple of float
    """
    p, q = pair.p, pair.q
    if p == q:
        return 0.0, 0.0
    x = _scan_grid(pair, cfg.grid_points)
    gap = np.abs(special.gammainc(p.shape, x / p.scale) - special.gammainc(q.shape, x / q.scale))
    top = float(gap.max())
    if top == 0.0:
        return 0.0, 0.0

    padded = np.concatenate([[-1.0], gap, [-1.0]])
    peaks = np.flatnonzero((gap >= padded[:-2]) & (gap >= padded[2:]) & (gap >= top - 1e-3))
    peaks = peaks[np.argsort(-gap[peaks], kind="stable")][:8]

    best, arg = -1.0, 0.0
    f = lambda t: _cdf_gap(pair, t)
    for i in sorted(peaks):
        lo = x[i - 1] if i > 0 else 0.5 * x[0]
        hi = x[i + 1] if i + 1 < x.size else x[i]
        val, at = _golden_max(f, float(lo), float(hi), cfg.refine_iters)
        at_grid = f(float(x[i]))
        if at_grid > val:
            val, at = at_grid, float(x[i])
        if val > best:
            best, arg = val, at
    return min(best, 1.0), arg


@dataclass(frozen=True)
class EmpiricalCdf:
    """Step function F_n built from a sample."""

    sorted_samples: np.ndarray

    @classmethod
    def from_samples(cls, samples):
        data = np.sort(np.asarray(samples, dtype=float))
        if data.size == 0:
            raise DomainError("an empirical CDF needs at least one sample")
        return cls(data)

    @property
    def n(self):
        return int(self.sorted_samples.size)

    def __call__(self, x):
        return np.searchsorted(self.sorted_samples, x, side="right") / self.n


def empirical_ks(a, b):
    """Two-sample statistic sup_x |F_n(x) - G_m(x)|.

    Exact supremum over the pooled sample points by a merge of the two
    sorted samples; tied values are consumed together before comparing.
    """
    if a.n == 0 or b.n == 0:
        raise DomainError("empirical_ks needs two non-empty samples")
    xs = a.sorted_samples.tolist()
    ys = b.sorted_samples.tolist()
    n, m = len(xs), len(ys)
    i = j = 0
    d = 0.0
    while i < n and j < m:
        x = xs[i] if xs[i] <= ys[j] else ys[j]
        while i < n and xs[i] == x:
            i += 1
        while j < m and ys[j] == x:
            j += 1
        d = max(d, abs(i / n - j / m))
    return d


def ks_test_threshold(n, m, alpha):
    """Two-sample KS rejection threshold sqrt(-ln(alpha/2)/2 * (n + m)/(n m))."""
    if int(n) != n or int(m) != m or n < 1 or m < 1:
        raise DomainError(f"sample sizes must be positive integers, got n={n}, m={m}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    return math.sqrt(-0.5 * math.log(alpha / 2.0) * (n + m) / (n * m))


@dataclass(frozen=True)
class DomainSweep:
    """Outcome of :func:`alpha_beta_domain_sweep`.

    ``min_product`` is None when no general-case pair was drawn.
    """

    trials: int
    general_count: int
    min_product: Optional[float]
    argmin: Optional[Tuple[float, float, float, float]]

    @property
    def holds(self):
        return self.min_product is None or self.min_product > BRANCH_POINT


def _sweep_chunk(seed, index, size, k_range, theta_range):
    rng = trial_rng(seed, index, stream=1)
    kp = _log_uniform(rng, *k_range, size)
    tp = _log_uniform(rng, *theta_range, size)
    kq = _log_uniform(rng, *k_range, size)
    tq = _log_uniform(rng, *theta_range, size)
    same_k = np.abs(kp - kq) <= 1e-9 * np.maximum(kp, kq)
    same_t = np.abs(tp - tq) <= 1e-9 * np.maximum(tp, tq)
    general = ~(same_k | same_t)
    if not general.any():
        return 0, None, None
    kp, tp, kq, tq = kp[general], tp[general], kq[general], tq[general]
    dk = kp - kq
    alpha = (tp - tq) / (dk * tp * tq)
    offset = (special.gammaln(kp) + kp * np.log(tp)) - (special.gammaln(kq) + kq * np.log(tq))
    with np.errstate(over="ignore"):
        product = np.sign(alpha) * np.exp(np.log(np.abs(alpha)) + offset / dk)
    i = int(np.argmin(product))
    return int(general.sum()), float(product[i]), (float(kp[i]), float(tp[i]), float(kq[i]), float(tq[i]))


def alpha_beta_domain_sweep(trials, k_range, theta_range, seed, workers=1):
    """Smallest Lambert-W argument alpha*beta over random general-case pairs.

    Shapes and scales are drawn log-uniformly. Work is cut into fixed-size
    chunks seeded by ``(seed, chunk)``, so the result is identical for any
    ``workers``.
    """
    trials = int(trials)
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    for lo, hi in (k_range, theta_range):
        if not 0.0 < lo <= hi:
            raise DomainError(f"ranges must be positive and ordered, got {(lo, hi)}")
    jobs = [(seed, c, min(_SWEEP_CHUNK, trials - c * _SWEEP_CHUNK), k_range, theta_range)
            for c in range(math.ceil(trials / _SWEEP_CHUNK))]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda job: _sweep_chunk(*job), jobs))
    else:
        parts = [_sweep_chunk(*job) for job in jobs]

    count, best, argmin = 0, None, None
    for n, value, params in parts:
        count += n
        if value is not None and (best is None or value < best):
            best, argmin = value, params
    return DomainSweep(trials, count, best, argmin)


def crossings_change_sign(pair, result):
    """True if p - q changes sign at every non-tangent intersection.

    At a tangent point the sign must instead be the same on both sides.
    """
    pts = result.points
    for i, x in enumerate(pts):
        room = [1e-6]
        if i > 0:
            room.append(0.25 * (x - pts[i - 1]) / x)
        if i + 1 < len(pts):
            room.append(0.25 * (pts[i + 1] - x) / x)
        h = min(room)
        left = log_pdf(pair.p, x * (1 - h)) - log_pdf(pair.q, x * (1 - h))
        right = log_pdf(pair.p, x * (1 + h)) - log_pdf(pair.q, x * (1 + h))
        crossed = left * right < 0.0
        if crossed == result.tangent:
            return False
    return True


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float
    passed: bool
    note: str = ""


@dataclass
class VerificationReport:
    trials: int
    seed: int
    k_range: Tuple[float, float]
    theta_range: Tuple[float, float]
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "trials": self.trials,
            "seed": self.seed,
            "k_range": list(self.k_range),
            "theta_range": list(self.theta_range),
            "checks": [
                {"name": c.name, "max_deviation": c.max_deviation,
                 "tolerance": c.tolerance, "passed": c.passed, "note": c.note}
                for c in self.checks
            ],
            "passed": self.passed,
        }

    def to_text(self):
        lines = [
            f"verification: trials={self.trials} seed={self.seed} "
            f"k=[{self.k_range[0]:g}, {self.k_range[1]:g}] "
            f"theta=[{self.theta_range[0]:g}, {self.theta_range[1]:g}]",
            f"{'check':<30} {'max_deviation':>14} {'tolerance':>10}  status",
        ]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            note = f"  ({c.note})" if c.note else ""
            lines.append(f"{c.name:<30} {c.max_deviation:>14.6e} {c.tolerance:>10.1e}  {status}{note}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def run_verification(trials=1000, seed=42, k_range=(0.1, 20.0), theta_range=(0.1, 20.0),
                     cfg=_DEFAULT):
    """Run every closed-form-versus-oracle check and collect the deviations.

    Sweeps: KL against quadrature, KS against the grid search,
    intersection residuals and crossing signs on ``trials`` pairs; the
    symmetrised-KL identity on ``10 * trials`` pairs; the alpha*beta domain
    sweep on ``1000 * trials`` draws.
    """
    report = VerificationReport(trials, seed, tuple(k_range), tuple(theta_range))
    pairs = random_pairs(trials, k_range, theta_range, seed)

    kl_dev = 0.0
    for pr in pairs:
        ref = kl_quadrature(pr.p, pr.q, cfg)
        kl_dev = max(kl_dev, abs(kl_divergence(pr.p, pr.q) - ref) / max(ref, 1e-6))
    report.checks.append(CheckResult("kl_closed_vs_quadrature", kl_dev, 1e-6, kl_dev <= 1e-6))

    ks_dev = 0.0
    residual = 0.0
    bad_signs = 0
    for pr in pairs:
        d_ks, _ = ks_statistic(pr)
        sup, _ = ks_grid_search(pr, cfg)
        ks_dev = max(ks_dev, abs(d_ks - sup))
        res = intersections(pr)
        residual = max(residual, verify_intersections(pr, res))
        if res.case is IntersectionCase.GENERAL and not crossings_change_sign(pr, res):
            bad_signs += 1
    report.checks.append(CheckResult("ks_closed_vs_grid", ks_dev, 1e-8, ks_dev <= 1e-8))
    report.checks.append(CheckResult("intersection_residual", residual, 1e-9, residual <= 1e-9))
    report.checks.append(CheckResult("crossing_sign_changes", float(bad_signs), 0.0, bad_signs == 0))

    skl_dev = 0.0
    for pr in random_pairs(10 * trials, k_range, theta_range, seed, stream=2):
        total = kl_divergence(pr.p, pr.q) + kl_divergence(pr.q, pr.p)
        skl_dev = max(skl_dev, abs(symmetrised_kl(pr) - total))
    report.checks.append(CheckResult("skl_equals_kl_sum", skl_dev, 1e-10, skl_dev <= 1e-10))

    sweep = alpha_beta_domain_sweep(1000 * trials, k_range, theta_range, seed)
    if sweep.min_product is None:
        report.checks.append(CheckResult("alpha_beta_above_branch", 0.0, 0.0, True,
                                         "no general-case pairs drawn"))
    else:
        margin = sweep.min_product - BRANCH_POINT
        report.checks.append(CheckResult(
            "alpha_beta_above_branch", margin, 0.0, sweep.holds,
            f"min alpha*beta = {sweep.min_product:.9g}, deviation is the margin above -1/e",
        ))
    return report
