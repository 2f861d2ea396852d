"""Paired statistics for comparing two runs of the same benchmark.

Covers the usual battery for n-of-5-seeds comparisons: two-sided paired
t-test, paired Cohen's d (mean difference over the sample standard deviation
of differences), a percentile bootstrap CI of the mean difference, and
post-hoc power of the paired t-test via the noncentral-t distribution with
noncentrality d*sqrt(n).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats as scipy_stats

from ..errors import DataError

DEFAULT_RESAMPLES = 10_000
DEFAULT_ALPHA = 0.05


@dataclass(frozen=True)
class PairedSamples:
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise DataError(f"paired samples differ in length: {len(self.a)} vs {len(self.b)}")
        if len(self.a) < 2:
            raise DataError("paired statistics require n >= 2")
        for seq in (self.a, self.b):
            if any(not math.isfinite(x) for x in seq):
                raise DataError("paired samples must be finite")

    @property
    def n(self) -> int:
        return len(self.a)

    def diffs(self) -> np.ndarray:
        return np.asarray(self.a, dtype=float) - np.asarray(self.b, dtype=float)


@dataclass(frozen=True)
class StatReport:
    mean_diff: float
    t: float
    p: float
    d: float
    power: float
    ci: tuple[float, float]
    n: int
    alpha: float
    resamples: int

    def as_dict(self) -> dict:
        return {
            "mean_diff": self.mean_diff,
            "t": self.t,
            "p": self.p,
            "cohens_d": self.d,
            "power": self.power,
            "ci_low": self.ci[0],
            "ci_high": self.ci[1],
            "n": self.n,
            "alpha": self.alpha,
            "resamples": self.resamples,
        }


def _sd_diff(samples: PairedSamples) -> float:
    sd = float(samples.diffs().std(ddof=1))
    if sd == 0.0:
        raise DataError("paired differences have zero variance")
    return sd


def paired_t_test(samples: PairedSamples) -> tuple[float, float]:
    """Two-sided paired t: t = mean(diff) / (sd(diff)/sqrt(n)), df = n-1."""
    diffs = samples.diffs()
    sd = _sd_diff(samples)
    n = samples.n
    t = float(diffs.mean() / (sd / math.sqrt(n)))
    p = float(2.0 * scipy_stats.t.sf(abs(t), df=n - 1))
    return t, p


def cohens_d_paired(samples: PairedSamples) -> float:
    """d = mean(diff) / sd(diff), sample sd with n-1."""
    return float(samples.diffs().mean() / _sd_diff(samples))


def bootstrap_ci(
    samples: PairedSamples,
    level: float = 0.95,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
) -> tuple[float, float]:
    """Percentile bootstrap interval of the mean difference; seeded, so exact
    replays are possible. Resampling is over pair indices."""
    if not 0.0 < level < 1.0:
        raise DataError(f"confidence level must lie in (0,1), got {level}")
    if resamples < 1:
        raise DataError("resamples must be >= 1")
    diffs = samples.diffs()
    rng = np.random.default_rng(seed)
    indices = rng.integers(0, samples.n, size=(resamples, samples.n))
    means = diffs[indices].mean(axis=1)
    lo_q = (1.0 - level) / 2.0
    lo, hi = np.quantile(means, [lo_q, 1.0 - lo_q])
    return float(lo), float(hi)


def post_hoc_power(d: float, n: int, alpha: float = DEFAULT_ALPHA) -> float:
    """Power of the two-sided paired t-test for effect size d at sample size n.

    Uses the noncentral-t with df = n-1 and noncentrality d*sqrt(n).  For
    extreme effect sizes where the noncentral CDF underflows, power is 1 to
    numerical precision.
    """
    if n < 2:
        raise DataError("power analysis requires n >= 2")
    if not 0.0 < alpha < 1.0:
        raise DataError(f"alpha must lie in (0,1), got {alpha}")
    df = n - 1
    ncp = abs(d) * math.sqrt(n)
    t_crit = scipy_stats.t.ppf(1.0 - alpha / 2.0, df)
    upper = scipy_stats.nct.sf(t_crit, df, ncp)
    lower = scipy_stats.nct.cdf(-t_crit, df, ncp)
    power = float(upper + lower)
    if math.isnan(power):
        # scipy's nct underflows for very large noncentrality; the rejection
        # probability is 1 to machine precision there.
        return 1.0 if ncp > t_crit else 0.0
    return min(1.0, max(0.0, power))


def compare(
    samples: PairedSamples,
    alpha: float = DEFAULT_ALPHA,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
) -> StatReport:
    """Full battery over one paired comparison."""
    t, p = paired_t_test(samples)
    d = cohens_d_paired(samples)
    power = post_hoc_power(d, samples.n, alpha)
    ci = bootstrap_ci(samples, level=1.0 - alpha, resamples=resamples, seed=seed)
    return StatReport(
        mean_diff=float(samples.diffs().mean()),
        t=t,
        p=p,
        d=d,
        power=power,
        ci=ci,
        n=samples.n,
        alpha=alpha,
        resamples=resamples,
    )


def load_run_values(path: Path | str) -> tuple[float, ...]:
    """Read per-seed metric values from JSON: a bare list or {"values": [...]}."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read run values from {path}: {exc}") from exc
    if isinstance(payload, dict):
        payload = payload.get("values")
    if not isinstance(payload, list) or not payload:
        raise DataError(f"{path}: expected a JSON list of numbers or {{'values': [...]}}")
    try:
        return tuple(float(x) for x in payload)
    except (TypeError, ValueError) as exc:
        raise DataError(f"{path}: run values must be numeric") from exc
