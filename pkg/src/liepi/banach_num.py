"""Norms, exponentials and polynomial-growth fits for nilpotent matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from .exact import eye, is_exact, lincomb, to_numpy
from .rep_engine import CMatrix, element_nilpotency_degree

# spectral-radius guard for float inputs (relative to the operator norm)
TAU_SPEC = 1e-8


class PreconditionError(ValueError):
    pass


def operator_norm(b: CMatrix) -> float:
    """Largest singular value."""
    B = to_numpy(b) if is_exact(b) else np.asarray(b, dtype=complex)
    if B.size == 0:
        return 0.0
    return float(np.linalg.norm(B, 2))


def _float_nilpotency_degree(B: np.ndarray) -> Optional[int]:
    """Power-residual test: smallest d with ||(B/||B||)^d|| below TAU_SPEC."""
    nb = np.linalg.norm(B, 2)
    if nb == 0:
        return 1
    U = B / nb
    P = U
    for d in range(1, B.shape[0] + 1):
        if np.linalg.norm(P, 2) <= TAU_SPEC:
            return d
        P = P @ U
    return None


def nilpotency_degree(b: CMatrix) -> Optional[int]:
    if is_exact(b):
        return element_nilpotency_degree(b)
    return _float_nilpotency_degree(np.asarray(b, dtype=complex))


def _taylor_exact(b, d: int):
    """sum_{k<d} b^k/k! for exact b with b^d = 0."""
    N = b.shape[0]
    terms = [eye(N, b.domain)]
    P = terms[0]
    coeffs = [1]
    for k in range(1, d):
        P = P * b
        terms.append(P)
        coeffs.append(f"1/{math.factorial(k)}")
    return lincomb(coeffs, terms)


def _taylor_float(B: np.ndarray, d: int) -> np.ndarray:
    N = B.shape[0]
    out = np.eye(N, dtype=complex)
    P = np.eye(N, dtype=complex)
    for k in range(1, d):
        P = P @ B / k
        out = out + P
    return out


def matrix_exp(b: CMatrix, degree: Optional[int] = None) -> CMatrix:
    """e^b.  Exactly nilpotent input gives an exact finite Taylor sum.

    ``degree`` may pass a known nilpotency degree for float input, in which
    case the (finite) Taylor sum is used instead of Pade scaling-and-squaring.
    """
    if is_exact(b):
        d = element_nilpotency_degree(b)
        if d is not None:
            return _taylor_exact(b.to_sparse(), d)
        B = to_numpy(b)
    else:
        B = np.asarray(b, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        out = _taylor_float(B, degree) if degree is not None else expm(B)
    if not np.all(np.isfinite(out)):
        raise OverflowError("matrix exponential exceeds float range")
    return out


def exp_minus_one_degree(b: CMatrix) -> Optional[int]:
    """Nilpotency degree of e^b - 1, for nilpotent b.

    Raises PreconditionError when b is not nilpotent.  Exact input is decided
    exactly; float input via the power-residual test.
    """
    N = b.shape[0]
    if is_exact(b):
        if element_nilpotency_degree(b) is None:
            raise PreconditionError("b is not nilpotent")
        E = matrix_exp(b)
        return element_nilpotency_degree(E - eye(N, E.domain))
    B = np.asarray(b, dtype=complex)
    d = _float_nilpotency_degree(B)
    if d is None:
        raise PreconditionError("b is not quasinilpotent within tolerance")
    return _float_nilpotency_degree(_taylor_float(B, d) - np.eye(N))


# ---------------------------------------------------------------------------
# growth fits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    scales: Tuple[float, ...] = tuple(np.geomspace(1.0, 1e4, 16))
    k_max: int = 2**10
    k_points: int = 16
    fit_fraction: float = 0.5
    # binomial coefficients carry O(d^2/k) corrections, so the k fit uses a shorter window
    k_fit_fraction: float = 0.25

    def __post_init__(self):
        if not self.scales or any(t <= 0 for t in self.scales):
            raise ValueError("scales must be a non-empty list of positive numbers")
        if list(self.scales) != sorted(set(self.scales)):
            raise ValueError("scales must be strictly increasing")
        if self.k_max < 1 or self.k_points < 2:
            raise ValueError("need k_max >= 1 and at least two k points")

    def k_values(self) -> List[int]:
        ks = sorted({int(round(k)) for k in np.geomspace(1, self.k_max, self.k_points)})
        return [-k for k in reversed(ks)] + ks


@dataclass
class GrowthFit:
    """norm ~ C (1 + x)^alpha on log-log axes."""

    C: float
    alpha: float
    residual: float
    samples: List[Tuple[float, float]]
    variable: str = "t"
    degree: Optional[int] = None
    base_norm: float = 0.0
    stretch: float = 1.0

    def predicted(self, x: float) -> float:
        return self.C * (1.0 + x) ** self.alpha

    def to_json(self) -> dict:
        return {
            "C": self.C,
            "alpha": self.alpha,
            "residual": self.residual,
            "variable": self.variable,
            "degree": self.degree,
            "base_norm": self.base_norm,
            "stretch": self.stretch,
            "samples": [list(s) for s in self.samples],
        }


def _loglog_fit(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float, float]:
    """Least-squares log y = log C + alpha log(1 + x); returns (C, alpha, rms)."""
    X = np.log1p(np.asarray(xs, dtype=float))
    Y = np.log(np.asarray(ys, dtype=float))
    A = np.vstack([X, np.ones_like(X)]).T
    (alpha, logc), *_ = np.linalg.lstsq(A, Y, rcond=None)
    rms = float(np.sqrt(np.mean((A @ np.array([alpha, logc]) - Y) ** 2)))
    return float(math.exp(logc)), float(alpha), rms


def _top(n: int, frac: float) -> slice:
    keep = max(2, int(math.ceil(n * frac)))
    return slice(n - keep, n)


def _require_nilpotent(b: CMatrix) -> Tuple[np.ndarray, int]:
    d = nilpotency_degree(b)
    if d is None:
        raise PreconditionError("matrix is not quasinilpotent (spectral radius above threshold)")
    B = to_numpy(b) if is_exact(b) else np.asarray(b, dtype=complex)
    return B, d


def crossover_scale(U: np.ndarray, d: int) -> float:
    """Smallest t >= 1 past which the top Taylor term of e^{tU} dominates every lower one.

    With a_k = ||U^k|| / k!, the term t^{d-1} a_{d-1} exceeds t^k a_k once
    t >= (a_k / a_{d-1})^{1/(d-1-k)}.
    """
    if d <= 2:
        return 1.0
    a = []
    P = np.eye(U.shape[0], dtype=complex)
    for k in range(d):
        a.append(np.linalg.norm(P, 2) / math.factorial(k))
        P = P @ U
    top = a[d - 1]
    t = 1.0
    for k in range(1, d - 1):
        if a[k] > 0:
            t = max(t, (a[k] / top) ** (1.0 / (d - 1 - k)))
    return float(t)


def exp_growth_fit(
    b: CMatrix,
    spec: SweepSpec = SweepSpec(),
    scale_norm: Optional[float] = None,
    adaptive: bool = False,
) -> GrowthFit:
    """Fit ||e^{x u}|| ~ C (1 + x)^alpha with u = b / s over x in ``spec.scales``.

    s defaults to ||b||, so x plays the role of ||x u||; passing another norm
    of the same element (a coordinate norm, say) measures growth against it.
    Only the top ``fit_fraction`` of the grid enters the fit.  With
    ``adaptive`` the grid is stretched by ``crossover_scale`` so the fit
    window sits where the leading power has taken over.
    """
    B, d = _require_nilpotent(b)
    nb = operator_norm(B)
    ts = list(spec.scales)
    if nb == 0:
        return GrowthFit(1.0, 0.0, 0.0, [(t, 1.0) for t in ts], "t", 1, 0.0)
    s = nb if scale_norm is None else float(scale_norm)
    if s <= 0:
        raise ValueError("scale norm must be positive for a nonzero matrix")
    U = B / s
    stretch = crossover_scale(U, d) if adaptive else 1.0
    ts = [t * stretch for t in ts]
    samples = [(t, operator_norm(matrix_exp(t * U, degree=d))) for t in ts]
    sl = _top(len(samples), spec.fit_fraction)
    C, alpha, rms = _loglog_fit([t for t, _ in samples[sl]], [v for _, v in samples[sl]])
    return GrowthFit(C, alpha, rms, samples, "t", d, s, stretch)


def gen_binom(k: int, j: int) -> float:
    """k(k-1)...(k-j+1)/j!, valid for negative k."""
    num = 1
    for i in range(j):
        num *= k - i
    return num / math.factorial(j)


def binomial_power(B: np.ndarray, k: int, d: int) -> np.ndarray:
    """(1 + B)^k for B^d = 0 and any integer k (finite generalized binomial sum)."""
    N = B.shape[0]
    out = np.eye(N, dtype=complex)
    P = np.eye(N, dtype=complex)
    for j in range(1, d):
        P = P @ B
        out = out + gen_binom(k, j) * P
    return out


def power_sweep_fit(r: CMatrix, spec: SweepSpec = SweepSpec()) -> GrowthFit:
    """Fit ||(1 + r)^k|| against 1 + |k| over k in +-spec.k_values()."""
    R, d = _require_nilpotent(r)
    ks = spec.k_values()
    samples = [(float(k), operator_norm(binomial_power(R, k, d))) for k in ks]
    if not np.any(R):
        return GrowthFit(1.0, 0.0, 0.0, samples, "k", 1, 0.0)
    # top fraction of |k|; one exponent, separate intercepts for k > 0 and k < 0
    mags = sorted({abs(k) for k in ks})
    cut = mags[_top(len(mags), spec.k_fit_fraction)][0]
    chosen = [(k, v) for k, v in samples if abs(k) >= cut]
    X = np.log1p(np.array([abs(k) for k, _ in chosen]))
    Y = np.log(np.array([v for _, v in chosen]))
    pos = np.array([1.0 if k > 0 else 0.0 for k, _ in chosen])
    A = np.vstack([X, pos, 1.0 - pos]).T
    coef, *_ = np.linalg.lstsq(A, Y, rcond=None)
    rms = float(np.sqrt(np.mean((A @ coef - Y) ** 2)))
    C = float(math.exp(max(coef[1], coef[2])))
    return GrowthFit(C, float(coef[0]), rms, samples, "k", d, operator_norm(R))


def growth_ratio_bound(fit: GrowthFit, slack: float = 0.2) -> float:
    """max over samples of norm / (1 + |x|)^(alpha + slack)."""
    return max(v / (1.0 + abs(x)) ** (fit.alpha + slack) for x, v in fit.samples)


@dataclass
class FitComparison:
    """Fits grouped by (nilpotency degree, rounded ||r||)."""

    groups: Dict[str, List[Tuple[float, float]]] = field(default_factory=dict)

    def alpha_spread(self) -> Dict[str, float]:
        return {k: max(a for _, a in v) - min(a for _, a in v) for k, v in self.groups.items()}

    def C_spread(self) -> Dict[str, float]:
        return {k: max(c for c, _ in v) / min(c for c, _ in v) for k, v in self.groups.items()}

    def alpha_agrees(self, tol: float = 0.15) -> bool:
        return all(s <= tol for s in self.alpha_spread().values())

    def to_json(self) -> dict:
        return {
            "groups": {k: [list(x) for x in v] for k, v in self.groups.items()},
            "alpha_spread": self.alpha_spread(),
            "C_ratio": self.C_spread(),
            "alpha_agrees": self.alpha_agrees(),
        }


def compare_fits(mats: Sequence[CMatrix], spec: SweepSpec = SweepSpec(), digits: int = 6) -> FitComparison:
    """Power-sweep fits for each matrix, grouped by (d, ||r||).

    Within a group alpha should agree; C is reported but may differ.
    """
    out = FitComparison()
    for r in mats:
        fit = power_sweep_fit(r, spec)
        key = f"d={fit.degree},norm={round(fit.base_norm, digits)}"
        out.groups.setdefault(key, []).append((fit.C, fit.alpha))
    return out
