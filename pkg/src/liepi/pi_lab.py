"""Noncommutative polynomial identities and the condition harness.

``check_conditions`` evaluates, on one finite-dimensional representation
rho of g with nilpotent radical n, the six conditions:

  1   the generated algebra satisfies a polynomial identity
  2a  every rho(eta), eta in n, is nilpotent
  2b  the non-unital algebra generated by rho(n) is nilpotent (degree d)
  3a  every e^{rho(eta)} - 1 is nilpotent
  3b  the algebra generated by those e^{rho(eta)} - 1 is nilpotent (degree d)
  4   ||e^{rho(eta)}|| grows at most polynomially in ||rho(eta)||

All six hold on every finite-dimensional representation, so any
disagreement among the exact verdicts signals a bug.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .banach_num import SweepSpec, exp_growth_fit, exp_minus_one_degree, matrix_exp
from .exact import eye, is_exact, lincomb, to_exact, to_numpy
from .lie_core import LieAlgebra, Subspace, nilpotent_radical
from .rep_engine import (
    CMatrix,
    MatrixRep,
    algebra_nilpotency_degree,
    associative_closure,
    element_nilpotency_degree,
    validate_rep,
)

STANDARD_CAP = 8
PI_TOL = 1e-10
GROWTH_RESIDUAL = 0.05


class PIError(ValueError):
    pass


# ---------------------------------------------------------------------------
# noncommutative polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NCPolynomial:
    n_vars: int
    terms: Tuple[Tuple[object, Tuple[int, ...]], ...]

    def __post_init__(self):
        merged: Dict[Tuple[int, ...], object] = {}
        for c, w in self.terms:
            w = tuple(w)
            if not w:
                raise PIError("words must be non-empty")
            if any(not 0 <= i < self.n_vars for i in w):
                raise PIError(f"word {w} uses a variable outside 0..{self.n_vars - 1}")
            merged[w] = merged.get(w, 0) + c
        terms = tuple((c, w) for w, c in merged.items() if c != 0)
        if not terms:
            raise PIError("polynomial is trivial")
        object.__setattr__(self, "terms", terms)

    @property
    def degree(self) -> int:
        return max(len(w) for _, w in self.terms)

    def __str__(self) -> str:
        parts = []
        for c, w in self.terms:
            mono = "".join(f"x{i + 1}" for i in w)
            parts.append(f"{'+' if c > 0 else '-'} {abs(c) if abs(c) != 1 else ''}{mono}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


def _perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def standard_identity(n: int) -> NCPolynomial:
    """S_n = sum over permutations of sgn(s) x_s(1) ... x_s(n)."""
    if n < 2:
        raise PIError("n must be at least 2")
    if n > STANDARD_CAP:
        raise PIError(f"S_{n} has {math.factorial(n)} terms; cap is S_{STANDARD_CAP}")
    return NCPolynomial(n, tuple((_perm_sign(p), p) for p in permutations(range(n))))


def composite_identity(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    """q(p(a_11..a_n1), ..., p(a_1m..a_nm)) in n*m variables.

    Variable a_ij is index j*n + i.  If p holds on A/I and q holds on the
    ideal I, every p-value lands in I and the composite vanishes on A.
    Blocks use disjoint variables, so no cancellation can occur.
    """
    n, m = p.n_vars, q.n_vars
    out: Dict[Tuple[int, ...], object] = {}
    for cq, wq in q.terms:
        partial = [(cq, ())]
        for j in wq:
            partial = [
                (c * cp, w + tuple(j * n + i for i in wp))
                for c, w in partial
                for cp, wp in p.terms
            ]
        for c, w in partial:
            out[w] = out.get(w, 0) + c
    return NCPolynomial(n * m, tuple((c, w) for w, c in out.items()))


def eval_nc_poly(p: NCPolynomial, args: Sequence[CMatrix]) -> CMatrix:
    if len(args) != p.n_vars:
        raise PIError(f"expected {p.n_vars} arguments, got {len(args)}")
    exact = all(is_exact(a) for a in args)
    if exact:
        from .exact import unify

        args = unify(*[a.to_sparse() for a in args])
    else:
        args = [to_numpy(a) if is_exact(a) else np.asarray(a, dtype=complex) for a in args]
    cache: Dict[Tuple[int, ...], CMatrix] = {}

    def word(w):
        hit = cache.get(w)
        if hit is None:
            hit = args[w[0]] if len(w) == 1 else word(w[:-1]) * args[w[-1]] if exact else word(w[:-1]) @ args[w[-1]]
            cache[w] = hit
        return hit

    if exact:
        return lincomb([Fraction(c) if not hasattr(c, "y") else c for c, _ in p.terms], [word(w) for _, w in p.terms])
    out = np.zeros_like(args[0])
    for c, w in p.terms:
        out = out + complex(c) * word(w)
    return out


def standard_eval(args: np.ndarray) -> np.ndarray:
    """S_k on a batch: args has shape (..., k, N, N).

    Subset recursion S(T) = sum_{i in T} (-1)^{pos(i,T)} x_i S(T - {i})
    uses 2^k k products instead of k! k.
    """
    args = np.asarray(args)
    k = args.shape[-3]
    N = args.shape[-1]
    batch = args.shape[:-3]
    eye_ = np.broadcast_to(np.eye(N, dtype=args.dtype), batch + (N, N))
    F = {0: eye_}
    for size in range(1, k + 1):
        for T in combinations(range(k), size):
            mask = sum(1 << i for i in T)
            acc = None
            for pos, i in enumerate(T):
                term = args[..., i, :, :] @ F[mask ^ (1 << i)]
                if pos % 2:
                    term = -term
                acc = term if acc is None else acc + term
            F[mask] = acc
        if size > 1:
            for T in combinations(range(k), size - 1):
                del F[sum(1 << i for i in T)]
    return F[(1 << k) - 1]


def matrix_units(N: int) -> np.ndarray:
    out = np.zeros((N * N, N, N), dtype=np.int64)
    for a in range(N):
        for b in range(N):
            out[a * N + b, a, b] = 1
    return out


def standard_on_matrix_units(k: int, N: int) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """Exact (integer) evaluation of S_k on every k-set of N x N matrix units.

    S_k is multilinear and alternating, so this decides S_k on all of M_N.
    Returns (vanishes, first nonvanishing index tuple).
    """
    units = matrix_units(N)
    combos = list(combinations(range(N * N), k))
    if not combos:
        return True, None
    batch = units[np.array(combos)]
    vals = standard_eval(batch)
    nz = np.any(vals.reshape(len(combos), -1) != 0, axis=1)
    if nz.any():
        return False, combos[int(np.argmax(nz))]
    return True, None


def standard_random_check(
    k: int, gens: Sequence[np.ndarray], trials: int, rng: np.random.Generator
) -> float:
    """Max relative size of S_k on random combinations of ``gens``."""
    G = np.stack([np.asarray(g, dtype=complex) for g in gens])
    coeffs = rng.standard_normal((trials, k, len(gens))) + 1j * rng.standard_normal((trials, k, len(gens)))
    X = np.einsum("tkg,gij->tkij", coeffs, G)
    vals = standard_eval(X)
    norms = np.linalg.norm(X, ord=2, axis=(-2, -1))
    scale = np.prod(norms, axis=1)
    scale = np.where(scale == 0, 1.0, scale)
    return float(np.max(np.abs(vals).max(axis=(-2, -1)) / scale))


# ---------------------------------------------------------------------------
# condition reports
# ---------------------------------------------------------------------------


@dataclass
class ConditionReport:
    verdicts: Dict[str, dict]
    consistent: bool
    mode: str = "single-rep"
    numeric: bool = False
    degrees: Dict[str, object] = field(default_factory=dict)
    growth: Dict[str, object] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    alarms: List[str] = field(default_factory=list)

    def holds(self, key: str) -> bool:
        return bool(self.verdicts[key]["holds"])

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "numeric": self.numeric,
            "conditions": self.verdicts,
            "consistent": self.consistent,
            "degrees": self.degrees,
            "growth": self.growth,
            "warnings": self.warnings,
            "alarms": self.alarms,
        }


def _pi_verdict(R: MatrixRep, A_dim: int, A_basis, rng: np.random.Generator, trials: int = 50) -> dict:
    N = R.N
    m = A_dim
    k = min(2 * N, m + 1)
    if k == m + 1:
        out = {"holds": True, "identity": f"S_{k}", "certificate": "dimension",
               "detail": f"S_{k} is multilinear alternating and the algebra has dimension {m}"}
        if 2 <= k <= 10 and m:
            err = standard_random_check(k, [to_numpy(B) if is_exact(B) else B for B in A_basis], trials, rng)
            out["sampled_max_relative"] = err
            out["holds"] = err <= PI_TOL
        return out
    if N <= 3:
        ok, witness = standard_on_matrix_units(k, N)
        return {"holds": ok, "identity": f"S_{k}", "certificate": "matrix units, exact",
                "counterexample": list(witness) if witness else None}
    if k <= 12:
        err = standard_random_check(k, [to_numpy(B) if is_exact(B) else B for B in A_basis], trials, rng)
        return {"holds": err <= PI_TOL, "identity": f"S_{k}", "certificate": "random sampling",
                "sampled_max_relative": err}
    return {"holds": True, "identity": f"S_{m + 1}", "certificate": "dimension",
            "detail": f"S_{m + 1} is multilinear alternating and the algebra has dimension {m}"}


def _nil_coords(nil: Subspace, rng: random.Random, samples: int) -> List[Tuple[Tuple[int, ...], tuple]]:
    """Basis vectors plus small-integer combinations, with their coordinates."""
    k = nil.dim
    out = []
    for i, v in enumerate(nil.basis):
        out.append((tuple(1 if j == i else 0 for j in range(k)), tuple(v)))
    for _ in range(samples if k else 0):
        while True:
            c = tuple(rng.randint(-3, 3) for _ in range(k))
            if any(c):
                break
        vec = [to_exact(0)] * nil.parent.dim
        for ci, b in zip(c, nil.basis):
            if ci:
                vec = [x + to_exact(ci) * y for x, y in zip(vec, b)]
        out.append((c, tuple(vec)))
    return out


def _growth_condition(mats: Sequence[np.ndarray], spec: SweepSpec, scales: Optional[Sequence[float]] = None) -> dict:
    fits = []
    for i, B in enumerate(mats):
        fit = exp_growth_fit(B, spec, scale_norm=None if scales is None else scales[i], adaptive=True)
        fits.append(fit)
    if not fits:
        return {"holds": True, "vacuous": True, "alpha": 0.0, "C": 1.0, "residual": 0.0, "fits": []}
    worst = max(fits, key=lambda f: f.alpha)
    ok = all(math.isfinite(f.alpha) and f.residual < GROWTH_RESIDUAL for f in fits)
    return {
        "holds": ok,
        "numeric": True,
        "alpha": worst.alpha,
        "C": max(f.C for f in fits),
        "residual": max(f.residual for f in fits),
        "fits": [
            {"alpha": f.alpha, "C": f.C, "residual": f.residual, "degree": f.degree, "stretch": f.stretch}
            for f in fits
        ],
    }


def _evaluate(
    R: MatrixRep,
    *,
    seed: int,
    samples: int,
    growth_samples: int,
    spec: SweepSpec,
    hom_norm: Optional[str] = None,
) -> ConditionReport:
    bad = validate_rep(R)
    if bad is not None:
        raise PIError(f"not a representation: bracket of basis pair {bad.pair} off by {bad.residual:.3g}")
    L = R.algebra
    nil = nilpotent_radical(L)
    rng = random.Random(seed)
    nprng = np.random.default_rng(seed)
    exact = R.exact
    verdicts: Dict[str, dict] = {}
    alarms: List[str] = []
    warnings: List[str] = []

    A = associative_closure(R.mats, unital=True, N=R.N)
    verdicts["1"] = _pi_verdict(R, A.dim, A.basis, nprng)

    etas = _nil_coords(nil, rng, samples)
    images = [R.image(v) for _, v in etas]

    deg2a = [element_nilpotency_degree(M) for M in images]
    verdicts["2a"] = {
        "holds": all(d is not None for d in deg2a),
        "checked": len(deg2a),
        "max_degree": max((d for d in deg2a if d is not None), default=1),
    }

    gens = [R.image(v) for v in nil.basis]
    A0 = associative_closure(gens, unital=False, N=R.N)
    d2b = algebra_nilpotency_degree(A0)
    verdicts["2b"] = {"holds": d2b is not None, "degree": d2b, "algebra_dim": A0.dim}

    deg3a = []
    for M in images:
        try:
            deg3a.append(exp_minus_one_degree(M))
        except ValueError:
            deg3a.append(None)
    verdicts["3a"] = {
        "holds": all(d is not None for d in deg3a),
        "checked": len(deg3a),
        "max_degree": max((d for d in deg3a if d is not None), default=1),
    }
    mismatched = [i for i, (a, b) in enumerate(zip(deg2a, deg3a)) if a != b]
    if mismatched:
        alarms.append(f"degree of rho(eta) and of e^rho(eta) - 1 differ at sample {mismatched[0]}")

    exp_gens = []
    for M in gens:
        E = matrix_exp(M)
        exp_gens.append(E - eye(R.N, E.domain) if is_exact(E) else E - np.eye(R.N))
    A3 = associative_closure(exp_gens, unital=False, N=R.N)
    d3b = algebra_nilpotency_degree(A3)
    per_elem_ok = d3b is not None and all(d is not None and d <= d3b for d in deg3a)
    verdicts["3b"] = {"holds": d3b is not None and per_elem_ok, "degree": d3b, "algebra_dim": A3.dim}
    if d2b != d3b:
        alarms.append(f"d(2b) = {d2b} differs from d(3b) = {d3b}")
    if d3b is not None and not per_elem_ok:
        alarms.append("an element degree exceeds the algebra degree")

    # condition 4: a few elements, in float
    pick = etas[: nil.dim] + etas[nil.dim: nil.dim + growth_samples]
    floats = [to_numpy(R.image(v)) if exact else R.image(v) for _, v in pick]
    degrees = {"2a": max((d or 0) for d in deg2a) if deg2a else 1, "2b": d2b, "3a": verdicts["3a"]["max_degree"], "3b": d3b}
    growth_extra = {}
    if hom_norm is None:
        verdicts["4"] = _growth_condition(floats, spec)
    else:
        norms = [_coord_norm(c, hom_norm) for c, _ in pick]
        verdicts["4"] = _growth_condition(floats, spec, scales=norms)
        K = _hom_constant(R, nil, hom_norm, nprng)
        verdicts["4"]["norm"] = hom_norm
        verdicts["4"]["K"] = K
        growth_extra["K"] = K
    growth = {"alpha": verdicts["4"]["alpha"], "C": verdicts["4"]["C"], "residual": verdicts["4"]["residual"], **growth_extra}

    exact_keys = ["1", "2a", "2b", "3a", "3b"]
    flags = {verdicts[k]["holds"] for k in exact_keys}
    if len(flags) != 1:
        alarms.append("verdicts " + ", ".join(f"{k}={verdicts[k]['holds']}" for k in exact_keys) + " disagree")
    if verdicts["4"]["holds"] != verdicts["2b"]["holds"]:
        warnings.append("growth fit disagrees with the exact verdicts (numeric only)")
    if not exact:
        warnings.append("float representation: nilpotency decided with relative thresholds")
    return ConditionReport(
        verdicts=verdicts,
        consistent=not alarms,
        numeric=not exact,
        degrees=degrees,
        growth=growth,
        warnings=warnings,
        alarms=alarms,
    )


def check_conditions(
    R: MatrixRep, *, seed: int = 0, samples: int = 200, growth_samples: int = 3, spec: SweepSpec = SweepSpec()
) -> ConditionReport:
    return _evaluate(R, seed=seed, samples=samples, growth_samples=growth_samples, spec=spec)


def _coord_norm(c: Sequence, norm: str) -> float:
    v = np.array([complex(x) for x in c])
    if norm == "euclidean":
        return float(np.linalg.norm(v, 2))
    if norm == "basis":
        return float(np.linalg.norm(v, 1))
    raise PIError(f"unknown norm {norm!r}; use 'euclidean' or 'basis'")


def _hom_constant(R: MatrixRep, nil: Subspace, norm: str, rng: np.random.Generator, trials: int = 256) -> float:
    """K = sup ||rho(eta)|| / |eta| over the unit sphere of n (sampled)."""
    if nil.is_zero():
        return 0.0
    B = [to_numpy(R.image(v)) if R.exact else R.image(v) for v in nil.basis]
    k = len(B)
    if norm == "basis":
        # the l1 unit ball is the hull of +-basis vectors
        return max(float(np.linalg.norm(M, 2)) for M in B)
    _coord_norm([0] * k, norm)
    cands = list(np.eye(k)) + list(rng.standard_normal((trials, k)) + 1j * rng.standard_normal((trials, k)))
    best = 0.0
    for c in cands:
        c = c / np.linalg.norm(c)
        M = sum(ci * Mi for ci, Mi in zip(c, B))
        best = max(best, float(np.linalg.norm(M, 2)))
    return best


def check_conditions_hom(
    R: MatrixRep,
    norm: str = "euclidean",
    *,
    seed: int = 0,
    samples: int = 200,
    growth_samples: int = 3,
    spec: SweepSpec = SweepSpec(),
) -> ConditionReport:
    """As ``check_conditions`` with condition 4 measured against a norm |.| on n.

    Coordinates refer to the echelon basis of n returned by nilpotent_radical.
    """
    _coord_norm([0], norm)
    return _evaluate(R, seed=seed, samples=samples, growth_samples=growth_samples, spec=spec, hom_norm=norm)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


@dataclass
class RepFamily:
    generator: Callable[[int], MatrixRep]
    n_min: int
    n_max: int
    label: str = "family"

    @classmethod
    def truncations(cls, L: LieAlgebra, n_min: int = 1, n_max: int = 8) -> "RepFamily":
        from .pbw import left_regular_rep, truncated_quotient

        return cls(lambda n: left_regular_rep(truncated_quotient(L, n)), n_min, n_max, "truncations")

    @classmethod
    def constant(cls, R: MatrixRep, n_min: int = 1, n_max: int = 4) -> "RepFamily":
        return cls(lambda n: R, n_min, n_max, "constant")


UNBOUNDED_RULE = "no uniform nilpotency degree within the tested range, so the completed direct sum is not PI"
BOUNDED_RULE = "degrees stay bounded within the tested range, consistent with a PI completion"


@dataclass
class FamilyReport:
    ns: List[int]
    degrees: List[Optional[int]]
    dims: List[int]
    verdict: str
    rule: str

    def to_json(self) -> dict:
        return {
            "members": [{"n": n, "d": d, "N": N} for n, d, N in zip(self.ns, self.degrees, self.dims)],
            "verdict": self.verdict,
            "rule": self.rule,
        }

    def csv(self) -> str:
        lines = ["n,d_n,N"] + [f"{n},{'' if d is None else d},{N}" for n, d, N in zip(self.ns, self.degrees, self.dims)]
        return "\n".join(lines) + "\n"


def family_analysis(F: RepFamily) -> FamilyReport:
    """d_n = nilpotency degree of the algebra generated by theta_n(n) for each member."""
    ns, degrees, dims = [], [], []
    nil = None
    for n in range(F.n_min, F.n_max + 1):
        R = F.generator(n)
        bad = validate_rep(R)
        if bad is not None:
            raise PIError(f"family member {n} is not a representation (pair {bad.pair})")
        if nil is None or nil.parent is not R.algebra:
            nil = nilpotent_radical(R.algebra)
        gens = [R.image(v) for v in nil.basis]
        A0 = associative_closure(gens, unital=False, N=R.N)
        ns.append(n)
        degrees.append(algebra_nilpotency_degree(A0))
        dims.append(R.N)
    finite = [d for d in degrees if d is not None]
    if len(finite) != len(degrees):
        verdict, rule = "not nilpotent", "some member has a non-nilpotent image of n"
    elif len(finite) >= 2 and finite[-1] > max(finite[:-1]):
        verdict, rule = "unbounded within range", UNBOUNDED_RULE
    else:
        verdict, rule = "bounded", BOUNDED_RULE
    return FamilyReport(ns, degrees, dims, verdict, rule)
