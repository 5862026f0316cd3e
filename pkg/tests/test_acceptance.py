"""Acceptance criteria 1-9.

Each check returns (ok, detail).  Under pytest every criterion prints one
``PASS``/``FAIL`` line; ``python tests/test_acceptance.py`` prints the same
lines without pytest.
"""

import random
import sys
import time

import numpy as np
import pytest

from liepi import catalog
from liepi.banach_num import exp_growth_fit, exp_minus_one_degree, power_sweep_fit
from liepi.exact import matrix, to_exact
from liepi.lie_core import classify, nilpotent_radical
from liepi.pbw import left_regular_rep, truncated_quotient, two_sided_ideal_identity_check
from liepi.pi_lab import (
    PI_TOL,
    RepFamily,
    check_conditions,
    composite_identity,
    eval_nc_poly,
    family_analysis,
    standard_identity,
    standard_on_matrix_units,
    standard_eval,
)
from liepi.random_instances import random_nilpotent, random_reps
from liepi.rep_engine import (
    algebra_nilpotency_degree,
    associative_closure,
    element_nilpotency_degree,
    radical_containment_check,
    span_algebra,
)

SUITE_SEED = 0
_suite_cache = {}


def suite():
    if "reps" not in _suite_cache:
        _suite_cache["reps"] = random_reps(100, seed=SUITE_SEED)
    return _suite_cache["reps"]


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for e in catalog.entries():
        s = classify(e.algebra)
        got = (s.dim_radical, s.dim_nilradical, s.dim_levi)
        if got != e.radical_dims:
            bad.append(f"{e.name}: {got} != {e.radical_dims}")
    two = list(nilpotent_radical(catalog.nonabelian2()).basis)
    if two != [(to_exact(0), to_exact(1))]:
        bad.append(f"nonabelian2 nilradical basis {two}")
    for name in ("abelian2", "sl2", "gl2"):
        if not nilpotent_radical(catalog.get(name).algebra).is_zero():
            bad.append(f"{name} has nonzero nilradical")
    dt = time.perf_counter() - t0
    if dt >= 1.0:
        bad.append(f"runtime {dt:.2f}s")
    return not bad, f"{len(catalog.entries())} catalog entries exact" if not bad else "; ".join(bad)


def criterion_2():
    t0 = time.perf_counter()
    bad = []
    for rr in suite():
        r = check_conditions(rr.rep, seed=rr.seed)
        if not all(r.holds(k) for k in ("1", "2a", "2b", "3a", "3b")):
            bad.append(f"{rr.name}/{rr.seed}: a verdict is false")
        if r.degrees["2b"] != r.degrees["3b"]:
            bad.append(f"{rr.name}/{rr.seed}: d2b={r.degrees['2b']} d3b={r.degrees['3b']}")
        if r.alarms:
            bad.append(f"{rr.name}/{rr.seed}: {r.alarms[0]}")
        if rr.rep.N > 8:
            bad.append(f"{rr.name}/{rr.seed}: N={rr.rep.N}")
    dt = time.perf_counter() - t0
    if dt >= 60:
        bad.append(f"runtime {dt:.1f}s")
    return not bad, "100 reps, zero alarms" if not bad else "; ".join(bad[:3])


def criterion_3():
    rng = random.Random(3)
    bad = []
    for i in range(200):
        N = 2 + i % 9
        b, d = random_nilpotent(N, rng)
        d_elem = element_nilpotency_degree(b)
        d_exp = exp_minus_one_degree(b)
        if not (d_elem == d_exp == d):
            bad.append(f"case {i}: {d_elem} vs {d_exp} (true {d})")
    return not bad, "200 matrices, sizes 2-10" if not bad else "; ".join(bad[:3])


def criterion_4():
    rows = []
    ok = True
    for d in range(2, 9):
        J = np.diag(np.ones(d - 1), 1)
        for kind, fit in (("exp", exp_growth_fit(J)), ("pow", power_sweep_fit(J))):
            good = abs(fit.alpha - (d - 1)) <= 0.15 and fit.residual < 0.05
            ok &= good
            if not good:
                rows.append(f"d={d} {kind}: alpha={fit.alpha:.3f} res={fit.residual:.3f}")
    return ok, "J_2..J_8, both sweeps" if ok else "; ".join(rows)


def criterion_5():
    t0 = time.perf_counter()
    H = catalog.heisenberg()
    rep = family_analysis(RepFamily.truncations(H, 2, 8))
    # derived oracle: powers of the ideal spanned by the image of n inside T_n
    oracle = [two_sided_ideal_identity_check(H, n).ideal_nilpotency_degree for n in rep.ns]
    dt = time.perf_counter() - t0
    ok = rep.degrees == list(range(2, 9)) == oracle and rep.verdict == "unbounded within range" and dt < 120
    return ok, f"d_n={rep.degrees}, oracle={oracle}, verdict={rep.verdict!r}"


def criterion_6():
    rng = np.random.default_rng(6)
    X = rng.standard_normal((500, 4, 2, 2)) + 1j * rng.standard_normal((500, 4, 2, 2))
    vals = standard_eval(X)
    scale = np.prod(np.linalg.norm(X, ord=2, axis=(-2, -1)), axis=1)
    err = float(np.max(np.abs(vals).max(axis=(-2, -1)) / scale))
    units_ok, _ = standard_on_matrix_units(4, 2)
    s4_3x3_vanishes, witness = standard_on_matrix_units(4, 3)
    s2_2x2_vanishes, _ = standard_on_matrix_units(2, 2)
    ok = err < PI_TOL and units_ok and not s4_3x3_vanishes and not s2_2x2_vanishes
    return ok, f"S4 2x2 max rel {err:.1e}; 3x3 witness {witness}; S2 fails on 2x2"


def criterion_7():
    c = composite_identity(standard_identity(2), standard_identity(2))
    rng = random.Random(7)
    for _ in range(50):
        args = [matrix([[rng.randint(-9, 9), rng.randint(-9, 9)], [0, rng.randint(-9, 9)]]) for _ in range(4)]
        if not eval_nc_poly(c, args).to_Matrix().is_zero_matrix:
            return False, f"nonzero on upper-triangular tuple {args}"
    E = [matrix([[int(i == a and j == b) for j in range(2)] for i in range(2)]) for a in range(2) for b in range(2)]
    full = eval_nc_poly(c, [E[1], E[2], E[1], E[0]])
    ok = not full.to_Matrix().is_zero_matrix
    return ok, "zero on 50 upper-triangular tuples, nonzero on M_2"


def _ideal_degree_by_matrices(L, n):
    """Degree of the ideal generated by rho(n) in the left regular image, at matrix level."""
    T = truncated_quotient(L, n)
    R = left_regular_rep(T)
    A = associative_closure(R.mats, unital=True, N=R.N)
    gens = [R.image(v) for v in nilpotent_radical(L).basis]
    I = span_algebra([a * g * b for g in gens for a in A.basis for b in A.basis], R.N)
    return algebra_nilpotency_degree(associative_closure(I.basis, N=R.N)) if I.dim else 1


def criterion_8():
    rows, ok = [], True
    for name, L in (("heisenberg", catalog.heisenberg()), ("nonabelian2", catalog.nonabelian2())):
        for n in (3, 4):
            r = two_sided_ideal_identity_check(L, n)
            d_ind = _ideal_degree_by_matrices(L, n)
            good = r.spans_equal and r.ideal_nilpotency_degree == d_ind
            ok &= good
            rows.append(f"{name} T_{n}: d={r.ideal_nilpotency_degree}/{d_ind}")
    return ok, ", ".join(rows)


def criterion_9():
    bad = []
    instances = [(rr.name, rr.rep) for rr in suite()] + [(e.name, e.rep) for e in catalog.entries()]
    for n in (2, 3, 4):
        instances.append((f"heisenberg T_{n}", left_regular_rep(truncated_quotient(catalog.heisenberg(), n))))
    for name, R in instances:
        if not radical_containment_check(R).ok:
            bad.append(name)
    return not bad, f"{len(instances)} instances" if not bad else f"fails on {bad[:3]}"


CRITERIA = {
    1: ("structure oracle", criterion_1),
    2: ("condition equivalence suite", criterion_2),
    3: ("exp-minus-one degree exactness", criterion_3),
    4: ("growth exponent of Jordan blocks", criterion_4),
    5: ("Heisenberg truncation family", criterion_5),
    6: ("standard identity witnesses", criterion_6),
    7: ("composite identity", criterion_7),
    8: ("truncated enveloping identities", criterion_8),
    9: ("radical containment", criterion_9),
}


def run_one(k):
    label, fn = CRITERIA[k]
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    line = f"{'PASS' if ok else 'FAIL'} criterion {k} ({label}): {detail} [{dt:.2f}s]"
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, line = run_one(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_one(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
