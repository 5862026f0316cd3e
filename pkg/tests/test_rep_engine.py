import json

import numpy as np
import pytest

from liepi import catalog
from liepi.catalog import E, diag
from liepi.exact import eye, zeros
from liepi.lie_core import nilpotent_radical
from liepi.pbw import left_regular_rep, truncated_quotient
from liepi.random_instances import jordan_block, random_reps
from liepi.rep_engine import (
    MatrixRep,
    RepresentationError,
    algebra_nilpotency_degree,
    associative_closure,
    element_nilpotency_degree,
    jacobson_radical,
    radical_containment_check,
    span_algebra,
    validate_rep,
)

TWO = catalog.nonabelian2()


# -- validate_rep ---------------------------------------------------------------


def test_two_dim_rep_valid():
    assert validate_rep(MatrixRep(TWO, (diag(1, 0), E(1, 2, 2)))) is None


def test_zero_rep_valid():
    for e in catalog.entries():
        assert validate_rep(MatrixRep(e.algebra, tuple(zeros(3) for _ in range(e.algebra.dim)))) is None


def test_violation_reported():
    v = validate_rep(MatrixRep(TWO, (zeros(2), eye(2))))
    assert v is not None and v.pair == (0, 1)
    assert v.residual == pytest.approx(1.0)


def test_float_mode_tolerance():
    R = MatrixRep(TWO, (np.diag([1.0, 0.0]), np.array([[0, 1.0], [0, 0]])))
    assert validate_rep(R) is None
    bad = MatrixRep(TWO, (np.diag([1.0, 0.0]), np.array([[0, 1.0], [1e-3, 0]])))
    assert validate_rep(bad) is not None


def test_rep_shape_errors():
    with pytest.raises(RepresentationError):
        MatrixRep(TWO, (eye(2),))
    with pytest.raises(RepresentationError):
        MatrixRep(TWO, (eye(2), eye(3)))


@pytest.mark.parametrize("entry", catalog.entries(), ids=lambda e: e.name)
def test_rep_json_round_trip(entry):
    R = entry.rep
    data = json.loads(json.dumps(R.to_json()))
    R2 = MatrixRep.from_json(data)
    assert R2.algebra == R.algebra
    assert all((A - B).is_zero_matrix for A, B in zip(R.mats, R2.mats))


def test_float_rep_json():
    R = catalog.get("heisenberg").rep.to_float()
    R2 = MatrixRep.from_json(json.loads(json.dumps(R.to_json())))
    assert not R2.exact
    assert all(np.allclose(a, b) for a, b in zip(R.mats, R2.mats))


# -- closure ---------------------------------------------------------------------


def test_closure_examples():
    A = associative_closure([E(1, 2, 3), E(2, 3, 3)])
    assert A.dim == 3 and A.contains(E(1, 3, 3))
    assert associative_closure([eye(2)], unital=True).dim == 1
    assert associative_closure([E(1, 2, 2)]).dim == 1


def test_closure_idempotent():
    for e in catalog.entries():
        A = associative_closure(e.rep.mats, unital=True)
        B = associative_closure(A.basis, unital=True)
        assert A.same_span(B)


def test_float_closure_dimension_matches_exact():
    mats = [E(1, 2, 3), E(2, 3, 3)]
    A = associative_closure([m.to_Matrix().__array__().astype(complex) for m in mats])
    assert A.dim == 3


# -- nilpotency degrees -------------------------------------------------------------


@pytest.mark.parametrize("d", range(1, 7))
def test_jordan_block_degree(d):
    assert element_nilpotency_degree(jordan_block(d)) == d


def test_degree_examples():
    assert element_nilpotency_degree(eye(3)) is None
    assert element_nilpotency_degree(E(1, 2, 3) + E(2, 3, 3)) == 3


def test_float_degree():
    J = np.diag(np.ones(3), 1)
    assert element_nilpotency_degree(J) == 4
    assert element_nilpotency_degree(np.eye(2)) is None


def test_algebra_degree_examples():
    upper = associative_closure([E(1, 2, 3), E(2, 3, 3), E(1, 3, 3)])
    assert algebra_nilpotency_degree(upper) == 3
    assert algebra_nilpotency_degree(span_algebra([], 3)) == 1
    assert algebra_nilpotency_degree(associative_closure([eye(2)])) is None


def test_float_algebra_degree():
    mats = [np.diag(np.ones(2), 1)]
    assert algebra_nilpotency_degree(associative_closure(mats)) == 3


# -- Jacobson radical ----------------------------------------------------------------


def test_jacobson_upper_triangular():
    A = associative_closure([E(1, 1, 2), E(1, 2, 2), E(2, 2, 2)])
    rad = jacobson_radical(A)
    assert rad.dim == 1 and rad.contains(E(1, 2, 2))


def test_jacobson_full_matrix_algebra():
    A = associative_closure([E(1, 2, 2), E(2, 1, 2)], unital=True)
    assert A.dim == 4
    assert jacobson_radical(A).dim == 0


def test_jacobson_of_nilpotent_is_itself():
    A = associative_closure([E(1, 2, 2)])
    assert jacobson_radical(A).same_span(A)


@pytest.mark.parametrize("entry", catalog.entries(), ids=lambda e: e.name)
def test_jacobson_radical_is_nilpotent(entry):
    A = associative_closure(entry.rep.mats, unital=True)
    assert algebra_nilpotency_degree(jacobson_radical(A)) is not None


# -- radical containment ---------------------------------------------------------------


def test_containment_two_dim():
    rep = catalog.get("nonabelian2").rep
    r = radical_containment_check(rep)
    assert r.ok and r.checked > 0


def test_containment_reductive_is_vacuous():
    r = radical_containment_check(catalog.get("sl2").rep)
    assert r.ok and r.checked == 0


def test_containment_heisenberg_regular_n3():
    R = left_regular_rep(truncated_quotient(catalog.heisenberg(), 3))
    assert radical_containment_check(R).ok


@pytest.mark.parametrize("rr", random_reps(24, seed=7), ids=lambda r: f"{r.name}-{r.seed}")
def test_random_reps_invariants(rr):
    R = rr.rep
    assert validate_rep(R) is None
    assert radical_containment_check(R, samples=5, seed=rr.seed).ok
    nil = nilpotent_radical(R.algebra)
    A0 = associative_closure([R.image(v) for v in nil.basis], N=R.N)
    d = algebra_nilpotency_degree(A0)
    assert d is not None
    for v in nil.basis:
        assert element_nilpotency_degree(R.image(v)) <= d
