import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liepi import catalog
from liepi.exact import to_exact
from liepi.lie_core import (
    LieAlgebra,
    LieAlgebraError,
    bracket,
    classify,
    derived_algebra,
    is_ideal,
    is_nondegenerate,
    is_subalgebra,
    killing_form,
    levi_subalgebra,
    lower_central_series,
    nilpotent_radical,
    restricted_killing_form,
    solvable_radical,
    whole,
)
from liepi.random_instances import (
    change_basis,
    random_algebra,
    random_unimodular_rows,
    sl2_ltimes_heisenberg,
    sl2_ltimes_plane,
)


def vec(*xs):
    return tuple(to_exact(x) for x in xs)


# -- bracket ------------------------------------------------------------------


def test_bracket_two_dim():
    L = catalog.nonabelian2()
    assert bracket(L, vec(1, 0), vec(0, 1)) == vec(0, 1)


def test_bracket_heisenberg():
    L = catalog.heisenberg()
    assert bracket(L, vec(1, 0, 0), vec(0, 1, 0)) == vec(0, 0, 1)


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_bracket_self_vanishes(coords):
    L = catalog.sl2()
    x = vec(*coords)
    assert bracket(L, x, x) == vec(0, 0, 0)


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_bracket_antisymmetric_and_jacobi_on_elements(c):
    L = catalog.sl2()
    x, y, z = vec(*c[:3]), vec(*c[3:]), vec(c[0] + 1, c[4], c[2] - 1)
    assert bracket(L, x, y) == tuple(-t for t in bracket(L, y, x))
    terms = [bracket(L, x, bracket(L, y, z)), bracket(L, y, bracket(L, z, x)), bracket(L, z, bracket(L, x, y))]
    assert tuple(sum(t) for t in zip(*terms)) == vec(0, 0, 0)


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        bracket(catalog.sl2(), vec(1, 0), vec(0, 1, 0))


# -- constructor validation -----------------------------------------------------


def test_jacobi_violation_rejected():
    # [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 breaks Jacobi
    with pytest.raises(LieAlgebraError):
        LieAlgebra(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})


def test_antisymmetry_conflict_rejected():
    with pytest.raises(LieAlgebraError):
        LieAlgebra(2, {(0, 1): {1: 1}, (1, 0): {1: 1}})


def test_json_round_trip_all_catalog():
    for e in catalog.entries():
        L = e.algebra
        assert LieAlgebra.from_json(json.loads(L.dumps())) == L


def test_json_rejects_lower_pairs():
    with pytest.raises(LieAlgebraError):
        LieAlgebra.from_json({"dim": 2, "sc": [[1, 0, 1, "1", "0"]]})


# -- Killing form -----------------------------------------------------------


def test_killing_sl2_hh_is_8():
    K = killing_form(catalog.sl2())
    assert K[1][1] == to_exact(8)
    assert K == [list(r) for r in zip(*K)]


def test_killing_brute_force_sl2():
    # oracle: ad matrices built directly from the structure constants
    L = catalog.sl2()
    n = L.dim
    ad = [[[L.c(i, j, k) for j in range(n)] for k in range(n)] for i in range(n)]

    def tr_prod(A, B):
        return sum(A[r][s] * B[s][r] for r in range(n) for s in range(n))

    assert killing_form(L) == [[tr_prod(ad[i], ad[j]) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("L", [catalog.heisenberg(), catalog.abelian(2)])
def test_killing_vanishes(L):
    assert not any(x for row in killing_form(L) for x in row)


# -- radicals -------------------------------------------------------------------


def test_solvable_radical_examples():
    assert solvable_radical(catalog.sl2()).is_zero()
    assert solvable_radical(catalog.heisenberg()).dim == 3
    assert solvable_radical(catalog.nonabelian2()).dim == 2


def test_nilpotent_radical_two_dim_is_e2():
    assert list(nilpotent_radical(catalog.nonabelian2()).basis) == [vec(0, 1)]


@pytest.mark.parametrize("name", ["sl2", "abelian2", "gl2"])
def test_reductive_entries_have_trivial_nilradical(name):
    assert nilpotent_radical(catalog.get(name).algebra).is_zero()


def test_heisenberg_nilradical_is_center():
    assert list(nilpotent_radical(catalog.heisenberg()).basis) == [vec(0, 0, 1)]


def test_levi_examples():
    assert levi_subalgebra(catalog.sl2()).dim == 3
    assert levi_subalgebra(catalog.heisenberg()).is_zero()
    L = catalog.gl2()
    s = levi_subalgebra(L)
    r = solvable_radical(L)
    assert s.dim == 3 and r.dim == 1
    assert r.contains(vec(1, 0, 0, 1))
    # the sl2 summand: traceless combinations
    for v in s.basis:
        assert not v[0] + v[3]
    assert is_nondegenerate(restricted_killing_form(s))


@pytest.mark.parametrize("entry", catalog.entries(), ids=lambda e: e.name)
def test_catalog_ground_truth(entry):
    st_ = classify(entry.algebra)
    assert (st_.dim_radical, st_.dim_nilradical, st_.dim_levi) == entry.radical_dims


def test_classify_flags():
    s = classify(catalog.sl2())
    assert s.is_semisimple and s.is_reductive and s.dim_nilradical == 0
    h = classify(catalog.heisenberg())
    assert h.is_nilpotent and h.is_solvable and h.dim_nilradical == 1
    a = classify(catalog.abelian(2))
    assert a.is_abelian and a.is_reductive


def _check_structure_invariants(L, dims=None):
    r = solvable_radical(L)
    n = nilpotent_radical(L, r)
    s = levi_subalgebra(L, r)
    assert r.contains_subspace(n)
    assert is_ideal(n) and is_ideal(r)
    assert lower_central_series(n)[-1].is_zero()
    assert is_subalgebra(s)
    assert is_nondegenerate(restricted_killing_form(s))
    assert s.dim + r.dim == L.dim
    # complement: s + r spans g
    from liepi.lie_core import Subspace

    assert Subspace.span(L, list(s.basis) + list(r.basis)).dim == L.dim
    if dims is not None:
        assert (r.dim, n.dim, s.dim) == dims
    assert classify(L).is_reductive == n.is_zero()


@pytest.mark.parametrize("seed", range(12))
def test_random_algebras_ground_truth(seed):
    ra = random_algebra(seed)
    _check_structure_invariants(ra.algebra, ra.radical_dims)


@pytest.mark.parametrize("builder,dims", [(sl2_ltimes_heisenberg, (3, 3, 3)), (sl2_ltimes_plane, (2, 2, 3))])
@pytest.mark.parametrize("seed", range(4))
def test_levi_in_scrambled_semidirect_products(builder, dims, seed):
    """Non-split bases force the lifting steps to do real work."""
    L = builder()
    P = random_unimodular_rows(L.dim, random.Random(seed))
    L2 = change_basis(L, P)
    _check_structure_invariants(L2, dims)


def test_derived_algebra_of_two_dim():
    assert list(derived_algebra(catalog.nonabelian2()).basis) == [vec(0, 1)]
    assert whole(catalog.sl2()).dim == 3
