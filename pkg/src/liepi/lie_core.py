"""Exact structure theory of finite-dimensional Lie algebras over Q(i).

An algebra is given by structure constants ``c[i][j][k]`` with
``[e_i, e_j] = sum_k c[i][j][k] e_k``.  Coordinate vectors are tuples of
``QQ_I`` elements of length ``dim``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .exact import (
    ONE,
    ZERO,
    EchelonBasis,
    ExactComplex,
    dense_to_sparse,
    format_exact,
    nullspace,
    row_basis,
    solve_exact,
    sparse_to_dense,
    to_exact,
)

Vector = Tuple[ExactComplex, ...]


class LieAlgebraError(ValueError):
    """Structure constants violate antisymmetry or the Jacobi identity."""


class LieAlgebra:
    """A finite-dimensional Lie algebra given by exact structure constants.

    ``sc`` maps ``(i, j)`` with ``i < j`` to a mapping ``{k: value}``;
    the antisymmetric completion is implied.  Construction validates
    antisymmetry and the Jacobi identity exactly.
    """

    def __init__(
        self,
        dim: int,
        sc: Mapping[Tuple[int, int], Mapping[int, object]],
        names: Optional[Sequence[str]] = None,
        validate: bool = True,
    ):
        if dim < 1:
            raise LieAlgebraError("dimension must be positive")
        self.dim = dim
        self.names = tuple(names) if names is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.names) != dim:
            raise LieAlgebraError("names length does not match dim")
        table: Dict[Tuple[int, int], Dict[int, ExactComplex]] = {}
        for (i, j), col in sc.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise LieAlgebraError(f"index pair {(i, j)} out of range")
            vals = {}
            for k, v in col.items():
                if not 0 <= k < dim:
                    raise LieAlgebraError(f"index {k} out of range")
                v = to_exact(v)
                if v:
                    vals[k] = v
            if i == j:
                if vals:
                    raise LieAlgebraError(f"[e{i},e{i}] must vanish")
                continue
            if i > j:
                vals_neg = {k: -v for k, v in vals.items()}
                prev = table.get((j, i))
                if prev is not None and prev != vals_neg:
                    raise LieAlgebraError(f"antisymmetry violated at {(j, i)}")
                table[(j, i)] = vals_neg
            else:
                prev = table.get((i, j))
                if prev is not None and prev != vals:
                    raise LieAlgebraError(f"antisymmetry violated at {(i, j)}")
                table[(i, j)] = vals
        self._sc = {key: col for key, col in table.items() if col}
        if validate:
            self._check_jacobi()

    # -- structure constants -------------------------------------------------

    def const(self, i: int, j: int) -> Dict[int, ExactComplex]:
        """Coordinates of [e_i, e_j] as a sparse dict."""
        if i < j:
            return self._sc.get((i, j), {})
        if i > j:
            return {k: -v for k, v in self._sc.get((j, i), {}).items()}
        return {}

    def c(self, i: int, j: int, k: int) -> ExactComplex:
        return self.const(i, j).get(k, ZERO)

    @property
    def nonzero_constants(self) -> Dict[Tuple[int, int], Dict[int, ExactComplex]]:
        return dict(self._sc)

    def basis_vector(self, i: int) -> Vector:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def zero(self) -> Vector:
        return (ZERO,) * self.dim

    def _check_jacobi(self) -> None:
        for i, j, k in combinations(range(self.dim), 3):
            total = [ZERO] * self.dim
            for a, b, cc in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.const(a, b)
                for m, v in inner.items():
                    for q, w in self.const(m, cc).items():
                        total[q] += v * w
            if any(total):
                raise LieAlgebraError(f"Jacobi identity fails on basis triple {(i, j, k)}")

    @cached_property
    def ad_matrices(self) -> List[DomainMatrix]:
        """ad(e_i) with column j holding the coordinates of [e_i, e_j]."""
        mats = []
        for i in range(self.dim):
            dod: Dict[int, Dict[int, ExactComplex]] = {}
            for j in range(self.dim):
                for k, v in self.const(i, j).items():
                    dod.setdefault(k, {})[j] = v
            mats.append(DomainMatrix(dod, (self.dim, self.dim), QQ_I))
        return mats

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.names == other.names
            and self._sc == other._sc
        )

    def __hash__(self) -> int:
        return id(self)

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, names={list(self.names)})"

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        sc = []
        for (i, j), col in sorted(self._sc.items()):
            for k, v in sorted(col.items()):
                re, im = format_exact(v)
                sc.append([i, j, k, re, im])
        return {"dim": self.dim, "names": list(self.names), "sc": sc}

    @classmethod
    def from_json(cls, data: Mapping) -> "LieAlgebra":
        try:
            dim = int(data["dim"])
            names = data.get("names")
            entries = data.get("sc", [])
        except (KeyError, TypeError) as exc:
            raise LieAlgebraError(f"malformed Lie algebra object: {exc}") from exc
        sc: Dict[Tuple[int, int], Dict[int, object]] = {}
        for entry in entries:
            if len(entry) != 5:
                raise LieAlgebraError(f"sc entry must be [i, j, k, re, im], got {entry!r}")
            i, j, k, re, im = entry
            i, j, k = int(i), int(j), int(k)
            if not i < j:
                raise LieAlgebraError(f"sc entries must list pairs with i < j, got {(i, j)}")
            col = sc.setdefault((i, j), {})
            if k in col:
                raise LieAlgebraError(f"duplicate sc entry {(i, j, k)}")
            col[k] = to_exact((str(re), str(im)))
        return cls(dim, sc, names)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    if len(x) != L.dim or len(y) != L.dim:
        raise ValueError(f"expected vectors of length {L.dim}")
    out = [ZERO] * L.dim
    xs = [(i, to_exact(a)) for i, a in enumerate(x) if a]
    ys = [(j, to_exact(b)) for j, b in enumerate(y) if b]
    for i, a in xs:
        for j, b in ys:
            if i == j:
                continue
            ab = a * b
            for k, v in L.const(i, j).items():
                out[k] += ab * v
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``parent`` with a reduced echelon basis."""

    parent: LieAlgebra = field(repr=False, compare=False)
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, parent: LieAlgebra, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [tuple(to_exact(a) for a in v) for v in vectors]
        return cls(parent, tuple(row_basis(vecs, parent.dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def _echelon(self) -> EchelonBasis:
        eb = EchelonBasis(QQ_I)
        for v in self.basis:
            eb.add(dense_to_sparse(v))
        return eb

    def contains(self, v: Sequence) -> bool:
        return self._echelon().contains(dense_to_sparse([to_exact(a) for a in v]))

    def contains_subspace(self, other: "Subspace") -> bool:
        eb = self._echelon()
        return all(eb.contains(dense_to_sparse(v)) for v in other.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Normal form of ``v`` modulo this subspace."""
        r = self._echelon().reduce(dense_to_sparse(v))
        return sparse_to_dense(r, self.parent.dim)


def whole(L: LieAlgebra) -> Subspace:
    return Subspace.span(L, [L.basis_vector(i) for i in range(L.dim)])


def bracket_span(L: LieAlgebra, A: Iterable[Sequence], B: Iterable[Sequence]) -> Subspace:
    B = list(B)
    return Subspace.span(L, [bracket(L, a, b) for a in A for b in B])


def derived_algebra(L: LieAlgebra) -> Subspace:
    return Subspace.span(
        L,
        [sparse_to_dense(L.const(i, j), L.dim) for i, j in combinations(range(L.dim), 2)],
    )


def lower_central_series(S: Subspace) -> List[Subspace]:
    """S = C1 ⊇ C2 = [S, S] ⊇ C3 = [S, C2] ... until zero or stationary."""
    series = [S]
    while not series[-1].is_zero():
        nxt = bracket_span(S.parent, S.basis, series[-1].basis)
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
    return series


def derived_series(S: Subspace) -> List[Subspace]:
    series = [S]
    while not series[-1].is_zero():
        cur = series[-1]
        nxt = bracket_span(S.parent, cur.basis, cur.basis)
        if nxt.dim == cur.dim:
            break
        series.append(nxt)
    return series


def killing_form(L: LieAlgebra) -> List[List[ExactComplex]]:
    ads = L.ad_matrices
    n = L.dim
    K = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            P = ads[i] * ads[j]
            t = ZERO
            for (a, b), x in P.to_dok().items():
                if a == b:
                    t += x
            K[i][j] = K[j][i] = t
    return K


def solvable_radical(L: LieAlgebra) -> Subspace:
    """Killing-orthogonal complement of [g, g] (valid in characteristic 0)."""
    D = derived_algebra(L)
    if D.is_zero():
        return whole(L)
    K = killing_form(L)
    rows = [tuple(sum((d[a] * K[a][b] for a in range(L.dim)), ZERO) for b in range(L.dim)) for d in D.basis]
    return Subspace.span(L, nullspace(rows, L.dim))


def nilpotent_radical(L: LieAlgebra, radical: Optional[Subspace] = None) -> Subspace:
    """[g, r] for the solvable radical r."""
    r = solvable_radical(L) if radical is None else radical
    return bracket_span(L, [L.basis_vector(i) for i in range(L.dim)], r.basis)


def levi_subalgebra(L: LieAlgebra, radical: Optional[Subspace] = None) -> Subspace:
    """A semisimple subalgebra complementing the solvable radical.

    Start from coordinate vectors complementing r, then correct them one
    step of the derived series of r at a time: at step m the defect of
    bracket-closure lies in r^(m) and the corrections r_i in r^(m) solve a
    linear system modulo r^(m+1).
    """
    r = solvable_radical(L) if radical is None else radical
    n = L.dim
    if r.dim == n:
        return Subspace(L, ())
    r_eb = r._echelon()
    xs_idx = [c for c in range(n) if c not in r_eb.rows]
    s = len(xs_idx)

    def quotient_coords(v: Sequence) -> List[ExactComplex]:
        rem = r_eb.reduce(dense_to_sparse(v))
        return [rem.get(c, ZERO) for c in xs_idx]

    ys = [list(L.basis_vector(c)) for c in xs_idx]
    qc = {}
    for i in range(s):
        for j in range(i + 1, s):
            qc[(i, j)] = quotient_coords(bracket(L, ys[i], ys[j]))

    series = derived_series(r)
    if not series[-1].is_zero():
        raise LieAlgebraError("solvable radical is not solvable; invalid structure constants")
    for m in range(len(series) - 1):
        Rm = series[m].basis
        nxt = series[m + 1]._echelon()
        p = len(Rm)
        pairs = [(i, j) for i in range(s) for j in range(i + 1, s)]
        # unknown u[i*p + a] is the coefficient of Rm[a] in the correction r_i
        cols: List[List[Dict[int, ExactComplex]]] = []
        for i in range(s):
            for a in range(p):
                col = []
                for (h, j) in pairs:
                    v = [ZERO] * n
                    if h == i:
                        for t, w in enumerate(bracket(L, Rm[a], ys[j])):
                            v[t] += w
                    if j == i:
                        for t, w in enumerate(bracket(L, ys[h], Rm[a])):
                            v[t] += w
                    coef = qc[(h, j)][i]
                    if coef:
                        for t in range(n):
                            v[t] -= coef * Rm[a][t]
                    col.append(nxt.reduce(dense_to_sparse(v)))
                cols.append(col)
        rhs_blocks = []
        for (h, j) in pairs:
            defect = list(bracket(L, ys[h], ys[j]))
            for k in range(s):
                c = qc[(h, j)][k]
                if c:
                    for t in range(n):
                        defect[t] -= c * ys[k][t]
            rhs_blocks.append(nxt.reduce(dense_to_sparse([-d for d in defect])))
        A: List[List[ExactComplex]] = []
        b: List[ExactComplex] = []
        for q in range(len(pairs)):
            for t in range(n):
                row = [cols[u][q].get(t, ZERO) for u in range(s * p)]
                val = rhs_blocks[q].get(t, ZERO)
                if any(row) or val:
                    A.append(row)
                    b.append(val)
        sol = solve_exact(A, b, s * p)
        if sol is None:
            raise LieAlgebraError("Levi lifting system inconsistent; invalid structure constants")
        for i in range(s):
            for a in range(p):
                u = sol[i * p + a]
                if u:
                    for t in range(n):
                        ys[i][t] += u * Rm[a][t]
    return Subspace.span(L, ys)


def is_subalgebra(S: Subspace) -> bool:
    eb = S._echelon()
    return all(
        eb.contains(dense_to_sparse(bracket(S.parent, a, b))) for a in S.basis for b in S.basis
    )


def is_ideal(S: Subspace) -> bool:
    L = S.parent
    eb = S._echelon()
    return all(
        eb.contains(dense_to_sparse(bracket(L, L.basis_vector(i), v)))
        for i in range(L.dim)
        for v in S.basis
    )


def restricted_killing_form(S: Subspace) -> List[List[ExactComplex]]:
    """Killing form of S as a Lie algebra in its own right (S a subalgebra)."""
    if S.dim == 0:
        return []
    sub = subalgebra_structure(S)
    return killing_form(sub)


def subalgebra_structure(S: Subspace) -> LieAlgebra:
    """Structure constants of a subalgebra S in the basis ``S.basis``."""
    L = S.parent
    k = S.dim
    if k == 0:
        raise ValueError("zero subspace has no structure")
    A = [[S.basis[a][t] for a in range(k)] for t in range(L.dim)]
    sc: Dict[Tuple[int, int], Dict[int, ExactComplex]] = {}
    for a in range(k):
        for b in range(a + 1, k):
            v = bracket(L, S.basis[a], S.basis[b])
            x = solve_exact(A, v, k)
            if x is None:
                raise ValueError("subspace is not closed under the bracket")
            sc[(a, b)] = {c: x[c] for c in range(k) if x[c]}
    return LieAlgebra(k, sc, validate=False)


def is_nondegenerate(form: List[List[ExactComplex]]) -> bool:
    n = len(form)
    if n == 0:
        return True
    return DomainMatrix(form, (n, n), QQ_I).rank() == n


@dataclass(frozen=True)
class Structure:
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool
    is_semisimple: bool
    is_reductive: bool
    dim: int
    dim_radical: int
    dim_nilradical: int
    dim_levi: int
    radical: Subspace = field(repr=False)
    nilradical: Subspace = field(repr=False)
    levi: Subspace = field(repr=False)

    def to_json(self) -> dict:
        def vecs(S: Subspace):
            return [[list(format_exact(x)) for x in v] for v in S.basis]

        return {
            "dim": self.dim,
            "is_abelian": self.is_abelian,
            "is_nilpotent": self.is_nilpotent,
            "is_solvable": self.is_solvable,
            "is_semisimple": self.is_semisimple,
            "is_reductive": self.is_reductive,
            "dim_radical": self.dim_radical,
            "dim_nilradical": self.dim_nilradical,
            "dim_levi": self.dim_levi,
            "radical": vecs(self.radical),
            "nilradical": vecs(self.nilradical),
            "levi": vecs(self.levi),
        }


def classify(L: LieAlgebra) -> Structure:
    g = whole(L)
    r = solvable_radical(L)
    nil = nilpotent_radical(L, r)
    s = levi_subalgebra(L, r)
    lcs = lower_central_series(g)
    return Structure(
        is_abelian=derived_algebra(L).is_zero(),
        is_nilpotent=lcs[-1].is_zero(),
        is_solvable=r.dim == L.dim,
        is_semisimple=r.dim == 0,
        is_reductive=nil.dim == 0,
        dim=L.dim,
        dim_radical=r.dim,
        dim_nilradical=nil.dim,
        dim_levi=s.dim,
        radical=r,
        nilradical=nil,
        levi=s,
    )


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    off = A.dim
    sc: Dict[Tuple[int, int], Dict[int, ExactComplex]] = {}
    for (i, j), col in A.nonzero_constants.items():
        sc[(i, j)] = dict(col)
    for (i, j), col in B.nonzero_constants.items():
        sc[(i + off, j + off)] = {k + off: v for k, v in col.items()}
    return LieAlgebra(A.dim + B.dim, sc, A.names + B.names, validate=False)


def scaled(L: LieAlgebra, c) -> LieAlgebra:
    """Same underlying space with bracket c·[ , ] (isomorphic for c != 0)."""
    c = to_exact(c)
    sc = {key: {k: c * v for k, v in col.items()} for key, col in L.nonzero_constants.items()}
    return LieAlgebra(L.dim, sc, L.names, validate=False)


def from_matrices(mats, names: Optional[Sequence[str]] = None):
    """Lie algebra with basis the given linearly independent matrices.

    Returns ``(L, mats)``; raises if the span is not closed under the
    commutator or the matrices are dependent.
    """
    from .exact import commutator, flatten, unify

    mats = unify(*mats)
    k = len(mats)
    flats = [flatten(M) for M in mats]
    cols = sorted(set().union(*flats)) if flats else []
    colset = set(cols)
    A = [[f.get(c, mats[0].domain.zero) for f in flats] for c in cols]
    A = [[to_exact(x) if not isinstance(x, ExactComplex) else x for x in row] for row in A]
    if not cols or DomainMatrix(A, (len(cols), k), QQ_I).rank() != k:
        raise ValueError("matrices are linearly dependent")
    sc: Dict[Tuple[int, int], Dict[int, ExactComplex]] = {}
    for a in range(k):
        for b in range(a + 1, k):
            f = flatten(commutator(mats[a], mats[b]))
            if any(c not in colset for c in f):
                raise ValueError("span of matrices is not closed under commutators")
            rhs = [to_exact(f.get(c, 0)) for c in cols]
            x = solve_exact(A, rhs, k)
            if x is None:
                raise ValueError("span of matrices is not closed under commutators")
            sc[(a, b)] = {t: x[t] for t in range(k) if x[t]}
    return LieAlgebra(k, sc, names), mats
