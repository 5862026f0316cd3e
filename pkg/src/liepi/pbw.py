"""PBW straightening in U(g) and finite-dimensional truncated quotients.

Elements of U(g) are dicts ``{exponents: coefficient}`` over ordered PBW
monomials ``e_1^{a_1} ... e_n^{a_n}`` in the input basis order.

Truncation.  Let J_n be the span of PBW monomials of total degree >= n.
J_n is contained in the two-sided ideal K_n it generates, and K_n is
generated by the finitely many monomials of degree exactly n (a longer
ordered monomial is an ordered product of a degree-n prefix and the rest).
For some algebras (Heisenberg) J_n is already an ideal; in general it is
not: for [e1, e2] = e2 one has e2 e1^n = (e1 - 1)^n e2, whose e2 term has
degree 1.  ``truncated_quotient`` therefore builds T_n = U(g)/K_n, writing
K_n = J_n + W with W inside the span V_n of monomials of degree < n.

W is found as a fixpoint: start from W = 0 and add every defect of the
candidate left/right multiplication operators on V_n/W (failure to
preserve W, failure of [L_i, L_j] = L_[e_i,e_j] and of the mirrored right
relation).  Each defect lies in K_n, so W never leaves K_n; at the fixpoint
V_n/W is a left and a right U(g)-module in which the class of 1 has
annihilator J_n + W on both sides, which makes J_n + W a two-sided ideal
containing J_n, hence equal to K_n.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .exact import ONE, ZERO, EchelonBasis, ExactComplex, format_exact, to_exact
from .lie_core import LieAlgebra, Subspace, nilpotent_radical
from .rep_engine import MatrixRep

Monomial = Tuple[int, ...]
UEAElement = Dict[Monomial, ExactComplex]

DEFAULT_DIM_CAP = 5000
DEFAULT_DEGREE_CAP = 8


class TruncationError(ValueError):
    pass


def dim_cap() -> int:
    raw = os.environ.get("LIEPI_DIM_CAP")
    return int(raw) if raw else DEFAULT_DIM_CAP


def degree(m: Monomial) -> int:
    return sum(m)


def _add_into(acc: UEAElement, elem: UEAElement, c=ONE) -> None:
    for m, v in elem.items():
        x = acc.get(m, ZERO) + c * v
        if x:
            acc[m] = x
        else:
            acc.pop(m, None)


class PBWRing:
    """Multiplication in U(g) on the ordered-monomial basis (memoized)."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.n = L.dim
        self._gen_cache: Dict[Tuple[int, Monomial], UEAElement] = {}

    def unit(self) -> Monomial:
        return (0,) * self.n

    def gen(self, i: int) -> Monomial:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def word(self, m: Monomial) -> List[int]:
        out: List[int] = []
        for i, a in enumerate(m):
            out.extend([i] * a)
        return out

    def left_gen(self, i: int, m: Monomial) -> UEAElement:
        """e_i * m for a single monomial m."""
        key = (i, m)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        j = next((k for k, a in enumerate(m) if a), None)
        if j is None or i <= j:
            out = {m[:i] + (m[i] + 1,) + m[i + 1:]: ONE}
        else:
            # e_i e_j m' = e_j (e_i m') + [e_i, e_j] m'
            rest = m[:j] + (m[j] - 1,) + m[j + 1:]
            out: UEAElement = {}
            _add_into(out, self.left_gen_elem(j, self.left_gen(i, rest)))
            for k, c in self.L.const(i, j).items():
                _add_into(out, self.left_gen(k, rest), c)
        self._gen_cache[key] = out
        return out

    def left_gen_elem(self, i: int, u: UEAElement) -> UEAElement:
        out: UEAElement = {}
        for m, c in u.items():
            _add_into(out, self.left_gen(i, m), c)
        return out

    def mul_monomial(self, a: Monomial, u: UEAElement) -> UEAElement:
        """a * u with a an ordered monomial."""
        res = dict(u)
        for i in reversed(self.word(a)):
            res = self.left_gen_elem(i, res)
        return res

    def mul(self, u: UEAElement, v: UEAElement) -> UEAElement:
        out: UEAElement = {}
        for m, c in u.items():
            _add_into(out, self.mul_monomial(m, v), c)
        return out

    def right_gen_elem(self, u: UEAElement, i: int) -> UEAElement:
        return self.mul(u, {self.gen(i): ONE})

    def straighten(self, word: Sequence[int]) -> UEAElement:
        res: UEAElement = {self.unit(): ONE}
        for i in reversed(list(word)):
            if not 0 <= i < self.n:
                raise IndexError(f"basis index {i} out of range")
            res = self.left_gen_elem(i, res)
        return res


_RINGS: Dict[int, Tuple[LieAlgebra, PBWRing]] = {}


def ring(L: LieAlgebra) -> PBWRing:
    hit = _RINGS.get(id(L))
    if hit is None or hit[0] is not L:
        hit = (L, PBWRing(L))
        _RINGS[id(L)] = hit
    return hit[1]


def straighten(L: LieAlgebra, word: Sequence[int]) -> UEAElement:
    """Rewrite e_j e_i -> e_i e_j + [e_j, e_i] (j > i) into ordered monomials."""
    return dict(ring(L).straighten(word))


def monomials_below(n_vars: int, cutoff: int) -> List[Monomial]:
    """All exponent vectors of total degree < cutoff, by degree then reverse-lex."""
    out: List[Monomial] = []

    def rec(prefix, left, remaining):
        if left == 0:
            out.append(tuple(prefix) + (0,) * remaining)
            return
        if remaining == 1:
            out.append(tuple(prefix) + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, remaining - 1)

    for d in range(cutoff):
        rec([], d, n_vars)
    return out


@dataclass(eq=False)
class TruncatedUEA:
    """T_n = U(g)/K_n with a basis of surviving PBW monomials of degree < n.

    ``table[a][b]`` is the product of basis elements a and b as a sparse
    dict over basis indices.  ``kernel`` holds the reduced rows of W (as
    dicts over ``monomials``); it is empty whenever J_n is already an ideal.
    """

    source: LieAlgebra
    cutoff: int
    monomials: List[Monomial]
    basis: List[Monomial]
    kernel: List[Dict[int, ExactComplex]]
    _w: EchelonBasis = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.basis)}

    @cached_property
    def _mono_index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def project(self, u: UEAElement) -> Dict[int, ExactComplex]:
        """Class of u in T_n as a sparse vector over basis indices."""
        vec = {}
        mi = self._mono_index
        for m, c in u.items():
            if degree(m) < self.cutoff:
                vec[mi[m]] = c
        red = self._w.reduce(vec) if self._w is not None else vec
        bi = self.index
        return {bi[self.monomials[k]]: c for k, c in red.items()}

    @cached_property
    def table(self) -> List[List[Dict[int, ExactComplex]]]:
        R = ring(self.source)
        return [
            [self.project(R.mul_monomial(a, {b: ONE})) for b in self.basis]
            for a in self.basis
        ]

    def unit_index(self) -> int:
        return self.index[(0,) * self.source.dim]

    def element(self, v: Sequence) -> Dict[int, ExactComplex]:
        """Class of the Lie algebra element with coordinates v."""
        R = ring(self.source)
        return self.project({R.gen(i): to_exact(c) for i, c in enumerate(v) if c})

    def multiply(self, x: Dict[int, ExactComplex], y: Dict[int, ExactComplex]) -> Dict[int, ExactComplex]:
        out: Dict[int, ExactComplex] = {}
        T = self.table
        for a, ca in x.items():
            row = T[a]
            for b, cb in y.items():
                c = ca * cb
                for k, v in row[b].items():
                    s = out.get(k, ZERO) + c * v
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def is_associative(self) -> bool:
        idx = range(self.dim)
        for a in idx:
            for b in idx:
                ab = self.table[a][b]
                for c in idx:
                    left = self.multiply(ab, {c: ONE})
                    right = self.multiply({a: ONE}, self.table[b][c])
                    if left != right:
                        return False
        return True

    def to_json(self) -> dict:
        return {
            "algebra": self.source.to_json(),
            "cutoff": self.cutoff,
            "basis": [list(m) for m in self.basis],
            "pbw_span_ideal": not self.kernel,
            "table": [
                [[[k, *format_exact(v)] for k, v in sorted(entry.items())] for entry in row]
                for row in self.table
            ],
        }


def truncated_quotient(
    L: LieAlgebra,
    n: int,
    *,
    cap: Optional[int] = None,
    max_cutoff: Optional[int] = DEFAULT_DEGREE_CAP,
) -> TruncatedUEA:
    if n <= 0:
        raise TruncationError("cutoff must be >= 1")
    if max_cutoff is not None and n > max_cutoff:
        raise TruncationError(f"cutoff {n} exceeds degree cap {max_cutoff}")
    cap = dim_cap() if cap is None else cap
    size = comb(n - 1 + L.dim, L.dim)
    if size > cap:
        raise TruncationError(f"truncation has {size} monomials, above the cap {cap}")
    R = ring(L)
    monos = monomials_below(L.dim, n)
    mi = {m: i for i, m in enumerate(monos)}
    # prefer high-degree monomials as pivots so low-degree ones survive as the basis
    W = EchelonBasis(QQ_I, pivot_key=lambda k: (degree(monos[k]), k))

    def trunc(u: UEAElement) -> Dict[int, ExactComplex]:
        return {mi[m]: c for m, c in u.items() if degree(m) < n}

    def lift(vec: Dict[int, ExactComplex]) -> UEAElement:
        return {monos[k]: c for k, c in vec.items()}

    left = [[trunc(R.left_gen(i, m)) for m in monos] for i in range(L.dim)]
    right = [[trunc(R.mul_monomial(m, {R.gen(i): ONE})) for m in monos] for i in range(L.dim)]

    def act(table, i, vec):
        out: Dict[int, ExactComplex] = {}
        for k, c in vec.items():
            for t, v in table[i][k].items():
                s = out.get(t, ZERO) + c * v
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return out

    def lincomb_vec(parts):
        out: Dict[int, ExactComplex] = {}
        for c, vec in parts:
            for t, v in vec.items():
                s = out.get(t, ZERO) + c * v
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return out

    pairs = [(i, j) for i, j in combinations(range(L.dim), 2)]
    units = [{k: ONE} for k in range(len(monos))]
    while True:
        grew = False
        for w in W.basis():
            for i in range(L.dim):
                for table in (left, right):
                    if W.add(act(table, i, w)):
                        grew = True
        for i, j in pairs:
            cij = L.const(i, j)
            for u in units:
                # [L_i, L_j] - L_[e_i,e_j]  and  R_j R_i - R_i R_j - R_[e_i,e_j]
                dl = lincomb_vec(
                    [(ONE, act(left, i, act(left, j, u))), (-ONE, act(left, j, act(left, i, u)))]
                    + [(-c, act(left, k, u)) for k, c in cij.items()]
                )
                dr = lincomb_vec(
                    [(ONE, act(right, j, act(right, i, u))), (-ONE, act(right, i, act(right, j, u)))]
                    + [(-c, act(right, k, u)) for k, c in cij.items()]
                )
                for d in (dl, dr):
                    if d and W.add(d):
                        grew = True
        if not grew:
            break
    kernel_rows = W.basis()
    pivots = set(W.pivots)
    basis = [m for k, m in enumerate(monos) if k not in pivots]
    return TruncatedUEA(L, n, monos, basis, kernel_rows, W)


def degree_truncation_defect(L: LieAlgebra, n: int) -> Optional[Tuple[str, int, Monomial, UEAElement]]:
    """A witness that J_n (PBW degree >= n) is not a two-sided ideal, or None.

    Returns (side, i, m, product) with m of degree n and e_i m (side "left")
    or m e_i (side "right") having a term of degree < n.  Monomials of degree
    n generate K_n, so None means J_n = K_n.
    """
    R = ring(L)
    for m in monomials_below(L.dim, n + 1):
        if degree(m) != n:
            continue
        for i in range(L.dim):
            for side, prod in (("left", R.left_gen(i, m)), ("right", R.mul_monomial(m, {R.gen(i): ONE}))):
                if any(degree(t) < n for t in prod):
                    return side, i, m, dict(prod)
    return None


def left_regular_rep(T: TruncatedUEA) -> MatrixRep:
    """Each generator e_i acting by left multiplication on T's basis."""
    L = T.source
    R = ring(L)
    mats = []
    for i in range(L.dim):
        dod: Dict[int, Dict[int, ExactComplex]] = {}
        for b, m in enumerate(T.basis):
            col = T.project(R.left_gen(i, m))
            for k, v in col.items():
                dod.setdefault(k, {})[b] = v
        mats.append(DomainMatrix(dod, (T.dim, T.dim), QQ_I))
    dom_real = all(v.y == 0 for M in mats for v in M.to_dok().values())
    if dom_real:
        from sympy.polys.domains import QQ

        mats = [M.convert_to(QQ) for M in mats]
    return MatrixRep(L, tuple(mats))


# ---------------------------------------------------------------------------
# ideal identities inside T_n
# ---------------------------------------------------------------------------


def _span(vectors) -> EchelonBasis:
    eb = EchelonBasis(QQ_I)
    eb.extend(vectors)
    return eb


def _same_span(a: EchelonBasis, b: EchelonBasis) -> bool:
    return len(a) == len(b) and all(a.contains(v) for v in b.basis())


@dataclass
class IdealIdentityReport:
    cutoff: int
    quotient_dim: int
    nil_image_dim: int
    left_span_dim: int
    right_span_dim: int
    spans_equal: bool
    ideal_dim: int
    ideal_equals_spans: bool
    ideal_nilpotency_degree: Optional[int]
    power_dims: List[int]

    def to_json(self) -> dict:
        return dict(self.__dict__)


def nil_augmentation_image(T: TruncatedUEA, nil: Subspace) -> EchelonBasis:
    """Image of U(n)_0 in T: the non-unital subalgebra generated by n."""
    gens = [T.element(v) for v in nil.basis]
    eb = _span(gens)
    frontier = eb.basis()
    gens = eb.basis()
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                p = T.multiply(g, x)
                if eb.add(p):
                    new.append(p)
        frontier = new
    return eb


def two_sided_ideal_identity_check(L: LieAlgebra, n: int, T: Optional[TruncatedUEA] = None) -> IdealIdentityReport:
    """Compare U(g)U(n)_0 with U(n)_0 U(g) in T_n and find d with I^d = 0."""
    if T is None:
        T = truncated_quotient(L, n)
    nil = nilpotent_radical(L)
    N0 = nil_augmentation_image(T, nil).basis()
    units = [{k: ONE} for k in range(T.dim)]
    left = _span(T.multiply(u, v) for u in units for v in N0)
    right = _span(T.multiply(v, u) for u in units for v in N0)
    # two-sided ideal generated by the image of n, closed independently
    ideal = _span(T.element(v) for v in nil.basis)
    frontier = ideal.basis()
    while frontier:
        new = []
        for x in frontier:
            for u in units:
                for p in (T.multiply(u, x), T.multiply(x, u)):
                    if ideal.add(p):
                        new.append(p)
        frontier = new
    I_basis = ideal.basis()
    dims = [len(I_basis)]
    d: Optional[int] = 1 if not I_basis else None
    power = I_basis
    k = 1
    while d is None:
        nxt = _span(T.multiply(x, y) for x in power for y in I_basis)
        k += 1
        dims.append(len(nxt))
        if len(nxt) == 0:
            d = k
        elif len(nxt) == len(power):
            break
        power = nxt.basis()
    return IdealIdentityReport(
        cutoff=n,
        quotient_dim=T.dim,
        nil_image_dim=len(N0),
        left_span_dim=len(left),
        right_span_dim=len(right),
        spans_equal=_same_span(left, right),
        ideal_dim=len(ideal),
        ideal_equals_spans=_same_span(left, ideal),
        ideal_nilpotency_degree=d,
        power_dims=dims,
    )
