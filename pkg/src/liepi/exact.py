"""Exact arithmetic over the Gaussian rationals Q(i).

Scalars are sympy ``QQ_I`` elements (gmpy2-backed when available).  Exact
matrices are sparse ``DomainMatrix`` objects over ``QQ`` when every entry is
real and over ``QQ_I`` otherwise; the real domain is several times faster and
is what the catalog and most generated instances use.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

ExactComplex = type(QQ_I(0, 0))
ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)

SparseVec = Dict[int, object]


def qq(x) -> object:
    """Coerce an int, Fraction, or rational string to a ``QQ`` element."""
    if isinstance(x, str):
        x = Fraction(x.strip())
    elif isinstance(x, float):
        if not x.is_integer():
            raise ValueError(f"refusing inexact float {x!r}; pass a rational string")
        x = int(x)
    if isinstance(x, Rational):
        f = Fraction(x)
        return QQ(f.numerator, f.denominator)
    return QQ.convert(x)


def to_exact(x) -> ExactComplex:
    """Coerce a number, rational string, (re, im) pair, or complex to Q(i)."""
    if isinstance(x, ExactComplex):
        return x
    if isinstance(x, (tuple, list)):
        re, im = x
        return QQ_I(qq(re), qq(im))
    if isinstance(x, complex):
        return QQ_I(qq(x.real), qq(x.imag))
    if isinstance(x, str) and x.strip().endswith(("i", "j")) and "/" not in x:
        return to_exact(complex(x.replace("i", "j")))
    return QQ_I(qq(x), QQ(0))


def is_real(z) -> bool:
    return not isinstance(z, ExactComplex) or z.y == 0


def to_complex(z) -> complex:
    if isinstance(z, ExactComplex):
        return complex(float(z.x), float(z.y))
    return complex(float(z))


def format_rational(q) -> str:
    f = Fraction(int(q.numerator), int(q.denominator))
    return str(f)


def format_exact(z) -> Tuple[str, str]:
    z = to_exact(z) if not isinstance(z, ExactComplex) else z
    return format_rational(z.x), format_rational(z.y)


# ---------------------------------------------------------------------------
# incremental row echelon form over sparse vectors
# ---------------------------------------------------------------------------


class EchelonBasis:
    """Fully reduced row echelon basis of a growing subspace.

    Vectors are sparse dicts ``{column: value}`` with domain elements as
    values.  Every stored row has a pivot with coefficient one and is zero at
    every other row's pivot, so ``reduce`` gives a canonical normal form
    modulo the span.  ``pivot_key`` picks the pivot among a vector's nonzero
    columns (largest key wins); by default the smallest column index.
    """

    def __init__(self, domain=QQ_I, pivot_key: Optional[Callable[[int], object]] = None):
        self.domain = domain
        self.pivot_key = pivot_key
        self.rows: Dict[int, SparseVec] = {}
        self.order: List[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return list(self.order)

    def reduce(self, vec: SparseVec) -> SparseVec:
        v = {c: x for c, x in vec.items() if x}
        for p in [p for p in v if p in self.rows]:
            a = v.get(p)
            if not a:
                continue
            for c, x in self.rows[p].items():
                y = v.get(c, self.domain.zero) - a * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def add(self, vec: SparseVec) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        if self.pivot_key is None:
            p = min(v)
        else:
            p = max(v, key=self.pivot_key)
        inv = self.domain.one / v[p]
        v = {c: x * inv for c, x in v.items()}
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                for c, x in v.items():
                    y = row.get(c, self.domain.zero) - a * x
                    if y:
                        row[c] = y
                    else:
                        row.pop(c, None)
        self.rows[p] = v
        self.order.append(p)
        return True

    def extend(self, vecs: Iterable[SparseVec]) -> int:
        return sum(self.add(v) for v in vecs)

    def basis(self) -> List[SparseVec]:
        return [dict(self.rows[p]) for p in self.order]

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis(self.domain, self.pivot_key)
        other.rows = {p: dict(r) for p, r in self.rows.items()}
        other.order = list(self.order)
        return other


def dense_to_sparse(vec: Sequence) -> SparseVec:
    return {i: x for i, x in enumerate(vec) if x}


def sparse_to_dense(vec: SparseVec, n: int, zero=ZERO) -> tuple:
    return tuple(vec.get(i, zero) for i in range(n))


def row_basis(vectors: Iterable[Sequence], n: int) -> List[tuple]:
    """Reduced echelon basis (dense QQ_I tuples) of the span of ``vectors``."""
    eb = EchelonBasis(QQ_I)
    for v in vectors:
        eb.add(dense_to_sparse(v))
    rows = sorted(eb.basis(), key=lambda r: min(r))
    return [sparse_to_dense(r, n) for r in rows]


def nullspace(rows: Sequence[Sequence], n: int) -> List[tuple]:
    """Basis of {x : r . x = 0 for every row r} as dense QQ_I tuples."""
    if not rows:
        return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    M = DomainMatrix([list(r) for r in rows], (len(rows), n), QQ_I)
    ns = M.nullspace()
    out = [tuple(r) for r in ns.to_list()] if ns.shape[0] else []
    return row_basis(out, n)


def solve_exact(A: Sequence[Sequence], b: Sequence, n: int) -> Optional[tuple]:
    """One solution of A x = b (free variables zero), or None if inconsistent."""
    m = len(A)
    if m == 0:
        return tuple(ZERO for _ in range(n))
    aug = DomainMatrix([list(A[i]) + [b[i]] for i in range(m)], (m, n + 1), QQ_I)
    rref, pivots = aug.rref()
    if n in pivots:
        return None
    x = [ZERO] * n
    rows = rref.to_list()
    for r, p in enumerate(pivots):
        x[p] = rows[r][n]
    return tuple(x)


# ---------------------------------------------------------------------------
# exact matrices
# ---------------------------------------------------------------------------


def pick_domain(values: Iterable) -> object:
    return QQ if all(is_real(v) for v in values) else QQ_I


def convert(x, domain):
    """Convert a scalar into ``domain`` (QQ or QQ_I)."""
    if domain is QQ:
        if isinstance(x, ExactComplex):
            if x.y:
                raise ValueError("complex value in a real matrix")
            return x.x
        return qq(x)
    return to_exact(x) if not isinstance(x, ExactComplex) else x


def matrix(rows: Sequence[Sequence], domain=None) -> DomainMatrix:
    """Sparse exact matrix from nested rows of exact-coercible entries."""
    vals = [[to_exact(x) for x in r] for r in rows]
    n = len(vals)
    m = len(vals[0]) if n else 0
    if domain is None:
        domain = pick_domain(x for r in vals for x in r)
    dod = {}
    for i, r in enumerate(vals):
        d = {j: convert(x, domain) for j, x in enumerate(r) if x}
        if d:
            dod[i] = d
    return DomainMatrix(dod, (n, m), domain)


def from_dok(dok: Dict[Tuple[int, int], object], shape, domain=None) -> DomainMatrix:
    if domain is None:
        domain = pick_domain(dok.values())
    dod: Dict[int, Dict[int, object]] = {}
    for (i, j), x in dok.items():
        x = convert(x, domain)
        if x:
            dod.setdefault(i, {})[j] = x
    return DomainMatrix(dod, shape, domain)


def eye(n: int, domain=QQ) -> DomainMatrix:
    return DomainMatrix({i: {i: domain.one} for i in range(n)}, (n, n), domain)


def zeros(n: int, domain=QQ) -> DomainMatrix:
    return DomainMatrix({}, (n, n), domain)


def unify(*mats: DomainMatrix) -> List[DomainMatrix]:
    dom = QQ_I if any(m.domain == QQ_I for m in mats) else QQ
    return [m if m.domain == dom else m.convert_to(dom) for m in mats]


def scale(M: DomainMatrix, c) -> DomainMatrix:
    c = to_exact(c)
    if M.domain == QQ and c.y:
        M = M.convert_to(QQ_I)
    return M * convert(c, M.domain)


def lincomb(coeffs: Sequence, mats: Sequence[DomainMatrix]) -> DomainMatrix:
    """Exact sum of c_i * M_i (promotes to QQ_I when needed)."""
    cs = [to_exact(c) for c in coeffs]
    dom = QQ_I if (any(c.y for c in cs) or any(m.domain == QQ_I for m in mats)) else QQ
    acc = DomainMatrix({}, mats[0].shape, dom)
    for c, M in zip(cs, mats):
        if c:
            if M.domain != dom:
                M = M.convert_to(dom)
            acc = acc + M * convert(c, dom)
    return acc


def is_zero(M: DomainMatrix) -> bool:
    return M.is_zero_matrix


def trace(M: DomainMatrix):
    t = M.domain.zero
    for (i, j), x in M.to_dok().items():
        if i == j:
            t += x
    return t


def flatten(M: DomainMatrix) -> SparseVec:
    """Row-major sparse vector of the entries of ``M``."""
    n = M.shape[1]
    return {i * n + j: x for (i, j), x in M.to_dok().items() if x}


def unflatten(vec: SparseVec, n: int, domain) -> DomainMatrix:
    dod: Dict[int, Dict[int, object]] = {}
    for k, x in vec.items():
        if x:
            dod.setdefault(k // n, {})[k % n] = x
    return DomainMatrix(dod, (n, n), domain)


def to_numpy(M) -> np.ndarray:
    if isinstance(M, np.ndarray):
        return M.astype(complex)
    out = np.zeros(M.shape, dtype=complex)
    for (i, j), x in M.to_dok().items():
        out[i, j] = to_complex(x)
    return out


def entries(M: DomainMatrix) -> List[List[ExactComplex]]:
    rows = M.to_list()
    return [[to_exact(x) if M.domain == QQ_I else QQ_I(x, 0) for x in r] for r in rows]


def matmul(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.domain != B.domain:
        A, B = unify(A, B)
    return A * B


def commutator(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.domain != B.domain:
        A, B = unify(A, B)
    return A * B - B * A


def is_exact(M) -> bool:
    return isinstance(M, DomainMatrix)
