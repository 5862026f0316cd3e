"""Matrix representations and the finite-dimensional associative algebras they generate."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .exact import (
    EchelonBasis,
    commutator,
    eye,
    flatten,
    format_exact,
    is_exact,
    lincomb,
    matrix,
    to_exact,
    to_numpy,
    trace,
    unify,
)
from .lie_core import LieAlgebra, Subspace, nilpotent_radical

CMatrix = Union[DomainMatrix, np.ndarray]

# float-mode thresholds
TAU_REP = 1e-9
TAU_NIL = 1e-9


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MatrixRep:
    """Images of the basis of ``algebra`` as N x N matrices."""

    algebra: LieAlgebra
    mats: tuple

    def __post_init__(self):
        if len(self.mats) != self.algebra.dim:
            raise RepresentationError(
                f"expected {self.algebra.dim} matrices, got {len(self.mats)}"
            )
        shapes = {m.shape for m in self.mats}
        if len(shapes) != 1:
            raise RepresentationError("matrices must share one square shape")
        (shape,) = shapes
        if shape[0] != shape[1]:
            raise RepresentationError("matrices must be square")
        if all(is_exact(m) for m in self.mats):
            object.__setattr__(self, "mats", tuple(unify(*[m.to_sparse() for m in self.mats])))
        elif any(is_exact(m) for m in self.mats):
            raise RepresentationError("cannot mix exact and float matrices")

    @property
    def N(self) -> int:
        return self.mats[0].shape[0]

    @property
    def exact(self) -> bool:
        return is_exact(self.mats[0])

    @property
    def domain(self):
        return self.mats[0].domain if self.exact else None

    def image(self, v: Sequence) -> CMatrix:
        """rho(v) for a coordinate vector v of the Lie algebra."""
        if self.exact:
            return lincomb(v, self.mats)
        out = np.zeros((self.N, self.N), dtype=complex)
        for c, M in zip(v, self.mats):
            out += complex(c) * M if not hasattr(c, "x") else complex(float(c.x), float(c.y)) * M
        return out

    def scaled(self, c) -> "MatrixRep":
        """c*rho, a representation of the algebra with bracket scaled by c."""
        from .lie_core import scaled

        if self.exact:
            mats = tuple(lincomb([c], [M]) for M in self.mats)
        else:
            mats = tuple(complex(c) * M for M in self.mats)
        return MatrixRep(scaled(self.algebra, c), mats)

    def to_float(self) -> "MatrixRep":
        return MatrixRep(self.algebra, tuple(to_numpy(M) for M in self.mats))

    def to_json(self, algebra_ref=None) -> dict:
        mats = []
        for M in self.mats:
            if self.exact:
                rows = M.to_list()
                dom = M.domain
                mats.append([[list(format_exact(x if dom == QQ_I else QQ_I(x, 0))) for x in r] for r in rows])
            else:
                mats.append([[[float(x.real), float(x.imag)] for x in r] for r in M])
        return {
            "algebra": algebra_ref if algebra_ref is not None else self.algebra.to_json(),
            "N": self.N,
            "mats": mats,
        }

    @classmethod
    def from_json(cls, data, algebra: Optional[LieAlgebra] = None) -> "MatrixRep":
        try:
            N = int(data["N"])
            raw = data["mats"]
            if algebra is None:
                algebra = LieAlgebra.from_json(data["algebra"])
        except (KeyError, TypeError) as exc:
            raise RepresentationError(f"malformed representation object: {exc}") from exc
        mats = []
        exact_mode = None
        for M in raw:
            if len(M) != N or any(len(r) != N for r in M):
                raise RepresentationError(f"matrix is not {N}x{N}")
            flat = [x for r in M for x in r]
            is_str = all(isinstance(p[0], str) and isinstance(p[1], str) for p in flat) if flat else True
            if exact_mode is None:
                exact_mode = is_str
            elif exact_mode != is_str:
                raise RepresentationError("mixed exact (string) and float entries")
            if is_str:
                mats.append(matrix([[to_exact((p[0], p[1])) for p in r] for r in M]))
            else:
                mats.append(np.array([[complex(p[0], p[1]) for p in r] for r in M], dtype=complex))
        return cls(algebra, tuple(mats))


@dataclass(frozen=True)
class RepViolation:
    pair: tuple
    residual: float


def validate_rep(R: MatrixRep) -> Optional[RepViolation]:
    """None when rho([e_i,e_j]) = [rho e_i, rho e_j] for all pairs, else the first failure."""
    L = R.algebra
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            target = R.image([L.c(i, j, k) for k in range(L.dim)])
            if R.exact:
                diff = commutator(R.mats[i], R.mats[j]) - unify(target, R.mats[i])[0]
                if not diff.is_zero_matrix:
                    return RepViolation((i, j), float(np.linalg.norm(to_numpy(diff), 2)))
            else:
                diff = R.mats[i] @ R.mats[j] - R.mats[j] @ R.mats[i] - target
                scale = max(1.0, np.linalg.norm(R.mats[i], 2) * np.linalg.norm(R.mats[j], 2))
                res = float(np.linalg.norm(diff, 2))
                if res > TAU_REP * scale:
                    return RepViolation((i, j), res)
    return None


# ---------------------------------------------------------------------------
# associative algebras of matrices
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class AssocAlgebra:
    """Span of exact N x N matrices closed under multiplication."""

    N: int
    domain: object
    basis: List[DomainMatrix]
    unital: bool = False
    _eb: EchelonBasis = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def echelon(self) -> EchelonBasis:
        if self._eb is None:
            self._eb = EchelonBasis(self.domain)
            self._eb.extend(flatten(M) for M in self.basis)
        return self._eb

    def contains(self, M: DomainMatrix) -> bool:
        if M.domain == self.domain:
            return self.echelon().contains(flatten(M))
        if self.domain == QQ_I:
            return self.echelon().contains(flatten(M.convert_to(QQ_I)))
        # real algebra, Gaussian-rational matrix: test in the complexified span
        eb = EchelonBasis(QQ_I)
        eb.extend(flatten(B.convert_to(QQ_I)) for B in self.basis)
        return eb.contains(flatten(M))

    def same_span(self, other: "AssocAlgebra") -> bool:
        return self.dim == other.dim and all(self.contains(M) for M in other.basis)


def span_algebra(mats: Sequence[DomainMatrix], N: int, domain=None) -> AssocAlgebra:
    """Linear span (no closure) with a reduced basis."""
    if domain is None:
        domain = QQ_I if any(M.domain == QQ_I for M in mats) else QQ
    eb = EchelonBasis(domain)
    basis = []
    for M in mats:
        if M.domain != domain:
            M = M.convert_to(domain)
        if eb.add(flatten(M)):
            basis.append(M)
    return AssocAlgebra(N, domain, basis, False, eb)


def associative_closure(mats: Sequence[CMatrix], unital: bool = False, N: Optional[int] = None) -> AssocAlgebra:
    """Smallest (unital) algebra containing ``mats``.

    Exact inputs are closed exactly.  The span of all nonempty words in a
    generating set S equals S + S*(that span), so left multiplication of
    each new basis element by the generators reaches the fixpoint.
    """
    mats = list(mats)
    if N is None:
        if not mats:
            raise ValueError("need N for an empty generating set")
        N = mats[0].shape[0]
    if mats and not is_exact(mats[0]):
        return _float_closure(mats, unital, N)
    domain = QQ_I if any(M.domain == QQ_I for M in mats) else QQ
    mats = [M.to_sparse() if M.domain == domain else M.convert_to(domain).to_sparse() for M in mats]
    eb = EchelonBasis(domain)
    basis: List[DomainMatrix] = []
    gens: List[DomainMatrix] = []
    for M in mats:
        if eb.add(flatten(M)):
            basis.append(M)
            gens.append(M)
    if unital:
        I = eye(N, domain)
        if eb.add(flatten(I)):
            basis.append(I)
    frontier = list(basis)
    while frontier:
        new = []
        for B in frontier:
            for G in gens:
                P = G * B
                if eb.add(flatten(P)):
                    basis.append(P)
                    new.append(P)
        frontier = new
    return AssocAlgebra(N, domain, basis, unital, eb)


def _float_closure(mats, unital, N, tol=1e-10):
    vecs: List[np.ndarray] = []

    def add(M):
        v = np.asarray(M, dtype=complex).reshape(-1)
        nv = np.linalg.norm(v)
        if nv == 0:
            return None
        w = v / nv
        for q in vecs:
            w = w - np.vdot(q, w) * q
        for q in vecs:
            w = w - np.vdot(q, w) * q
        if np.linalg.norm(w) <= tol:
            return None
        w = w / np.linalg.norm(w)
        vecs.append(w)
        return w.reshape(N, N)

    gens = [np.asarray(M, dtype=complex) for M in mats]
    frontier = [B for B in (add(M) for M in gens) if B is not None]
    if unital:
        B = add(np.eye(N))
        if B is not None:
            frontier.append(B)
    while frontier:
        nxt = []
        for B in frontier:
            for G in gens:
                C = add(G @ B)
                if C is not None:
                    nxt.append(C)
        frontier = nxt
    return FloatAlgebra(N, [v.reshape(N, N) for v in vecs], unital)


@dataclass(eq=False)
class FloatAlgebra:
    """Orthonormal (Frobenius) basis of a numerically closed matrix algebra."""

    N: int
    basis: List[np.ndarray]
    unital: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)


def product_span(A_basis: Sequence[DomainMatrix], B_basis: Sequence[DomainMatrix], N: int, domain) -> AssocAlgebra:
    return span_algebra([X * Y for X in A_basis for Y in B_basis], N, domain)


def element_nilpotency_degree(b: CMatrix) -> Optional[int]:
    """Smallest d with b^d = 0, or None when b is not nilpotent.

    Exact matrices are decided exactly.  Float matrices use the relative
    residual ||b^d|| <= TAU_NIL * ||b||^d.
    """
    N = b.shape[0]
    if is_exact(b):
        b = b.to_sparse()
        P = b
        for d in range(1, N + 1):
            if P.is_zero_matrix:
                return d
            P = P * b
        return None
    b = np.asarray(b, dtype=complex)
    nb = np.linalg.norm(b, 2)
    if nb == 0:
        return 1
    u = b / nb
    P = u
    for d in range(1, N + 1):
        if np.linalg.norm(P, 2) <= TAU_NIL:
            return d
        P = P @ u
    return None


def algebra_nilpotency_degree(A: Union[AssocAlgebra, FloatAlgebra]) -> Optional[int]:
    """Smallest d with A^d = 0 (products of any d elements vanish), or None."""
    if isinstance(A, FloatAlgebra):
        return _float_algebra_degree(A)
    if A.dim == 0:
        return 1
    power = A.basis
    dim = A.dim
    d = 1
    while True:
        nxt = product_span(power, A.basis, A.N, A.domain)
        d += 1
        if nxt.dim == 0:
            return d
        if nxt.dim == dim:
            return None
        power, dim = nxt.basis, nxt.dim


def _float_algebra_degree(A: FloatAlgebra, tol=1e-9) -> Optional[int]:
    if A.dim == 0:
        return 1
    power = A.basis
    d = 1
    dim = A.dim
    while True:
        prods = [X @ Y for X in power for Y in A.basis]
        if not prods:
            return d + 1
        M = np.array([P.reshape(-1) for P in prods])
        s = np.linalg.svd(M, compute_uv=False)
        r = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 0.0)))
        d += 1
        if r == 0:
            return d
        if r == dim:
            return None
        _, _, vh = np.linalg.svd(M)
        power = [vh[i].conj().reshape(A.N, A.N) for i in range(r)]
        dim = r


def jacobson_radical(A: AssocAlgebra) -> AssocAlgebra:
    """{a in A : tr(a b) = 0 for all b in A} using the ambient matrix trace.

    In characteristic zero this trace-form kernel is exactly the largest
    nilpotent ideal of a matrix algebra.
    """
    m = A.dim
    if m == 0:
        return AssocAlgebra(A.N, A.domain, [], False)
    G = [[trace(A.basis[i] * A.basis[j]) for j in range(m)] for i in range(m)]
    ns = DomainMatrix(G, (m, m), A.domain).nullspace()
    vecs = ns.to_list() if ns.shape[0] else []
    mats = []
    for v in vecs:
        M = DomainMatrix({}, (A.N, A.N), A.domain)
        for c, B in zip(v, A.basis):
            if c:
                M = M + B * c
        mats.append(M)
    R = span_algebra(mats, A.N, A.domain)
    return R


@dataclass
class ContainmentReport:
    ok: bool
    checked: int
    radical_dim: int
    algebra_dim: int
    counterexample: Optional[DomainMatrix] = None
    vector: Optional[tuple] = None


def random_combination(basis: Sequence[Sequence], rng: random.Random, lo: int = -3, hi: int = 3) -> tuple:
    """Small-integer combination of basis vectors (never all-zero coefficients)."""
    from .exact import ZERO

    if not basis:
        return ()
    while True:
        coeffs = [rng.randint(lo, hi) for _ in basis]
        if any(coeffs):
            break
    n = len(basis[0])
    out = [ZERO] * n
    for c, v in zip(coeffs, basis):
        if c:
            for t in range(n):
                out[t] += to_exact(c) * v[t]
    return tuple(out)


def radical_containment_check(
    R: MatrixRep, nil_rad: Optional[Subspace] = None, samples: int = 20, seed: int = 0
) -> ContainmentReport:
    """Check rho(eta) lies in the Jacobson radical of the unital algebra generated by rho(g)."""
    if not R.exact:
        raise RepresentationError("radical containment is decided in exact mode")
    if nil_rad is None:
        nil_rad = nilpotent_radical(R.algebra)
    A = associative_closure(R.mats, unital=True, N=R.N)
    rad = jacobson_radical(A)
    if nil_rad.is_zero():
        return ContainmentReport(True, 0, rad.dim, A.dim)
    rng = random.Random(seed)
    etas = list(nil_rad.basis) + [random_combination(nil_rad.basis, rng) for _ in range(samples)]
    for eta in etas:
        M = R.image(eta)
        if not rad.contains(M):
            return ContainmentReport(False, len(etas), rad.dim, A.dim, M, eta)
    return ContainmentReport(True, len(etas), rad.dim, A.dim)


def direct_sum_rep(*reps: MatrixRep) -> MatrixRep:
    """Block-diagonal sum of exact representations of the same algebra."""
    L = reps[0].algebra
    N = sum(r.N for r in reps)
    dom = QQ_I if any(r.domain == QQ_I for r in reps) else QQ
    mats = []
    for i in range(L.dim):
        dod = {}
        off = 0
        for r in reps:
            M = r.mats[i] if r.domain == dom else r.mats[i].convert_to(dom)
            for (a, b), x in M.to_dok().items():
                dod.setdefault(a + off, {})[b + off] = x
            off += r.N
        mats.append(DomainMatrix(dod, (N, N), dom))
    return MatrixRep(L, tuple(mats))


def conjugate_rep(R: MatrixRep, P: DomainMatrix, Pinv: DomainMatrix) -> MatrixRep:
    mats = []
    for M in R.mats:
        A, B, C = unify(P, M, Pinv)
        mats.append(A * B * C)
    return MatrixRep(R.algebra, tuple(mats))
