"""Seeded random instances with known ground truth.

Representations are built exactly from pieces whose bracket relations hold
by construction, then conjugated by a random unimodular integer matrix so
no basis is special.  Nilpotent matrices come from Jordan data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from . import catalog
from .exact import EchelonBasis, commutator, eye, flatten, lincomb, matrix, solve_exact, to_exact, unify, zeros
from .lie_core import LieAlgebra, direct_sum, from_matrices
from .pbw import left_regular_rep, truncated_quotient
from .rep_engine import MatrixRep, conjugate_rep, direct_sum_rep


# ---------------------------------------------------------------------------
# unimodular conjugation
# ---------------------------------------------------------------------------


def unimodular(N: int, rng: random.Random, steps: Optional[int] = None, gaussian: bool = False) -> Tuple[DomainMatrix, DomainMatrix]:
    """Random P with integer (or Gaussian-integer) entries and det 1, plus P^-1.

    Built from elementary row operations, so the inverse is exact and cheap.
    """
    dom = QQ_I if gaussian else QQ
    P = eye(N, dom)
    Pinv = eye(N, dom)
    if N == 1:
        return P, Pinv
    for _ in range(steps if steps is not None else 2 * N):
        i, j = rng.sample(range(N), 2)
        c = rng.choice([-2, -1, 1, 2])
        val = QQ_I(c, rng.choice([-1, 0, 1])) if gaussian else QQ(c)
        E = eye(N, dom).to_dok()
        E[(i, j)] = val
        Einv = eye(N, dom).to_dok()
        Einv[(i, j)] = -val
        P = DomainMatrix.from_dok(E, (N, N), dom) * P
        Pinv = Pinv * DomainMatrix.from_dok(Einv, (N, N), dom)
    return P.to_sparse(), Pinv.to_sparse()


def scramble(R: MatrixRep, rng: random.Random, gaussian: bool = False) -> MatrixRep:
    P, Pinv = unimodular(R.N, rng, gaussian=gaussian)
    return conjugate_rep(R, P, Pinv)


# ---------------------------------------------------------------------------
# nilpotent matrices
# ---------------------------------------------------------------------------


def jordan_block(d: int, eigenvalue: int = 0) -> DomainMatrix:
    return matrix([[eigenvalue if r == c else 1 if c == r + 1 else 0 for c in range(d)] for r in range(d)])


def block_diag(blocks: Sequence[DomainMatrix]) -> DomainMatrix:
    blocks = unify(*blocks)
    N = sum(B.shape[0] for B in blocks)
    dod: Dict[int, Dict[int, object]] = {}
    off = 0
    for B in blocks:
        for (a, b), x in B.to_dok().items():
            dod.setdefault(a + off, {})[b + off] = x
        off += B.shape[0]
    return DomainMatrix(dod, (N, N), blocks[0].domain)


def random_partition(N: int, rng: random.Random) -> List[int]:
    parts = []
    left = N
    while left:
        p = rng.randint(1, left)
        parts.append(p)
        left -= p
    return sorted(parts, reverse=True)


def random_nilpotent(N: int, rng: random.Random, gaussian: bool = False) -> Tuple[DomainMatrix, int]:
    """(b, d) with b exactly nilpotent of degree d = largest Jordan block."""
    parts = random_partition(N, rng)
    J = block_diag([jordan_block(p) for p in parts])
    P, Pinv = unimodular(N, rng, gaussian=gaussian)
    A, B, C = unify(P, J, Pinv)
    return (A * B * C).to_sparse(), parts[0]


# ---------------------------------------------------------------------------
# representations of the catalog algebras
# ---------------------------------------------------------------------------


def _rand_int_matrix(N: int, rng: random.Random, lo=-2, hi=2, upper_only=False) -> DomainMatrix:
    return matrix([
        [rng.randint(lo, hi) if (not upper_only or c > r) else 0 for c in range(N)] for r in range(N)
    ])


def _poly_of(M: DomainMatrix, coeffs: Sequence[int]) -> DomainMatrix:
    N = M.shape[0]
    powers = [eye(N, M.domain)]
    for _ in range(1, len(coeffs)):
        powers.append(powers[-1] * M)
    return lincomb(list(coeffs), powers)


def _commuting_pair(N: int, rng: random.Random) -> Tuple[DomainMatrix, DomainMatrix]:
    M = _rand_int_matrix(N, rng, upper_only=rng.random() < 0.5)
    a = [rng.randint(-2, 2) for _ in range(3)]
    b = [rng.randint(-2, 2) for _ in range(3)]
    return _poly_of(M, a), _poly_of(M, b)


def rep_abelian2(L: LieAlgebra, N: int, rng: random.Random) -> MatrixRep:
    X, Y = _commuting_pair(N, rng)
    return MatrixRep(L, (X, Y))


def rep_nonabelian2(L: LieAlgebra, N: int, rng: random.Random) -> MatrixRep:
    """e1 -> diagonal D, e2 -> X supported where D_i - D_j = 1."""
    D = [rng.randint(-1, 2) for _ in range(N)]
    shift = rng.randint(-2, 2)
    X = [[rng.randint(-2, 2) if D[r] - D[c] == 1 else 0 for c in range(N)] for r in range(N)]
    return MatrixRep(L, (matrix([[D[r] + shift if r == c else 0 for c in range(N)] for r in range(N)]), matrix(X)))


def _heis_pieces(rng: random.Random) -> List[Tuple[DomainMatrix, DomainMatrix, DomainMatrix]]:
    out = []
    a, b = rng.choice([1, 2, -1]), rng.choice([1, 2, -1])
    E = catalog.E
    out.append((E(1, 2, 3) * a, E(2, 3, 3) * b, E(1, 3, 3) * (a * b)))
    return out


def rep_heisenberg(L: LieAlgebra, N: int, rng: random.Random) -> MatrixRep:
    """Direct sums of: the defining rep, T_2 regular rep, characters, z -> 0 pairs."""
    reps: List[MatrixRep] = []
    used = 0
    while used < N:
        room = N - used
        kinds = ["char"]
        if room >= 2:
            kinds.append("pair")
        if room >= 3:
            kinds.append("defining")
        if room >= 4:
            kinds.append("regular")
        kind = rng.choice(kinds)
        if kind == "defining":
            x, y, z = _heis_pieces(rng)[0]
            reps.append(MatrixRep(L, (x, y, z)))
            used += 3
        elif kind == "regular":
            reps.append(left_regular_rep(truncated_quotient(L, 2)))
            used += 4
        elif kind == "pair":
            k = rng.randint(2, min(room, 3))
            X, Y = _commuting_pair(k, rng)
            reps.append(MatrixRep(L, (X, Y, zeros(k))))
            used += k
        else:
            a, b = rng.randint(-2, 2), rng.randint(-2, 2)
            reps.append(MatrixRep(L, (matrix([[a]]), matrix([[b]]), matrix([[0]]))))
            used += 1
    return direct_sum_rep(*reps)


def sl2_irrep(k: int) -> Tuple[DomainMatrix, DomainMatrix, DomainMatrix]:
    """V_k of dimension k+1 in the (e, h, f) basis."""
    n = k + 1
    e = matrix([[c * (k - c + 1) if r == c - 1 else 0 for c in range(n)] for r in range(n)])
    h = matrix([[k - 2 * r if r == c else 0 for c in range(n)] for r in range(n)])
    f = matrix([[1 if r == c + 1 else 0 for c in range(n)] for r in range(n)])
    return e, h, f


def _sl2_blocks(N: int, rng: random.Random) -> List[int]:
    sizes = []
    left = N
    while left:
        s = rng.randint(1, min(left, 4))
        sizes.append(s)
        left -= s
    return sizes


def rep_sl2(L: LieAlgebra, N: int, rng: random.Random) -> MatrixRep:
    reps = [MatrixRep(L, sl2_irrep(s - 1)) for s in _sl2_blocks(N, rng)]
    return direct_sum_rep(*reps)


def rep_gl2(L: LieAlgebra, N: int, rng: random.Random) -> MatrixRep:
    """sl2 blocks plus a central scalar per block: E11 = (h + c)/2, E22 = (c - h)/2."""
    reps = []
    for s in _sl2_blocks(N, rng):
        e, h, f = sl2_irrep(s - 1)
        c = eye(s) * QQ(rng.randint(-2, 2))
        reps.append(MatrixRep(L, (lincomb(["1/2", "1/2"], [h, c]), e, f, lincomb(["1/2", "-1/2"], [c, h]))))
    return direct_sum_rep(*reps)


def rep_sl2_heisenberg(L: LieAlgebra, N: int, rng: random.Random) -> MatrixRep:
    S, H = catalog.sl2(), catalog.heisenberg()
    if N >= 6 and rng.random() < 0.5:
        # V_1 tensor defining rep of h3
        e, h, f = sl2_irrep(1)
        x, y, z = _heis_pieces(rng)[0]
        I2, I3 = eye(2), eye(3)
        mats = [kron(m, I3) for m in (e, h, f)] + [kron(I2, m) for m in (x, y, z)]
        R = MatrixRep(L, tuple(mats))
        rest = N - 6
    else:
        k = rng.randint(1, N - 1)
        s = rep_sl2(S, k, rng)
        t = rep_heisenberg(H, N - k, rng)
        zs = [zeros(k)] * 3
        zh = [zeros(N - k)] * 3
        R = direct_sum_rep(MatrixRep(L, tuple(list(s.mats) + zs)), MatrixRep(L, tuple(zh + list(t.mats))))
        rest = 0
    if rest:
        R = direct_sum_rep(R, MatrixRep(L, tuple([zeros(rest)] * 6)))
    return R


def kron(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    A, B = unify(A, B)
    n, m = A.shape[0], B.shape[0]
    dok = {}
    for (a, b), x in A.to_dok().items():
        for (c, d), y in B.to_dok().items():
            dok[(a * m + c, b * m + d)] = x * y
    return DomainMatrix.from_dok(dok, (n * m, n * m), A.domain).to_sparse()


REP_BUILDERS: Dict[str, Callable[[LieAlgebra, int, random.Random], MatrixRep]] = {
    "abelian2": rep_abelian2,
    "nonabelian2": rep_nonabelian2,
    "heisenberg": rep_heisenberg,
    "sl2": rep_sl2,
    "gl2": rep_gl2,
    "sl2+heisenberg": rep_sl2_heisenberg,
}

MIN_N = {"sl2+heisenberg": 2}


@dataclass
class RandomRep:
    name: str
    rep: MatrixRep
    seed: int


def random_rep(name: str, seed: int, N: Optional[int] = None, max_N: int = 8, gaussian: Optional[bool] = None) -> RandomRep:
    rng = random.Random(seed)
    L = catalog.get(name).algebra
    if N is None:
        N = rng.randint(MIN_N.get(name, 1), max_N)
    R = REP_BUILDERS[name](L, N, rng)
    if gaussian is None:
        gaussian = rng.random() < 0.25
    return RandomRep(name, scramble(R, rng, gaussian=gaussian), seed)


def random_reps(count: int, seed: int = 0, max_N: int = 8) -> List[RandomRep]:
    """``count`` reps cycling through the catalog, seeds derived from ``seed``."""
    names = catalog.names()
    return [random_rep(names[i % len(names)], seed * 100003 + i, max_N=max_N) for i in range(count)]


# ---------------------------------------------------------------------------
# random Lie algebras with known radicals
# ---------------------------------------------------------------------------


def lie_closure(mats: Sequence[DomainMatrix]) -> List[DomainMatrix]:
    """Basis of the Lie algebra of matrices generated under commutators."""
    mats = unify(*[m.to_sparse() for m in mats])
    eb = EchelonBasis(mats[0].domain)
    basis = []
    for M in mats:
        if eb.add(flatten(M)):
            basis.append(M)
    frontier = list(basis)
    gens = list(basis)
    while frontier:
        new = []
        for X in frontier:
            for G in gens:
                C = commutator(G, X)
                if eb.add(flatten(C)):
                    basis.append(C)
                    new.append(C)
        frontier = new
    return basis


@dataclass
class RandomAlgebra:
    algebra: LieAlgebra
    rep: MatrixRep
    # (dim r, dim n, dim s)
    radical_dims: Tuple[int, int, int]
    kind: str


def random_algebra(seed: int, size: int = 4, kind: Optional[str] = None) -> RandomAlgebra:
    """A nilpotent, solvable, or (solvable + sl2) matrix Lie algebra.

    nilpotent: Lie closure of strictly upper-triangular matrices, r = g, n = [g, g].
    solvable: the same plus a diagonal matrix acting by a derivation; r = g and
    n = [g, g] (the diagonal part is not a commutator).
    plus_sl2: direct sum of either with sl2, so s = sl2 and r, n unchanged.
    """
    rng = random.Random(seed)
    kind = kind or rng.choice(["nilpotent", "solvable", "plus_sl2"])
    base = kind if kind != "plus_sl2" else rng.choice(["nilpotent", "solvable"])
    while True:
        gens = [_rand_int_matrix(size, rng, upper_only=True) for _ in range(rng.randint(1, 3))]
        if base == "solvable":
            gens.append(matrix([[rng.randint(-2, 2) if r == c else 0 for c in range(size)] for r in range(size)]))
        gens = [g for g in gens if not g.is_zero_matrix]
        if gens:
            break
    basis = lie_closure(gens)
    L, mats = from_matrices(basis)
    R = MatrixRep(L, tuple(mats))
    derived = lie_closure_span_of_brackets(mats)
    dims = (L.dim, derived, 0)
    if kind == "plus_sl2":
        S = catalog.sl2()
        L2 = direct_sum(L, S)
        s_mats = sl2_irrep(1)
        big = [block_diag([M, zeros(2)]) for M in mats] + [block_diag([zeros(size), m]) for m in s_mats]
        R = MatrixRep(L2, tuple(big))
        L = L2
        dims = (dims[0], dims[1], 3)
    return RandomAlgebra(L, R, dims, kind)


def lie_closure_span_of_brackets(mats: Sequence[DomainMatrix]) -> int:
    """dim of span{[X, Y]} over a basis (the derived algebra of a matrix Lie algebra)."""
    eb = EchelonBasis(mats[0].domain)
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            eb.add(flatten(commutator(mats[i], mats[j])))
    return len(eb)


def change_basis(L: LieAlgebra, P: Sequence[Sequence]) -> LieAlgebra:
    """Same algebra in the basis f_a = sum_i P[i][a] e_i (P invertible)."""
    from .lie_core import bracket

    n = L.dim
    P = [[to_exact(x) for x in row] for row in P]
    cols = [[P[i][a] for i in range(n)] for a in range(n)]
    sc = {}
    for a in range(n):
        for b in range(a + 1, n):
            v = bracket(L, cols[a], cols[b])
            x = solve_exact(P, v, n)
            if x is None:
                raise ValueError("basis change matrix is singular")
            col = {k: x[k] for k in range(n) if x[k]}
            if col:
                sc[(a, b)] = col
    return LieAlgebra(n, sc)


def sl2_ltimes_heisenberg() -> LieAlgebra:
    """sl2 acting on span(x, y) by the defining rep, [x, y] = z central.

    Radical h3, nilpotent radical h3 (= [g, r]), Levi factor sl2.
    """
    sc = {
        (0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2},
        (0, 4): {3: 1},           # [e, y] = x
        (1, 3): {3: 1},           # [h, x] = x
        (1, 4): {4: -1},          # [h, y] = -y
        (2, 3): {4: 1},           # [f, x] = y
        (3, 4): {5: 1},           # [x, y] = z
    }
    return LieAlgebra(6, sc, ["e", "h", "f", "x", "y", "z"])


def sl2_ltimes_plane() -> LieAlgebra:
    """sl2 acting on an abelian plane; radical = nilpotent radical = the plane."""
    sc = {
        (0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2},
        (0, 4): {3: 1}, (1, 3): {3: 1}, (1, 4): {4: -1}, (2, 3): {4: 1},
    }
    return LieAlgebra(5, sc, ["e", "h", "f", "x", "y"])


def random_unimodular_rows(n: int, rng: random.Random) -> List[List[int]]:
    P, _ = unimodular(n, rng)
    return [[int(x) for x in row] for row in P.to_list()]
