"""Built-in Lie algebras with a default faithful matrix representation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from .exact import matrix
from .lie_core import LieAlgebra, direct_sum
from .rep_engine import MatrixRep


def E(i: int, j: int, n: int):
    """Matrix unit E_ij (1-based indices)."""
    return matrix([[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(n)] for r in range(n)])


def diag(*vals):
    n = len(vals)
    return matrix([[vals[r] if r == c else 0 for c in range(n)] for r in range(n)])


def abelian(k: int) -> LieAlgebra:
    return LieAlgebra(k, {}, [f"a{i + 1}" for i in range(k)])


def nonabelian2() -> LieAlgebra:
    """[e1, e2] = e2."""
    return LieAlgebra(2, {(0, 1): {1: 1}}, ["e1", "e2"])


def heisenberg() -> LieAlgebra:
    """[x, y] = z."""
    return LieAlgebra(3, {(0, 1): {2: 1}}, ["x", "y", "z"])


def sl2() -> LieAlgebra:
    """Basis (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return LieAlgebra(3, {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}, ["e", "h", "f"])


def gl2() -> LieAlgebra:
    """Matrix units (E11, E12, E21, E22)."""
    return LieAlgebra(
        4,
        {
            (0, 1): {1: 1},
            (0, 2): {2: -1},
            (1, 2): {0: 1, 3: -1},
            (1, 3): {1: 1},
            (2, 3): {2: -1},
        },
        ["E11", "E12", "E21", "E22"],
    )


def sl2_heisenberg() -> LieAlgebra:
    return direct_sum(sl2(), heisenberg())


def _rep_abelian2(L):
    return MatrixRep(L, (diag(1, 0), diag(0, 1)))


def _rep_nonabelian2(L):
    return MatrixRep(L, (diag(1, 0), E(1, 2, 2)))


def _rep_heisenberg(L):
    return MatrixRep(L, (E(1, 2, 3), E(2, 3, 3), E(1, 3, 3)))


def _rep_sl2(L):
    return MatrixRep(L, (E(1, 2, 2), diag(1, -1), E(2, 1, 2)))


def _rep_gl2(L):
    return MatrixRep(L, (E(1, 1, 2), E(1, 2, 2), E(2, 1, 2), E(2, 2, 2)))


def _rep_sl2_heis(L):
    from .rep_engine import direct_sum_rep

    s = _rep_sl2(sl2())
    h = _rep_heisenberg(heisenberg())
    zs = matrix([[0] * 3 for _ in range(3)])
    z2 = matrix([[0] * 2 for _ in range(2)])
    left = MatrixRep(L, tuple(list(s.mats) + [z2] * 3))
    right = MatrixRep(L, tuple([zs] * 3 + list(h.mats)))
    return direct_sum_rep(left, right)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    rep: Optional[MatrixRep]
    note: str
    # hand-derived (dim r, dim n, dim s)
    radical_dims: tuple

    def to_json(self) -> dict:
        out = {"name": self.name, "algebra": self.algebra.to_json(), "note": self.note}
        r, n, s = self.radical_dims
        out["expected"] = {"dim_radical": r, "dim_nilradical": n, "dim_levi": s}
        if self.rep is not None:
            out["rep"] = self.rep.to_json(algebra_ref=self.name)
        return out


_BUILDERS: Dict[str, tuple] = {
    "abelian2": (lambda: abelian(2), _rep_abelian2, (2, 0, 0),
                 "abelian C^2; reductive, trivial nilpotent radical"),
    "nonabelian2": (nonabelian2, _rep_nonabelian2, (2, 1, 0),
                    "2-dim non-abelian [e1,e2]=e2; nilpotent radical C e2"),
    "heisenberg": (heisenberg, _rep_heisenberg, (3, 1, 0),
                   "Heisenberg h3 [x,y]=z; nilpotent non-abelian, nilpotent radical C z"),
    "sl2": (sl2, _rep_sl2, (0, 0, 3), "sl2, semisimple"),
    "gl2": (gl2, _rep_gl2, (1, 0, 3), "gl2 = sl2 + C I, reductive"),
    "sl2+heisenberg": (sl2_heisenberg, _rep_sl2_heis, (3, 1, 3),
                       "sl2 (+) h3; Levi factor sl2, radical h3, nilpotent radical C z"),
}


def names() -> List[str]:
    return list(_BUILDERS)


def get(name: str) -> CatalogEntry:
    try:
        build, rep, dims, note = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(_BUILDERS)}") from None
    L = build()
    return CatalogEntry(name, L, rep(L), note, dims)


def entries() -> List[CatalogEntry]:
    return [get(n) for n in _BUILDERS]
