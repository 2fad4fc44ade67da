"""Lie-Yamaguti structures: a binary and a ternary operation in tandem.

The six axioms (LY1-LY6) say the binary product is skew, the ternary is skew
in its first two slots, the two operations satisfy the mixed Jacobi-type
cyclic identities, and each delta(x, y) = {x, y, -} is a derivation of both
operations. Every Leibniz algebra carries such a structure (skew product plus
{x, y, z} = -(x.y).z / 4), and every reductive decomposition g = h (+) m
induces one on m by projecting the bracket and composing through h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import StructureAlgebra, Subspace
from .linalg import (
    Matrix,
    Q,
    Vec,
    basis_vec,
    inverse,
    is_zero_vec,
    vadd,
    vneg,
    vzero,
)
from .products import ModuleAction

BinTensor = tuple[tuple[Vec, ...], ...]
TernTensor = tuple[tuple[tuple[Vec, ...], ...], ...]


@dataclass(frozen=True)
class LYReport:
    ok: bool
    axiom: str | None = None
    at: tuple[int, ...] | None = None


@dataclass(frozen=True)
class LieYamaguti:
    dim: int
    b: BinTensor
    t: TernTensor

    @staticmethod
    def from_tensors(b: Sequence, t: Sequence) -> "LieYamaguti":
        dim = len(b)
        bt = tuple(tuple(tuple(Fraction(x) for x in cell) for cell in row) for row in b)
        tt = tuple(tuple(tuple(tuple(Fraction(x) for x in cell) for cell in row)
                         for row in plane) for plane in t)
        if any(len(row) != dim for row in bt) or any(len(cell) != dim for row in bt for cell in row):
            raise ValueError("binary tensor is not dim^3")
        if len(tt) != dim or any(len(p) != dim for p in tt) \
                or any(len(r) != dim for p in tt for r in p) \
                or any(len(c) != dim for p in tt for r in p for c in r):
            raise ValueError("ternary tensor is not dim^4")
        return LieYamaguti(dim, bt, tt)

    def binary(self, x: Vec, y: Vec) -> Vec:
        out = [Q(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                f = xi * yj
                for k, ck in enumerate(self.b[i][j]):
                    if ck != 0:
                        out[k] += f * ck
        return tuple(out)

    def ternary(self, x: Vec, y: Vec, z: Vec) -> Vec:
        out = [Q(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                f = xi * yj
                for k, zk in enumerate(z):
                    if zk == 0:
                        continue
                    g = f * zk
                    for l, cl in enumerate(self.t[i][j][k]):
                        if cl != 0:
                            out[l] += g * cl
        return tuple(out)


def _comb(rows: Sequence[Vec], coeffs: Vec, n: int) -> Vec:
    out = [Q(0)] * n
    for l, cl in enumerate(coeffs):
        if cl == 0:
            continue
        for k, x in enumerate(rows[l]):
            if x != 0:
                out[k] += cl * x
    return tuple(out)


def validate_ly(ly: LieYamaguti) -> LYReport:
    """Check LY1-LY6 on full basis tuple ranges, lexicographic first failure."""
    n, b, t = ly.dim, ly.b, ly.t

    for i in range(n):
        for j in range(n):
            if b[i][j] != vneg(b[j][i]):
                return LYReport(False, "LY1", (i, j))

    for i in range(n):
        for j in range(n):
            for k in range(n):
                if t[i][j][k] != vneg(t[j][i][k]):
                    return LYReport(False, "LY2", (i, j, k))

    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = [Q(0)] * n
                for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = b[x][y]
                    for l, cl in enumerate(inner):
                        if cl == 0:
                            continue
                        for m, xm in enumerate(b[l][z]):
                            if xm != 0:
                                acc[m] += cl * xm
                    for m, xm in enumerate(t[x][y][z]):
                        if xm != 0:
                            acc[m] += xm
                if any(v != 0 for v in acc):
                    return LYReport(False, "LY3", (i, j, k))

    for i in range(n):
        for j in range(n):
            for k in range(n):
                for u in range(n):
                    acc = [Q(0)] * n
                    for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = b[x][y]
                        for l, cl in enumerate(inner):
                            if cl == 0:
                                continue
                            for m, xm in enumerate(t[l][z][u]):
                                if xm != 0:
                                    acc[m] += cl * xm
                    if any(v != 0 for v in acc):
                        return LYReport(False, "LY4", (i, j, k, u))

    for i in range(n):
        for j in range(n):
            for u in range(n):
                for v in range(n):
                    lhs = _comb(t[i][j], b[u][v], n)
                    rhs = [Q(0)] * n
                    for l, cl in enumerate(t[i][j][u]):
                        if cl == 0:
                            continue
                        for m, xm in enumerate(b[l][v]):
                            if xm != 0:
                                rhs[m] += cl * xm
                    for l, cl in enumerate(t[i][j][v]):
                        if cl == 0:
                            continue
                        for m, xm in enumerate(b[u][l]):
                            if xm != 0:
                                rhs[m] += cl * xm
                    if lhs != tuple(rhs):
                        return LYReport(False, "LY5", (i, j, u, v))

    for i in range(n):
        for j in range(n):
            for u in range(n):
                for v in range(n):
                    for w in range(n):
                        lhs = _comb(t[i][j], t[u][v][w], n)
                        rhs = [Q(0)] * n
                        for l, cl in enumerate(t[i][j][u]):
                            if cl == 0:
                                continue
                            for m, xm in enumerate(t[l][v][w]):
                                if xm != 0:
                                    rhs[m] += cl * xm
                        for l, cl in enumerate(t[i][j][v]):
                            if cl == 0:
                                continue
                            for m, xm in enumerate(t[u][l][w]):
                                if xm != 0:
                                    rhs[m] += cl * xm
                        for l, cl in enumerate(t[i][j][w]):
                            if cl == 0:
                                continue
                            for m, xm in enumerate(t[u][v][l]):
                                if xm != 0:
                                    rhs[m] += cl * xm
                        if lhs != tuple(rhs):
                            return LYReport(False, "LY6", (i, j, u, v, w))

    return LYReport(True)


def ly_from_leibniz(e: StructureAlgebra) -> LieYamaguti:
    """Skew product plus ternary {x, y, z} = -(x.y).z / 4 on a Leibniz algebra."""
    ok, witness = e.check_leibniz()
    if not ok:
        raise ValueError(f"not a Leibniz algebra: first failing triple {witness[:3]}")
    n = e.dim
    quarter = Q(-1, 4)
    b = tuple(tuple(e.skew_product(basis_vec(n, i), basis_vec(n, j)) for j in range(n))
              for i in range(n))
    t = tuple(tuple(tuple(tuple(quarter * x for x in e.rmul_basis(e.c[i][j], k))
                          for k in range(n))
                    for j in range(n))
              for i in range(n))
    return LieYamaguti(n, b, t)


def ly_from_decomposition(g: StructureAlgebra,
                          h_basis: Subspace | Sequence[Vec],
                          m_basis: Subspace | Sequence[Vec]) -> LieYamaguti:
    """LY structure on m from a reductive decomposition g = h (+) m.

    Binary: m-projection of the bracket. Ternary: {x, y, z} = [h-part of
    [x, y], z]. Tensors are written in the supplied m basis (a Subspace
    contributes its canonical rref basis).
    """
    if not g.is_lie:
        raise ValueError("g is not a Lie algebra")
    hb = list(h_basis.basis if isinstance(h_basis, Subspace) else map(tuple, h_basis))
    mb = list(m_basis.basis if isinstance(m_basis, Subspace) else map(tuple, m_basis))
    n = g.dim
    if len(hb) + len(mb) != n:
        raise ValueError("h and m dimensions do not fill g")
    cols = hb + mb
    basis_mat = Matrix.from_cols(cols)
    inv = inverse(basis_mat)
    if inv is None:
        raise ValueError("h and m do not form a direct sum decomposition")
    hd, md = len(hb), len(mb)

    def split(v: Vec) -> tuple[Vec, Vec]:
        z = inv.apply(v)
        return z[:hd], z[hd:]

    for a in range(hd):
        for bb in range(a + 1, hd):
            _, mpart = split(g.product(hb[a], hb[bb]))
            if not is_zero_vec(mpart):
                raise ValueError(f"h is not a subalgebra at basis pair ({a}, {bb})")
    for a in range(hd):
        for i in range(md):
            hpart, _ = split(g.product(hb[a], mb[i]))
            if not is_zero_vec(hpart):
                raise ValueError(f"decomposition is not reductive at (h {a}, m {i})")

    bt = []
    tt = []
    for i in range(md):
        brow = []
        trow = []
        for j in range(md):
            hpart, mpart = split(g.product(mb[i], mb[j]))
            brow.append(mpart)
            delta_amb = vzero(n)
            for a, ca in enumerate(hpart):
                if ca != 0:
                    delta_amb = vadd(delta_amb, tuple(ca * x for x in hb[a]))
            cell = []
            for k in range(md):
                hres, mres = split(g.product(delta_amb, mb[k]))
                if not is_zero_vec(hres):
                    raise ValueError("decomposition is not reductive")
                cell.append(mres)
            trow.append(tuple(cell))
        bt.append(tuple(brow))
        tt.append(tuple(trow))
    return LieYamaguti(md, tuple(bt), tuple(tt))


# -- inner derivations and the envelope ---------------------------------------

def delta_matrix(ly: LieYamaguti, i: int, j: int) -> Matrix:
    """Matrix of delta(e_i, e_j) = {e_i, e_j, -}."""
    return Matrix.from_cols([ly.t[i][j][k] for k in range(ly.dim)])


def inner_derivations(ly: LieYamaguti) -> tuple[list[Matrix], Subspace]:
    """Generator matrices delta(e_i, e_j) for i < j, and their span in gl(m)."""
    n = ly.dim
    gens = [delta_matrix(ly, i, j) for i in range(n) for j in range(i + 1, n)]
    flat = [tuple(x for row in m.entries for x in row) for m in gens]
    return gens, Subspace.span(n * n, flat)


@dataclass(frozen=True)
class LYEnvelope:
    g: StructureAlgebra
    h: StructureAlgebra
    action: ModuleAction
    delta: tuple[tuple[Vec, ...], ...]  # delta[i][j] in h coordinates

    @property
    def h_dim(self) -> int:
        return self.h.dim

    @property
    def m_dim(self) -> int:
        return self.g.dim - self.h.dim


def _flatten(m: Matrix) -> Vec:
    return tuple(x for row in m.entries for x in row)


def ly_envelope(ly: LieYamaguti,
                h: StructureAlgebra | None = None,
                action: ModuleAction | None = None,
                delta: Sequence[Sequence[Vec]] | None = None) -> LYEnvelope:
    """Lie algebra g = h (+) m with bracket

        [xi + x, eta + y] = ([xi, eta] + Delta(x, y)) + (xi y - eta x + <<x, y>>)

    Defaults to h = span of inner derivations with Delta = delta. An explicit
    (h, action, delta) is validated against the three delta conditions first.
    """
    n = ly.dim
    if (h is None) != (action is None) or (h is None) != (delta is None):
        raise ValueError("supply h, action and delta together or none of them")

    if h is None:
        gens, span = inner_derivations(ly)
        hd = span.dim
        mats = tuple(Matrix.from_rows([list(r[k * n:(k + 1) * n]) for k in range(n)])
                     for r in span.basis)
        try:
            c = tuple(tuple(span.coords(_flatten(mats[a] @ mats[b] - mats[b] @ mats[a]))
                            for b in range(hd))
                      for a in range(hd))
        except ValueError:
            raise ValueError("inner derivations do not close under commutators") from None
        h = StructureAlgebra(hd, c, tuple(f"d{a+1}" for a in range(hd)))
        action = ModuleAction(h, mats, space_dim=n)
        delta_t = tuple(tuple(span.coords(_flatten(delta_matrix(ly, i, j)))
                              for j in range(n))
                        for i in range(n))
    else:
        delta_t = tuple(tuple(tuple(Fraction(x) for x in cell) for cell in row) for row in delta)
        if action.v_dim != n:
            raise ValueError("action matrices do not act on the LY space")
        hd = h.dim
        for i in range(n):
            for j in range(n):
                if delta_t[i][j] != vneg(delta_t[j][i]):
                    raise ValueError(f"delta is not skew at ({i}, {j})")
        for i in range(n):
            for j in range(n):
                mat = action.of(delta_t[i][j])
                for k in range(n):
                    if mat.col(k) != ly.t[i][j][k]:
                        raise ValueError(
                            f"delta1 fails at ({i}, {j}, {k}): delta does not act as the ternary")
        for a in range(hd):
            m = action.mats[a]
            for i in range(n):
                for j in range(n):
                    lhs = h.product(basis_vec(hd, a), delta_t[i][j])
                    rhs = vadd(_bilinear(delta_t, m.col(i), basis_vec(n, j), hd),
                               _bilinear(delta_t, basis_vec(n, i), m.col(j), hd))
                    if lhs != rhs:
                        raise ValueError(f"delta2 fails at (h {a}, {i}, {j}): not equivariant")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    acc = vzero(hd)
                    for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                        acc = vadd(acc, _bilinear(delta_t, ly.b[x][y], basis_vec(n, z), hd))
                    if not is_zero_vec(acc):
                        raise ValueError(
                            f"delta3 fails at ({i}, {j}, {k}): cyclic sum over the binary")

    hd = h.dim
    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(hd):
        for bb in range(hd):
            cell = h.c[a][bb]
            entry = {k: cell[k] for k in range(hd) if cell[k] != 0}
            if entry:
                products[(a, bb)] = entry
    for a in range(hd):
        m = action.mats[a]
        for i in range(n):
            col = m.col(i)
            entry = {hd + k: col[k] for k in range(n) if col[k] != 0}
            if entry:
                products[(a, hd + i)] = entry
                products[(hd + i, a)] = {k: -v for k, v in entry.items()}
    for i in range(n):
        for j in range(n):
            entry: dict[int, Fraction] = {}
            for a in range(hd):
                if delta_t[i][j][a] != 0:
                    entry[a] = delta_t[i][j][a]
            for k in range(n):
                if ly.b[i][j][k] != 0:
                    entry[hd + k] = ly.b[i][j][k]
            if entry:
                products[(hd + i, hd + j)] = entry
    names = tuple(h.basis_names) + tuple(f"m{i+1}" for i in range(n))
    g = StructureAlgebra.from_products(hd + n, products, names)
    if not g.check_lie():
        raise ValueError("envelope bracket fails Jacobi")
    return LYEnvelope(g, h, action, delta_t)


def _bilinear(delta_t: Sequence[Sequence[Vec]], u: Vec, v: Vec, hd: int) -> Vec:
    out = [Q(0)] * hd
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            f = ui * vj
            for a, x in enumerate(delta_t[i][j]):
                if x != 0:
                    out[a] += f * x
    return tuple(out)


def torsion_curvature(ly: LieYamaguti) -> tuple[BinTensor, TernTensor]:
    """Canonical-connection tensors of the structure: T = -binary, R = -ternary."""
    tb = tuple(tuple(vneg(cell) for cell in row) for row in ly.b)
    tt = tuple(tuple(tuple(vneg(cell) for cell in row) for row in plane) for plane in ly.t)
    return tb, tt
