"""Products built from a Lie algebra acting on a vector space.

Given a Lie algebra h acting on V, three products live on h x V:

    semidirect Lie   [(a, x), (b, y)] = ([a, b], a y - b x)
    hemisemidirect   (a, x) . (b, y)  = ([a, b], a y)
    demisemidirect   (a, x) . (b, y)  = ([a, b], (a y - b x) / 2)

The hemisemidirect product is Leibniz but almost never Lie; the
demisemidirect product is its skew-symmetrization. With h = gl(V) and the
tautological action these are the two omni algebras on gl(V) x V. The graph
of left multiplication inside them turns the Leibniz and Lie conditions into
closure conditions, which graph_criterion evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import StructureAlgebra
from .linalg import Matrix, Q, Vec, basis_vec, commutator, is_zero_vec, vadd, vscale, vsub, vzero


class InvalidActionError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleAction:
    """Lie algebra representation: one matrix per basis element of h.

    Construction validates shapes, that h is Lie, and that the assignment is a
    homomorphism into commutators on all basis pairs. space_dim may be given
    explicitly for the h = 0 edge case; otherwise it is read off the matrices.
    """

    h: StructureAlgebra
    mats: tuple[Matrix, ...]
    space_dim: int | None = None

    def __post_init__(self) -> None:
        if len(self.mats) != self.h.dim:
            raise InvalidActionError("one action matrix per h basis element is required")
        if self.space_dim is None:
            if not self.mats:
                raise InvalidActionError("space_dim is required when h is zero dimensional")
            object.__setattr__(self, "space_dim", self.mats[0].rows)
        for m in self.mats:
            if m.rows != self.space_dim or m.cols != self.space_dim:
                raise InvalidActionError("action matrices must be square of size space_dim")
        if not self.h.is_lie:
            raise InvalidActionError("h is not a Lie algebra")
        for i in range(self.h.dim):
            for j in range(i + 1, self.h.dim):
                if self.of(self.h.c[i][j]) != commutator(self.mats[i], self.mats[j]):
                    raise InvalidActionError(
                        f"action is not a Lie homomorphism at basis pair ({i}, {j})")

    @property
    def v_dim(self) -> int:
        return self.space_dim or 0

    def of(self, hvec: Vec) -> Matrix:
        """Action matrix of an arbitrary h vector."""
        out = Matrix.zeros(self.v_dim, self.v_dim)
        for a, coeff in enumerate(hvec):
            if coeff != 0:
                out = out + self.mats[a] * coeff
        return out


def _component_names(h: StructureAlgebra, v_dim: int) -> tuple[str, ...]:
    vnames = tuple(f"v{b+1}" for b in range(v_dim))
    if set(vnames) & set(h.basis_names):
        vnames = tuple(f"w{b+1}" for b in range(v_dim))
    return h.basis_names + vnames


def _pair_products(act: ModuleAction, v_coeff_left: Fraction,
                   v_coeff_right: Fraction) -> dict:
    """Structure constants shared by the three products; h block first."""
    h = act.h
    hd, vd = h.dim, act.v_dim
    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(hd):
        for j in range(hd):
            cell = h.c[i][j]
            entry = {k: cell[k] for k in range(hd) if cell[k] != 0}
            if entry:
                products[(i, j)] = entry
    for i in range(hd):
        m = act.mats[i]
        for b in range(vd):
            col = m.col(b)
            if v_coeff_left != 0:
                entry = {hd + k: v_coeff_left * col[k] for k in range(vd) if col[k] != 0}
                if entry:
                    products[(i, hd + b)] = entry
            if v_coeff_right != 0:
                entry = {hd + k: v_coeff_right * col[k] for k in range(vd) if col[k] != 0}
                if entry:
                    products[(hd + b, i)] = entry
    return products


def semidirect_lie(h: StructureAlgebra, act: ModuleAction, name: str = "") -> StructureAlgebra:
    """h acting on an abelian copy of V; always a Lie algebra."""
    products = _pair_products(act, Q(1), Q(-1))
    return StructureAlgebra.from_products(h.dim + act.v_dim, products,
                                          _component_names(h, act.v_dim), name)


def hemisemidirect(h: StructureAlgebra, act: ModuleAction, name: str = "") -> StructureAlgebra:
    """(a, x) . (b, y) = ([a, b], a y); Leibniz for every action."""
    products = _pair_products(act, Q(1), Q(0))
    return StructureAlgebra.from_products(h.dim + act.v_dim, products,
                                          _component_names(h, act.v_dim), name)


def demisemidirect(h: StructureAlgebra, act: ModuleAction, name: str = "") -> StructureAlgebra:
    """Skew product ([a, b], (a y - b x)/2); generally fails Jacobi."""
    products = _pair_products(act, Q(1, 2), Q(-1, 2))
    return StructureAlgebra.from_products(h.dim + act.v_dim, products,
                                          _component_names(h, act.v_dim), name)


def circle_product(h: StructureAlgebra, act: ModuleAction, a: Vec, b: Vec) -> Vec:
    """Symmetric complement (0, (x y' + y x')/2) of the hemisemidirect product."""
    hd, vd = h.dim, act.v_dim
    if len(a) != hd + vd or len(b) != hd + vd:
        raise ValueError("vector length does not match h x V")
    xi, x = a[:hd], a[hd:]
    eta, y = b[:hd], b[hd:]
    sym = vscale(Q(1, 2), vadd(act.of(xi).apply(y), act.of(eta).apply(x)))
    return vzero(hd) + sym


# -- gl(V) and the omni algebras ---------------------------------------------

def gl_algebra(d: int) -> StructureAlgebra:
    """gl(d) with the row-major matrix-unit basis E11, E12, ..., Edd."""
    dim = d * d

    def idx(p: int, q: int) -> int:
        return p * d + q

    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    for p in range(d):
        for q in range(d):
            for r in range(d):
                for s in range(d):
                    entry: dict[int, Fraction] = {}
                    if q == r:
                        entry[idx(p, s)] = entry.get(idx(p, s), Q(0)) + 1
                    if s == p:
                        entry[idx(r, q)] = entry.get(idx(r, q), Q(0)) - 1
                    entry = {k: v for k, v in entry.items() if v != 0}
                    if entry:
                        products[(idx(p, q), idx(r, s))] = entry
    names = tuple(f"E{p+1}{q+1}" for p in range(d) for q in range(d))
    return StructureAlgebra.from_products(dim, products, names, f"gl({d})")


def gl_action(d: int) -> ModuleAction:
    """Tautological action of gl(d) on column vectors."""
    h = gl_algebra(d)
    mats = []
    for p in range(d):
        for q in range(d):
            m = [[Q(0)] * d for _ in range(d)]
            m[p][q] = Q(1)
            mats.append(Matrix.from_rows(m))
    return ModuleAction(h, tuple(mats))


def omni_algebras(d: int) -> tuple[StructureAlgebra, StructureAlgebra]:
    """(hemisemidirect, demisemidirect) product on gl(d) x Q^d."""
    act = gl_action(d)
    return (hemisemidirect(act.h, act, f"omni_hemi({d})"),
            demisemidirect(act.h, act, f"omni_demi({d})"))


# -- graph criteria -----------------------------------------------------------

@dataclass(frozen=True)
class GraphCriterionReport:
    graph_closed_under_leibniz: bool
    graph_is_lie_subalgebra: bool
    circle_vanishes_on_graph: bool
    closure_witness: tuple[int, int] | None = None
    circle_witness: tuple[int, int] | None = None


def graph_criterion(a: StructureAlgebra) -> GraphCriterionReport:
    """Closure tests for the graph {(lambda(x), x)} inside gl(E) x E.

    A pair (X, u) lies on the graph iff X = lambda(u), so closure of products
    of graph basis elements reduces to matrix identities:

      * hemisemidirect product lands on the graph iff lambda is a homomorphism
        into commutators, i.e. iff the product is Leibniz;
      * the graph is a Lie subalgebra of the demisemidirect product with the
        circle product vanishing on it iff the product is Lie.
    """
    n = a.dim
    lam = [a.left_mul(basis_vec(n, i)) for i in range(n)]

    closed = True
    closure_witness = None
    for i in range(n):
        for j in range(n):
            if commutator(lam[i], lam[j]) != a.left_mul(a.c[i][j]):
                closed = False
                closure_witness = (i, j)
                break
        if not closed:
            break

    circle_ok = True
    circle_witness = None
    for i in range(n):
        for j in range(i, n):
            if not is_zero_vec(a.symmetrized_part(basis_vec(n, i), basis_vec(n, j))):
                circle_ok = False
                circle_witness = (i, j)
                break
        if not circle_ok:
            break

    demi_closed = True
    for i in range(n):
        for j in range(n):
            if commutator(lam[i], lam[j]) != a.left_mul(a.skew_product(basis_vec(n, i),
                                                                       basis_vec(n, j))):
                demi_closed = False
                break
        if not demi_closed:
            break

    lie_sub = demi_closed and circle_ok
    if lie_sub:
        lie_sub = _graph_jacobi(a, lam)

    return GraphCriterionReport(closed, lie_sub, circle_ok, closure_witness, circle_witness)


def _demi_pair(x: tuple[Matrix, Vec], y: tuple[Matrix, Vec]) -> tuple[Matrix, Vec]:
    half = Q(1, 2)
    return (commutator(x[0], y[0]),
            vscale(half, vsub(x[0].apply(y[1]), y[0].apply(x[1]))))


def _graph_jacobi(a: StructureAlgebra, lam: Sequence[Matrix]) -> bool:
    """Jacobi for the demisemidirect bracket on graph basis triples."""
    n = a.dim
    pts = [(lam[i], basis_vec(n, i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            dij = _demi_pair(pts[i], pts[j])
            for k in range(n):
                djk = _demi_pair(pts[j], pts[k])
                dki = _demi_pair(pts[k], pts[i])
                total = _demi_pair(dij, pts[k])
                t2 = _demi_pair(djk, pts[i])
                t3 = _demi_pair(dki, pts[j])
                mat = total[0] + t2[0] + t3[0]
                v = vadd(vadd(total[1], t2[1]), t3[1])
                if not mat.is_zero() or not is_zero_vec(v):
                    return False
    return True
