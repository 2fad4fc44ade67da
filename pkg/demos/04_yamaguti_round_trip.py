"""
Lie-Yamaguti structures: from reductive decompositions and back
===============================================================

A reductive splitting g = h (+) m induces a binary and a ternary bracket
on m. The pair satisfies six compatibility axioms, and the construction
can be reversed through an enveloping Lie algebra.
"""

from fractions import Fraction as Q

from leibniz_forge import (
    StructureAlgebra,
    delta_matrix,
    inner_derivations,
    ly_envelope,
    ly_from_decomposition,
    ly_from_leibniz,
    torsion_curvature,
    validate_ly,
)

so3 = StructureAlgebra.from_products(
    3, {(0, 1): {2: 1}, (1, 0): {2: -1},
        (1, 2): {0: 1}, (2, 1): {0: -1},
        (2, 0): {1: 1}, (0, 2): {1: -1}}, name="so3")

# the 2-sphere picture: h = span{e3} is the isotropy line, m = span{e1, e2}
# the tangent plane; projecting brackets to m gives the triple system
h_basis = [(Q(0), Q(0), Q(1))]
m_basis = [(Q(1), Q(0), Q(0)), (Q(0), Q(1), Q(0))]
ly = ly_from_decomposition(so3, h_basis, m_basis)
print("binary bracket on m is zero:",
      all(all(c == 0 for c in ly.b[i][j]) for i in range(2) for j in range(2)))
print("ternary [e1, e2, e1] =", tuple(map(str, ly.t[0][1][0])))
print("ternary [e1, e2, e2] =", tuple(map(str, ly.t[0][1][1])))
rep = validate_ly(ly)
print("axioms:", "all pass" if rep.ok else f"{rep.axiom} fails at {rep.at}")

# the inner derivation D(x,y) = [x, y, -] generates the isotropy action;
# here it is the infinitesimal rotation of the tangent plane
gens, span = inner_derivations(ly)
print(f"inner derivations: {len(gens)} generator(s), span dim {span.dim}")
print("D(e1, e2) as a matrix:",
      [[str(c) for c in row] for row in delta_matrix(ly, 0, 1).entries])

# rebuild an enveloping Lie algebra from the triple system alone, then
# split it again: the round trip reproduces the tensors exactly
env = ly_envelope(ly)
print(f"envelope: g dim = {env.g.dim} = h {env.h_dim} + m {env.m_dim}, "
      f"lie = {env.g.is_lie}")
hb = [tuple(Q(1) if t == i else Q(0) for t in range(env.g.dim))
      for i in range(env.h_dim)]
mb = [tuple(Q(1) if t == env.h_dim + i else Q(0) for t in range(env.g.dim))
      for i in range(env.m_dim)]
again = ly_from_decomposition(env.g, hb, mb)
print("round trip reproduces brackets:", again.b == ly.b and again.t == ly.t)

# every Leibniz algebra also carries a triple system: binary = skew part,
# ternary = a quarter of the nested right products, with reversed signs
# appearing as the torsion and curvature of the associated connection
lz = ly_from_leibniz(StructureAlgebra.from_products(2, {(1, 1): {0: 1}}))
tb, tt = torsion_curvature(lz)
print("leibniz-induced system validates:", validate_ly(lz).ok)
print("torsion = -binary, curvature = -ternary:",
      tb == tuple(tuple(tuple(-c for c in v) for v in row) for row in lz.b))
