"""
Leibniz algebras from structure constants
=========================================

Build a couple of small algebras, check the left Leibniz identity, and
watch the left-multiplication map land inside commutators.
"""

from fractions import Fraction as Q

from leibniz_forge import (
    StructureAlgebra,
    commutator,
    kernel_of_lambda,
    quotient_algebra,
    squares_ideal,
)

# the smallest interesting example: e2 * e2 = e1, everything else zero
a = StructureAlgebra.from_products(2, {(1, 1): {0: 1}}, name="leibniz2")
ok, witness = a.check_leibniz()
print(f"{a.name}: leibniz={ok}, skew={a.is_skew}, lie={a.is_lie}")

# so(3) for comparison: a Lie algebra is in particular Leibniz
eps = {(0, 1): {2: 1}, (1, 0): {2: -1},
       (1, 2): {0: 1}, (2, 1): {0: -1},
       (2, 0): {1: 1}, (0, 2): {1: -1}}
so3 = StructureAlgebra.from_products(3, eps, name="so3")
print(f"{so3.name}: leibniz={so3.is_leibniz}, lie={so3.is_lie}")

# left multiplication x -> x*-, as a matrix; for a Leibniz algebra the map
# sends products to commutators of the images
x, y = (Q(1), Q(2)), (Q(0), Q(3))
lx, ly = a.left_mul(x), a.left_mul(y)
lxy = a.left_mul(a.product(x, y))
print("lambda(x*y) == [lambda x, lambda y]:", lxy == commutator(lx, ly))

# squares x*x span an ideal killed by every left multiplication
sq = squares_ideal(a)
ker = kernel_of_lambda(a)
print(f"squares ideal dim={sq.dim}, ker lambda dim={ker.dim}, "
      f"contained={ker.contains_subspace(sq)}")

# quotient by the squares is a Lie algebra (here the abelian line)
q, proj = quotient_algebra(a, sq)
print(f"quotient dim={q.dim}, lie={q.is_lie}")

# and a broken example: e1 * e1 = e2, e2 * e2 = e3 fails the identity
bad = StructureAlgebra.from_products(3, {(0, 0): {1: 1}, (1, 1): {2: 1}})
ok, w = bad.check_leibniz()
i, j, k, lhs, rhs = w
print(f"non-example fails at basis triple ({i}, {j}, {k}): "
      f"lhs={tuple(map(str, lhs))} rhs={tuple(map(str, rhs))}")
