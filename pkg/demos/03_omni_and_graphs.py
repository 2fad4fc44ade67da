#!/usr/bin/env python3
# Omni algebras on gl(d) x Q^d and the subspace-graph criteria.

from fractions import Fraction as Q

from leibniz_forge import (
    StructureAlgebra,
    circle_product,
    gl_action,
    graph_criterion,
    omni_algebras,
)

hemi, demi = omni_algebras(2)
print(f"{hemi.name}: dim={hemi.dim}, leibniz={hemi.is_leibniz}, skew={hemi.is_skew}")
print(f"{demi.name}: dim={demi.dim}, leibniz={demi.is_leibniz}, skew={demi.is_skew}")

# the demi product is the skew part of the hemi product; the symmetric
# remainder is the circle product, supported on the vector component
act = gl_action(2)
a = (Q(1), Q(0), Q(0), Q(0), Q(0), Q(2))   # E11 + 2 v2
b = (Q(0), Q(1), Q(0), Q(0), Q(3), Q(0))   # E12 + 3 v1
ph = hemi.product(a, b)
pd = demi.product(a, b)
pc = circle_product(act.h, act, a, b)
print("hemi  :", tuple(map(str, ph)))
print("demi  :", tuple(map(str, pd)))
print("circle:", tuple(map(str, pc)))
print("demi + circle == hemi:", tuple(x + y for x, y in zip(pd, pc)) == ph)

# graph criterion: embed any bilinear product as a graph subspace of the
# omni algebra on gl(n) x Q^n; closure under the hemi product detects the
# Leibniz identity, closure as a Lie subalgebra of the demi product
# detects a Lie structure
for alg in (
    StructureAlgebra.from_products(2, {(1, 1): {0: 1}}, name="leibniz2"),
    StructureAlgebra.from_products(
        3, {(0, 1): {2: 1}, (1, 0): {2: -1},
            (1, 2): {0: 1}, (2, 1): {0: -1},
            (2, 0): {1: 1}, (0, 2): {1: -1}}, name="so3"),
    StructureAlgebra.from_products(3, {(0, 0): {1: 1}, (1, 1): {2: 1}}, name="not_leibniz"),
):
    r = graph_criterion(alg)
    agree = (r.graph_closed_under_leibniz == alg.is_leibniz
             and r.graph_is_lie_subalgebra == alg.is_lie)
    print(f"{alg.name}: graph closed={r.graph_closed_under_leibniz}, "
          f"lie subalgebra={r.graph_is_lie_subalgebra}, "
          f"circle vanishes={r.circle_vanishes_on_graph}, agrees with direct checks={agree}")
    if r.closure_witness is not None:
        print("   closure fails at basis pair", r.closure_witness)
    if r.circle_witness is not None:
        print("   circle product first nonzero at basis pair", r.circle_witness)
