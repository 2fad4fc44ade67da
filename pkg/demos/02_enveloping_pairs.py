"""Canonical envelope of a Leibniz algebra and the one-parameter sections."""

from fractions import Fraction as Q

from leibniz_forge import (
    DEFAULT_S_VALUES,
    Matrix,
    ModuleAction,
    StructureAlgebra,
    canonical_envelope,
    hemisemidirect,
    projected_bracket_delta,
    recovery_check,
    scaling_check,
    section_sigma,
    sigma_one_embed_check,
    squares_ideal,
)

a = StructureAlgebra.from_products(2, {(1, 1): {0: 1}}, name="leibniz2")

# quotient by the squares ideal gives the smallest enveloping pair:
# a Lie algebra h, an action of h back on the original space, and the
# projection f with action.of(f(x)) = left multiplication by x
env = canonical_envelope(a, squares_ideal(a))
print(f"h dim = {env.h.dim}, ambient g dim = {env.h.dim + a.dim}")
print("h is lie:", env.h.is_lie)

# recovery: the induced bracket on the section copy returns the original
# structure constants
print("recovery:", recovery_check(env))

# sigma at s=1 is a morphism into the hemisemidirect product on h x E
print("sigma_1 morphism into hemisemidirect product:", sigma_one_embed_check(env))
print("sigma matrix at s=1:")
for row in section_sigma(env, Q(1)).entries:
    print("   ", tuple(map(str, row)))

# a non-commutative showcase for the s-family: the affine line acting on Q
aff1 = StructureAlgebra.from_products(
    2, {(0, 1): {1: 1}, (1, 0): {1: -1}}, ("h", "e"), "aff1")
act = ModuleAction(aff1, (Matrix.from_rows([[Q(1)]]), Matrix.from_rows([[Q(0)]])))
b = hemisemidirect(aff1, act, "aff1_hemi")
envb = canonical_envelope(b, squares_ideal(b))
print(f"\n{b.name}: leibniz={b.is_leibniz}, envelope h dim = {envb.h.dim}")

# the s-family of sections x -> (s f(x), x) into h x E; each one turns the
# ambient Lie bracket into twice the s-scaled skew part plus a vertical defect
x, y = (Q(1), Q(0), Q(2)), (Q(0), Q(1), Q(3))
for s in DEFAULT_S_VALUES:
    e_part, delta = projected_bracket_delta(envb, s, x, y)
    print(f"s={s}: bracket projects to {tuple(map(str, e_part))}, "
          f"defect {tuple(map(str, delta))}")
print("scaling family consistent:", scaling_check(envb))

# at s=0 the section is flat and the defect vanishes identically
_, d0 = projected_bracket_delta(envb, Q(0), x, y)
print("defect at s=0:", tuple(map(str, d0)))
