"""
Courant brackets on sections of T (+) T* with polynomial coefficients
=====================================================================
"""

from fractions import Fraction as Q

from leibniz_forge import (
    Bivector,
    OneForm,
    Poly,
    Section,
    TwoForm,
    VectorField,
    axiom_suite,
    courant_bracket,
    courant_samples,
    courant_ternary,
    d_function,
    dorfman_checks,
    dorfman_product,
    graph_closure_check,
    pairing,
    t_function,
)
from leibniz_forge.cli import poly_to_str

NAMES = ("x1", "x2")


def show(s: Section) -> str:
    vf = {NAMES[i]: poly_to_str(c, NAMES) for i, c in enumerate(s.vf.components)
          if not c.is_zero()}
    form = {NAMES[i]: poly_to_str(c, NAMES) for i, c in enumerate(s.form.components)
            if not c.is_zero()}
    return f"vf={vf} form={form}"


x1, x2 = Poly.var(2, 0), Poly.var(2, 1)
one, zero = Poly.const(2, 1), Poly.zero(2)

d1 = Section(VectorField(2, (one, zero)), OneForm(2, (zero, zero)))
x1d2 = Section(VectorField(2, (zero, x1)), OneForm(2, (zero, zero)))
dx2 = Section(VectorField(2, (zero, zero)), OneForm(2, (zero, one)))

# the skew bracket differs from the vector-field story only through forms
print("[d1, x1 d2]      :", show(courant_bracket(d1, x1d2)))
print("[d1, x1 dx1]     :", show(courant_bracket(
    d1, Section(VectorField(2, (zero, zero)), OneForm(2, (x1, zero))))))

# its non-skew companion satisfies the Leibniz identity instead and
# keeps the full Lie derivative of the form part
print("dorfman d1 . x1 dx1:", show(dorfman_product(
    d1, Section(VectorField(2, (zero, zero)), OneForm(2, (x1, zero))))))

# the symmetric pairing takes half of the natural contraction
print("<d1 + dx1, d1 + dx1> =",
      poly_to_str(pairing(
          Section(VectorField(2, (one, zero)), OneForm(2, (one, zero))),
          Section(VectorField(2, (one, zero)), OneForm(2, (one, zero)))), NAMES))

# the cyclic defect T measures the failure of Jacobi for the skew bracket
t = t_function(d1, x1d2, dx2)
print("T(d1, x1 d2, dx2) =", poly_to_str(t, NAMES))

# the induced ternary bracket matches the nested non-skew products
x2dx2 = Section(VectorField(2, (zero, zero)), OneForm(2, (zero, x2)))
tern = courant_ternary(d1, x1d2, x2dx2)
nested = dorfman_product(dorfman_product(d1, x1d2), x2dx2).scale(Q(-1, 4))
print("ternary equals -1/4 nested:", tern == nested, "value:", show(tern))

# d of a function is a central section for the non-skew product
df = Section(VectorField(2, (zero, zero)), d_function(x1 * x2))
print("d(x1 x2) . d1 is zero:", dorfman_product(df, d1).is_zero())

# graphs: the bracket of two graph sections (pi# theta, theta) stays on
# the graph exactly when pi is Poisson
pi = Bivector.from_upper(2, {(0, 1): one})
basis_forms = [OneForm(2, (one, zero)), OneForm(2, (zero, one))]
ok, _ = graph_closure_check("poisson", pi, basis_forms)
print("\nconstant bivector graph closed:", ok)

# any bivector on R^2 is Poisson; a genuine failure needs three variables
y1 = Poly.var(3, 0)
bad3 = Bivector.from_upper(3, {(0, 1): Poly.const(3, 1), (0, 2): y1})
forms3 = [OneForm(3, tuple(Poly.const(3, 1) if k == i else Poly.zero(3)
                           for k in range(3))) for i in range(3)]
ok3, wit3 = graph_closure_check("poisson", bad3, forms3)
print("pi = d1^d2 + x1 d1^d3 closed:", ok3, "witness pair:", wit3)

# a closed two-form closes as well; x3 dx1^dx2 does not
omega = TwoForm.from_upper(3, {(0, 1): Poly.var(3, 2)})
fields3 = [VectorField(3, tuple(Poly.const(3, 1) if k == i else Poly.zero(3)
                                for k in range(3))) for i in range(3)]
okw, witw = graph_closure_check("twoform", omega, fields3)
print("omega = x3 dx1^dx2 closed:", okw, "witness pair:", witw)

# randomized axiom suite over seeded triples
samples = courant_samples(seed=42, nvars=2, count=25)
suite = axiom_suite(samples.triples, samples.funcs)
print("\naxioms on 25 random triples:",
      "all pass" if all(c.ok for c in suite) else [c.name for c in suite if not c.ok])
dorf = dorfman_checks(samples.triples, samples.funcs)
print("non-skew product checks:",
      "all pass" if all(c.ok for c in dorf) else [c.name for c in dorf if not c.ok])
