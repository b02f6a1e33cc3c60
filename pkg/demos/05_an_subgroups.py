"""Subgroups of AN beyond N: semidirect products, graphs, one-parameter lines.

A subgroup not inside N is (after conjugation) compatible with A: either a
torus line acting on a unipotent part, the graph of a homomorphism from a
torus kernel into a root pair, or a single one-parameter group.  The graph
cases carry logarithmic corrections to their envelopes, fitted here.
"""

from su2n import AlgebraElement, QQi, Subalgebra, exp_closed
from su2n.anclassify import (
    Graph,
    OneParam,
    Semidirect,
    TorusLine,
    classify_an,
    normalize_to_compatible,
)
from su2n.lab import SamplingPlan, fit_graph_log_power, fit_ray_drift
from su2n.weyl import conjugate

print("== semidirect products ==")
for label, t, u in [
    ("ker(alpha) over the isotropic line", "alpha",
     Subalgebra([AlgebraElement(3, eta=1, xx=1, yy=1)])),
    ("ker(2alpha+beta) over a y/xx lock", "2alpha+beta",
     Subalgebra([AlgebraElement(4, y=[1, 0], xx=1)])),
    ("ker(alpha+2beta) over a phi/xx lock", "alpha+2beta",
     Subalgebra([AlgebraElement(3, phi=1, xx=1)])),
]:
    r = classify_an(Semidirect(TorusLine.of_kernel(t), u))
    print(f"  {label:38s} {r.verdict:7s} {r.case:16s} shape={r.shape}")

print("\n== graph subgroups and their log corrections ==")
cases = [
    ("alpha graph over an x line", Graph("alpha", AlgebraElement(4, phi=1),
                                         Subalgebra([AlgebraElement(4, x=[1, 0])]))),
    ("beta graph over the eta line (r=1)",
     Graph("beta", AlgebraElement(3, yy=1),
           Subalgebra([AlgebraElement(3, eta=1)]))),
    ("beta graph over the eta line (r=2)",
     Graph("beta", AlgebraElement(3, y=[1]),
           Subalgebra([AlgebraElement(3, eta=1)]))),
]
for label, g in cases:
    r = classify_an(g)
    s, coeff = fit_graph_log_power(g, SamplingPlan(seed=0))
    print(f"  {label:38s} {r.case:8s} shape={r.shape}"
          f"  log power fitted {coeff:+.2f} at s={s}")

print("\n== a one-parameter subgroup drifts logarithmically off its ray ==")
spec = OneParam(AlgebraElement(3, t1=1, t2=1, phi=1))
r = classify_an(spec)
k = fit_ray_drift(spec, SamplingPlan(seed=0))
print(f"  verdict {r.verdict}, shape {r.shape}; fitted drift power k = {k:.3f}")

print("\n== conjugated presentations are normalized back ==")
X = AlgebraElement(3, t1=1, t2=1, phi=1)
g0 = exp_closed(AlgebraElement(3, y=[QQi(1, 1)], xx=2))
basis = [conjugate(g0, X), conjugate(g0, AlgebraElement(3, eta=1))]
spec = normalize_to_compatible(basis)
print(f"  recovered a {type(spec).__name__} spec with omega = {spec.omega}")
print(f"  classified: {classify_an(spec).case}")
