"""The exact decision procedure on subgroups of N.

classify() runs three independent exact computations — the eight square
conditions, the five linear conditions, and the eleven non-CDS templates —
and cross-checks them: a subgroup is a Cartan-decomposition subgroup exactly
when a square and a linear witness both exist, and the matched template's
envelope pattern must agree with the witness pattern.
"""

from su2n import AlgebraElement, QQi, Subalgebra, classify, normalizer_in_A

def show(label, h):
    r = classify(h, seed=0)
    tid = r.template.type_id if r.template else "-"
    wit = (r.square and f"square#{r.square.condition_id}",
           r.linear and f"linear#{r.linear.condition_id}")
    print(f"  {label:34s} {r.verdict:7s} template={tid:>2}  shape={r.shape}"
          f"  witnesses={[w for w in wit if w]}  N_A={r.normalizer}")

n = 4
print("== a tour of verdicts ==")
show("doubled-beta axis",
     Subalgebra([AlgebraElement(3, yy=1)]))
show("isotropic central line",
     Subalgebra([AlgebraElement(3, eta=1, xx=1, yy=1)]))
show("independent x, y pair",
     Subalgebra([AlgebraElement(n, x=[1, 0], y=[0, 1])]))
show("bare phi line",
     Subalgebra([AlgebraElement(3, phi=1)]))
show("the 5/4..2 band pair",
     Subalgebra([AlgebraElement(3, phi=1, y=[1]), AlgebraElement(3, eta=1, xx=1)]))
show("pair + isotropic central line (CDS)",
     Subalgebra([AlgebraElement(n, x=[1, 0], y=[0, 1]),
                 AlgebraElement(n, eta=1, xx=1, yy=1)]))

print("\n== witness curves realize the envelope exponents ==")
import numpy as np
from su2n import sup_norm, rho_norm, witness_curve

h = Subalgebra([AlgebraElement(n, x=[1, 0], y=[0, 1]),
                AlgebraElement(n, eta=1, xx=1, yy=1)])
r = classify(h)
for name, w, expect in (("square", r.square, 2.0), ("linear", r.linear, 1.0)):
    curve = witness_curve(w, h)
    pts = []
    for t in np.geomspace(1, 1e4, 40):
        g = curve(float(t))
        if 1 < sup_norm(g) <= 1e8:
            pts.append((np.log10(sup_norm(g)), np.log10(rho_norm(g))))
    slope = np.polyfit(*zip(*pts), 1)[0]
    print(f"  {name} witness (condition {w.condition_id}): "
          f"fitted exponent {slope:.3f}, expected {expect}")

print("\n== the normalizer torus is computed exactly ==")
for label, h in [
    ("x & doubled-beta lock", Subalgebra([AlgebraElement(3, x=[1], yy=1)])),
    ("eta plane", Subalgebra([AlgebraElement(3, eta=1),
                              AlgebraElement(3, eta=QQi(0, 1))])),
]:
    print(f"  {label:24s} ->", normalizer_in_A(h))
