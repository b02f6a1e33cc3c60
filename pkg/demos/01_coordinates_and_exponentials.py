"""Coordinates, brackets, and closed-form exponentials.

Elements of the Lie algebra of AN inside SU(2,n) are eight coordinates
(t1, t2, phi, x, y, eta, xx, yy); the six nilpotent slots are root spaces.
Everything here runs over exact Gaussian rationals.
"""

from fractions import Fraction

from su2n import (
    AlgebraElement,
    QQi,
    bracket,
    delta,
    delta_formula,
    exp_closed,
    exp_series,
    matrix_of,
)

n = 4

print("== an element and its matrix ==")
u = AlgebraElement(n, phi=QQi(1, 2), x=[1, QQi(0, 1)], y=[2, 0],
                   eta=QQi(-1, 1), xx=Fraction(1, 2), yy=3)
for row in matrix_of(u):
    print("  [" + "  ".join(f"{v!s:>12}" for v in row) + "]")

print("\n== brackets move between root slots ==")
a = AlgebraElement(n, phi=1)          # the alpha slot
b = AlgebraElement(n, y=[1, 0])       # the beta slot
ab = bracket(a, b)
print("  [phi, y] lands in the x slot:", list(ab.x))
abb = bracket(ab, b)
print("  [[phi, y], y] lands in the eta slot:", abb.eta)

print("\n== the closed-form exponential terminates, exactly ==")
g1 = exp_closed(u)
g2 = exp_series(u)
same = all(g1.mat[i][j] == g2.mat[i][j] for i in range(n + 2)
           for j in range(n + 2))
print("  exp_closed(u) == sum u^k/k! :", same)
ok, why = g1.check_invariants()
print("  preserves the Hermitian form with det 1:", ok)

print("\n== the corner determinant has an exact expansion ==")
print("  delta(exp u)        =", delta(g1))
print("  expanded formula    =", delta_formula(u))
print("  equal exactly       =", delta(g1) == delta_formula(u))

v = AlgebraElement(3, phi=2, yy=1)
print("\n  a small case: delta(exp(phi=2, yy=1)) =", delta(exp_closed(v)),
      " (1/12 * |phi|^2 * yy^2 = 1/3)")
