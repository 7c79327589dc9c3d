"""Follow a one-parameter family of sheaves into the boundary.

A blow-up chart point is a pair (A, B): A is a boundary normal form with
zero determinant and B a normal direction with one chart coefficient set
to 1.  For t != 0 the matrix A + t*B presents a sheaf in the open stratum;
the limit as t -> 0 is a quartic with a marked point, read off from the
t-linear coefficient of det(A + t*B).
"""

from fractions import Fraction as F

from quarticmoduli import (
    QQ,
    classify_res0,
    family_limit,
    make_blowup_chart_point,
    tangent_quartic,
)

pt = make_blowup_chart_point(
    domain=QQ,
    alpha=F(0),
    beta=F(0),
    gamma=F(0),
    delta=F(1),          # w = x2
    q0_text="x1^2",
    q1_text="0",
    q2_text="0",
    ab_cd=(F(1), F(0), F(0), F(0)),
    chart="a",
    t=F(1),
)

print("family A + t*B along the chart coordinate 'a':")
for t in (F(1), F(1, 2), F(1, 10)):
    report = classify_res0(pt.total(t))
    print(f"  t = {t}: label {report.label}, "
          f"quartic {report.quartic.serialize()}")

quartic, point = family_limit(pt)
print()
print(f"limit quartic at t = 0: {quartic.serialize()}")
print(f"marked point:           ({', '.join(str(c) for c in point)})")

f = tangent_quartic(pt.a, pt.b)
print(f"t-linear coefficient:   {f.serialize()}")
assert f.poly == quartic.poly
