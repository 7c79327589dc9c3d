"""Classify presentation matrices into the strata of the moduli space.

A sheaf in the open part of the moduli space is presented by a 3x3 matrix
with column degrees (1,1,1) and row degrees (3,2,2); the closed stratum
uses a 2x2 matrix with rows (3,3) and columns (2,0).  The classifier reads
the label (M00, M01, M10, M11, boundary, ...) together with the support
quartic and, where present, the distinguished line and point.
"""

from quarticmoduli import classify_res0, classify_res1, make_matrix

examples = {
    "generic open stratum (M00)": make_matrix((3, 2, 2), (1, 1, 1), [
        ["x0^2", "0", "0"],
        ["x0", "x1", "x2"],
        ["x1", "x2", "x0"],
    ]),
    "extension stratum (M01)": make_matrix((3, 2, 2), (1, 1, 1), [
        ["x1^2", "0", "0"],
        ["-x2", "0", "x0"],
        ["x1", "-x0", "0"],
    ]),
    "boundary normal form": make_matrix((3, 2, 2), (1, 1, 1), [
        ["0", "-x2*x1", "x1*x1"],
        ["-x2", "0", "x0"],
        ["x1", "-x0", "0"],
    ]),
}

for title, matrix in examples.items():
    report = classify_res0(matrix)
    print(f"== {title}")
    print(f"   label:   {report.label}")
    if report.quartic is not None:
        print(f"   quartic: {report.quartic.serialize()}")
    if report.line is not None:
        print(f"   line:    {report.line.serialize()}")
    if report.point is not None:
        print(f"   point:   ({', '.join(str(c) for c in report.point)})")
    print()

print("== closed stratum, 2x2 presentation")
m = make_matrix((3, 3), (2, 0), [["x0", "x1^3"], ["x1", "x2^3"]])
report = classify_res1(m)
print(f"   label:   {report.label}")
print(f"   quartic: {report.quartic.serialize()}")
print(f"   point:   ({', '.join(str(c) for c in report.point)})")
