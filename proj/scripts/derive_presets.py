#!/usr/bin/env python3
"""Offline derivation of the base-manifold weight presets.

For a flag-manifold base the weight data entering the fiber computation is,
per complementary positive root alpha:

    a^j_alpha = alpha(i Z_j)          (slope components)
    b_alpha   = alpha(i Z_V)          (offset)

where (Z_1, ..., Z_m) is a Killing-orthonormal basis of the relevant torus
subalgebra with closed one-parameter subgroups, and

    Z_V = -(1/(2 pi)) * sum_{beta in R+_m} i H_beta

with H_beta the Killing dual of beta (Chevalley normalization, so that
H_beta = [E_beta, E_-beta]).  Equivalently  b_alpha =
(1/(2 pi)) * sum_beta <alpha, beta>  in the Killing-dual inner product.

Conventions fixed here (the construction leaves a sign/orientation freedom
in the Z_j basis):
  * the orthonormal basis (i Z_1, ..., i Z_m) is the Gram-Schmidt frame of
    (H_{alpha_1}, H_{alpha_2}, ...) taken in simple-root order with positive
    orientation; this makes a^1 of the first root positive;
  * the Ricci-form convention carries the 1/(2 pi) factor shown above, which
    is what makes the Einstein constant of the base metric equal to 1.

Presets derived:
  point             : empty form set (base is a single point).
  rank1-single-root : base SU(2)/T = CP^1, one complementary positive root.
                      g = sl(2): B(X,Y) = 4 tr(XY), H = diag(1,-1),
                      alpha(H) = 2, H_alpha = H/4, so
                      b = alpha(H_alpha)/(2 pi) = 1/(4 pi) and
                      a = alpha(H/sqrt(8)) = 2/sqrt(8) = 1/sqrt(2).
  cp2-base          : full flag SU(3)/T of the A2 system (the flag manifold
                      carrying |R+_m| = 3 complementary roots; note the
                      projective plane itself has only 2, so the 3-form
                      preset is the A2 full flag).  g = sl(3):
                      B(X,Y) = 6 tr(XY), H_{alpha_i} as below, m = 2.

Run from the repository root; rewrites data/presets/*.json and
src/core/preset_data.inc.  Requires sympy.
"""

import json
import os
import sys

import sympy as sp


def a1_data():
    """sl(2): explicit matrix route."""
    H = sp.diag(1, -1)
    # Killing form on sl(2): B(X, Y) = 4 tr(XY)
    B = lambda X, Y: 4 * sp.trace(X * Y)
    alpha = lambda X: X[0, 0] - X[1, 1]  # alpha(diag(h1,h2)) = h1 - h2
    # Killing dual of alpha: H_a = H/4 since B(H/4, H) = 2 = alpha(H)
    Ha = H / 4
    assert sp.simplify(B(Ha, H) - alpha(H)) == 0
    # i Z_V = (1/2pi) * sum over R+_m of H_beta  (single root here)
    iZV = Ha / (2 * sp.pi)
    b = sp.simplify(alpha(iZV))
    # orthonormal frame: X1 = H / sqrt(B(H,H)) = H / sqrt(8)
    X1 = H / sp.sqrt(B(H, H))
    assert sp.simplify(B(X1, X1) - 1) == 0
    a = sp.simplify(alpha(X1))
    return {"dim": 1, "a": [[a]], "b": [b],
            "roots": ["alpha"],
            "note": "SU(2)/T = CP^1; B = 4tr, H_alpha = diag(1,-1)/4"}


def a2_data():
    """sl(3) full flag: explicit matrix route."""
    B = lambda X, Y: 6 * sp.trace(X * Y)

    def root(i):
        return lambda X: X[i, i] - X[i + 1, i + 1]

    a1 = lambda X: X[0, 0] - X[1, 1]
    a2 = lambda X: X[1, 1] - X[2, 2]
    a3 = lambda X: X[0, 0] - X[2, 2]
    roots = [a1, a2, a3]

    H1 = sp.diag(1, -1, 0) / 6
    H2 = sp.diag(0, 1, -1) / 6
    H3 = sp.diag(1, 0, -1) / 6
    for Hd, al in zip((H1, H2, H3), roots):
        probe = sp.diag(sp.Symbol("x"), sp.Symbol("y"), -sp.Symbol("x") - sp.Symbol("y"))
        assert sp.simplify(B(Hd, probe) - al(probe)) == 0

    iZV = (H1 + H2 + H3) / (2 * sp.pi)
    b = [sp.simplify(al(iZV)) for al in roots]

    # Gram-Schmidt frame of (H1, H2), positive orientation
    X1 = H1 / sp.sqrt(B(H1, H1))
    Y2 = H2 - B(H2, X1) * X1
    X2 = Y2 / sp.sqrt(B(Y2, Y2))
    assert sp.simplify(B(X1, X2)) == 0
    assert sp.simplify(B(X2, X2) - 1) == 0

    a = [[sp.simplify(al(X1)), sp.simplify(al(X2))] for al in roots]
    return {"dim": 2, "a": a, "b": b,
            "roots": ["alpha1", "alpha2", "alpha1+alpha2"],
            "note": "SU(3)/T, A2 full flag; B = 6tr, GS frame of (H_a1, H_a2)"}


def fmt(x):
    """17-significant-digit decimal of an exact sympy expression."""
    return float(sp.N(x, 25))


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    presets = {
        "point": {"dim": 1, "a": [], "b": [], "roots": [],
                  "note": "base reduced to a single point; weight product == 1"},
        "rank1-single-root": a1_data(),
        "cp2-base": a2_data(),
    }

    outdir = os.path.join(root, "data", "presets")
    os.makedirs(outdir, exist_ok=True)
    for name, d in presets.items():
        doc = {
            "preset": name,
            "version": 1,
            "dim": d["dim"],
            "forms": {
                "a": [[fmt(v) for v in row] for row in d["a"]],
                "b": [fmt(v) for v in d["b"]],
            },
            "provenance": {
                "derivation": "scripts/derive_presets.py",
                "construction": d["note"],
                "roots": d["roots"],
                "exact_a": [[str(sp.simplify(v)) for v in row] for row in d["a"]],
                "exact_b": [str(sp.simplify(v)) for v in d["b"]],
            },
        }
        path = os.path.join(outdir, name + ".json")
        with open(path, "w") as f:
            json.dump(doc, f, indent=2, sort_keys=True)
            f.write("\n")
        print("wrote", path)

    # embedded registry table
    inc = os.path.join(root, "src", "core", "preset_data.inc")
    with open(inc, "w") as f:
        f.write("// Generated by scripts/derive_presets.py; do not edit by hand.\n")
        f.write("// Values are exact root-system data evaluated to double precision;\n")
        f.write("// the exact forms are recorded in data/presets/*.json.\n")
        for name, d in presets.items():
            rows = []
            for arow, bval in zip(d["a"], d["b"]):
                coeffs = ", ".join("%.17g" % fmt(v) for v in arow)
                rows.append("      {{%s}, %.17g}," % (coeffs, fmt(bval)))
            f.write("  {\n")
            f.write('    "%s", %d,\n' % (name, d["dim"]))
            f.write("    {\n")
            for r in rows:
                f.write(r + "\n")
            f.write("    },\n")
            f.write('    "%s",\n' % d["note"])
            f.write("  },\n")
        print("wrote", inc)


if __name__ == "__main__":
    sys.exit(main())
