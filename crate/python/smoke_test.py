#!/usr/bin/env python3
"""Smoke test for the ym_py extension module.

Build and run:

    cargo build --release -p ym-py --features extension-module
    cp target/release/libym_py.so python/ym_py.so
    python3 python/smoke_test.py
"""

import math
import sys

import ym_py


def check(name, cond):
    status = "ok" if cond else "FAIL"
    print(f"  {status}  {name}")
    if not cond:
        sys.exit(1)


def main():
    print("ym_py smoke test")

    # expressions
    e = ym_py.Expr("sin(2*pi*x)")
    check("expression evaluation", abs(e(0.25) - 1.0) < 1e-15)
    d = e.derivative()
    check("symbolic derivative", abs(d(0.0) - 2.0 * math.pi) < 1e-12)
    check("rendering round-trips", str(ym_py.Expr(str(e))) == str(e))

    # sawtooth: density 2/3 below 1/2, 4/3 above
    pf = ym_py.PiecewiseFunction.example("b")
    ym = ym_py.compute(pf)
    check("sawtooth density low", abs(ym.density(0.25) - 2.0 / 3.0) < 1e-12)
    check("sawtooth density high", abs(ym.density(0.75) - 4.0 / 3.0) < 1e-12)
    check("total mass", abs(ym.total_mass() - 1.0) < 1e-12)

    # step function: purely atomic measure
    step = ym_py.PiecewiseFunction.example("d", a=1.0, b=2.0)
    atoms = ym_py.compute(step).atoms
    check("two atoms", len(atoms) == 2)
    check("atom weights 1/3 and 2/3",
          abs(atoms[0][1] - 1.0 / 3.0) < 1e-15 and abs(atoms[1][1] - 2.0 / 3.0) < 1e-15)

    # arcsine law
    arcsine = ym_py.compute(ym_py.PiecewiseFunction.example("c"))
    expected = 1.0 / (math.pi * math.sqrt(1.0 - 0.5 ** 2))
    check("arcsine density", abs(arcsine.density(0.5) - expected) < 1e-9)
    check("arcsine cdf symmetry", abs(arcsine.cdf(0.0) - 0.5) < 1e-10)
    check("arcsine second moment", abs(arcsine.integrate("y^2") - 0.5) < 1e-8)

    # defining identity
    report = ym_py.verify_identity(pf)
    check("defining identity", report["pass"] and report["max_residual"] < 1e-8)
    check("six checks", len(report["checks"]) == 6)

    # oscillation invariance, on a midpoint grid (piece-image boundaries
    # such as y = 1/2 are measure-zero and excluded by convention)
    dilated = ym_py.dilate(pf, 7)
    ym7 = ym_py.compute(dilated)
    dev = max(abs(ym7.density(y) - ym.density(y))
              for y in [(i + 0.5) / 50 for i in range(50)])
    check("oscillation invariance (c=7)", dev < 1e-9)

    # rescaling: x on ]0,1[ onto ]0,2[ x [0,5] has density 1/5
    ident = ym_py.PiecewiseFunction.from_json(
        '{"omega": [0, 1], "pieces": [{"interval": [0, 1], "expr": "x", "monotone": "inc"}]}'
    )
    flat = ym_py.compute(ym_py.rescale(ident, (0.0, 2.0), (0.0, 5.0)))
    check("rescaled density", abs(flat.density(2.5) - 0.2) < 1e-12)

    # brute-force oracle
    ks = ym_py.kolmogorov_distance(pf, ym, 100_000)
    check("kolmogorov distance", ks < 1e-3)
    samples = ym_py.empirical_pushforward(ident, 4)
    check("midpoint grid", samples == [0.125, 0.375, 0.625, 0.875])

    # tensor comparison: the alpha = x, beta = y, u = x case
    quasi, elementary = ym_py.tensor_integrals(ident, "x", "y")
    check("tensor sides", abs(quasi - 0.25) < 1e-10 and abs(elementary - 1 / 3) < 1e-10)

    # telescoping weights
    check("weight_sum telescopes", ym_py.weight_sum(2, 998) == 0.998)

    # JSON round trip
    again = ym_py.PiecewiseFunction.from_json(pf.to_json())
    check("json round trip", again.to_json() == pf.to_json())

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
