#!/usr/bin/env python3
"""Regenerate the closed-form window constants frozen in
tests/unit/test_window.cpp, independently of the C++ code.

Hard level-1 window on uniform cells: w = +1 on [0, 1/2), -1 on [1/2, 1).
Its profile transform at nu = 1 is

    V(1) = int_0^1 w(t) exp(-2 pi i t) dt = -2i / pi.

Windowed coefficients of the constant function on the rotation group, spin 1,
with the sweep coordinate t = alpha / 2pi: the gamma integral forces the
column index to the middle magnetic number, and the remaining factor splits as

    M(mid, b) = V(-m_b) * 1/2 int_0^pi d^1_{m_b,0}(beta) sin(beta) dbeta

with d^1_{+-1,0} = -+ sin(beta)/sqrt(2). Both nonzero entries come out as
-i / (2 sqrt(2)). Everything is integrated exactly with sympy.
"""

import sympy as sp


def main() -> None:
    t, beta = sp.symbols("t beta", real=True)

    v1 = sp.integrate(sp.exp(-2 * sp.pi * sp.I * t), (t, 0, sp.Rational(1, 2))) - sp.integrate(
        sp.exp(-2 * sp.pi * sp.I * t), (t, sp.Rational(1, 2), 1)
    )
    v1 = sp.simplify(v1)
    print(f"V(1)      = {v1} = {complex(v1):.17g}")

    d_minus = sp.sin(beta) / sp.sqrt(2)
    d_plus = -sp.sin(beta) / sp.sqrt(2)
    half_int_minus = sp.Rational(1, 2) * sp.integrate(d_minus * sp.sin(beta), (beta, 0, sp.pi))
    half_int_plus = sp.Rational(1, 2) * sp.integrate(d_plus * sp.sin(beta), (beta, 0, sp.pi))

    m10 = sp.simplify(v1 * half_int_minus)
    m12 = sp.simplify(sp.conjugate(v1) * half_int_plus)
    print(f"M(1,0)    = {m10} = {complex(m10):.17g}")
    print(f"M(1,2)    = {m12} = {complex(m12):.17g}")
    print(f"reference = {complex(-sp.I / (2 * sp.sqrt(2))):.17g}")


if __name__ == "__main__":
    main()
