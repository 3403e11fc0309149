#!/usr/bin/env python3
"""Regenerate the cosine-density CDF and quantile constants frozen in
tests/unit/test_dyadic.cpp.

For f0(theta) = sqrt(2) cos(theta) on the circle, the normalized pushforward
density of |f0|^2 along t = theta / 2pi is rho(t) = 1 + cos(4 pi t), so the
CDF is F(t) = t + sin(4 pi t) / (4 pi). Quantiles are found by bisection;
F is strictly increasing with stationary points at t = 1/4, 1/2, 3/4.
"""

import math
from fractions import Fraction


def cdf(t: float) -> float:
    return t + math.sin(4.0 * math.pi * t) / (4.0 * math.pi)


def quantile(y: float) -> float:
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if cdf(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def main() -> None:
    print(f"F(1/8)  = {cdf(0.125):.17g}")
    print(f"F(1/2)  = {cdf(0.5):.17g}")
    for y in (Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2), Fraction(3, 4)):
        q = quantile(float(y))
        print(f"q({y})  = {q:.17g}   (F(q) - y = {cdf(q) - float(y):.3e})")


if __name__ == "__main__":
    main()
