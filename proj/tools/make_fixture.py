#!/usr/bin/env python3
"""Writes the A001711 b-file fixture (first 100 terms) from the harmonic closed
form using Python's fractions module, independently of the C++ code."""

import sys
from fractions import Fraction
from math import factorial


def a001711(n):
    h = sum(Fraction(1, k) for k in range(1, n + 4))
    v = Fraction(factorial(n + 3), 4) * (2 * h - 3)
    assert v.denominator == 1
    return v.numerator


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 100
    for n in range(count):
        sys.stdout.write(f"{n} {a001711(n)}\n")


if __name__ == "__main__":
    main()
