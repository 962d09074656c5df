#!/usr/bin/env python3
"""Generate Taylor coefficients of the Riemann-Siegel correction terms C0..C4.

The coefficients are expanded in z = p - 1/2 where p is the fractional part of
sqrt(t / 2pi).  Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p) is entire, so the
formal quotient of the two power series converges on the whole unit interval.
Division is done at 100 digits; the coefficient growth of the formal division
stays far below that.

Usage: gen_rs_coefficients.py > src/rs_coefficients.inc
"""
from mpmath import mp, mpf, pi, cos, sin, factorial

mp.dps = 100
DEGREE = 90  # Psi series degree; derivatives up to order 12 are taken from it


def cos_series(a, b, c, deg):
    """Taylor series of cos(a z^2 + b z + c) around z = 0 up to z^deg."""
    # exponentiate the polynomial phase through its Taylor coefficients
    # using repeated differentiation of exp(i*phase) as a series product.
    # e^{i(a z^2 + b z)} = sum over series of exp(i b z) * exp(i a z^2)
    eb = [(1j * b) ** k / factorial(k) for k in range(deg + 1)]
    ea = [0] * (deg + 1)
    for k in range(0, deg // 2 + 1):
        ea[2 * k] = (1j * a) ** k / factorial(k)
    prod = [0] * (deg + 1)
    for i in range(deg + 1):
        if eb[i] == 0:
            continue
        for j in range(deg + 1 - i):
            prod[i + j] += eb[i] * ea[j]
    phase = mp.expjpi(c / pi)  # e^{ic}
    return [(phase * v).real for v in prod]


def divide(num, den, deg):
    out = []
    for n in range(deg + 1):
        acc = num[n]
        for k in range(1, n + 1):
            acc -= den[k] * out[n - k]
        out.append(acc / den[0])
    return out


def deriv(series, m):
    s = list(series)
    for _ in range(m):
        s = [k * s[k] for k in range(1, len(s))]
    return s


def main():
    # p = z + 1/2:  p^2 - p - 1/16 = z^2 - 5/16,  cos(2 pi p) = -cos(2 pi z)
    num = cos_series(2 * pi, 0, -5 * pi / 8, DEGREE)
    den = [-v for v in cos_series(0, 2 * pi, 0, DEGREE)]
    psi = divide(num, den, DEGREE)

    def combo(terms):
        width = DEGREE + 1
        out = [mpf(0)] * width
        for coef, order in terms:
            d = deriv(psi, order)
            for i, v in enumerate(d):
                out[i] += coef * v
        return out

    p2, p4, p6, p8 = pi ** 2, pi ** 4, pi ** 6, pi ** 8
    cs = [
        combo([(1, 0)]),
        combo([(-1 / (96 * p2), 3)]),
        combo([(1 / (18432 * p4), 6), (1 / (64 * p2), 2)]),
        combo([(-1 / (5308416 * p6), 9), (-1 / (3840 * p4), 5), (-1 / (64 * p2), 1)]),
        combo([(1 / (2038431744 * p8), 12), (mpf(11) / (5898240 * p6), 8),
               (mpf(19) / (24576 * p4), 4), (1 / (128 * p2), 0)]),
    ]
    print("// Generated by tools/gen_rs_coefficients.py. Do not edit.")
    print("// Taylor coefficients of C_k(p) in powers of (p - 1/2).")
    for k, c in enumerate(cs):
        # keep terms that matter on |z| <= 1/2
        last = 0
        for i, v in enumerate(c):
            if abs(v) * mpf(0.5) ** i > mpf(10) ** -22:
                last = i
        vals = c[: last + 1]
        print(f"inline constexpr double kRsC{k}[] = {{")
        for v in vals:
            print(f"    {mp.nstr(v, 20, min_fixed=0, max_fixed=0)},")
        print("};")


if __name__ == "__main__":
    main()
