#!/usr/bin/env python3
"""Generate classical modular polynomial data files from the q-expansion of j.

The power sums of the ell+1 values j(ell*tau), j((tau+k)/ell) are polynomials
in j(tau); Newton's identities turn them into the coefficients of
Phi_ell(X, j(tau)).

usage: gen_modpoly.py ELL [ELL ...] --out DIR
"""
import argparse
from fractions import Fraction
from pathlib import Path


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def series_mul(a, b, prec):
    out = [0] * prec
    for i, x in enumerate(a[:prec]):
        if x == 0:
            continue
        for k, y in enumerate(b[: prec - i]):
            out[i + k] += x * y
    return out


def j_qexp(prec):
    """Coefficients c[0..prec-1] with q*j(q) = sum c[n] q^n."""
    e4 = [1] + [240 * sigma3(n) for n in range(1, prec)]
    e4cube = series_mul(series_mul(e4, e4, prec), e4, prec)
    # 1 / prod (1 - q^n)^24
    eta = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        for _ in range(24):
            nxt = eta[:]
            for k in range(n, prec):
                nxt[k] -= eta[k - n]
            eta = nxt
    inv = [0] * prec
    inv[0] = 1
    for k in range(1, prec):
        inv[k] = -sum(eta[i] * inv[k - i] for i in range(1, k + 1))
    return series_mul(e4cube, inv, prec)


class Laurent:
    """Truncated Laurent series sum c[n] q^(n - shift), kept up to q^0."""

    def __init__(self, coeffs, shift):
        self.c = coeffs
        self.shift = shift

    def coeff(self, e):
        idx = e + self.shift
        return self.c[idx] if 0 <= idx < len(self.c) else 0


def j_power(jc, m):
    """q^m j^m truncated so that exponents up to 0 are kept."""
    res = [1] + [0] * m
    for _ in range(m):
        res = series_mul(res, jc, m + 1)
    return Laurent(res, m)


def modpoly(ell):
    top = ell * (ell + 1)
    jc = j_qexp(top + 2)
    jpows = [j_power(jc, d) for d in range(top + 1)]

    def as_poly_in_j(coeff_of):
        # coeff_of(e) gives coefficient of q^e for e in [-deg, 0]
        lo = min(e for e in range(-top, 1) if coeff_of(e) != 0) if any(
            coeff_of(e) != 0 for e in range(-top, 1)
        ) else 0
        work = {e: Fraction(coeff_of(e)) for e in range(lo, 1)}
        poly = {}
        for d in range(-lo, 0, -1):
            c = work.get(-d, 0)
            if c:
                poly[d] = c
                for e in range(-d, 1):
                    work[e] = work.get(e, 0) - c * jpows[d].coeff(e)
        poly[0] = work.get(0, 0)
        return poly

    power_sums = []
    for m in range(1, ell + 2):
        jm = jpows[m]

        def coeff_of(e, jm=jm):
            total = 0
            if e % ell == 0:
                total += jm.coeff(e // ell)
            total += ell * jm.coeff(ell * e)
            return total

        power_sums.append(as_poly_in_j(coeff_of))

    def padd(a, b, s=1):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) + s * v
        return {k: v for k, v in out.items() if v != 0}

    def pmul(a, b):
        out = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                out[ka + kb] = out.get(ka + kb, 0) + va * vb
        return {k: v for k, v in out.items() if v != 0}

    elem = [{0: Fraction(1)}]
    for k in range(1, ell + 2):
        acc = {}
        for i in range(1, k + 1):
            term = pmul(elem[k - i], power_sums[i - 1])
            acc = padd(acc, term, 1 if i % 2 == 1 else -1)
        elem.append({d: v / k for d, v in acc.items()})

    coeffs = {}
    n = ell + 1
    for k in range(n + 1):
        sign = -1 if k % 2 else 1
        for b, v in elem[k].items():
            assert v.denominator == 1
            a = n - k
            coeffs[(a, b)] = sign * int(v)
    for (a, b), v in coeffs.items():
        assert coeffs.get((b, a), 0) == v, "asymmetric output"
    return coeffs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("ells", type=int, nargs="+")
    ap.add_argument("--out", type=Path, required=True)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for ell in args.ells:
        coeffs = modpoly(ell)
        lines = [f"ell {ell}"]
        for (a, b) in sorted(coeffs, reverse=True):
            if a >= b and coeffs[(a, b)] != 0:
                lines.append(f"{a} {b} {coeffs[(a, b)]}")
        (args.out / f"phi_{ell}.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
