#!/usr/bin/env python3
"""Write the bundled modular-form data under data/forms.

delta.eigen   Hecke eigenvalues tau(p), p <= 50, of Delta = q prod (1 - q^n)^24.
plus13.plus   Coefficients C(eta), eta <= ETA_MAX, of the weight 13/2 plus-space
              cusp form attached to Delta, normalised by C(1) = 1.

The plus form is found inside M_{13/2}(Gamma0(4)) = span{theta^13, theta^9 F,
theta^5 F^2, theta F^3}, with theta = sum q^{n^2} and F = sum_{n odd} sigma(n) q^n,
by imposing C(0) = 0 and C(n) = 0 for n = 2, 3 mod 4.
"""

import os
import sys
from fractions import Fraction

ETA_MAX = 200


def mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def delta(n):
    # q prod_{m>=1} (1 - q^m)^24 to order n
    series = [0] * (n + 1)
    series[0] = 1
    for m in range(1, n + 1):
        for _ in range(24):
            for i in range(n, m - 1, -1):
                series[i] -= series[i - m]
    return [0] + series[:n]


def primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def theta(n):
    out = [0] * (n + 1)
    k = 0
    while k * k <= n:
        out[k * k] += 1 if k == 0 else 2
        k += 1
    return out


def weight2_odd(n):
    out = [0] * (n + 1)
    for m in range(1, n + 1, 2):
        out[m] = sum(d for d in range(1, m + 1) if m % d == 0)
    return out


def plus_form(n):
    t, F = theta(n), weight2_odd(n)
    basis = []
    for j in range(4):
        s = [1] + [0] * n
        for _ in range(13 - 4 * j):
            s = mul(s, t, n)
        for _ in range(j):
            s = mul(s, F, n)
        basis.append([Fraction(x) for x in s])
    rows = [[b[i] for b in basis] for i in range(n + 1) if i == 0 or i % 4 in (2, 3)]
    # Null space of the constraint rows by Gauss-Jordan elimination.
    cols = len(basis)
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    if len(free) != 1:
        sys.exit(f"expected a one-dimensional plus space of cusp forms, got {len(free)}")
    coef = [Fraction(0)] * cols
    coef[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        coef[c] = -rows[i][free[0]]
    form = [sum(coef[j] * basis[j][i] for j in range(cols)) for i in range(n + 1)]
    return [x / form[1] for x in form]


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")
    out_dir = os.path.join(root, "forms")
    os.makedirs(out_dir, exist_ok=True)

    d = delta(50)
    with open(os.path.join(out_dir, "delta.eigen"), "w") as f:
        f.write("siegelkit-eigenform 1\n# tau(p) from q prod (1 - q^n)^24\nname Delta\nweight 12\n")
        for p in primes_upto(50):
            f.write(f"{p} {d[p]}\n")

    h = plus_form(ETA_MAX)
    with open(os.path.join(out_dir, "plus13.plus"), "w") as f:
        f.write("siegelkit-plusform 1\n")
        f.write("# theta^13, theta^9 F, theta^5 F^2, theta F^3 cut down to the plus-space cusp forms\n")
        f.write("name h13\nweight-numerator 13\n")
        for eta in range(1, ETA_MAX + 1):
            if eta % 4 in (0, 1):
                f.write(f"{eta} {h[eta]}\n")
    print("tau(2..7) =", [d[p] for p in (2, 3, 5, 7)])
    print("C(1..13) =", [str(h[i]) for i in range(1, 14)])


if __name__ == "__main__":
    main()
