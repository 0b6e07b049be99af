#!/usr/bin/env python3
"""Generate the bundled lattice and genus files under data/.

Root lattices come from their Cartan matrices. Each Niemeier lattice is
the span of its root lattice and a glue code, written in fundamental-weight
coordinates; the Leech lattice is built from the binary Golay code. Every
Gram matrix is checked to be even and unimodular, then LLL-reduced so that
short-vector enumeration stays cheap. Root counts are checked separately by
the test suite with the enumeration engine.

Usage: make_lattices.py [data_dir]
"""

import os
import sys
from fractions import Fraction
from itertools import permutations


def chain(n):
    return [(i, i + 1) for i in range(n - 1)]


def cartan(n, edges):
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
    for a, b in edges:
        c[a][b] = c[b][a] = -1
    return c


def component(kind, n):
    """Cartan matrix and glue-class representatives (fundamental weight indices)."""
    if kind == "A":
        # class i <-> omega_i
        return cartan(n, chain(n)), {i: [i - 1] for i in range(1, n + 1)}
    if kind == "D":
        edges = chain(n - 1) + [(n - 3, n - 1)]
        # 1 = spinor omega_n, 2 = vector omega_1, 3 = other spinor omega_{n-1}
        return cartan(n, edges), {1: [n - 1], 2: [0], 3: [n - 2]}
    if kind == "E":
        # Bourbaki labels 1-3-4-5-6(-7(-8)), node 2 attached to 4
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        glue = {}
        if n == 6:
            glue = {1: [0], 2: [5]}
        elif n == 7:
            glue = {1: [6]}
        return cartan(n, edges), glue
    raise ValueError(kind)


def inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def det(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def hnf_basis(rows):
    """Integer row basis of the Z-span of `rows` (full column rank assumed)."""
    rows = [list(r) for r in rows if any(r)]
    n = len(rows[0])
    basis = []
    for c in range(n):
        while True:
            nz = [r for r in rows if r[c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[c]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[c] // piv[c]
                for k in range(n):
                    r[k] -= q * piv[k]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[c] != 0]
        if nz:
            basis.append(nz[0])
            rows = [r for r in rows if r is not nz[0]]
    if len(basis) != n:
        raise ValueError("generators do not have full rank")
    return basis


def lll_gram(G, delta=0.99):
    """LLL reduction acting on an integral Gram matrix; returns the new Gram.

    The Gram-Schmidt data are floating point, but every basis change is an
    integral row operation applied to G exactly, so the output is exact."""
    n = len(G)
    G = [row[:] for row in G]

    def gso():
        mu = [[0.0] * n for _ in range(n)]
        bstar = [0.0] * n
        for i in range(n):
            for j in range(i):
                s = float(G[i][j])
                for k in range(j):
                    s -= mu[i][k] * mu[j][k] * bstar[k]
                mu[i][j] = s / bstar[j]
            s = float(G[i][i])
            for k in range(i):
                s -= mu[i][k] ** 2 * bstar[k]
            bstar[i] = s
        return mu, bstar

    def reduce(k, j, q):
        # b_k -= q b_j; the new diagonal is G_kk - 2 q G_kj + q^2 G_jj
        diag = G[k][k] - 2 * q * G[k][j] + q * q * G[j][j]
        for t in range(n):
            G[k][t] -= q * G[j][t]
        for t in range(n):
            G[t][k] = G[k][t]
        G[k][k] = diag

    k = 1
    mu, bstar = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                reduce(k, j, q)
                mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            mu, bstar = gso()
            k = max(k - 1, 1)
    return G


def glued_lattice(components, glue_words):
    """Gram matrix of (root lattice + glue) for components like [('A', 5), ('D', 4)]."""
    blocks = [component(k, n) for k, n in components]
    dim = sum(n for _, n in components)
    offsets = []
    o = 0
    for _, n in components:
        offsets.append(o)
        o += n
    gens = []
    cinv = [[Fraction(0)] * dim for _ in range(dim)]
    for (c, _), off, (_, n) in zip(blocks, offsets, components):
        inv = inverse(c)
        for i in range(n):
            row = [0] * dim
            for j in range(n):
                row[off + j] = c[i][j]
                cinv[off + i][off + j] = inv[i][j]
            gens.append(row)
    for word in glue_words:
        row = [0] * dim
        for (_, glue), off, cls in zip(blocks, offsets, word):
            if cls == 0:
                continue
            for w in glue[cls]:
                row[off + w] += 1
        gens.append(row)
    basis = hnf_basis(gens)
    gram = []
    for a in basis:
        ga = [sum(a[s] * cinv[s][t] for s in range(dim)) for t in range(dim)]
        gram.append([sum(ga[t] * b[t] for t in range(dim)) for b in basis])
    return to_int_gram(gram)


def to_int_gram(gram):
    out = []
    for row in gram:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("Gram matrix not integral")
            r.append(int(x))
        out.append(r)
    return out


def cyclic(prefix, cyc):
    return [list(prefix) + cyc[i:] + cyc[:i] for i in range(len(cyc))]


def golay24():
    g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]  # x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1, low degree first
    rows = []
    for s in range(12):
        w = [0] * 23
        for i, c in enumerate(g):
            w[(i + s) % 23] ^= c
        rows.append(w + [sum(w) % 2])
    return rows


def ternary_golay12():
    g = [2, 0, 1, 2, 1, 1]  # x^5 + x^4 + 2x^3 + x^2 + 2 over F_3, low degree first
    rows = []
    for s in range(6):
        w = [0] * 11
        for i, c in enumerate(g):
            w[(i + s) % 11] = (w[(i + s) % 11] + c) % 3
        rows.append(w + [(-sum(w)) % 3])
    return rows


def hexacode_glue():
    # The words form an F_4-linear code; D_4^*/D_4 becomes F_4 once its three
    # nonzero classes are cycled by triality, so add the cycled words too.
    base = [[1] * 6] + cyclic([0], [0, 2, 3, 3, 2])
    tri = {0: 0, 1: 2, 2: 3, 3: 1}
    return base + [[tri[c] for c in w] for w in base]


def leech():
    gens = [[2 * c for c in word] for word in golay24()]
    for i in range(1, 24):
        v = [0] * 24
        v[0] = 4
        v[i] = 4
        gens.append(v)
    v = [0] * 24
    v[0] = 8
    gens.append(v)
    gens.append([-3] + [1] * 23)
    basis = hnf_basis(gens)
    return to_int_gram([[Fraction(sum(x * y for x, y in zip(a, b)), 8) for b in basis] for a in basis])


NIEMEIER = [
    ("D24", [("D", 24)], [[1]]),
    ("D16E8", [("D", 16), ("E", 8)], [[1, 0]]),
    ("E8^3", [("E", 8)] * 3, []),
    ("A24", [("A", 24)], [[5]]),
    ("D12^2", [("D", 12)] * 2, [[1, 2], [2, 1]]),
    ("A17E7", [("A", 17), ("E", 7)], [[3, 1]]),
    ("D10E7^2", [("D", 10), ("E", 7), ("E", 7)], [[1, 1, 0], [3, 0, 1]]),
    ("A15D9", [("A", 15), ("D", 9)], [[2, 1]]),
    ("D8^3", [("D", 8)] * 3, cyclic([], [1, 2, 2])),
    ("A12^2", [("A", 12)] * 2, [[1, 5]]),
    ("A11D7E6", [("A", 11), ("D", 7), ("E", 6)], [[1, 1, 1]]),
    ("E6^4", [("E", 6)] * 4, cyclic([1], [0, 1, 2])),
    ("A9^2D6", [("A", 9), ("A", 9), ("D", 6)], [[2, 4, 0], [5, 0, 1], [0, 5, 3]]),
    ("D6^4", [("D", 6)] * 4,
     [list(p) for p in permutations([0, 1, 2, 3])
      if sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j]) % 2 == 0]),
    ("A8^3", [("A", 8)] * 3, cyclic([], [1, 1, 4])),
    ("A7^2D5^2", [("A", 7), ("A", 7), ("D", 5), ("D", 5)], [[1, 1, 1, 2], [1, 7, 2, 1]]),
    ("A6^4", [("A", 6)] * 4, cyclic([1], [2, 1, 6])),
    ("A5^4D4", [("A", 5)] * 4 + [("D", 4)],
     [w + [0] for w in cyclic([2], [0, 2, 4])] + [[3, 3, 0, 0, 1], [3, 0, 3, 0, 2], [3, 0, 0, 3, 3]]),
    ("D4^6", [("D", 4)] * 6, hexacode_glue()),
    ("A4^6", [("A", 4)] * 6, cyclic([1], [0, 1, 4, 4, 1])),
    ("A3^8", [("A", 3)] * 8, cyclic([3], [2, 0, 0, 1, 0, 1, 1])),
    ("A2^12", [("A", 2)] * 12, ternary_golay12()),
    ("A1^24", [("A", 1)] * 24, golay24()),
]


def write_lattice(path, name, gram, note=""):
    n = len(gram)
    width = max(len(str(x)) for row in gram for x in row)
    with open(path, "w") as f:
        f.write("siegelkit-lattice 1\n")
        if note:
            f.write("# " + note + "\n")
        f.write(f"name {name}\nrank {n}\ngram\n")
        for row in gram:
            f.write(" ".join(str(x).rjust(width) for x in row) + "\n")


def check(name, gram):
    n = len(gram)
    for i in range(n):
        if gram[i][i] % 2:
            raise ValueError(f"{name}: odd diagonal")
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise ValueError(f"{name}: not symmetric")
    return det(gram)


def block_sum(a, b):
    n, m = len(a), len(b)
    return [a[i] + [0] * m for i in range(n)] + [[0] * n + b[i] for i in range(m)]


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")
    lat_dir = os.path.join(root, "lattices")
    gen_dir = os.path.join(root, "genus")
    os.makedirs(lat_dir, exist_ok=True)
    os.makedirs(gen_dir, exist_ok=True)

    e8 = component("E", 8)[0]
    small = {
        "a1": ("A1", component("A", 1)[0]),
        "a2": ("A2", component("A", 2)[0]),
        "a4": ("A4", component("A", 4)[0]),
        "d4": ("D4", component("D", 4)[0]),
        "e8": ("E8", e8),
        "e8e8": ("E8+E8", block_sum(e8, e8)),
        "d16plus": ("D16+", lll_gram(glued_lattice([("D", 16)], [[1]]))),
    }
    for key, (name, gram) in small.items():
        d = check(name, gram)
        write_lattice(os.path.join(lat_dir, key + ".lattice"), name, gram, f"det {d}")
        print(f"{name:10s} rank {len(gram):2d} det {d}")

    niemeier_keys = []
    for name, comps, glue in NIEMEIER:
        gram = lll_gram(glued_lattice(comps, glue))
        d = check(name, gram)
        if d != 1:
            raise ValueError(f"{name}: determinant {d}")
        key = "niemeier_" + name.lower().replace("^", "x")
        niemeier_keys.append(key)
        write_lattice(os.path.join(lat_dir, key + ".lattice"), "Niemeier(" + name + ")", gram,
                      "root system " + name)
        print(f"{name:10s} ok")
    gram = lll_gram(leech())
    if check("Leech", gram) != 1:
        raise ValueError("Leech: determinant")
    write_lattice(os.path.join(lat_dir, "leech.lattice"), "Leech", gram, "no roots")
    niemeier_keys.append("leech")
    print("Leech      ok")

    genera = {
        "e8": ("rank 8 even unimodular", ["e8"]),
        "rank16": ("rank 16 even unimodular", ["e8e8", "d16plus"]),
        "niemeier": ("rank 24 even unimodular (automorphism orders are not enumerable here)", niemeier_keys),
    }
    for key, (note, members) in genera.items():
        with open(os.path.join(gen_dir, key + ".genus"), "w") as f:
            f.write("siegelkit-genus 1\n# " + note + "\n")
            f.write(f"name {key}\n")
            for m in members:
                f.write(f"lattice {m}\n")


if __name__ == "__main__":
    main()
