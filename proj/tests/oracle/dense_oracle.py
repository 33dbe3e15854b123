#!/usr/bin/env python3
"""Dense reference for the braiding operators and the trace invariant.

Everything is built from the closed-form maps on augmented pairs (a, x):
T((a,x),(b,y),(c,z)) = (abc, bcx + c[x,y] + b[x,z] + [[x,y],z]) for Lie
brackets (the partner flips the two middle signs) and (abc, bcx + [x,y,z])
for 3-brackets, Delta(a,x) = (a,x)(1,0) + (1,0)(0,x) with a pulled into the
first factor. R, theta and their inverses are written out term by term,
Psi_b is a product of dense integer matrices.

Writes regression.tsv and columns.tsv into the fixture directory.
"""

import itertools
import sys
from pathlib import Path

import numpy as np


def perm_sign(seq):
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


ALGEBRAS = {
    # name: (arity, dim, {sorted basis tuple (1-based): {k: coeff}})
    "sl2": (2, 3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}),
    "so3": (2, 3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}}),
    "heisenberg3": (2, 3, {(1, 2): {3: 1}}),
    "abelian1": (2, 1, {}),
    "abelian2": (2, 2, {}),
    "nambu4": (3, 4, {(1, 2, 3): {4: 1}, (1, 2, 4): {3: -1}, (1, 3, 4): {2: 1}, (2, 3, 4): {1: -1}}),
}


class Algebra:
    def __init__(self, name):
        self.name = name
        self.arity, self.dim, self.table = ALGEBRAS[name]
        self.n = self.dim + 1

    def bracket(self, *vecs):
        """Multilinear bracket of coordinate vectors (length dim)."""
        out = np.zeros(self.dim, dtype=object)
        for idx in itertools.product(range(self.dim), repeat=len(vecs)):
            c = 1
            for v, i in zip(vecs, idx):
                c *= v[i]
            if c == 0 or len(set(idx)) < len(idx):
                continue
            key = tuple(sorted(i + 1 for i in idx))
            sign = perm_sign(idx)
            for k, val in self.table.get(key, {}).items():
                out[k - 1] += sign * c * val
        return out

    def T(self, p, q, r, tilde=False):
        """T on augmented pairs (a, x) given as (scalar, vector)."""
        (a, x), (b, y), (c, z) = p, q, r
        if self.arity == 2:
            s = -1 if tilde else 1
            v = b * c * x + s * c * self.bracket(x, y) + s * b * self.bracket(x, z) + self.bracket(self.bracket(x, y), z)
        else:
            v = b * c * x + self.bracket(x, y, z)
        return (a * b * c, v)

    def basis(self, i):
        v = np.zeros(self.dim, dtype=object)
        if i == 0:
            return (1, v)
        v[i - 1] = 1
        return (0, v)

    def to_coords(self, pair):
        a, x = pair
        return [a] + list(x)


def delta3(alg, i):
    """Sweedler legs of Delta_3 on a basis element: list of (leg1, leg2, leg3) index triples."""
    if i == 0:
        return [(0, 0, 0)]
    return [(i, 0, 0), (0, i, 0), (0, 0, i)]


def T_on_basis(alg, i, j, k, tilde=False):
    return alg.to_coords(alg.T(alg.basis(i), alg.basis(j), alg.basis(k), tilde))


def build(alg, kind):
    """Dense matrix of R, R_inv (rank 4) or theta, theta_inv (rank 2)."""
    n = alg.n
    rank = 4 if kind in ("R", "R_inv") else 2
    N = n ** rank
    M = np.zeros((N, N), dtype=np.int64)
    tilde_T = kind in ("R_inv", "theta_inv")

    def T(i, j, k):
        return T_on_basis(alg, i, j, k, tilde_T if alg.arity == 2 else False)

    for col, digits in enumerate(itertools.product(range(n), repeat=rank)):
        out = {}

        def emit(prefix, u, v, suffix=()):
            for p, cu in enumerate(u):
                if cu == 0:
                    continue
                for q, cv in enumerate(v):
                    if cv == 0:
                        continue
                    key = prefix + (p, q) + suffix
                    out[key] = out.get(key, 0) + cu * cv

        if kind == "R":
            a, b, c, d = digits
            # (c(1), d(1), T(a, c(2), d(2)), T(b, c(3), d(3)))
            for c1, c2, c3 in delta3(alg, c):
                for d1, d2, d3 in delta3(alg, d):
                    emit((c1, d1), T(a, c2, d2), T(b, c3, d3))
        elif kind == "R_inv":
            a, b, c, d = digits
            # (T~(c, b(2), a(2)), T~(d, b(3), a(3)), a(1), b(1))
            for a1, a2, a3 in delta3(alg, a):
                for b1, b2, b3 in delta3(alg, b):
                    emit((), T(c, b2, a2), T(d, b3, a3), (a1, b1))
        elif kind == "theta":
            x, y = digits
            # (T(x(1), x(2), y(2)), T(y(1), x(3), y(3)))
            for x1, x2, x3 in delta3(alg, x):
                for y1, y2, y3 in delta3(alg, y):
                    emit((), T(x1, x2, y2), T(y1, x3, y3))
        else:
            x, y = digits
            # (T~(x(1), y(2), x(2)), T~(y(1), y(3), x(3)))
            for x1, x2, x3 in delta3(alg, x):
                for y1, y2, y3 in delta3(alg, y):
                    emit((), T(x1, y2, x2), T(y1, y3, x3))
        for key, coeff in out.items():
            if coeff:
                row = 0
                for dgt in key:
                    row = row * n + dgt
                M[row, col] += int(coeff)
    return M


def parse_word(text, strands):
    letters = []
    for tok in text.split():
        kind = tok[0]
        if "^" in tok:
            idx, exp = tok[1:].split("^")
        else:
            idx, exp = tok[1:], "1"
        letters.append((kind, int(idx), int(exp)))
    return letters


def psi(alg, ops, word, strands, framings):
    """Psi_b = prod_j R_{n,i_j}^{k_j} (theta^{t_1} x ... x theta^{t_n})."""
    n = alg.n
    N = n ** (2 * strands)
    I2 = np.eye(n * n, dtype=np.int64)

    def padded(op, pos):
        left = np.eye(n ** pos, dtype=np.int64)
        right_rank = 2 * strands - pos - (4 if op.shape[0] == n ** 4 else 2)
        right = np.eye(n ** right_rank, dtype=np.int64)
        return np.kron(np.kron(left, op), right)

    def power(m, k):
        out = np.eye(m.shape[0], dtype=np.int64)
        for _ in range(k):
            out = out @ m
        return out

    twist = np.eye(1, dtype=np.int64)
    for t in framings:
        block = power(ops["theta"] if t >= 0 else ops["theta_inv"], abs(t))
        twist = np.kron(twist, block)
    product = np.eye(N, dtype=np.int64)
    for kind, i, k in parse_word(word, strands):
        assert kind == "s", "oracle words carry framings separately"
        m = ops["R"] if k > 0 else ops["R_inv"]
        product = product @ power(padded(m, 2 * (i - 1)), abs(k))
        assert np.abs(product).max() < 2**40
    del I2
    return product @ twist


FIXTURES = [
    # (algebra, word, strands, framings)
    ("sl2", "s1 s1 s1", 2, (0, 0)),
    ("sl2", "", 1, (-2,)),
    ("sl2", "", 1, (-1,)),
    ("sl2", "", 1, (0,)),
    ("sl2", "", 1, (1,)),
    ("sl2", "", 1, (2,)),
    ("sl2", "s1 s1", 2, (0, 0)),
    ("sl2", "s1^-1 s1^-1 s1^-1", 2, (1, -1)),
    ("so3", "s1 s1 s1", 2, (0, 0)),
    ("heisenberg3", "s1 s1 s1", 2, (2, 0)),
    ("nambu4", "s1 s1", 2, (0, 0)),
    ("nambu4", "s1", 2, (1, 0)),
]

COLUMN_ALGEBRAS = ["sl2", "nambu4"]


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures"
    ops_cache = {}

    def ops(name):
        if name not in ops_cache:
            alg = Algebra(name)
            ops_cache[name] = (alg, {k: build(alg, k) for k in ("R", "R_inv", "theta", "theta_inv")})
        return ops_cache[name]

    lines = []
    for name, word, strands, framings in FIXTURES:
        alg, o = ops(name)
        N = alg.n ** 4
        assert (o["R"] @ o["R_inv"] == np.eye(N, dtype=np.int64)).all()
        assert (o["theta"] @ o["theta_inv"] == np.eye(alg.n**2, dtype=np.int64)).all()
        value = int(np.trace(psi(alg, o, word, strands, framings)))
        lines.append(f"{name}\t{word}\t{','.join(map(str, framings))}\t{value}")
        print(lines[-1], flush=True)
    (out_dir / "regression.tsv").write_text("\n".join(lines) + "\n")

    cols = []
    for name in COLUMN_ALGEBRAS:
        alg, o = ops(name)
        n = alg.n
        for kind in ("R", "R_inv", "theta", "theta_inv"):
            M = o[kind]
            rank = 4 if M.shape[0] == n**4 else 2
            for col in range(M.shape[1]):
                nz = np.nonzero(M[:, col])[0]
                # keep the interesting columns: more than one output term
                if len(nz) < 2:
                    continue
                digits = np.base_repr(col, n).zfill(rank)
                terms = []
                for row in nz:
                    terms.append(f"{M[row, col]}@{'.'.join(np.base_repr(row, n).zfill(rank))}")
                cols.append(f"{name}\t{kind}\t{'.'.join(digits)}\t{' '.join(terms)}")
    (out_dir / "columns.tsv").write_text("\n".join(cols) + "\n")
    print(f"{len(cols)} columns", flush=True)


if __name__ == "__main__":
    main()
