"""Small exact linear algebra over Q (Fraction) and F_p, shared by the oracles."""
import json
import os
from fractions import Fraction

FROZEN = os.path.join(os.path.dirname(os.path.abspath(__file__)), "frozen")


class Field:
    def __init__(self, name):
        self.name = name
        self.p = 0 if name == "Q" else int(name[1:])

    def __call__(self, x):
        return Fraction(x) if self.p == 0 else int(x) % self.p

    def inv(self, x):
        return 1 / Fraction(x) if self.p == 0 else pow(int(x), self.p - 2, self.p)

    def text(self, x):
        x = self(x)
        if self.p:
            return str(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rank(F, rows):
    """Rank of a list of row vectors."""
    m = [[F(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [F(a - f * b) for a, b in zip(m[i], m[r])]
        r += 1
    return r


def matmul(F, a, b):
    if not a or not b:
        return [[F(0)] * (len(b[0]) if b else 0) for _ in a]
    return [[F(sum(a[i][k] * b[k][j] for k in range(len(b)))) for j in range(len(b[0]))] for i in range(len(a))]


def transpose(m, rows, cols):
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def freeze(name, data):
    os.makedirs(FROZEN, exist_ok=True)
    with open(os.path.join(FROZEN, name), "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
