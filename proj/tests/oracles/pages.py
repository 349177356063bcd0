"""Page dimensions of filtered complexes by brute-force rank counting.

With the filtration spanned by basis vectors, every term of
  E^r_{p,q} = (Z^r_p + F^{p-1}) / (B^{r-1}_p + F^{p-1}),
  Z^r_p = {c in F^p : dc in F^{p-r}},  B^{r-1}_p = F^p ∩ d(F^{p+r-1}),
reduces to ranks of blocks of the boundary matrix. Random complexes are built
as sums of elementary pieces, conjugated by a level-preserving change of basis
and then exported in a scrambled basis so the filtration is not coordinate.
"""
import random

from common import Field, freeze, rank


def sub(F, d, rows, cols):
    """Block of d (list of columns) as row vectors for rank()."""
    return [[F(d[c][r]) for r in rows] for c in cols] if rows and cols else []


class Filtered:
    def __init__(self, F, dims, bnd, level):
        # bnd[m][j] = column j of d_m : C_m -> C_{m-1}, as a dense list
        self.F, self.dims, self.bnd, self.level = F, dims, bnd, level

    def upto(self, m, p):
        if m < 0 or m >= len(self.dims):
            return []
        return [i for i in range(self.dims[m]) if self.level[m][i] <= p]

    def above(self, m, p):
        if m < 0 or m >= len(self.dims):
            return []
        return [i for i in range(self.dims[m]) if self.level[m][i] > p]

    def rk(self, m, src_cols, target_rows):
        if m <= 0 or m >= len(self.dims):
            return 0
        return rank(self.F, sub(self.F, self.bnd[m], target_rows, src_cols))

    def kernel_dim(self, m, s, t):
        """dim {c in F^s C_m : dc in F^t}."""
        cols = self.upto(m, s)
        return len(cols) - self.rk(m, cols, self.above(m - 1, t))

    def image_in(self, m, s, t):
        """dim (F^s C_m ∩ d F^t C_{m+1})."""
        cols = self.upto(m + 1, t)
        allrows = list(range(self.dims[m]))
        return self.rk(m + 1, cols, allrows) - self.rk(m + 1, cols, self.above(m, s))

    def page_dim(self, r, p, m):
        f_prev = len(self.upto(m, p - 1))
        z = self.kernel_dim(m, p, p - r) + f_prev - self.kernel_dim(m, p - 1, p - r)
        b = f_prev + self.image_in(m, p, p + r - 1) - self.image_in(m, p - 1, p + r - 1)
        return z - b

    def pages(self, rmax):
        out = []
        for r in range(rmax + 1):
            cells = []
            for m in range(len(self.dims)):
                for p in range(0, m + 1):
                    d = self.page_dim(r, p, m)
                    if d:
                        cells.append([p, m - p, d])
            out.append(cells)
        return out


def identity(F, n):
    return [[F(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(F, a):
    n = len(a)
    m = [list(map(F, row)) + identity(F, n)[i] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        inv = F.inv(m[c][c])
        m[c] = [F(x * inv) for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [F(x - f * y) for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def mul(F, a, b):
    n, k, l = len(a), len(b), len(b[0]) if b else 0
    return [[F(sum(a[i][t] * b[t][j] for t in range(k))) for j in range(l)] for i in range(n)]


def cols_to_rows(cols, nrows):
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]


def rows_to_cols(rows, ncols):
    return [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]


def conjugate(F, dims, bnd, mats):
    """d'_m = M_{m-1} d_m M_m^{-1}."""
    out = [None]
    for m in range(1, len(dims)):
        if dims[m] == 0 or dims[m - 1] == 0:
            out.append([[F(0)] * dims[m - 1] for _ in range(dims[m])])
            continue
        d = cols_to_rows(bnd[m], dims[m - 1])
        dd = mul(F, mul(F, mats[m - 1], d), inverse(F, mats[m]))
        out.append(rows_to_cols(dd, dims[m]))
    return out


def random_filtered(F, rng, top=3, maxdim=4):
    # elementary pieces: (m, level) cycles and (m, lx, ly) pairs x <- y
    dims = [0] * (top + 1)
    level = [[] for _ in range(top + 1)]
    pairs = []
    for m in range(top + 1):
        for _ in range(rng.randint(0, 2)):
            if dims[m] < maxdim:
                level[m].append(rng.randint(0, m))
                dims[m] += 1
        if m < top:
            for _ in range(rng.randint(0, 2)):
                if dims[m] < maxdim and dims[m + 1] < maxdim:
                    lx = rng.randint(0, m)
                    ly = rng.randint(lx, m + 1)
                    level[m].append(lx)
                    level[m + 1].append(ly)
                    pairs.append((m, dims[m], dims[m + 1]))
                    dims[m] += 1
                    dims[m + 1] += 1
    if dims[0] == 0:
        level[0].append(0)
        dims[0] = 1
    bnd = [None] + [[[F(0)] * dims[m - 1] for _ in range(dims[m])] for m in range(1, top + 1)]
    for m, ix, iy in pairs:
        bnd[m + 1][iy][ix] = F(rng.choice([1, 2, -1]) if F.p != 2 else 1)
    # level-preserving unitriangular change of basis
    tri = []
    for m in range(top + 1):
        t = identity(F, dims[m])
        for i in range(dims[m]):
            for j in range(dims[m]):
                if (level[m][j], j) < (level[m][i], i) and rng.random() < 0.5:
                    t[j][i] = F(rng.randint(-2, 2))  # e_i gains lower-level e_j
        tri.append(t)
    bnd = conjugate(F, dims, bnd, tri)
    return Filtered(F, dims, bnd, level)


def scrambled_json(fc, rng, name):
    F = fc.F
    dims, top = fc.dims, len(fc.dims) - 1
    mats = []
    for m in range(top + 1):
        while True:
            s = [[F(rng.randint(-2, 2)) for _ in range(dims[m])] for _ in range(dims[m])]
            if dims[m] == 0 or rank(F, s) == dims[m]:
                break
        mats.append(s)
    bnd = conjugate(F, dims, fc.bnd, mats)
    boundaries = []
    for m in range(1, top + 1):
        entries = [[i, j, F.text(bnd[m][j][i])] for j in range(dims[m]) for i in range(dims[m - 1]) if bnd[m][j][i] != 0]
        boundaries.append({"field": F.name, "rows": dims[m - 1], "cols": dims[m], "entries": entries})
    filt = {}
    for m in range(top + 1):
        for i in range(dims[m]):
            col = [[k, F.text(mats[m][k][i])] for k in range(dims[m]) if mats[m][k][i] != 0]
            filt.setdefault(str(fc.level[m][i]), {}).setdefault(str(m), []).append(col)
    return {"name": name, "field": F.name, "dims": dims, "boundaries": boundaries, "filtration": filt}


def hand(F):
    # a, b in degree 0; e (level 1) with de = b - a and x (level 0) in
    # degree 1; y (level 2) in degree 2 with dy = 2x.
    dims = [2, 2, 1]
    level = [[0, 0], [1, 0], [2]]
    bnd = [None, [[F(-1), F(1)], [F(0), F(0)]], [[F(0), F(2)]]]
    return Filtered(F, dims, bnd, level)


def coordinate_json(fc, name):
    F = fc.F
    dims, top = fc.dims, len(fc.dims) - 1
    boundaries = []
    for m in range(1, top + 1):
        entries = [[i, j, F.text(fc.bnd[m][j][i])] for j in range(dims[m]) for i in range(dims[m - 1])
                   if fc.bnd[m][j][i] != 0]
        boundaries.append({"field": F.name, "rows": dims[m - 1], "cols": dims[m], "entries": entries})
    filt = {}
    for m in range(top + 1):
        for i in range(dims[m]):
            filt.setdefault(str(fc.level[m][i]), {}).setdefault(str(m), []).append([[i, "1"]])
    return {"name": name, "field": F.name, "dims": dims, "boundaries": boundaries, "filtration": filt}


def main():
    rng = random.Random(20261016)
    cases = []
    for name in ["Q", "F2", "F3"]:
        fc = hand(Field(name))
        cases.append({"complex": coordinate_json(fc, "hand/" + name), "pages": fc.pages(6)})
    for k in range(40):
        F = Field(["Q", "F2", "F3", "F5"][k % 4])
        fc = random_filtered(F, rng)
        cases.append({"complex": scrambled_json(fc, rng, f"random{k}/{F.name}"), "pages": fc.pages(6)})
    freeze("pages.json", {"cases": cases})
    freeze("hand_filtered_Q.json", cases[0]["complex"])


if __name__ == "__main__":
    main()
