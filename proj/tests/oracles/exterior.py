"""Square-free monomials in odd generators, counted per degree."""
from itertools import combinations

from common import freeze


def exterior_dims(degs):
    top = sum(degs)
    dims = [0] * (top + 1)
    for k in range(len(degs) + 1):
        for s in combinations(degs, k):
            dims[sum(s)] += 1
    return dims


def main():
    out = {"odd": {}, "specs": {}}
    for n in range(0, 5):
        degs = [2 * i - 1 for i in range(1, n + 1)]
        out["odd"][str(n)] = {"degrees": degs, "dims": exterior_dims(degs), "total": 2 ** n, "primitives": n}
    for degs in ([1, 3], [1, 3, 5], [1, 3, 5, 7], [3, 3], [1, 1, 5]):
        out["specs"][",".join(map(str, degs))] = {"dims": exterior_dims(degs), "total": 2 ** len(degs)}
    freeze("exterior.json", out)


if __name__ == "__main__":
    main()
