"""Small semigroups used as fixtures throughout the tests and the CLI."""
from functools import lru_cache
from itertools import permutations

import numpy as np

from .semigroup import build_semigroup, cyclic_group

N_PROPER = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4, 5, 6, 7],
    [0, 2, 6, 6, 3, 2, 6, 2],
    [0, 3, 6, 6, 3, 2, 6, 2],
    [0, 4, 6, 6, 4, 5, 6, 5],
    [0, 5, 6, 6, 4, 5, 6, 5],
    [0, 6, 6, 6, 6, 6, 6, 6],
    [0, 7, 2, 3, 4, 5, 6, 7],
]

# elements labelled 1..4
STRICT = [
    [1, 1, 4, 4],
    [2, 2, 3, 3],
    [3, 3, 2, 2],
    [4, 4, 1, 1],
]

CLIFFORD_LABELS = ["e", "r1", "r2", "s1", "s2", "s3", "f", "c"]
CLIFFORD = [
    "e r1 r2 s1 s2 s3 e s1",
    "r1 r2 e s3 s1 s2 r1 s3",
    "r2 e r1 s2 s3 s1 r2 s2",
    "s1 s2 s3 e r1 r2 s1 e",
    "s2 s3 s1 r2 e r1 s2 r2",
    "s3 s1 s2 r1 r2 e s3 r1",
    "e r1 r2 s1 s2 s3 f c",
    "s1 s2 s3 e r1 r2 c f",
]

CR7 = [
    [0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1, 1],
    [2, 2, 2, 2, 2, 2, 2],
    [0, 1, 0, 3, 3, 5, 5],
    [2, 1, 2, 4, 4, 6, 6],
    [1, 0, 1, 5, 5, 3, 3],
    [1, 2, 1, 6, 6, 4, 4],
]


def n_proper():
    return build_semigroup(N_PROPER)


def strict():
    return build_semigroup([[x - 1 for x in row] for row in STRICT], labels=["1", "2", "3", "4"])


def clifford():
    pos = {s: i for i, s in enumerate(CLIFFORD_LABELS)}
    rows = [[pos[s] for s in line.split()] for line in CLIFFORD]
    return build_semigroup(rows, labels=CLIFFORD_LABELS)


def cr7():
    return build_semigroup(CR7)


def truncated_addition(n=3):
    """{0, 1, .., n} with x*y = x+y when x+y <= n and 0 otherwise; 0 is a zero."""
    rows = [[0] * (n + 1)]
    for x in range(1, n + 1):
        rows.append([0] + [x + y if x + y <= n else 0 for y in range(1, n + 1)])
    return build_semigroup(rows)


def left_identity_example():
    """{0, 1, 2}: 0 a zero, 2 a left identity, all other products 0."""
    t = [[0, 0, 0], [0, 0, 0], [0, 1, 2]]
    return build_semigroup(t)


def constant_one_example():
    """{0, 1, 2}: 0 a zero, every other product is 1."""
    t = [[0, 0, 0], [0, 1, 1], [0, 1, 1]]
    return build_semigroup(t)


def named_fixtures():
    return {
        "n_proper": n_proper(),
        "strict": strict(),
        "clifford": clifford(),
        "truncated_addition": truncated_addition(3),
        "cr7": cr7(),
        "left_identity": left_identity_example(),
        "constant_one": constant_one_example(),
    }


def trivial_monoid():
    return build_semigroup([[0]])


def z(k):
    return cyclic_group(k)


# ------------------------------------------------- small semigroup census

def _search_tables(n):
    """All associative n x n tables, by backtracking over cells in row-major order."""
    t = [[-1] * n for _ in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]
    out = []

    def consistent():
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                if xy < 0:
                    continue
                for w in range(n):
                    l = t[xy][w]
                    yw = t[y][w]
                    if l < 0 or yw < 0:
                        continue
                    r = t[x][yw]
                    if r >= 0 and r != l:
                        return False
        return True

    def rec(k):
        if k == len(cells):
            out.append([row[:] for row in t])
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = v
            if consistent():
                rec(k + 1)
        t[i][j] = -1

    rec(0)
    return out


def _canonical(table, perms):
    best = None
    arr = np.array(table)
    for p in perms:
        p = np.array(p)
        inv = np.argsort(p)
        # relabel x -> p[x]
        key = tuple(p[arr[np.ix_(inv, inv)]].ravel().tolist())
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def small_semigroup_tables(n):
    """Associative n x n tables up to isomorphism (anti-isomorphic pairs kept apart)."""
    perms = list(permutations(range(n)))
    seen = {}
    for tab in _search_tables(n):
        key = _canonical(tab, perms)
        if key not in seen:
            seen[key] = tab
    return [np.array(k).reshape(n, n).tolist() for k in sorted(seen)]


def small_semigroups(max_order=4):
    out = []
    for n in range(1, max_order + 1):
        out += [build_semigroup(t, check=False) for t in small_semigroup_tables(n)]
    return out


def symmetric_group(n):
    from .transformations import cayley, enumerate_maps

    return cayley(enumerate_maps("S", n))


def symmetric_inverse_monoid(n):
    from .transformations import cayley, enumerate_maps

    return cayley(enumerate_maps("I", n))
