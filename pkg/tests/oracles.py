"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

from itertools import combinations, permutations, product

import numpy as np

INF = float("inf")


def is_associative(table) -> bool:
    n = len(table)
    return all(table[table[a][b]][c] == table[a][table[b][c]]
               for a in range(n) for b in range(n) for c in range(n))


def count_associative_tables(n: int) -> int:
    count = 0
    for flat in product(range(n), repeat=n * n):
        table = [flat[r * n:(r + 1) * n] for r in range(n)]
        count += is_associative(table)
    return count


def subgroups(table) -> list[frozenset]:
    """Every subset that is a group under the restricted product."""
    n = len(table)
    found = []
    for size in range(1, n + 1):
        for sub in combinations(range(n), size):
            s = set(sub)
            if any(table[a][b] not in s for a in s for b in s):
                continue
            ids = [e for e in s if all(table[e][x] == x == table[x][e] for x in s)]
            if not ids:
                continue
            e = ids[0]
            if all(any(table[x][y] == e == table[y][x] for y in s) for x in s):
                found.append(frozenset(s))
    return found


def closure(table, gens) -> frozenset:
    out = set(gens)
    while True:
        new = {table[a][b] for a in out for b in out} - out
        if not new:
            return frozenset(out)
        out |= new


def distance_matrix(n: int, edges) -> np.ndarray:
    """Floyd-Warshall on the symmetric, loop-free closure of ``edges``."""
    d = np.full((n, n), INF)
    np.fill_diagonal(d, 0)
    for u, v in edges:
        if u != v:
            d[u, v] = d[v, u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def brute_span(n: int, edges, ks) -> int:
    """Minimum span by scanning every label vector in ``[1, ub + 1]^n``."""
    if n == 1:
        return 0
    d = distance_matrix(n, edges)
    ub = (n - 1) * max(ks)
    grid = np.array(list(product(range(1, ub + 2), repeat=n)), dtype=np.int32)
    ok = np.ones(len(grid), dtype=bool)
    for u in range(n):
        for v in range(u + 1, n):
            t = d[u, v]
            if 1 <= t <= len(ks):
                ok &= np.abs(grid[:, u] - grid[:, v]) >= ks[int(t) - 1]
    spans = grid[ok].max(axis=1) - grid[ok].min(axis=1)
    return int(spans.min())


def undirected_graphs(n: int):
    """Every loop-free undirected graph on ``n`` labelled vertices, as edge lists."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [p for k, p in enumerate(pairs) if mask >> k & 1]


def canonical_edges(n: int, edges) -> tuple:
    """Least relabelled edge set, used to share oracle work across isomorphic graphs."""
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def is_union_of_cliques(n: int, edges) -> bool:
    d = distance_matrix(n, edges)
    return bool(np.all((d == 0) | (d == 1) | (d == INF)))
