"""Exhaustive enumeration of small semigroups.

Tables are produced by depth-first search over the cells in row-major
order, trying values in increasing order, so the stream is sorted
lexicographically on the flattened table.  Every associativity equation
is checked as soon as all four of its cells are known.

Labelled counts: 1, 8, 113, 3492, 183732 for orders 1..5.
"""

from __future__ import annotations

import os
from itertools import permutations
from typing import Iterator

from .semigroup import Semigroup, SemigroupError

DEFAULT_MAX_ORDER = 4
HARD_MAX_ORDER = 5
ENV_MAX_ORDER = "CAYLABEL_MAX_ORDER"


class OrderCapError(SemigroupError):
    pass


def max_order() -> int:
    raw = os.environ.get(ENV_MAX_ORDER)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        cap = int(raw)
    except ValueError:
        raise OrderCapError(f"{ENV_MAX_ORDER}={raw!r} is not an integer") from None
    return max(1, min(cap, HARD_MAX_ORDER))


def check_order(n: int, cap: int | None = None) -> None:
    limit = max_order() if cap is None else min(cap, HARD_MAX_ORDER)
    if n < 1:
        raise OrderCapError("order must be positive")
    if n > limit:
        raise OrderCapError(f"order {n} exceeds the enumeration cap {limit} (hard cap {HARD_MAX_ORDER})")


def _labelled_tables(n: int) -> Iterator[tuple[int, ...]]:
    size = n * n
    t = [-1] * size
    # dom[p]: bitmask of values still allowed in cell p
    dom = [(1 << n) - 1] * size
    rng = range(n)
    trail: list[tuple[int, int]] = []

    def settle(bp: int, dp: int) -> bool:
        # the equation's two "outer" cells bp, dp must hold equal values
        x, z = t[bp], t[dp]
        if x >= 0:
            if z >= 0:
                return x == z
            d = dom[dp]
            if not d >> x & 1:
                return False
            if d != 1 << x:
                trail.append((dp, d))
                dom[dp] = 1 << x
            return True
        if z >= 0:
            d = dom[bp]
            if not d >> z & 1:
                return False
            if d != 1 << z:
                trail.append((bp, d))
                dom[bp] = 1 << z
        return True

    def assign(a: int, b: int, v: int) -> bool:
        # every equation (ij)k = i(jk) that mentions cell (a, b), once its
        # two inner products ij and jk are known
        an, bn, vn = a * n, b * n, v * n
        # (ab)k = a(bk)
        for k in rng:
            y = t[bn + k]
            if y >= 0 and not settle(vn + k, an + y):
                return False
        # (ia)b = i(ab)
        for i in rng:
            u = t[i * n + a]
            if u >= 0 and not settle(u * n + b, i * n + v):
                return False
        for i in rng:
            inn = i * n
            for j in rng:
                # (ij)b = i(jb) with ij = a
                if t[inn + j] == a:
                    w = t[j * n + b]
                    if w >= 0 and not settle(an + b, inn + w):
                        return False
        for j in rng:
            u = t[an + j]
            if u < 0:
                continue
            jn = j * n
            for k in rng:
                # (aj)k = a(jk) with jk = b
                if t[jn + k] == b and not settle(u * n + k, an + b):
                    return False
        return True

    def rec(p: int) -> Iterator[tuple[int, ...]]:
        if p == size:
            yield tuple(t)
            return
        a, b = divmod(p, n)
        allowed = dom[p]
        for v in rng:
            if not allowed >> v & 1:
                continue
            mark = len(trail)
            t[p] = v
            if assign(a, b, v):
                yield from rec(p + 1)
            t[p] = -1
            while len(trail) > mark:
                q, d = trail.pop()
                dom[q] = d

    yield from rec(0)


def _permutation_maps(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    out = []
    for perm in permutations(range(n)):
        inv = [0] * n
        for x, y in enumerate(perm):
            inv[y] = x
        out.append((perm, tuple(inv)))
    return out


def is_canonical(flat: tuple[int, ...], n: int, perms=None) -> bool:
    """True iff ``flat`` is lexicographically least among its relabellings."""
    for perm, inv in perms or _permutation_maps(n):
        for a in range(n):
            ia = inv[a] * n
            for b in range(n):
                img = perm[flat[ia + inv[b]]]
                cur = flat[a * n + b]
                if img != cur:
                    if img < cur:
                        return False
                    break
            else:
                continue
            break
    return True


def canonical_form(S: Semigroup) -> tuple[int, ...]:
    n = S.order
    t = S.table
    best = None
    for perm, inv in _permutation_maps(n):
        flat = tuple(perm[t[inv[a]][inv[b]]] for a in range(n) for b in range(n))
        if best is None or flat < best:
            best = flat
    return best


def enumerate_semigroups(n: int, dedup: str = "none", cap: int | None = None) -> Iterator[Semigroup]:
    """Every associative ``n × n`` table, in lexicographic order.

    With ``dedup="iso"`` only the lexicographically least table of each
    isomorphism class is yielded.  Anti-isomorphic tables are kept apart.
    """
    if dedup not in ("none", "iso"):
        raise ValueError(f"unknown dedup mode {dedup!r}")
    check_order(n, cap)
    perms = _permutation_maps(n) if dedup == "iso" else None
    for flat in _labelled_tables(n):
        if perms is not None and not is_canonical(flat, n, perms):
            continue
        yield Semigroup([flat[r * n:(r + 1) * n] for r in range(n)], check=False)
