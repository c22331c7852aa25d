"""Finite semigroups given by Cayley tables.

Elements are the dense indices ``0..n-1``.  Subsets of a semigroup are
plain ``int`` bitmasks (bit ``i`` set means element ``i`` is a member);
use :func:`to_mask` and :func:`members` to convert.

Only finite semigroups are supported.  Since a finite semigroup always
has an idempotent and a finite simple semigroup is completely simple,
:func:`is_completely_simple` is the same test as :func:`is_simple`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product as cartesian
from typing import Iterable, Iterator, Sequence


class SemigroupError(ValueError):
    """Malformed or invalid semigroup input."""


class AssociativityError(SemigroupError):
    def __init__(self, witness: tuple[int, int, int]):
        i, j, k = witness
        super().__init__(f"table is not associative: ({i}*{j})*{k} != {i}*({j}*{k})")
        self.witness = witness


class NotCompletelySimpleError(SemigroupError):
    pass


class ReesDecompositionError(RuntimeError):
    """The Rees coordinates failed their own post-check (a bug, never an input problem)."""


# -- bitmask helpers ---------------------------------------------------------

def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


# -- the semigroup type --------------------------------------------------------

def find_associativity_violation(table: Sequence[Sequence[int]]) -> tuple[int, int, int] | None:
    n = len(table)
    for i in range(n):
        ti = table[i]
        for j in range(n):
            tij = table[ti[j]]
            tj = table[j]
            for k in range(n):
                if tij[k] != ti[tj[k]]:
                    return (i, j, k)
    return None


class Semigroup:
    """An immutable finite semigroup.

    ``table[i][j]`` is the index of ``s_i * s_j``.  Construction checks
    shape, range and associativity unless ``check=False`` (used by the
    enumerator, whose tables are associative by construction).
    """

    __slots__ = ("table", "name", "_hash")

    def __init__(self, table: Iterable[Iterable[int]], name: str = "", check: bool = True):
        rows = tuple(tuple(int(v) for v in row) for row in table)
        n = len(rows)
        if check:
            if n == 0:
                raise SemigroupError("semigroup must have at least one element")
            for r, row in enumerate(rows):
                if len(row) != n:
                    raise SemigroupError(f"row {r} has {len(row)} entries, expected {n}")
                for v in row:
                    if not 0 <= v < n:
                        raise SemigroupError(f"entry {v} in row {r} is out of range [0, {n})")
            witness = find_associativity_violation(rows)
            if witness is not None:
                raise AssociativityError(witness)
        self.table = rows
        self.name = name
        self._hash = hash(rows)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Semigroup) and self.table == other.table

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Semigroup{label} order={self.order} table={[list(r) for r in self.table]}>"

    @property
    def full(self) -> int:
        return full_mask(len(self.table))


def product(S: Semigroup, x: int, y: int) -> int:
    return S.table[x][y]


# -- table text format ---------------------------------------------------------

def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def parse_semigroup(text: str, name: str = "") -> Semigroup:
    """Parse the table format: ``n`` then ``n`` rows of ``n`` integers."""
    lines = _content_lines(text)
    if not lines:
        raise SemigroupError("empty table document")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise SemigroupError(f"line {lineno}: expected the order, got {head!r}") from None
    if n < 1:
        raise SemigroupError(f"line {lineno}: order must be positive")
    if len(lines) != n + 1:
        raise SemigroupError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in lines[1:]:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise SemigroupError(f"line {lineno}: non-integer entry in {line!r}") from None
        if len(row) != n:
            raise SemigroupError(f"line {lineno}: expected {n} entries, got {len(row)}")
        for v in row:
            if not 0 <= v < n:
                raise SemigroupError(f"line {lineno}: entry {v} out of range [0, {n})")
        rows.append(row)
    return Semigroup(rows, name=name)


def parse_semigroup_stream(text: str) -> list[Semigroup]:
    """Parse several table documents separated by blank lines."""
    blocks, current = [], []
    for raw in text.splitlines():
        if raw.strip():
            current.append(raw)
        elif current:
            blocks.append("\n".join(current))
            current = []
    if current:
        blocks.append("\n".join(current))
    return [parse_semigroup(b) for b in blocks if _content_lines(b)]


def format_semigroup(S: Semigroup, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(str(S.order))
    lines.extend(" ".join(str(v) for v in row) for row in S.table)
    return "\n".join(lines) + "\n"


def parse_subset(text: str, order: int) -> int:
    """Parse a connection set: space (or comma) separated element indices."""
    toks = text.replace(",", " ").split()
    mask = 0
    for tok in toks:
        try:
            x = int(tok)
        except ValueError:
            raise SemigroupError(f"bad element index {tok!r}") from None
        if not 0 <= x < order:
            raise SemigroupError(f"element {x} out of range [0, {order})")
        mask |= 1 << x
    return mask


def format_subset(mask: int) -> str:
    return " ".join(str(x) for x in members(mask))


# -- subsets and products ----------------------------------------------------

def set_product(S: Semigroup, A: int, B: int) -> int:
    """The set ``AB = {ab : a in A, b in B}``."""
    t = S.table
    bs = members(B)
    out = 0
    for a in members(A):
        row = t[a]
        for b in bs:
            out |= 1 << row[b]
    return out


def is_closed(S: Semigroup, A: int) -> bool:
    return set_product(S, A, A) & ~A == 0


def generated_subsemigroup(S: Semigroup, C: int) -> int:
    """Least product-closed subset containing ``C``."""
    if not C:
        raise SemigroupError("generating set must be nonempty")
    closure = C
    frontier = C
    while frontier:
        new = (set_product(S, closure, frontier) | set_product(S, frontier, closure)) & ~closure
        closure |= new
        frontier = new
    return closure


def restrict(S: Semigroup, A: int) -> tuple[Semigroup, list[int]]:
    """Induced subsemigroup on the closed subset ``A``.

    Returns the relabelled semigroup and the list mapping new indices to
    the original ones.
    """
    elems = members(A)
    index = {x: i for i, x in enumerate(elems)}
    try:
        rows = [[index[S.table[x][y]] for y in elems] for x in elems]
    except KeyError:
        raise SemigroupError("subset is not closed under the product") from None
    if not elems:
        raise SemigroupError("subset is empty")
    return Semigroup(rows, check=False), elems


def enumerate_subsemigroups(S: Semigroup) -> Iterator[int]:
    """All nonempty product-closed subsets, in increasing mask order."""
    for A in range(1, 1 << S.order):
        if is_closed(S, A):
            yield A


# -- element-wise predicates ---------------------------------------------------

def idempotents(S: Semigroup) -> int:
    return to_mask(x for x in range(S.order) if S.table[x][x] == x)


def is_band(S: Semigroup) -> bool:
    return idempotents(S) == S.full


def is_left_zero_band(S: Semigroup) -> bool:
    return all(S.table[x][y] == x for x in range(S.order) for y in range(S.order))


def is_right_zero_band(S: Semigroup) -> bool:
    return all(S.table[x][y] == y for x in range(S.order) for y in range(S.order))


def is_rectangular_band(S: Semigroup) -> bool:
    t = S.table
    r = range(S.order)
    return is_band(S) and all(t[t[x][y]][x] == x for x in r for y in r)


def power_cycle(S: Semigroup, x: int) -> tuple[int, int]:
    """Index and period of ``x``: least ``m, r`` with ``x^m = x^(m+r)``."""
    seen = {}
    p, k = x, 1
    while p not in seen:
        seen[p] = k
        p = S.table[p][x]
        k += 1
    m = seen[p]
    return m, k - m


def is_combinatorial(S: Semigroup) -> bool:
    """True iff every subgroup is trivial.

    In a finite semigroup the cyclic group generated inside ``<x>`` has
    order equal to the period of ``x``, so checking periods suffices.
    """
    return all(power_cycle(S, x)[1] == 1 for x in range(S.order))


def is_left_cancellative(S: Semigroup) -> bool:
    n = S.order
    return all(len(set(row)) == n for row in S.table)


def is_right_cancellative(S: Semigroup) -> bool:
    n = S.order
    return all(len({S.table[x][y] for x in range(n)}) == n for y in range(n))


def right_ideal(S: Semigroup, x: int) -> int:
    """Principal right ideal ``xS^1``."""
    return (1 << x) | to_mask(S.table[x])


def left_ideal(S: Semigroup, x: int) -> int:
    """Principal left ideal ``S^1x``."""
    return (1 << x) | to_mask(row[x] for row in S.table)


def two_sided_ideal(S: Semigroup, x: int) -> int:
    left = left_ideal(S, x)
    return left | set_product(S, left, S.full)


def is_left_simple(S: Semigroup) -> bool:
    return all(left_ideal(S, x) == S.full for x in range(S.order))


def is_right_simple(S: Semigroup) -> bool:
    return all(right_ideal(S, x) == S.full for x in range(S.order))


def is_simple(S: Semigroup) -> bool:
    return all(two_sided_ideal(S, x) == S.full for x in range(S.order))


def is_completely_simple(S: Semigroup) -> bool:
    # finite + simple => completely simple (a minimal idempotent always exists)
    return is_simple(S)


def is_left_group(S: Semigroup) -> bool:
    return is_left_simple(S) and is_right_cancellative(S)


def is_right_group(S: Semigroup) -> bool:
    return is_right_simple(S) and is_left_cancellative(S)


def identity_element(S: Semigroup) -> int | None:
    r = range(S.order)
    for e in r:
        if all(S.table[e][x] == x == S.table[x][e] for x in r):
            return e
    return None


def is_group(S: Semigroup) -> bool:
    e = identity_element(S)
    if e is None:
        return False
    return all(e in S.table[x] for x in range(S.order))


def inverse(S: Semigroup, x: int, identity: int) -> int:
    for y in range(S.order):
        if S.table[x][y] == identity and S.table[y][x] == identity:
            return y
    raise SemigroupError(f"element {x} has no inverse")


def zero_element(S: Semigroup) -> int | None:
    r = range(S.order)
    for z in r:
        if all(S.table[z][x] == z == S.table[x][z] for x in r):
            return z
    return None


def is_left_ideal_of(S: Semigroup, A: int, T: int) -> bool:
    """Whether ``A`` is a left ideal of the subsemigroup ``T`` (``TA ⊆ A``)."""
    if A & ~T:
        raise SemigroupError("A is not contained in T")
    return set_product(S, T, A) & ~A == 0


def is_right_ideal_of(S: Semigroup, A: int, T: int) -> bool:
    if A & ~T:
        raise SemigroupError("A is not contained in T")
    return set_product(S, A, T) & ~A == 0


def find_left_identity_from(S: Semigroup, C: int, x: int) -> int:
    """Some ``e`` in ``C`` with ``e x = x``.

    Always exists when ``<C>`` is a band and ``CS = S``; a
    :class:`SemigroupError` here means those hypotheses were violated.
    """
    for e in members(C):
        if S.table[e][x] == x:
            return e
    raise SemigroupError(f"no element of C fixes {x} from the left")


# -- Green's relations ---------------------------------------------------------

@dataclass(frozen=True)
class GreenClasses:
    r: tuple[int, ...]
    l: tuple[int, ...]
    h: tuple[int, ...]

    def classes(self, which: str) -> list[int]:
        ids = getattr(self, which)
        out: dict[int, int] = {}
        for x, c in enumerate(ids):
            out[c] = out.get(c, 0) | (1 << x)
        return [out[c] for c in sorted(out)]


def _partition_ids(keys: Sequence) -> tuple[int, ...]:
    seen: dict = {}
    return tuple(seen.setdefault(k, len(seen)) for k in keys)


def green_classes(S: Semigroup) -> GreenClasses:
    n = S.order
    rkeys = [right_ideal(S, x) for x in range(n)]
    lkeys = [left_ideal(S, x) for x in range(n)]
    r = _partition_ids(rkeys)
    l = _partition_ids(lkeys)
    h = _partition_ids(list(zip(r, l)))
    return GreenClasses(r, l, h)


# -- constructors ----------------------------------------------------------------

def cyclic_group(n: int) -> Semigroup:
    if n < 1:
        raise SemigroupError("cyclic group order must be positive")
    return Semigroup([[(i + j) % n for j in range(n)] for i in range(n)], name=f"Z{n}", check=False)


def left_zero_band(n: int) -> Semigroup:
    if n < 1:
        raise SemigroupError("band order must be positive")
    return Semigroup([[i] * n for i in range(n)], name=f"LZ{n}", check=False)


def right_zero_band(n: int) -> Semigroup:
    if n < 1:
        raise SemigroupError("band order must be positive")
    return Semigroup([list(range(n)) for _ in range(n)], name=f"RZ{n}", check=False)


def direct_product(S: Semigroup, T: Semigroup) -> Semigroup:
    """``S × T`` with ``(s, t)`` stored at index ``s * |T| + t``."""
    m = T.order
    rows = []
    for s1, t1 in cartesian(range(S.order), range(m)):
        rows.append([S.table[s1][s2] * m + T.table[t1][t2] for s2, t2 in cartesian(range(S.order), range(m))])
    name = f"{S.name}x{T.name}" if S.name and T.name else ""
    return Semigroup(rows, name=name, check=False)


def adjoin_zero(S: Semigroup) -> Semigroup:
    """``S^0``: the new zero is the last index ``|S|``."""
    z = S.order
    rows = [list(row) + [z] for row in S.table]
    rows.append([z] * (z + 1))
    return Semigroup(rows, name=f"{S.name}^0" if S.name else "", check=False)


def rees_index(g: int, i: int, lam: int, n_i: int, n_lambda: int) -> int:
    return (g * n_i + i) * n_lambda + lam


def rees_matrix_semigroup(G: Semigroup, n_i: int, n_lambda: int, P: Sequence[Sequence[int]]) -> Semigroup:
    """``M(G; I, Λ; P)`` with ``I = range(n_i)`` and ``Λ = range(n_lambda)``.

    ``P[λ][i]`` is a group element index.  Triple ``(g; i, λ)`` is stored
    at :func:`rees_index`.
    """
    if not is_group(G):
        raise SemigroupError("Rees matrix semigroups need a group")
    if n_i < 1 or n_lambda < 1:
        raise SemigroupError("index sets must be nonempty")
    if len(P) != n_lambda or any(len(row) != n_i for row in P):
        raise SemigroupError(f"sandwich matrix must be {n_lambda}x{n_i} (Λ × I)")
    if any(not 0 <= p < G.order for row in P for p in row):
        raise SemigroupError("sandwich entries must be group element indices")
    g = G.table
    triples = list(cartesian(range(G.order), range(n_i), range(n_lambda)))
    rows = []
    for h1, i1, l1 in triples:
        rows.append([rees_index(g[g[h1][P[l1][i2]]][h2], i1, l2, n_i, n_lambda) for h2, i2, l2 in triples])
    return Semigroup(rows, name=f"M({G.name};{n_i},{n_lambda})", check=False)


# -- isomorphism -----------------------------------------------------------------

def relabel(S: Semigroup, perm: Sequence[int]) -> Semigroup:
    """Image of ``S`` under the bijection ``x -> perm[x]``."""
    n = S.order
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    t = S.table
    return Semigroup([[perm[t[inv[a]][inv[b]]] for b in range(n)] for a in range(n)], check=False)


def find_isomorphism(S: Semigroup, T: Semigroup) -> tuple[int, ...] | None:
    """A bijection ``phi`` with ``phi(xy) = phi(x)phi(y)``, or ``None``."""
    n = S.order
    if T.order != n:
        return None
    s, t = S.table, T.table
    if sorted(power_cycle(S, x) for x in range(n)) != sorted(power_cycle(T, x) for x in range(n)):
        return None
    for perm in permutations(range(n)):
        if all(perm[s[a][b]] == t[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            return perm
    return None


def rectangular_band_factors(S: Semigroup) -> tuple[int, int, tuple[tuple[int, int], ...]]:
    """Factor a rectangular band as (left zero) × (right zero).

    Returns ``(a, b, coords)`` with ``coords[x] = (R-class, L-class)``;
    the map is checked to be an isomorphism onto ``LZ(a) × RZ(b)``.
    """
    if not is_rectangular_band(S):
        raise SemigroupError("not a rectangular band")
    gc = green_classes(S)
    a, b = max(gc.r) + 1, max(gc.l) + 1
    coords = tuple(zip(gc.r, gc.l))
    if len(set(coords)) != S.order or a * b != S.order:
        raise SemigroupError("rectangular band factorisation failed")
    for x in range(S.order):
        for y in range(S.order):
            if coords[S.table[x][y]] != (coords[x][0], coords[y][1]):
                raise SemigroupError("rectangular band factorisation failed")
    return a, b, coords


# -- Rees coordinates ------------------------------------------------------------

@dataclass(frozen=True)
class ReesDecomposition:
    """Coordinates of a completely simple semigroup as ``M(G; I, Λ; P)``.

    ``group`` is the relabelled maximal subgroup and ``group_elements``
    maps its indices back to the parent.  ``sandwich[λ][i]`` is a group
    index and ``coords[x] = (g, i, λ)`` for each parent element ``x``.
    """

    group: Semigroup
    group_elements: tuple[int, ...]
    identity: int
    n_i: int
    n_lambda: int
    sandwich: tuple[tuple[int, ...], ...]
    coords: tuple[tuple[int, int, int], ...]

    def element(self, g: int, i: int, lam: int) -> int:
        return self._inverse[(g, i, lam)]

    @property
    def _inverse(self) -> dict[tuple[int, int, int], int]:
        return {c: x for x, c in enumerate(self.coords)}

    def rees_product(self, a: tuple[int, int, int], b: tuple[int, int, int]) -> tuple[int, int, int]:
        (h1, i1, l1), (h2, i2, l2) = a, b
        g = self.group.table
        return (g[g[h1][self.sandwich[l1][i2]]][h2], i1, l2)

    def group_inverse(self, g: int) -> int:
        return inverse(self.group, g, self.identity)

    def check(self, S: Semigroup) -> None:
        """Raise :class:`ReesDecompositionError` unless this is an isomorphism onto ``S``."""
        if not is_group(self.group) or identity_element(self.group) != self.identity:
            raise ReesDecompositionError("group component is not a group")
        expected = set(cartesian(range(self.group.order), range(self.n_i), range(self.n_lambda)))
        if len(self.coords) != S.order or set(self.coords) != expected:
            raise ReesDecompositionError("coordinates are not a bijection onto G × I × Λ")
        for x in range(S.order):
            for y in range(S.order):
                if self.coords[S.table[x][y]] != self.rees_product(self.coords[x], self.coords[y]):
                    raise ReesDecompositionError(f"product rule fails at ({x}, {y})")


def rees_decompose(S: Semigroup) -> ReesDecomposition:
    if not is_completely_simple(S):
        raise NotCompletelySimpleError("semigroup is not completely simple")
    t = S.table
    n = S.order
    gc = green_classes(S)
    e = members(idempotents(S))[0]
    h_e = [x for x in range(n) if gc.h[x] == gc.h[e]]
    n_i, n_lambda = max(gc.r) + 1, max(gc.l) + 1

    # representatives r_i in R_i ∩ L_e and q_λ in R_e ∩ L_λ
    reps_r = [next(x for x in range(n) if gc.r[x] == i and gc.l[x] == gc.l[e]) for i in range(n_i)]
    reps_q = [next(x for x in range(n) if gc.r[x] == gc.r[e] and gc.l[x] == lam) for lam in range(n_lambda)]

    gindex = {x: k for k, x in enumerate(h_e)}
    try:
        group = Semigroup([[gindex[t[a][b]] for b in h_e] for a in h_e], check=False)
        sandwich = tuple(tuple(gindex[t[q][r]] for r in reps_r) for q in reps_q)
    except KeyError:
        raise ReesDecompositionError("H-class of the idempotent is not closed") from None

    coords = []
    for x in range(n):
        i, lam = gc.r[x], gc.l[x]
        r, q = reps_r[i], reps_q[lam]
        found = [k for k, g in enumerate(h_e) if t[t[r][g]][q] == x]
        if len(found) != 1:
            raise ReesDecompositionError(f"cannot place element {x} in its H-class")
        coords.append((found[0], i, lam))

    dec = ReesDecomposition(
        group=group,
        group_elements=tuple(h_e),
        identity=gindex[e],
        n_i=n_i,
        n_lambda=n_lambda,
        sandwich=sandwich,
        coords=tuple(coords),
    )
    dec.check(S)
    return dec
