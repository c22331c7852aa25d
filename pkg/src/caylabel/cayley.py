"""Cayley graphs of finite semigroups and small raw graphs.

A graph is stored as a tuple of out-neighbour bitmasks: bit ``v`` of
``out[u]`` is set iff ``(u, v)`` is an edge.  Loops are ordinary edges,
but they never shorten a path and never enter a labelling constraint.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .semigroup import (
    NotCompletelySimpleError,
    Semigroup,
    SemigroupError,
    generated_subsemigroup,
    is_completely_simple,
    members,
    rees_decompose,
    restrict,
    set_product,
)


class GraphError(ValueError):
    pass


class DirectedGraphError(GraphError):
    """An operation that needs an undirected graph got a directed one."""


class _Infinity:
    """Distance between vertices in different components.

    Deliberately supports no arithmetic; only equality and display.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@dataclass(frozen=True)
class CayleyGraph:
    n: int
    out: tuple[int, ...]
    semigroup: Semigroup | None = field(default=None, compare=False)
    connection: int | None = field(default=None, compare=False)

    @property
    def is_raw(self) -> bool:
        return self.semigroup is None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.out[u])]

    def loops(self) -> int:
        return sum(1 << u for u in range(self.n) if self.out[u] >> u & 1)

    def neighbours(self, u: int) -> int:
        """Out-neighbours other than ``u`` itself."""
        return self.out[u] & ~(1 << u)


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> CayleyGraph:
    out = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
        out[u] |= 1 << v
    return CayleyGraph(n, tuple(out))


def build_cayley_graph(S: Semigroup, C: int) -> CayleyGraph:
    """``Cay(S, C)``: an edge ``(u, cu)`` for every ``u`` in ``S`` and ``c`` in ``C``."""
    if not C:
        raise GraphError("connection set must be nonempty")
    if C >> S.order:
        raise GraphError("connection set has elements outside the semigroup")
    rows = [S.table[c] for c in members(C)]
    out = []
    for u in range(S.order):
        m = 0
        for row in rows:
            m |= 1 << row[u]
        out.append(m)
    return CayleyGraph(S.order, tuple(out), semigroup=S, connection=C)


def is_undirected(g: CayleyGraph) -> bool:
    out = g.out
    for u in range(g.n):
        for v in members(out[u]):
            if not out[v] >> u & 1:
                return False
    return True


def underlying_undirected(g: CayleyGraph) -> CayleyGraph:
    out = list(g.out)
    for u in range(g.n):
        for v in members(g.out[u]):
            out[v] |= 1 << u
    return CayleyGraph(g.n, tuple(out), semigroup=g.semigroup, connection=g.connection)


# -- traversal -----------------------------------------------------------------

def reachable_set(g: CayleyGraph, x: int) -> int:
    """Vertices at the end of a directed path of length at least one from ``x``."""
    seen = 0
    frontier = g.out[x]
    while frontier & ~seen:
        new = frontier & ~seen
        seen |= new
        frontier = 0
        for v in members(new):
            frontier |= g.out[v]
    return seen


def strong_components(g: CayleyGraph) -> list[int]:
    reach = [reachable_set(g, u) | (1 << u) for u in range(g.n)]
    comps, done = [], 0
    for u in range(g.n):
        if done >> u & 1:
            continue
        comp = sum(1 << v for v in members(reach[u]) if reach[v] >> u & 1)
        comps.append(comp)
        done |= comp
    return comps


def weak_components(g: CayleyGraph) -> list[int]:
    sym = underlying_undirected(g).out
    comps, done = [], 0
    for u in range(g.n):
        if done >> u & 1:
            continue
        comp = frontier = 1 << u
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= sym[v]
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        done |= comp
    return comps


def distances(g: CayleyGraph) -> tuple[tuple, ...]:
    """All-pairs shortest path lengths; :data:`INF` across components."""
    if not is_undirected(g):
        raise DirectedGraphError("distances need an undirected graph; take underlying_undirected first")
    rows = []
    for s in range(g.n):
        d = [INF] * g.n
        d[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in members(g.neighbours(u)):
                if d[v] is INF:
                    d[v] = d[u] + 1
                    queue.append(v)
        rows.append(tuple(d))
    return tuple(rows)


def is_disjoint_union_of_completes(g: CayleyGraph, require_loops: bool = False) -> bool:
    """Every weak component is a clique (edges both ways between distinct vertices).

    With ``require_loops`` every vertex must also carry a loop.
    """
    for comp in weak_components(g):
        for u in members(comp):
            want = comp if require_loops else comp & ~(1 << u)
            have = g.out[u] if require_loops else g.neighbours(u)
            if have != want:
                return False
    return True


def is_union_of_completes_by_distance(g: CayleyGraph) -> bool:
    """Same question for undirected graphs, answered through distances in {0, 1, INF}."""
    if not is_undirected(g):
        return False
    return all(d == 0 or d == 1 or d is INF for row in distances(g) for d in row)


def component_sizes(g: CayleyGraph) -> list[int]:
    return sorted((bin(c).count("1") for c in weak_components(g)), reverse=True)


# -- undirectedness characterisation -----------------------------------------

@dataclass(frozen=True)
class UndirectedCheck:
    undirected: bool
    condition: bool
    reason: str

    @property
    def agree(self) -> bool:
        return self.undirected == self.condition


def undirected_condition(S: Semigroup, C: int) -> tuple[bool, str]:
    """The algebraic criterion for ``Cay(S, C)`` to be undirected.

    ``CS = S``, ``<C>`` completely simple with Rees coordinates
    ``M(G; I, Λ; P)``, and for each ``(g; i, λ)`` in ``C`` and each
    ``j`` in ``I`` some ``μ`` has ``(p_λj⁻¹ g⁻¹ p_μi⁻¹; j, μ)`` in ``C``.
    """
    if set_product(S, C, S.full) != S.full:
        return False, "CS != S"
    T = generated_subsemigroup(S, C)
    sub, elems = restrict(S, T)
    if not is_completely_simple(sub):
        return False, "<C> is not completely simple"
    try:
        dec = rees_decompose(sub)
    except NotCompletelySimpleError:  # pragma: no cover - guarded above
        return False, "<C> is not completely simple"
    local = {x: k for k, x in enumerate(elems)}
    in_c = {dec.coords[local[c]] for c in members(C)}
    g = dec.group.table
    inv = dec.group_inverse
    for h, i, lam in in_c:
        for j in range(dec.n_i):
            if not any(
                (g[g[inv(dec.sandwich[lam][j])][inv(h)]][inv(dec.sandwich[mu][i])], j, mu) in in_c
                for mu in range(dec.n_lambda)
            ):
                return False, f"no partner in C for ({h}; {i}, {lam}) at j={j}"
    return True, "holds"


def check_undirected_characterization(S: Semigroup, C: int) -> UndirectedCheck:
    if not C:
        raise SemigroupError("connection set must be nonempty")
    cond, reason = undirected_condition(S, C)
    return UndirectedCheck(is_undirected(build_cayley_graph(S, C)), cond, reason)


# -- text formats --------------------------------------------------------------

def parse_edge_list(text: str) -> CayleyGraph:
    """Raw graph format: vertex count, then one ``u v`` pair per directed edge."""
    lines = [(k, ln.strip()) for k, ln in enumerate(text.splitlines(), 1)]
    lines = [(k, ln) for k, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty graph document")
    k, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise GraphError(f"line {k}: expected the vertex count, got {head!r}") from None
    if n < 1:
        raise GraphError(f"line {k}: vertex count must be positive")
    edges = []
    for k, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"line {k}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {k}: non-integer vertex in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {k}: vertex out of range [0, {n})")
        edges.append((u, v))
    return graph_from_edges(n, edges)


def format_edge_list(g: CayleyGraph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def format_dot(g: CayleyGraph, name: str = "Cay", labels: Sequence[str] | None = None) -> str:
    lines = [f"digraph {name} {{"]
    for u in range(g.n):
        label = labels[u] if labels else str(u)
        lines.append(f'  {u} [label="{label}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot(text: str) -> CayleyGraph:
    """Read back the subset of DOT written by :func:`format_dot`."""
    nodes, edges = set(), []
    for raw in text.splitlines():
        line = raw.strip().rstrip(";")
        if "->" in line:
            u, v = (int(p.strip()) for p in line.split("->"))
            edges.append((u, v))
        elif line and line[0].isdigit():
            nodes.add(int(line.split()[0]))
    if not nodes:
        raise GraphError("no vertices in DOT document")
    return graph_from_edges(max(nodes) + 1, edges)
