"""Exhaustive small-universe checks of the span characterisations.

Each check compares a structural property (of a semigroup, of a
semigroup with a connection set, or of a graph) against the matching
condition on minimum spans evaluated over a finite grid of separation
vectors.  The conditions of the form "there exists a function F" are
not decidable as stated; they sit between the structural property and
the explicit ``(|Cc| - 1) k1`` formula in a cycle of implications, so
the explicit formula on the grid is what gets checked.

The three conditions of :func:`verify_theorem3` come from separate code
paths: semigroup predicates, graph predicates and the exact solver.
"""

from __future__ import annotations

import json
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Iterator, Sequence

from .cayley import (
    CayleyGraph,
    DirectedGraphError,
    build_cayley_graph,
    graph_from_edges,
    is_disjoint_union_of_completes,
    is_undirected,
    weak_components,
)
from .enumeration import HARD_MAX_ORDER, check_order, enumerate_semigroups
from .labelling import MAX_ELL, DEFAULT_SOLVER_CAP, DistanceConstraint, SolverCapError, exact_span
from .semigroup import (
    Semigroup,
    SemigroupError,
    enumerate_subsemigroups,
    generated_subsemigroup,
    is_closed,
    is_combinatorial,
    is_completely_simple,
    is_left_group,
    is_left_ideal_of,
    is_right_zero_band,
    members,
    restrict,
    set_product,
)

THEOREMS = ("1", "2", "3", "4")

SURROGATE_NOTE = (
    "existential conditions (some F with span <= F(k1) or = F(k1)) are implied by the "
    "explicit formula and imply the structural side, so the explicit formula over the grid "
    "is checked in their place"
)


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: dict):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class KGrid:
    """Separation vectors to test: every length in ``ells``, every entry from ``values``."""

    ells: tuple[int, ...] = (2, 3)
    values: tuple[int, ...] = (1, 2, 3)

    def __post_init__(self):
        object.__setattr__(self, "ells", tuple(sorted(set(self.ells))))
        object.__setattr__(self, "values", tuple(sorted(set(self.values))))
        if not self.ells or not self.values:
            raise ValueError("grid must be nonempty")
        if any(ell < 2 or ell > MAX_ELL for ell in self.ells):
            raise ValueError(f"grid lengths must lie in [2, {MAX_ELL}]")
        if any(k < 1 for k in self.values):
            raise ValueError("grid separations must be positive")

    @classmethod
    def parse(cls, text: str) -> "KGrid":
        """Parse ``"ell=2,3;k=1,2,3"`` (either part may be omitted)."""
        fields = {}
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            key, sep, val = part.partition("=")
            if not sep or key.strip() not in ("ell", "k"):
                raise ValueError(f"bad grid component {part!r}")
            try:
                fields[key.strip()] = tuple(int(v) for v in val.split(",") if v.strip())
            except ValueError:
                raise ValueError(f"bad grid component {part!r}") from None
        return cls(fields.get("ell", (2, 3)), fields.get("k", (1, 2, 3)))

    def kappas(self) -> list[DistanceConstraint]:
        return [DistanceConstraint(ks) for ell in self.ells for ks in cartesian(self.values, repeat=ell)]

    def __str__(self) -> str:
        return f"ell={','.join(map(str, self.ells))};k={','.join(map(str, self.values))}"


@dataclass
class VerificationReport:
    theorem: str
    universe: str
    checked: int = 0
    confirmed: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    seed: int | None = None
    elapsed: float = 0.0
    effort: Counter = field(default_factory=Counter)
    details: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.confirmed == self.checked

    def record(self, agreed: bool, counterexample: dict | None = None) -> None:
        self.checked += 1
        if agreed:
            self.confirmed += 1
        else:
            self.counterexamples.append(counterexample or {})

    def merge(self, other: "VerificationReport") -> None:
        self.checked += other.checked
        self.confirmed += other.confirmed
        self.counterexamples.extend(other.counterexamples)
        self.effort.update(other.effort)

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "universe": self.universe,
            "checked": self.checked,
            "confirmed": self.confirmed,
            "counterexamples": self.counterexamples,
            "seed": self.seed,
            "elapsed": round(self.elapsed, 3),
            "effort": dict(sorted(self.effort.items())),
        }
        if self.details:
            out["details"] = self.details
        if self.notes:
            out["notes"] = self.notes
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            theorem=data["theorem"],
            universe=data["universe"],
            checked=data["checked"],
            confirmed=data["confirmed"],
            counterexamples=list(data["counterexamples"]),
            seed=data.get("seed"),
            elapsed=data.get("elapsed", 0.0),
            effort=Counter(data.get("effort", {})),
            details=data.get("details", {}),
            notes=list(data.get("notes", [])),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)

    def summary(self) -> str:
        status = "OK" if self.ok else "COUNTEREXAMPLES"
        return (f"theorem {self.theorem} [{self.universe}]: checked={self.checked} "
                f"confirmed={self.confirmed} counterexamples={len(self.counterexamples)} {status}")


# -- spans ---------------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _span_cached(n: int, adjacency: tuple[int, ...], ks: tuple[int, ...]) -> int:
    return exact_span(CayleyGraph(n, adjacency), DistanceConstraint(ks), fast_path=False).value


def solved_span(g: CayleyGraph, kappa: DistanceConstraint) -> int:
    """Exact span through the general solver (no union-of-completes shortcut)."""
    if not is_undirected(g):
        raise DirectedGraphError("span of a directed graph")
    loopless = tuple(g.out[u] & ~(1 << u) for u in range(g.n))
    return _span_cached(g.n, loopless, kappa.ks)


def _table(S: Semigroup) -> list[list[int]]:
    return [list(r) for r in S.table]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _check_cap(S: Semigroup, cap: int | None) -> None:
    check_order(S.order, HARD_MAX_ORDER if cap is None else cap)


# -- Theorem 1: combinatorial semigroups ---------------------------------------

def span_formula_failure(T: Semigroup, C: int, g: CayleyGraph, grid: KGrid) -> tuple[set[int], dict | None]:
    """Elements ``c`` of ``C`` for which some grid span differs from ``(|Cc| - 1) k1``.

    Returns the failing ``c`` set and a description of the first failure.
    """
    cc = {c: _popcount(set_product(T, C, 1 << c)) for c in members(C)}
    bad: set[int] = set()
    first = None
    for kappa in grid.kappas():
        got = solved_span(g, kappa)
        for c, size in cc.items():
            want = (size - 1) * kappa.k1
            if got != want:
                bad.add(c)
                if first is None:
                    first = {"kappa": str(kappa), "c": c, "expected": want, "got": got}
    return bad, first


def verify_theorem1(S: Semigroup, grid: KGrid | None = None, cap: int | None = None) -> VerificationReport:
    """Combinatorial ⟺ every undirected ``Cay(T, C)`` (T ≤ S) has span ``(|Cc| - 1) k1``.

    The strong form (every ``c`` in ``C``) decides the instance; the weak
    form (some fixed ``c``) is tallied alongside and must agree.
    """
    grid = grid or KGrid()
    _check_cap(S, cap)
    start = time.perf_counter()
    rep = VerificationReport("1", f"semigroup of order {S.order}", notes=[SURROGATE_NOTE])
    structural = is_combinatorial(S)
    strong = weak = True
    witness = None
    for T in enumerate_subsemigroups(S):
        sub, elems = restrict(S, T)
        for C in range(1, 1 << sub.order):
            g = build_cayley_graph(sub, C)
            rep.effort["cayley_graphs"] += 1
            if not is_undirected(g):
                continue
            rep.effort["undirected"] += 1
            bad, first = span_formula_failure(sub, C, g, grid)
            if bad:
                strong = False
                if witness is None:
                    witness = {
                        "subsemigroup": elems,
                        "connectionSet": [elems[c] for c in members(C)],
                        **first,
                        "c": elems[first["c"]],
                    }
            if bad == set(members(C)):
                weak = False
    rep.effort["strong_form_holds"] += strong
    rep.effort["weak_form_holds"] += weak
    rep.details = {"combinatorial": structural, "span_condition": strong, "weak_span_condition": weak}
    if witness:
        rep.details["witness"] = witness
    agreed = structural == strong == weak
    rep.record(agreed, None if agreed else {
        "semigroupTable": _table(S),
        "connectionSet": witness["connectionSet"] if witness else None,
        "kappa": witness["kappa"] if witness else None,
        "expected": {"combinatorial": structural},
        "got": {"span_condition": strong, "weak_span_condition": weak},
    })
    rep.elapsed = time.perf_counter() - start
    return rep


# -- Theorem 2: right zero bands ------------------------------------------------

def verify_theorem2(S: Semigroup, grid: KGrid | None = None, cap: int | None = None) -> VerificationReport:
    """Right zero band ⟺ every ``Cay(S, C)`` is undirected with span ``(|Cc| - 1) k1``."""
    grid = grid or KGrid()
    _check_cap(S, cap)
    start = time.perf_counter()
    rep = VerificationReport("2", f"semigroup of order {S.order}", notes=[SURROGATE_NOTE])
    structural = is_right_zero_band(S)
    condition = True
    witness = None
    for C in range(1, 1 << S.order):
        g = build_cayley_graph(S, C)
        rep.effort["cayley_graphs"] += 1
        if not is_undirected(g):
            condition = False
            witness = {"connectionSet": members(C), "reason": "Cayley graph is directed"}
            break
        bad, first = span_formula_failure(S, C, g, grid)
        if bad:
            condition = False
            witness = {"connectionSet": members(C), **first}
            break
    rep.details = {"right_zero_band": structural, "span_condition": condition}
    if witness:
        rep.details["witness"] = witness
    agreed = structural == condition
    rep.record(agreed, None if agreed else {
        "semigroupTable": _table(S),
        "connectionSet": witness["connectionSet"] if witness else None,
        "kappa": witness.get("kappa") if witness else None,
        "expected": {"right_zero_band": structural},
        "got": {"span_condition": condition},
    })
    rep.elapsed = time.perf_counter() - start
    return rep


# -- Theorem 3: unions of complete graphs ---------------------------------------

def structural_condition(S: Semigroup, C: int) -> tuple[bool, str]:
    """``CS = S``, ``<C>`` completely simple, each ``Cc`` a left group and a left ideal of ``<C>``."""
    if set_product(S, C, S.full) != S.full:
        return False, "CS != S"
    T = generated_subsemigroup(S, C)
    sub, _ = restrict(S, T)
    if not is_completely_simple(sub):
        return False, "<C> is not completely simple"
    for c in members(C):
        cc = set_product(S, C, 1 << c)
        if not is_closed(S, cc) or not is_left_group(restrict(S, cc)[0]):
            return False, f"Cc is not a left group for c={c}"
        if not is_left_ideal_of(S, cc, T):
            return False, f"Cc is not a left ideal of <C> for c={c}"
    return True, "holds"


def span_condition(S: Semigroup, C: int, grid: KGrid) -> tuple[bool, dict | None]:
    g = build_cayley_graph(S, C)
    if not is_undirected(g):
        return False, {"reason": "Cayley graph is directed"}
    bad, first = span_formula_failure(S, C, g, grid)
    return not bad, first


def verify_theorem3(S: Semigroup, C: int, grid: KGrid | None = None, cap: int | None = None) -> VerificationReport:
    grid = grid or KGrid()
    _check_cap(S, cap)
    if not C:
        raise SemigroupError("connection set must be nonempty")
    start = time.perf_counter()
    rep = VerificationReport("3", f"order {S.order}, C={members(C)}", notes=[SURROGATE_NOTE])
    a, reason = structural_condition(S, C)
    b = is_disjoint_union_of_completes(build_cayley_graph(S, C), require_loops=True)
    c, span_info = span_condition(S, C, grid)
    rep.details = {"structural": a, "structural_reason": reason, "union_of_completes": b, "span_condition": c}
    if span_info:
        rep.details["span_witness"] = span_info
    agreed = a == b == c
    rep.record(agreed, None if agreed else {
        "semigroupTable": _table(S),
        "connectionSet": members(C),
        "kappa": span_info.get("kappa") if span_info else None,
        "expected": {"structural": a},
        "got": {"union_of_completes": b, "span_condition": c},
    })
    rep.elapsed = time.perf_counter() - start
    return rep


def verify_theorem3_all(S: Semigroup, grid: KGrid | None = None, cap: int | None = None) -> VerificationReport:
    """:func:`verify_theorem3` for every nonempty connection set of ``S``."""
    grid = grid or KGrid()
    rep = VerificationReport("3", f"semigroup of order {S.order}, all connection sets")
    for C in range(1, 1 << S.order):
        one = verify_theorem3(S, C, grid, cap)
        rep.merge(one)
        rep.effort["structural_true"] += one.details["structural"]
        rep.elapsed += one.elapsed
    return rep


# -- Theorem 4: arbitrary graphs -----------------------------------------------

def verify_theorem4(g: CayleyGraph, grid: KGrid | None = None, probe: bool = True,
                    cap: int = DEFAULT_SOLVER_CAP) -> VerificationReport:
    """Union of complete graphs ⟺ span equals ``(n_max - 1) k1`` independently of ``k2..kℓ``.

    Beyond the grid, ``probe`` adds the separation vector
    ``(k1, F(k1) + 1, 1, ...)`` with ``F(k1) = (n_max - 1) k1`` for the
    smallest grid ``k1``: a pair at distance 2 then forces a span above
    ``F(k1)``.  The probe is skipped once the grid already found a witness.
    """
    grid = grid or KGrid()
    if not is_undirected(g):
        raise DirectedGraphError("theorem 4 concerns undirected graphs")
    if g.n > cap:
        raise SolverCapError(f"{g.n} vertices exceeds the solver cap of {cap}")
    start = time.perf_counter()
    rep = VerificationReport("4", f"graph on {g.n} vertices")
    union = is_disjoint_union_of_completes(g, require_loops=False)
    n_max = max(_popcount(c) for c in weak_components(g))
    kappas = grid.kappas()
    if probe:
        k1 = min(grid.values)
        pad = (1,) * (grid.ells[0] - 2)
        kappas.append(DistanceConstraint((k1, (n_max - 1) * k1 + 1) + pad))
    condition = True
    witness = None
    per_k1: dict[int, set[int]] = {}
    for idx, kappa in enumerate(kappas):
        if witness is not None and idx >= len(kappas) - probe:
            break
        got = solved_span(g, kappa)
        rep.effort["span_solves"] += 1
        per_k1.setdefault(kappa.k1, set()).add(got)
        want = (n_max - 1) * kappa.k1
        if got != want and witness is None:
            condition = False
            witness = {"kappa": str(kappa), "expected": want, "got": got}
    rep.details = {
        "union_of_completes": union,
        "span_condition": condition,
        "k2_independent": all(len(v) == 1 for v in per_k1.values()),
        "n_max": n_max,
    }
    if witness:
        rep.details["witness"] = witness
    agreed = union == condition
    rep.record(agreed, None if agreed else {
        "semigroupTable": None,
        "graph": g.edges(),
        "vertices": g.n,
        "connectionSet": None,
        "kappa": witness["kappa"] if witness else None,
        "expected": {"union_of_completes": union},
        "got": {"span_condition": condition},
    })
    rep.elapsed = time.perf_counter() - start
    return rep


def all_raw_graphs(n: int) -> Iterator[CayleyGraph]:
    """Every loopless undirected graph on ``n`` labelled vertices."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for mask in range(1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
        yield graph_from_edges(n, edges + [(v, u) for u, v in edges])


def random_graphs(count: int, seed: int, sizes: Sequence[int] = (6, 7, 8), p: float = 0.4) -> Iterator[CayleyGraph]:
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.choice(list(sizes))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        yield graph_from_edges(n, edges + [(v, u) for u, v in edges])


# -- campaigns -------------------------------------------------------------------

def _semigroup_job(args) -> dict[str, dict]:
    table, theorems, grid = args
    S = Semigroup(table, check=False)
    out = {}
    if "1" in theorems:
        out["1"] = verify_theorem1(S, grid).to_dict()
    if "2" in theorems:
        out["2"] = verify_theorem2(S, grid).to_dict()
    if "3" in theorems:
        out["3"] = verify_theorem3_all(S, grid).to_dict()
    return out


def _graph_job(args) -> dict:
    n, adjacency, grid, probe = args
    return verify_theorem4(CayleyGraph(n, adjacency), grid, probe).to_dict()


def _run_jobs(fn, jobs: Iterable, workers: int):
    if workers <= 1:
        yield from map(fn, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, jobs, chunksize=32)


def run_campaign(
    order_cap: int = 4,
    grid: KGrid | None = None,
    theorems: Iterable[str] = ("1", "2", "3"),
    workers: int | None = None,
    fail_fast: bool = False,
    seed: int = 0,
    dedup: str = "none",
    random_count: int = 1000,
    raw_max_order: int = 5,
    probe: bool = True,
    time_budget: float | None = None,
) -> dict[str, VerificationReport]:
    """Run the selected checks over every semigroup of order ``<= order_cap``.

    Theorem 4 instead runs over all graphs with ``<= raw_max_order``
    vertices plus ``random_count`` seeded random graphs on 6-8 vertices.
    Results are merged in instance order, so reports are deterministic.
    """
    grid = grid or KGrid()
    theorems = tuple(sorted({str(t) for t in theorems}))
    if not set(theorems) <= set(THEOREMS):
        raise ValueError(f"unknown theorem selection {theorems}")
    if order_cap > 4 and dedup != "iso":
        raise SemigroupError("orders above 4 require dedup='iso'")
    if order_cap > 4 and time_budget is None:
        raise SemigroupError("orders above 4 require a time budget")
    workers = workers if workers is not None else (os.cpu_count() or 1)
    start = time.perf_counter()
    universe = f"semigroups of order <= {order_cap} ({'labelled' if dedup == 'none' else 'up to isomorphism'}), grid {grid}"
    reports = {t: VerificationReport(t, universe, seed=seed) for t in theorems if t != "4"}
    for rep in reports.values():
        rep.notes.append(SURROGATE_NOTE)

    def over_budget() -> bool:
        return time_budget is not None and time.perf_counter() - start > time_budget

    def finish() -> dict[str, VerificationReport]:
        for rep in reports.values():
            rep.elapsed = time.perf_counter() - start
        return reports

    sg_theorems = tuple(t for t in theorems if t != "4")
    if sg_theorems:
        for n in range(1, order_cap + 1):
            jobs = ((S.table, sg_theorems, grid) for S in enumerate_semigroups(n, dedup, cap=max(order_cap, 1)))
            for res in _run_jobs(_semigroup_job, jobs, workers):
                for t, d in res.items():
                    reports[t].merge(VerificationReport.from_dict(d))
                    reports[t].effort[f"semigroups_order_{n}"] += 1
                if fail_fast and any(r.counterexamples for r in reports.values()):
                    return finish()
                if over_budget():
                    raise BudgetExceeded("time budget exceeded", finish())

    if "4" in theorems:
        rep = VerificationReport(
            "4",
            f"all graphs on <= {raw_max_order} vertices + {random_count} random graphs on 6-8 vertices "
            f"(edge probability 0.4), grid {grid}{' + escape probe' if probe else ''}",
            seed=seed,
        )
        reports["4"] = rep
        graphs = [g for n in range(1, raw_max_order + 1) for g in all_raw_graphs(n)]
        graphs += list(random_graphs(random_count, seed))
        jobs = ((g.n, g.out, grid, probe) for g in graphs)
        for d in _run_jobs(_graph_job, jobs, workers):
            one = VerificationReport.from_dict(d)
            rep.merge(one)
            rep.effort["graphs"] += 1
            if fail_fast and rep.counterexamples:
                return finish()
            if over_budget():
                raise BudgetExceeded("time budget exceeded", finish())
    return finish()


def aggregate(reports: dict[str, VerificationReport]) -> VerificationReport:
    out = VerificationReport(",".join(sorted(reports)), "; ".join(r.universe for r in reports.values()))
    for rep in reports.values():
        out.merge(rep)
        out.elapsed = max(out.elapsed, rep.elapsed)
        out.seed = rep.seed
    return out
