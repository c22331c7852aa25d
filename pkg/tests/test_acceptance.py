"""Acceptance criteria 1-9, one printed PASS/FAIL line each.

Every check uses exact integer equality.
"""

from itertools import product

import pytest

from caylabel.cayley import (
    build_cayley_graph,
    check_undirected_characterization,
    component_sizes,
    graph_from_edges,
    is_disjoint_union_of_completes,
    reachable_set,
    underlying_undirected,
)
from caylabel.cli import main
from caylabel.enumeration import enumerate_semigroups
from caylabel.labelling import (
    exact_span,
    formula_left_zero_band,
    formula_zero_semigroup,
    upper_bound_trivial,
)
from caylabel.semigroup import (
    adjoin_zero,
    cyclic_group,
    direct_product,
    find_isomorphism,
    generated_subsemigroup,
    is_completely_simple,
    is_left_group,
    is_left_ideal_of,
    is_left_simple,
    is_rectangular_band,
    is_right_cancellative,
    left_zero_band,
    rectangular_band_factors,
    rees_decompose,
    restrict,
    right_zero_band,
    set_product,
    to_mask,
    zero_element,
)
from caylabel.verify import KGrid, run_campaign, solved_span
from caylabel.labelling import DistanceConstraint

import oracles

KS = list(product((1, 2, 3), repeat=2))


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)


# instances shared by criteria 1-3: (|V|, graph, formula) per family

def left_zero_band_instances():
    for b in range(2, 7):
        B = left_zero_band(b)
        for C in range(1, 1 << b):
            g = underlying_undirected(build_cayley_graph(B, C))
            yield f"|B|={b} C={bin(C)}", g, lambda k1, k2, b=b, c=bin(C).count("1"): formula_left_zero_band(b, c, k1, k2)


def zero_semigroup_instances():
    for n in range(1, 6):
        for S in enumerate_semigroups(n, cap=5):
            S0 = adjoin_zero(S)
            theta = zero_element(S0)
            g = underlying_undirected(build_cayley_graph(S0, 1 << theta))
            yield f"S={[list(r) for r in S.table]}", g, lambda k1, k2, m=S0.order: formula_zero_semigroup(m, k1, k2)


def span(g, k1, k2):
    return solved_span(g, DistanceConstraint((k1, k2)))


def formula_mismatches(instances):
    checked, bad = 0, []
    for name, g, formula in instances:
        for k1, k2 in KS:
            checked += 1
            got, want = span(g, k1, k2), formula(k1, k2)
            if got != want:
                bad.append((name, (k1, k2), got, want))
    return checked, bad


def describe(checked, bad):
    if not bad:
        return f"{checked} cases agree"
    kinds = sorted({ks for _, ks, _, _ in bad})
    name, ks, got, want = bad[0]
    return (f"{len(bad)}/{checked} cases differ, at (k1,k2) in {kinds}; "
            f"first: {name} k={ks} exact={got} formula={want}")


def test_criterion_1_left_zero_band_formula(capsys):
    checked, bad = formula_mismatches(left_zero_band_instances())
    report(capsys, 1, not bad, describe(checked, bad))
    assert not bad


def test_criterion_2_zero_semigroup_formula(capsys):
    checked, bad = formula_mismatches(zero_semigroup_instances())
    report(capsys, 2, not bad, describe(checked, bad))
    assert not bad


def test_criterion_3_trivial_bound_is_sharp(capsys):
    checked, bad = 0, []
    for family in (left_zero_band_instances(), zero_semigroup_instances()):
        for name, g, _ in family:
            for k in (1, 2, 3):
                checked += 1
                got = span(g, k, k)
                if not got == (g.n - 1) * k == upper_bound_trivial(g, (k, k))[0]:
                    bad.append((name, k, got))
    report(capsys, 3, not bad, f"{checked} cases with k1=k2" + (f", first failure {bad[0]}" if bad else ""))
    assert not bad


def test_criterion_4_theorem3(capsys):
    rep = run_campaign(order_cap=4, grid=KGrid((2,), (1, 2, 3)), theorems="3")["3"]
    counted = rep.effort["semigroups_order_4"]
    ok = rep.ok and counted == 3492
    report(capsys, 4, ok, f"{rep.checked} (S, C) pairs, {len(rep.counterexamples)} counterexamples, "
                          f"{counted} semigroups of order 4")
    assert ok


def test_criterion_5_theorems_1_and_2(capsys):
    reps = run_campaign(order_cap=4, grid=KGrid((2,), (1, 2, 3)), theorems="12")
    ok = all(r.ok for r in reps.values()) and all(r.effort["semigroups_order_4"] == 3492 for r in reps.values())
    detail = "; ".join(f"theorem {t}: {r.checked} semigroups, {len(r.counterexamples)} counterexamples"
                       for t, r in sorted(reps.items()))
    report(capsys, 5, ok, detail)
    assert ok


def test_criterion_6_theorem4(capsys):
    rep = run_campaign(theorems="4", seed=0, random_count=1000, raw_max_order=5)["4"]
    ok = rep.ok and rep.checked == 1099 + 1000
    report(capsys, 6, ok, f"{rep.checked} graphs, {len(rep.counterexamples)} counterexamples")
    assert ok


def _cli_bytes(capsys, argv):
    main(argv)
    return capsys.readouterr().out.encode()


def test_criterion_7_paper_counterexamples(capsys):
    problems = []
    ex1 = ["graph", "--gen", "cyclic:3", "-c", "0 1", "--json"]
    ex2 = ["graph", "--gen", "product:cyclic:2+leftzero:2", "-c", "2 3", "--json"]
    ex3 = ["graph", "--gen", "adjoin-zero:leftzero:3", "-c", "0 1 2", "--json"]
    for argv in (ex1, ex2, ex3):
        if _cli_bytes(capsys, argv) != _cli_bytes(capsys, argv):
            problems.append(f"output of {' '.join(argv)} is not byte-stable")

    g1 = build_cayley_graph(cyclic_group(3), to_mask([0, 1]))
    if is_disjoint_union_of_completes(g1, require_loops=True):
        problems.append("example 1 is a union of completes")

    S2 = direct_product(cyclic_group(2), left_zero_band(2))
    C2 = to_mask([2, 3])
    if is_disjoint_union_of_completes(build_cayley_graph(S2, C2), require_loops=True):
        problems.append("example 2 is a union of completes")
    cc = set_product(S2, C2, 1 << 2)
    if cc != to_mask([0, 1]) or not is_left_group(restrict(S2, cc)[0]):
        problems.append("example 2: Cc is not the expected left group")
    if is_left_ideal_of(S2, cc, generated_subsemigroup(S2, C2)):
        problems.append("example 2: Cc is a left ideal")

    for b in (2, 3, 4):
        g3 = build_cayley_graph(adjoin_zero(left_zero_band(b)), (1 << b) - 1)
        if component_sizes(g3) != [b, 1]:
            problems.append(f"example 3 with |B|={b}: components {component_sizes(g3)}")
    report(capsys, 7, not problems, "; ".join(problems) or "examples 1-3 reproduced, outputs byte-stable")
    assert not problems


def test_criterion_8_solver_matches_brute_force(capsys):
    oracle, checked, bad = {}, 0, []
    for n in range(1, 6):
        for edges in oracles.undirected_graphs(n):
            g = graph_from_edges(n, edges + [(v, u) for u, v in edges])
            key = oracles.canonical_edges(n, edges)
            for ks in KS:
                if (key, ks) not in oracle:
                    oracle[key, ks] = oracles.brute_span(n, edges, ks)
                checked += 1
                got = exact_span(g, ks, fast_path=False).value
                if got != oracle[key, ks]:
                    bad.append((n, edges, ks, got, oracle[key, ks]))
    report(capsys, 8, not bad, f"{checked} (graph, k) cases over {len({k for k, _ in oracle})} isomorphism classes"
                               + (f", first mismatch {bad[0]}" if bad else ""))
    assert not bad


GROUPS = [cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4),
          direct_product(cyclic_group(2), cyclic_group(2))]


def test_criterion_9_property_suites(capsys):
    failures = []
    counts = dict.fromkeys(["undirected", "reachable", "rees", "left_group", "rect_band"], 0)
    for n in range(1, 5):
        for S in enumerate_semigroups(n):
            for C in range(1, 1 << n):
                counts["undirected"] += 1
                if not check_undirected_characterization(S, C).agree:
                    failures.append(("undirected", S.table, C))
                g = build_cayley_graph(S, C)
                T = generated_subsemigroup(S, C)
                for x in range(n):
                    counts["reachable"] += 1
                    if reachable_set(g, x) != set_product(S, T, 1 << x):
                        failures.append(("reachable", S.table, C, x))
            if is_completely_simple(S):
                counts["rees"] += 1
                try:
                    rees_decompose(S).check(S)
                except Exception as exc:  # any failure is a finding
                    failures.append(("rees", S.table, str(exc)))
            counts["left_group"] += 1
            models = [direct_product(G, left_zero_band(n // G.order)) for G in GROUPS if n % G.order == 0]
            a = is_left_group(S)
            b = is_left_simple(S) and is_right_cancellative(S)
            c = any(find_isomorphism(S, M) is not None for M in models)
            if not a == b == c:
                failures.append(("left_group", S.table))
            if is_rectangular_band(S):
                counts["rect_band"] += 1
                p, q, _ = rectangular_band_factors(S)
                if find_isomorphism(S, direct_product(left_zero_band(p), right_zero_band(q))) is None:
                    failures.append(("rect_band", S.table))
    detail = ", ".join(f"{k}={v}" for k, v in counts.items())
    report(capsys, 9, not failures, f"{detail}; {len(failures)} failures")
    assert not failures
