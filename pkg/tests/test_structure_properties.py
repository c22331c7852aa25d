"""Structural equivalences checked over every small semigroup."""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caylabel.cayley import (
    INF,
    build_cayley_graph,
    check_undirected_characterization,
    distances,
    reachable_set,
    underlying_undirected,
)
from caylabel.enumeration import enumerate_semigroups
from caylabel.semigroup import (
    Semigroup,
    cyclic_group,
    direct_product,
    find_isomorphism,
    generated_subsemigroup,
    green_classes,
    is_completely_simple,
    is_left_group,
    is_left_ideal_of,
    is_left_simple,
    is_rectangular_band,
    is_right_cancellative,
    is_right_group,
    is_right_ideal_of,
    left_zero_band,
    rectangular_band_factors,
    rees_decompose,
    rees_matrix_semigroup,
    restrict,
    right_zero_band,
    set_product,
)

GROUPS = {
    1: [cyclic_group(1)],
    2: [cyclic_group(2)],
    3: [cyclic_group(3)],
    4: [cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2))],
}


def left_group_models(n):
    for g in GROUPS:
        if n % g == 0:
            for G in GROUPS[g]:
                yield direct_product(G, left_zero_band(n // g))


def test_left_group_equivalences(small_semigroups):
    for S in small_semigroups:
        a = is_left_group(S)
        b = is_left_simple(S) and is_right_cancellative(S)
        c = any(find_isomorphism(S, M) is not None for M in left_group_models(S.order))
        assert a == b == c, S


def rectangular_bands_up_to(n):
    for a in range(1, n + 1):
        for b in range(1, n // a + 1):
            yield a, b, direct_product(left_zero_band(a), right_zero_band(b))


def test_rectangular_bands_factor():
    for a, b, B in rectangular_bands_up_to(6):
        got_a, got_b, _ = rectangular_band_factors(B)
        assert (got_a, got_b) == (a, b)
        r = range(B.order)
        assert all(B(B(x, y), z) == B(x, z) for x in r for y in r for z in r)


def test_rectangular_bands_in_the_small_universe(small_semigroups):
    for S in small_semigroups:
        if is_rectangular_band(S):
            a, b, _ = rectangular_band_factors(S)
            assert find_isomorphism(S, direct_product(left_zero_band(a), right_zero_band(b))) is not None


def completely_simple_models():
    for G in [cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4),
              direct_product(cyclic_group(2), cyclic_group(2))]:
        for n_i in range(1, 4):
            for n_l in range(1, 4):
                if G.order * n_i * n_l > 8:
                    continue
                for P in product(range(G.order), repeat=n_i * n_l):
                    rows = [list(P[lam * n_i:(lam + 1) * n_i]) for lam in range(n_l)]
                    yield rees_matrix_semigroup(G, n_i, n_l, rows)


def test_rees_structure_of_completely_simple_semigroups():
    count = 0
    for S in completely_simple_models():
        count += 1
        dec = rees_decompose(S)
        dec.check(S)
        gc = green_classes(S)
        for col in gc.classes("l"):
            assert is_left_ideal_of(S, col, S.full)
            assert is_left_group(restrict(S, col)[0])
        for row in gc.classes("r"):
            assert is_right_ideal_of(S, row, S.full)
            assert is_right_group(restrict(S, row)[0])
        for t in range(S.order):
            assert set_product(S, S.full, 1 << t) == gc.classes("l")[gc.l[t]]
            assert set_product(S, 1 << t, S.full) == gc.classes("r")[gc.r[t]]
    assert count > 100


def test_rees_decomposition_in_the_small_universe(small_semigroups):
    for S in small_semigroups:
        if is_completely_simple(S):
            rees_decompose(S).check(S)


def test_undirected_characterisation_agrees(small_semigroups):
    for S in small_semigroups:
        for C in range(1, 1 << S.order):
            assert check_undirected_characterization(S, C).agree, (S, C)


def test_reachable_set_is_coset(small_semigroups):
    for S in small_semigroups:
        for C in range(1, 1 << S.order):
            g = build_cayley_graph(S, C)
            T = generated_subsemigroup(S, C)
            assert all(reachable_set(g, x) == set_product(S, T, 1 << x) for x in range(S.order))


# -- randomised properties -----------------------------------------------------------

ORDER3 = list(enumerate_semigroups(3))
ORDER4 = list(enumerate_semigroups(4))


@given(st.sampled_from(ORDER4), st.integers(1, 15), st.integers(1, 15))
@settings(max_examples=300, deadline=None)
def test_generated_subsemigroup_is_a_closure(S, A, B):
    gA = generated_subsemigroup(S, A)
    assert generated_subsemigroup(S, gA) == gA
    assert gA & A == A
    assert generated_subsemigroup(S, A | B) & gA == gA


@given(st.sampled_from(ORDER4), st.integers(1, 15))
@settings(max_examples=300, deadline=None)
def test_distances_form_a_metric(S, C):
    d = distances(underlying_undirected(build_cayley_graph(S, C)))
    n = S.order
    for u in range(n):
        assert d[u][u] == 0
        for v in range(n):
            assert d[u][v] == d[v][u]
            for w in range(n):
                if INF not in (d[u][v], d[v][w], d[u][w]):
                    assert d[u][w] <= d[u][v] + d[v][w]


@pytest.mark.parametrize("S", ORDER3[:40])
def test_isomorphism_is_found_for_relabelled_copies(S):
    perm = (2, 0, 1)
    inv = [perm.index(x) for x in range(3)]
    T = Semigroup([[perm[S.table[inv[a]][inv[b]]] for b in range(3)] for a in range(3)])
    phi = find_isomorphism(S, T)
    assert phi is not None
    assert all(phi[S(a, b)] == T(phi[a], phi[b]) for a in range(3) for b in range(3))
