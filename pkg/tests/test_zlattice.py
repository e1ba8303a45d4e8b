import random

import pytest

from fdzring.zlattice import (
    AbGroupPresentation,
    Subgroup,
    complement_of,
    det,
    hnf,
    hnf_basis,
    hnf_mod,
    hom_kernel,
    index,
    invariants,
    inverse_unimodular,
    kernel_basis,
    lattice_saturation,
    matmul,
    quotient_group,
    relative_index,
    saturation,
    snf,
    solve,
    solve_rows,
    subgroup_intersection,
    subgroup_sum,
    torsion_subgroup,
    xgcd,
)

from oracles import all_elements, bareiss_det, element_order, rational_rank, span


def rand_matrix(rng, m, n, bound=20):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def test_xgcd_bezout():
    rng = random.Random(0)
    for _ in range(500):
        a, b = rng.randint(-100, 100), rng.randint(-100, 100)
        g, x, y = xgcd(a, b)
        assert g >= 0 and a * x + b * y == g
        if a or b:
            assert a % g == 0 and b % g == 0


def test_hnf_shape_and_transform():
    rng = random.Random(1)
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = rand_matrix(rng, m, n)
        H, U = hnf(A)
        assert matmul(U, A) == H
        assert abs(bareiss_det(U)) == 1
        last = -1
        for row in H:
            if not any(row):
                continue
            c = next(i for i, v in enumerate(row) if v)
            assert c > last and row[c] > 0
            last = c
        # rows above a pivot are reduced into [0, pivot)
        for i, row in enumerate(H):
            if any(row):
                c = next(k for k, v in enumerate(row) if v)
                assert all(0 <= H[j][c] < row[c] for j in range(i))


def test_hnf_basis_is_canonical():
    rng = random.Random(2)
    for _ in range(100):
        A = rand_matrix(rng, 3, 4, 6)
        T = [[1, 0, 0], [2, 1, 0], [-1, 3, 1]]
        assert hnf_basis(matmul(T, A), 4) == hnf_basis(A, 4)


def test_hnf_mod_matches_plain_hnf():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 5)
        D = rng.randint(2, 30)
        A = rand_matrix(rng, rng.randint(0, 5), n, 40)
        full = A + [[D * int(i == j) for j in range(n)] for i in range(n)]
        assert hnf_mod(A, n, D) == hnf_basis(full, n)


def test_snf_transform_and_divisibility():
    rng = random.Random(4)
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = rand_matrix(rng, m, n)
        sd = snf(A)
        assert matmul(matmul(sd.U, A), sd.V) == sd.D
        assert abs(bareiss_det(sd.U)) == 1 and abs(bareiss_det(sd.V)) == 1
        d = sd.diagonal
        assert all(x >= 0 for x in d)
        for a, b in zip(d, d[1:]):
            assert (b == 0) or (a != 0 and b % a == 0)
        assert all(sd.D[i][j] == 0 for i in range(m) for j in range(n) if i != j)


def test_det_and_inverse():
    rng = random.Random(5)
    for _ in range(100):
        A = rand_matrix(rng, 4, 4, 9)
        assert det(A) == bareiss_det(A)
    U = [[2, 1, 0], [1, 1, 0], [0, 3, 1]]
    Ui = inverse_unimodular(U)
    assert matmul(U, Ui) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_kernel_basis_against_rank():
    rng = random.Random(6)
    for _ in range(100):
        m, n = rng.randint(1, 4), rng.randint(1, 6)
        A = rand_matrix(rng, m, n, 5)
        K = kernel_basis(A, n)
        assert len(K) == n - rational_rank(A)
        for k in K:
            assert all(sum(a * x for a, x in zip(row, k)) == 0 for row in A)
        # saturated: the kernel lattice equals its own saturation
        if K:
            assert hnf_basis(lattice_saturation(K, n), n) == hnf_basis(K, n)


def test_solve_consistent_systems():
    rng = random.Random(7)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = rand_matrix(rng, m, n, 6)
        x = [rng.randint(-5, 5) for _ in range(n)]
        b = [sum(a * v for a, v in zip(row, x)) for row in A]
        y = solve(A, b)
        assert y is not None
        assert [sum(a * v for a, v in zip(row, y)) for row in A] == b
    assert solve([[2]], [1]) is None
    assert solve_rows([[2, 0], [0, 3]], [4, 9]) == [2, 3]


def test_hom_kernel_finite_and_free_targets():
    # x -> 3x into Z/6 has kernel 2Z
    assert hom_kernel([[3]], [[6]], 1) == [[2]]
    # into Z (no relations): kernel of (x, y) -> 2x - 4y is (2, 1)
    assert hom_kernel([[2], [-4]], [], 1) == [[2, 1]]
    with pytest.raises(ValueError):
        hom_kernel([[1, 2]], [[3]], 1)


def test_saturation_membership_against_rational_rank():
    rng = random.Random(8)
    G = AbGroupPresentation(3)
    for _ in range(50):
        gens = [tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(rng.randint(1, 2))]
        S = Subgroup(G, tuple(gens))
        I = saturation(S)
        r = rational_rank(gens)
        for _ in range(20):
            x = [rng.randint(-3, 3) for _ in range(3)]
            assert I.contains(x) == (rational_rank(gens + [x]) == r)


def _random_finite_case(rng):
    while True:
        n = rng.randint(1, 3)
        periods = [rng.randint(2, 8) for _ in range(n)]
        order = 1
        for d in periods:
            order *= d
        if order <= 512:
            break
    G = AbGroupPresentation(n, tuple(tuple(d * int(i == j) for j in range(n)) for i, d in enumerate(periods)))

    def rand_sub():
        return [tuple(rng.randint(0, d - 1) for d in periods) for _ in range(rng.randint(0, 2))]

    return periods, G, rand_sub(), rand_sub()


def test_subgroup_operations_against_enumeration():
    rng = random.Random(9)
    for _ in range(100):
        periods, G, g1, g2 = _random_finite_case(rng)
        S1, S2 = Subgroup(G, tuple(g1)), Subgroup(G, tuple(g2))
        E1, E2 = span(g1, periods), span(g2, periods)
        elems = all_elements(periods)
        assert {x for x in elems if S1.contains(x)} == E1
        assert {x for x in elems if subgroup_sum(S1, S2).contains(x)} == span(g1 + g2, periods)
        assert {x for x in elems if subgroup_intersection(S1, S2).contains(x)} == E1 & E2
        assert invariants(S1.as_group()).order == len(E1)
        assert relative_index(S1, subgroup_sum(S1, S2)) == len(span(g1 + g2, periods)) // len(E1)
        assert index(S1) == len(elems) // len(E1)
        assert (S1 <= S2) == (E1 <= E2)
        Q = quotient_group(S1, subgroup_sum(S1, S2))
        assert invariants(Q).order == len(span(g1 + g2, periods)) // len(E1)
        assert saturation(S1).contains([1] * len(periods))


def test_group_invariants_against_orders():
    rng = random.Random(10)
    for _ in range(50):
        periods, G, _, _ = _random_finite_case(rng)
        inv = invariants(G)
        elems = all_elements(periods)
        assert inv.order == len(elems)
        exponent = max(element_order(x, periods) for x in elems)
        assert inv.torsion_factors[-1] == exponent if inv.torsion_factors else exponent == 1
        for a, b in zip(inv.torsion_factors, inv.torsion_factors[1:]):
            assert b % a == 0


def test_torsion_and_complement():
    G = AbGroupPresentation(3, ((2, 0, 0),))
    T = torsion_subgroup(G)
    assert invariants(T.as_group()).order == 2
    A = Subgroup(G, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    C = complement_of(T, A)
    assert subgroup_intersection(C, T).is_trivial()
    assert subgroup_sum(C, T) == A
