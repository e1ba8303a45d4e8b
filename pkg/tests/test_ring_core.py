import random

import pytest

from fdzring.ring_core import (
    PresentationError,
    RingPresentation,
    ScalarRingPresentation,
    change_basis,
    check_isomorphism,
    cyclic_ring,
    direct_product,
    integer_algebra,
    integers_ring,
    iso_by_constants,
    module_over_itself,
    normalize,
    presentation_from_record,
    quotient_ring,
    structure_constants,
    subring_presentation,
    validate,
    validate_algebra,
    validate_module,
    validate_scalar_ring,
)
from fdzring.verdict import VerdictKind
from fdzring.zlattice import Subgroup, inverse_unimodular

from corpus import corpus, r1, random_unimodular, two_sided_ideal, z_ring
from oracles import ring_elements


def test_constructor_rejects_bad_input():
    with pytest.raises(PresentationError):
        RingPresentation(2, [0])
    with pytest.raises(PresentationError):
        RingPresentation(1, [-1])
    with pytest.raises(PresentationError, match="k=1 for i=1"):
        RingPresentation(2, [2, 0], {0: {0: 1}})
    with pytest.raises(PresentationError, match="infinite period"):
        RingPresentation(2, [0, 0], {0: {1: 1}})


def test_validate_reports_incompatible_products():
    # u1 has period 2 but u1 u1 = u2 is free: 2 (u1 u1) = 2 u2 != 0
    R = RingPresentation(2, [2, 0], mult={(0, 0): {1: 1}})
    diags = validate(R)
    assert diags and "u1 times u1" in diags[0]
    assert validate(r1()) == []


def test_ring_element_arithmetic():
    R = r1()
    u1, u2, t = (R.element(v) for v in R.basis())
    assert (u1 * u1).coords == t.coords
    assert (2 * t).is_zero()
    assert (u1 + u2 - u2).coords == u1.coords
    assert (u2 * u1).is_zero()


def test_change_basis_gives_isomorphic_ring():
    rng = random.Random(0)
    for R in corpus(1, 25):
        T = random_unimodular(rng, R.rank)
        S = change_basis(R, T)
        assert validate(S) == []
        # generator i of S is the element T[i] of R
        assert check_isomorphism(S, R, T)
        Ti = inverse_unimodular(T)
        assert check_isomorphism(R, S, Ti)


def test_change_basis_rejects_non_generating_rows():
    with pytest.raises(PresentationError):
        change_basis(z_ring(), [[2]])


def test_check_isomorphism_rejects_wrong_maps():
    R = r1()
    assert not check_isomorphism(R, R, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert not check_isomorphism(R, R, [[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert check_isomorphism(R, R, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])


def test_normalize_drops_unit_periods():
    R = RingPresentation(2, [1, 0], mult={(1, 1): {1: 1}})
    N = normalize(R)
    assert N.rank == 1 and N.periods == (0,)


def test_direct_product_and_quotient_orders():
    A = RingPresentation(1, [3], mult={(0, 0): {0: 1}})
    B = RingPresentation(1, [4], mult={(0, 0): {0: 1}})
    P = direct_product(A, B)
    assert validate(P) == []
    assert len(ring_elements(P)) == 12
    x, y = (1, 0), (0, 1)
    assert P.multiply(x, y) == P.canonical((0, 0))
    I = two_sided_ideal(P, [(0, 2)])
    Q = quotient_ring(P, I)
    assert len(ring_elements(Q)) == 6
    with pytest.raises(PresentationError):
        # u1 u1 = t is not a multiple of u1
        quotient_ring(r1(), Subgroup(r1().group, ((1, 0, 0),)))


def test_subring_presentation():
    R = r1()
    S, gens = subring_presentation(R, [(0, 0, 1)])
    assert S.rank == 1 and S.periods == (2,)
    with pytest.raises(PresentationError):
        subring_presentation(R, [(1, 0, 0)])


def test_scalar_rings_validate():
    assert validate_scalar_ring(integers_ring()) == []
    assert validate_scalar_ring(cyclic_ring(6)) == []
    # x^2 = 0 over Z
    A = ScalarRingPresentation(RingPresentation(2, [0, 0], mult={(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}), (1, 0))
    assert validate_scalar_ring(A) == []
    # x^2 = 1: the group ring of Z/2
    B = ScalarRingPresentation(RingPresentation(2, [0, 0], mult={(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}), (1, 0))
    assert validate_scalar_ring(B) == []
    # c1 c2 = c2 but c2 c1 = 0: not commutative
    C = ScalarRingPresentation(RingPresentation(2, [0, 0], mult={(0, 0): {0: 1}, (0, 1): {1: 1}}), (1, 0))
    assert validate_scalar_ring(C)


def test_modules_and_algebras_round_trip():
    A = cyclic_ring(6)
    M = module_over_itself(A)
    assert validate_module(M) == []
    rec = structure_constants(M)
    assert structure_constants(presentation_from_record(rec)) == rec
    alg = integer_algebra(r1())
    assert validate_algebra(alg) == []
    rec2 = structure_constants(alg)
    assert structure_constants(presentation_from_record(rec2)) == rec2


def test_iso_by_constants_finds_witness():
    alg = integer_algebra(r1())
    v = iso_by_constants(alg, alg)
    assert v.kind == VerdictKind.ISOMORPHIC
    assert iso_by_constants(alg, module_over_itself(cyclic_ring(2))).kind == VerdictKind.NOT_ISOMORPHIC
    v = iso_by_constants(cyclic_ring(6), cyclic_ring(6))
    assert v.kind == VerdictKind.ISOMORPHIC
    assert iso_by_constants(cyclic_ring(6), cyclic_ring(4)).kind == VerdictKind.NOT_ISOMORPHIC
