"""Invariant ideals of a ring with finitely generated additive group.

For a ring ``R`` this module computes the two-sided annihilator ``Ann(R)``,
the square ``R^2``, isolators, ``M(R) = Is(R^2 + Ann(R))``,
``N(R) = Is(R^2) + Ann(R)``, ``Delta(R) = Is(R^2) & Ann(R)``, additions
(complements of ``Delta`` inside ``Ann``), foundations ``R / R_0``, regularity,
tameness and bounds on the width of the multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .ring_core import (
    PresentationError,
    RingPresentation,
    direct_product,
    normalize,
    quotient_ring,
    subring_presentation,
)
from .zlattice import (
    AbGroupPresentation,
    AbInvariants,
    Subgroup,
    complement_of,
    hom_kernel,
    invariants,
    whole,
    quotient_group,
    quotient_invariants,
    saturation,
    solve_rows,
    subgroup_intersection,
    subgroup_sum,
    whole,
)


def ann(R: RingPresentation) -> Subgroup:
    """Two-sided annihilator: ``{x : x u_j = u_j x = 0 for all j}``."""
    n = R.rank
    if n == 0:
        return whole(R.group)
    T = R.tensor
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row += list(T[i][j])
        for j in range(n):
            row += list(T[j][i])
        rows.append(row)
    width = 2 * n * n
    rels = []
    for block in range(2 * n):
        for r in R.group.lattice:
            v = [0] * width
            v[block * n:(block + 1) * n] = r
            rels.append(v)
    K = hom_kernel(rows, rels, width)
    return Subgroup(R.group, tuple(tuple(r) for r in K))


def _assert_ideal(R: RingPresentation, I: Subgroup, name: str) -> None:
    for g in I.lattice:
        for u in R.basis():
            if not I.contains(R.multiply(g, u)) or not I.contains(R.multiply(u, g)):
                raise AssertionError(f"{name} is not closed under multiplication by u")


def square(R: RingPresentation) -> Subgroup:
    """Additive span of all products ``u_i u_j``."""
    S = R.product_span()
    _assert_ideal(R, S, "R^2")
    return S


def isolator(R: RingPresentation, I: Subgroup) -> Subgroup:
    if I.ambient != R.group:
        raise ValueError("subgroup does not live in this ring")
    return saturation(I)


def bigM(R: RingPresentation) -> Subgroup:
    return saturation(subgroup_sum(square(R), ann(R)))


def bigN(R: RingPresentation) -> Subgroup:
    return subgroup_sum(saturation(square(R)), ann(R))


def mn_quotient(R: RingPresentation) -> AbInvariants:
    inv = quotient_invariants(bigN(R), bigM(R))
    if not inv.is_finite:
        raise AssertionError("M(R)/N(R) came out infinite")
    return inv


def delta(R: RingPresentation) -> Subgroup:
    return subgroup_intersection(saturation(square(R)), ann(R))


def addition(R: RingPresentation) -> Subgroup:
    """The deterministic complement of ``Delta(R)`` inside ``Ann(R)``."""
    return complement_of(delta(R), ann(R))


def is_addition(R: RingPresentation, R0: Subgroup) -> bool:
    A, D = ann(R), delta(R)
    if R0.ambient != R.group or not R0 <= A:
        return False
    return subgroup_intersection(R0, D).is_trivial() and subgroup_sum(R0, D) == A


def foundation(R: RingPresentation, R0: Optional[Subgroup] = None) -> RingPresentation:
    """``R / R_0`` on the images of the original generators (periods may be 1)."""
    if R0 is None:
        R0 = addition(R)
    elif not is_addition(R, R0):
        raise PresentationError("R0 is not an addition: need R0 + Delta = Ann and R0 & Delta = 0")
    return quotient_ring(R, R0)


def addition_ring(R: RingPresentation, R0: Optional[Subgroup] = None) -> RingPresentation:
    """``R_0`` as a ring in its own right (zero multiplication, free additive group)."""
    if R0 is None:
        R0 = addition(R)
    gens = R0.nonzero_gens()
    P, _ = subring_presentation(R, gens)
    return P


def foundation_times_addition(R: RingPresentation, R0: Optional[Subgroup] = None) -> RingPresentation:
    if R0 is None:
        R0 = addition(R)
    return direct_product(normalize(foundation(R, R0)), normalize(addition_ring(R, R0)))


def is_regular(R: RingPresentation) -> bool:
    return bigM(R) == bigN(R)


def split_regular(R: RingPresentation) -> tuple[Subgroup, Subgroup]:
    """Subring ``F`` and addition ``R_0`` with ``R = F x R_0`` for regular ``R``.

    ``N(R) = Is(R^2) + R_0`` is a direct sum, and when ``M(R) = N(R)`` it is
    pure, so ``R = C + Is(R^2) + R_0`` for a complement ``C``.  Any subgroup
    containing ``R^2`` is an ideal, so ``F = C + Is(R^2)`` is a subring.
    """
    if not is_regular(R):
        raise ValueError("split_regular needs M(R) = N(R)")
    R0 = addition(R)
    N = bigN(R)
    C = complement_of(N, whole(R.group))
    F = subgroup_sum(C, saturation(square(R)))
    if not subgroup_intersection(F, R0).is_trivial() or subgroup_sum(F, R0) != whole(R.group):
        raise AssertionError("splitting failed")
    return F, R0


def is_tame(R: RingPresentation) -> bool:
    return ann(R) <= saturation(square(R))


# --------------------------------------------------------------------------
# width
# --------------------------------------------------------------------------


ENUMERATION_LIMIT = 1024


def finite_width(values: set, target: AbGroupPresentation, limit: int = 64) -> Optional[int]:
    """Least ``s`` such that every element of the finite ``target`` is a sum of ``s`` values.

    ``values`` must be canonical elements of ``target`` that generate it.
    Returns ``None`` if ``limit`` is reached.
    """
    total = len(target.elements())
    if total == 1:
        return 0
    reach = set(values)
    s = 1
    while len(reach) < total:
        if s >= limit:
            return None
        reach = {target.canonical([a + b for a, b in zip(x, v)]) for x in reach for v in values}
        s += 1
    return s


def value_union(row_sets, target: AbGroupPresentation) -> Optional[set]:
    """Union of the subgroups of the finite ``target`` generated by each row set.

    The values ``f(x, y)`` of a bilinear map form such a union over ``x`` (each
    ``f(x, -)`` has a subgroup as image).  Returns ``None`` as soon as one of
    the subgroups is all of ``target``, so that the width is 1.
    """
    full = whole(target)
    values: set = set()
    seen = set()
    for rows in row_sets:
        gens = [target.canonical(r) for r in rows]
        sub = Subgroup(target, tuple(gens))
        if sub.lattice in seen:
            continue
        seen.add(sub.lattice)
        if sub == full:
            return None
        span = {target.canonical([0] * target.ngens)}
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = target.canonical([s + t for s, t in zip(a, g)])
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        values |= span
    return values


@dataclass(frozen=True)
class WidthBounds:
    lower: int
    upper: int
    exact: Optional[int]


def width_bounds(R: RingPresentation) -> WidthBounds:
    """Bounds on the least ``s`` with every element of ``R^2`` a sum of ``s`` products.

    Products only depend on classes modulo ``Ann(R)``, so the number of
    generators of ``R / Ann(R)`` bounds the width.  When ``R^2`` is finite so is
    ``R / Ann(R)`` and the width is found by enumeration.
    """
    sq = square(R)
    if sq.is_trivial():
        return WidthBounds(0, 0, 0)
    A = ann(R)
    quot = AbGroupPresentation(R.rank, A.lattice)
    gens = quot.smith_generators()
    upper = len(gens)
    if upper == 1:
        return WidthBounds(1, 1, 1)
    sq_group = sq.as_group()
    if invariants(sq_group).is_finite:
        try:
            reps = quot.elements(limit=ENUMERATION_LIMIT)
        except ValueError:
            return WidthBounds(1, upper, None)
        basis = [list(r) for r in sq.lattice]
        n, k = R.rank, len(basis)
        unit = [[int(i == j) for j in range(n)] for i in range(n)]
        coords = [[solve_rows(basis, R.multiply(unit[i], unit[j])) for j in range(n)] for i in range(n)]
        def rows_of(x):
            for j in range(n):
                v = [0] * k
                for i, c in enumerate(x):
                    if c:
                        v = [a + c * b for a, b in zip(v, coords[i][j])]
                yield v

        # x R is a subgroup for each x
        values = value_union((rows_of(x) for x in reps), sq_group)
        if values is None:
            return WidthBounds(1, 1, 1)
        w = finite_width(values, sq_group, limit=upper + 1)
        if w is None:
            raise AssertionError("width exceeded the generator bound")
        return WidthBounds(w, w, w)
    return WidthBounds(1, upper, None)


# --------------------------------------------------------------------------
# report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    ann: Subgroup
    square: Subgroup
    is_square: Subgroup
    delta: Subgroup
    addition: Subgroup
    bigM: Subgroup
    bigN: Subgroup
    mn_invariants: AbInvariants
    e: int
    regular: bool
    tame: bool
    width_lower: int
    width_upper: int
    width_exact: Optional[int]


def invariant_report(R: RingPresentation) -> InvariantReport:
    A, sq = ann(R), square(R)
    isq = saturation(sq)
    M = saturation(subgroup_sum(sq, A))
    N = subgroup_sum(isq, A)
    mn = quotient_invariants(N, M)
    if not mn.is_finite:
        raise AssertionError("M(R)/N(R) came out infinite")
    wb = width_bounds(R)
    return InvariantReport(
        ann=A,
        square=sq,
        is_square=isq,
        delta=subgroup_intersection(isq, A),
        addition=addition(R),
        bigM=M,
        bigN=N,
        mn_invariants=mn,
        e=math.prod(mn.torsion_factors),
        regular=M == N,
        tame=A <= isq,
        width_lower=wb.lower,
        width_upper=wb.upper,
        width_exact=wb.exact,
    )
