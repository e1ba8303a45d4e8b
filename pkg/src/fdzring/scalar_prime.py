"""Prime ideals, decompositions of zero and their series in scalar rings.

A scalar ring here is a commutative associative unital ring with finitely
generated additive group.  The module provides generated ideals and ideal
products, a tri-state primality test, searches for decompositions
``0 = p_1 p_2 ... p_m`` into prime ideals with characteristic vector
``(char A/p_1, ..., char A/p_m)``, the descending series they define on the
ring and on modules, the subring ``A_P = (Z 1 + p_1) & ... & (Z 1 + p_m)`` and
pseudo-bases refining the series.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import sympy

from .ring_core import (
    RingPresentation,
    ScalarRingPresentation,
    TwoSortedModulePresentation,
    normalize,
    quotient_ring,
)
from .zlattice import (
    AbGroupPresentation,
    Subgroup,
    hom_kernel,
    identity,
    invariants,
    lattice_reduce,
    quotient_group,
    solve_rows,
    subgroup_intersection,
    subgroup_sum,
    torsion_subgroup,
    vecmat,
    whole,
)


def _unit_rank(A: ScalarRingPresentation) -> list[tuple]:
    return A.base.basis()


def ideal_generated(A: ScalarRingPresentation, gens: Sequence[Sequence[int]]) -> Subgroup:
    """Smallest ideal containing ``gens``: close the span under multiplication by generators."""
    G = A.group
    I = Subgroup(G, tuple(tuple(G.canonical(g)) for g in gens))
    basis = _unit_rank(A)
    while True:
        new = [A.multiply(g, u) for g in I.lattice for u in basis]
        J = Subgroup(G, tuple(I.lattice) + tuple(new))
        if J == I:
            return I
        I = J


def ideal_product(A: ScalarRingPresentation, *ideals: Subgroup) -> Subgroup:
    """Ideal generated by products of one generator from each factor."""
    if not ideals:
        return whole(A.group)
    cur = ideals[0]
    for J in ideals[1:]:
        prods = [A.multiply(a, b) for a in cur.lattice for b in J.lattice]
        cur = ideal_generated(A, prods)
    return cur


class PrimeStatus(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PrimalityResult:
    status: PrimeStatus
    witness: Optional[tuple] = None  # (x, y) with xy in I, x, y not in I
    reason: str = ""


def quotient_scalar_ring(A: ScalarRingPresentation, I: Subgroup) -> tuple[ScalarRingPresentation, list[list[int]]]:
    """``A / I`` on a normalized generating family.

    Returns the ring and the rows expressing its generators in ``A``.
    """
    Q = quotient_ring(A.base, I)
    keep = [i for i, e in enumerate(Q.periods) if e != 1]
    rows = [identity(A.rank)[i] for i in keep]
    Qn = normalize(Q)
    one = solve_rows(rows + [list(r) for r in Q.group.lattice], A.one)
    return ScalarRingPresentation(Qn, tuple(one[: len(rows)])), rows


def _finite_domain_check(Q: ScalarRingPresentation, limit: int) -> PrimalityResult:
    elems = Q.group.elements(limit=limit)
    for a in elems:
        if not any(a):
            continue
        K = _mult_kernel(Q, a)
        if not K.is_trivial():
            b = K.nonzero_gens()[0]
            return PrimalityResult(PrimeStatus.NO, (a, b), "zero divisors in the quotient")
    return PrimalityResult(PrimeStatus.YES)


def _mult_kernel(Q: ScalarRingPresentation, a) -> Subgroup:
    imgs = [Q.multiply(a, u) for u in Q.base.basis()]
    K = hom_kernel(imgs, Q.group.lattice, Q.rank) if Q.rank else []
    return Subgroup(Q.group, tuple(tuple(r) for r in K))


def _min_poly_witness(Q: ScalarRingPresentation, a) -> tuple[str, Optional[tuple]]:
    """Classify ``a`` in a torsion-free ``Q`` by its minimal polynomial over the rationals.

    Returns ``("reducible", (x, y))`` with ``x y = 0`` and ``x, y != 0``,
    ``("primitive", None)`` if the polynomial is irreducible of full degree,
    or ``("inconclusive", None)``.
    """
    n = Q.rank
    powers = [list(Q.one)]
    t = sympy.Symbol("t")
    for k in range(1, n + 1):
        powers.append(list(Q.multiply(powers[-1], a)))
        M = sympy.Matrix(powers).T
        ns = M.nullspace()
        if ns:
            v = ns[0]
            den = sympy.ilcm(*[sympy.fraction(sympy.nsimplify(c))[1] for c in v])
            coeffs = [int(c * den) for c in v]
            poly = sympy.Poly(sum(c * t ** i for i, c in enumerate(coeffs)), t)
            _, factors = sympy.factor_list(poly.as_expr())
            factors = [sympy.Poly(fa, t) for fa, mult in factors for _ in range(mult)]
            factors = [fa for fa in factors if fa.degree() > 0]
            if len(factors) >= 2:
                g = factors[0]
                h = sympy.Poly(sympy.prod([fa.as_expr() for fa in factors[1:]]), t)
                return "reducible", (_eval_poly(Q, powers, g), _eval_poly(Q, powers, h))
            if poly.degree() == n:
                return "primitive", None
            return "inconclusive", None
    return "inconclusive", None


def _eval_poly(Q, powers, p) -> tuple:
    coeffs = [int(c) for c in reversed(p.all_coeffs())]
    den = 1
    out = [0] * Q.rank
    for i, c in enumerate(coeffs):
        for k, v in enumerate(powers[i]):
            out[k] += c * v
    return Q.canonical(out)


def is_prime_ideal(
    A: ScalarRingPresentation, I: Subgroup, height: int = 2, limit: int = 4096
) -> PrimalityResult:
    """Tri-state primality of the ideal ``I``.

    Exact when ``A/I`` is finite.  For infinite quotients a torsion element or
    a reducible minimal polynomial gives an exact ``No``; a quotient of rank 1
    or an element with irreducible minimal polynomial of full degree gives an
    exact ``Yes``; anything else is ``Unknown``.
    """
    Q, rows = quotient_scalar_ring(A, I)

    def lift(x):
        return A.canonical(vecmat(x, rows, A.rank)) if rows else A.canonical([0] * A.rank)

    if Q.rank == 0:
        return PrimalityResult(PrimeStatus.NO, None, "ideal is the whole ring")
    inv = invariants(Q.group)
    if inv.is_finite:
        try:
            res = _finite_domain_check(Q, limit)
        except ValueError:
            return PrimalityResult(PrimeStatus.UNKNOWN, None, "quotient too large to enumerate")
        if res.witness:
            return PrimalityResult(res.status, (lift(res.witness[0]), lift(res.witness[1])), res.reason)
        return res
    tors = torsion_subgroup(Q.group)
    if not tors.is_trivial():
        t = tors.nonzero_gens()[0]
        n = Q.group.element_order(t)
        return PrimalityResult(
            PrimeStatus.NO, (lift([n * c for c in Q.one]), lift(t)), f"quotient has {n}-torsion"
        )
    if Q.rank == 1:
        return PrimalityResult(PrimeStatus.YES, None, "quotient is isomorphic to Z")
    for c in itertools.product(range(-height, height + 1), repeat=Q.rank):
        if not any(c):
            continue
        kind, wit = _min_poly_witness(Q, c)
        if kind == "reducible":
            return PrimalityResult(PrimeStatus.NO, (lift(wit[0]), lift(wit[1])), "reducible minimal polynomial")
        if kind == "primitive":
            return PrimalityResult(PrimeStatus.YES, None, "primitive element with irreducible minimal polynomial")
    return PrimalityResult(PrimeStatus.UNKNOWN, None, f"no decision within height {height}")


def quotient_characteristic(A: ScalarRingPresentation, I: Subgroup) -> int:
    """Additive order of ``1 + I`` in the domain ``A/I`` (0 for infinite)."""
    res = is_prime_ideal(A, I)
    if res.status != PrimeStatus.YES:
        raise ValueError(f"quotient is not known to be an integral domain ({res.status.value})")
    G = AbGroupPresentation(A.rank, I.lattice)
    return G.element_order(A.one)


# --------------------------------------------------------------------------
# decompositions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeDecomposition:
    ideals: tuple
    char_vector: tuple
    zero_count: int
    statuses: tuple
    minimal_among_found: bool = True


def verify_decomposition(A: ScalarRingPresentation, P: PrimeDecomposition) -> bool:
    if len(P.ideals) != len(P.char_vector) or not P.ideals:
        return False
    if not ideal_product(A, *P.ideals).is_trivial():
        return False
    for I, lam in zip(P.ideals, P.char_vector):
        if I == whole(A.group):
            return False
        if is_prime_ideal(A, I).status != PrimeStatus.YES:
            return False
        if quotient_characteristic(A, I) != lam:
            return False
    return P.zero_count == sum(1 for lam in P.char_vector if lam == 0)


def _element_pool(A: ScalarRingPresentation, height: int) -> list[tuple]:
    per = [e for e in A.base.periods]
    ranges = [range(e) if e else range(-height, height + 1) for e in per]
    seen = {}
    for c in itertools.product(*ranges):
        v = A.canonical(c)
        if v not in seen:
            seen[v] = (sum(abs(t) for t in c), c)
    return sorted(seen, key=lambda v: seen[v])


def candidate_primes(A: ScalarRingPresentation, height: int = 2, limit: int = 256) -> list[tuple[Subgroup, int]]:
    """Prime ideals (with characteristic) from the bounded candidate pool."""
    inv = invariants(A.group)
    ideals: dict = {}

    def consider(I):
        if I.lattice not in ideals:
            ideals[I.lattice] = I

    if inv.is_finite and inv.order <= limit:
        elems = A.group.elements(limit=limit)
        principal = {}
        for a in elems:
            I = ideal_generated(A, [a])
            principal[I.lattice] = I
        allideals = dict(principal)
        frontier = list(allideals.values())
        while frontier:
            new = []
            for I in frontier:
                for J in principal.values():
                    K = subgroup_sum(I, J)
                    if K.lattice not in allideals:
                        allideals[K.lattice] = K
                        new.append(K)
            frontier = new
        for I in allideals.values():
            consider(I)
    else:
        pool = _element_pool(A, height)
        for a in pool:
            consider(ideal_generated(A, [a]))
        exps = [d for d in inv.torsion_factors]
        primes = sorted({p for d in exps for p in sympy.primefactors(d)})
        for p in primes:
            pone = tuple(p * c for c in A.one)
            for a in pool:
                consider(ideal_generated(A, [pone, a]))
    out = []
    for I in ideals.values():
        if I == whole(A.group):
            continue
        if is_prime_ideal(A, I).status == PrimeStatus.YES:
            out.append((I, quotient_characteristic(A, I)))
    # positive characteristics first (ascending), then characteristic 0
    out.sort(key=lambda t: (t[1] == 0, t[1], len(t[0].lattice), t[0].lattice))
    return out


def find_decomposition(
    A: ScalarRingPresentation, max_factors: int = 16, height: int = 2
) -> Optional[PrimeDecomposition]:
    """Search a decomposition of zero minimizing the number of characteristic-0 factors.

    Ties are broken by length, then by the candidate order.  The result is
    minimal among the decompositions found, not certified globally minimal.
    """
    cands = candidate_primes(A, height)
    if not cands:
        return None
    zero_lat = A.group.lattice
    start = whole(A.group)
    # states: product ideal -> best (zeros, index tuple)
    frontier = {start.lattice: (0, (), start)}
    best = None
    for _ in range(max_factors):
        nxt = {}
        for key, (z, idx, I) in frontier.items():
            last = idx[-1] if idx else 0
            for ci in range(last, len(cands)):
                P, lam = cands[ci]
                J = ideal_product(A, I, P)
                nz = z + (lam == 0)
                nidx = idx + (ci,)
                if J.lattice == zero_lat:
                    cand = (nz, len(nidx), nidx)
                    if best is None or cand < best:
                        best = cand
                    continue
                if best is not None and (nz, len(nidx)) >= best[:2]:
                    continue
                cur = nxt.get(J.lattice)
                if cur is None or (nz, nidx) < (cur[0], cur[1]):
                    nxt[J.lattice] = (nz, nidx, J)
        if best is not None and all(v[0] >= best[0] for v in nxt.values()):
            break
        frontier = nxt
        if not frontier:
            break
    if best is None:
        return None
    _, _, idx = best
    ideals = tuple(cands[i][0] for i in idx)
    lams = tuple(cands[i][1] for i in idx)
    return PrimeDecomposition(
        ideals, lams, sum(1 for l in lams if l == 0), tuple(PrimeStatus.YES for _ in idx), True
    )


# --------------------------------------------------------------------------
# series and pseudo-bases
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PSeries:
    terms: tuple


def p_series(A: ScalarRingPresentation, P: PrimeDecomposition) -> PSeries:
    terms = [whole(A.group)]
    for I in P.ideals:
        terms.append(ideal_product(A, terms[-1], I))
    return PSeries(tuple(terms))


def submodule_product(M: TwoSortedModulePresentation, I: Subgroup, N: Subgroup) -> Subgroup:
    """``I N``: the subgroup spanned by ``a x`` for ``a`` in ``I``, ``x`` in ``N``."""
    return Subgroup(M.group, tuple(M.act(a, x) for a in I.lattice for x in N.lattice))


def module_p_series(M: TwoSortedModulePresentation, P: PrimeDecomposition) -> PSeries:
    terms = [whole(M.group)]
    for I in P.ideals:
        terms.append(submodule_product(M, I, terms[-1]))
    return PSeries(tuple(terms))


def a_p_subring(A: ScalarRingPresentation, P: PrimeDecomposition) -> Subgroup:
    one = Subgroup(A.group, (A.one,))
    out = whole(A.group)
    for I in P.ideals:
        out = subgroup_intersection(out, subgroup_sum(one, I))
    return out


def _element_key(v) -> tuple:
    return (sum(abs(t) for t in v), tuple(abs(t) for t in v), tuple(-t for t in v))


def series_pseudo_basis(G: AbGroupPresentation, terms: Sequence[Subgroup]) -> tuple[list[tuple], list[int]]:
    """Lift generators of each successive quotient of a descending series."""
    basis, periods = [], []
    for upper, lower in zip(terms, terms[1:]):
        Q = quotient_group(lower, upper)
        gens = Q.smith_generators()
        for g, d in gens:
            x = vecmat(g, upper.lattice, G.ngens)
            if len(gens) == 1:
                ks = [k for k in range(1, d) if math.gcd(k, d) == 1] if d else [1, -1]
                opts = [tuple(lattice_reduce(lower.lattice, [k * c for c in x])) for k in ks]
                x = min(opts, key=_element_key)
            else:
                x = tuple(lattice_reduce(lower.lattice, x))
            basis.append(tuple(x))
            periods.append(d)
    return basis, periods


@dataclass(frozen=True)
class SeriesPseudoBases:
    scalar_basis: tuple
    scalar_periods: tuple
    module_basis: tuple
    module_periods: tuple


def p_series_pseudo_basis(M: TwoSortedModulePresentation, P: PrimeDecomposition) -> SeriesPseudoBases:
    A = M.scalars
    sb, sp = series_pseudo_basis(A.group, p_series(A, P).terms)
    mb, mp = series_pseudo_basis(M.group, module_p_series(M, P).terms)
    return SeriesPseudoBases(tuple(sb), tuple(sp), tuple(mb), tuple(mp))


def minimal_generator_count(A) -> int:
    G = A.group if hasattr(A, "group") else A
    return invariants(G).ngens


def two_rank_check(A: ScalarRingPresentation) -> bool:
    """For torsion-free ``A``: ``|A / 2A| = 2^r(A)``."""
    inv = invariants(A.group)
    if inv.torsion_factors:
        raise ValueError("additive group has torsion")
    doubled = Subgroup(A.group, tuple(tuple(2 * c for c in u) for u in A.base.basis()))
    Q = AbGroupPresentation(A.rank, doubled.lattice)
    return invariants(Q).order == 2 ** inv.free_rank


def minimal_generator_count_module(M: TwoSortedModulePresentation) -> tuple[int, int]:
    """``(r(M), upper bound for r_A(M))`` with a greedy choice of module generators."""
    r = invariants(M.group).ngens
    chosen = []
    span = Subgroup(M.group, ())
    for u in identity(M.group.ngens):
        if span.contains(u):
            continue
        chosen.append(tuple(u))
        span = Subgroup(
            M.group, tuple(M.act(c, x) for c in M.scalars.base.basis() for x in chosen)
        )
    return r, len(chosen)
