"""Seeded random rings for property tests.

Rings come from a random multiplication table on a free group modulo a random
two-sided ideal (periods at most 6, rank at most 4), plus a family of
non-regular rings built like the reference ring R1 and scrambled by random
unimodular changes of generators.  Also small bilinear maps and finite scalar
rings for the brute-force comparisons.
"""

from __future__ import annotations

import random

from fdzring.ring_core import (
    RingPresentation,
    ScalarRingPresentation,
    change_basis,
    cyclic_ring,
    direct_product,
    normalize,
    quotient_ring,
    validate,
)
from fdzring.scalars import induced_bilinear, make_bilinear
from fdzring.zlattice import AbGroupPresentation, Subgroup, det, identity, invariants

MAX_PERIOD = 6


def r1() -> RingPresentation:
    """u1, u2 free, t of period 2, u1 u1 = t."""
    return RingPresentation(3, [0, 0, 2], {2: {}}, {(0, 0): {2: 1}})


def z_ring() -> RingPresentation:
    return RingPresentation(1, [0], mult={(0, 0): {0: 1}})


def two_sided_ideal(R: RingPresentation, gens) -> Subgroup:
    I = Subgroup(R.group, tuple(tuple(g) for g in gens))
    while True:
        new = [R.multiply(g, u) for g in I.lattice for u in R.basis()]
        new += [R.multiply(u, g) for g in I.lattice for u in R.basis()]
        J = Subgroup(R.group, tuple(I.lattice) + tuple(new))
        if J == I:
            return I
        I = J


def _random_table(rng: random.Random, n: int, nilpotent: bool, density: float) -> dict:
    mult = {}
    for i in range(n):
        for j in range(n):
            if rng.random() > density:
                continue
            lo = max(i, j) + 1 if nilpotent else 0
            ks = list(range(lo, n))
            if not ks:
                continue
            v = {k: rng.choice([-1, 1, 1, 2]) for k in rng.sample(ks, rng.randint(1, min(2, len(ks))))}
            mult[(i, j)] = v
    return mult


def random_ring(rng: random.Random, max_rank: int = 4, finite: bool = False) -> RingPresentation:
    """A valid normalized presentation with all periods at most 6."""
    while True:
        n = rng.randint(1, max_rank + (0 if finite else 1))
        nilpotent = rng.random() < 0.6
        free = RingPresentation(n, [0] * n, mult=_random_table(rng, n, nilpotent, rng.choice([0.3, 0.5, 0.8])))
        gens = []
        for k in range(n):
            if finite or rng.random() < 0.4:
                v = [0] * n
                v[k] = rng.randint(2, MAX_PERIOD)
                gens.append(v)
        if rng.random() < 0.3:
            gens.append([rng.randint(-1, 1) for _ in range(n)])
        I = two_sided_ideal(free, gens) if gens else Subgroup(free.group, ())
        Q = normalize(quotient_ring(free, I))
        if Q.rank == 0 or Q.rank > max_rank:
            continue
        if any(e > MAX_PERIOD for e in Q.periods):
            continue
        assert not validate(Q)
        return Q


def random_unimodular(rng: random.Random, n: int, bound: int = 2) -> list[list[int]]:
    while True:
        T = identity(n)
        for _ in range(rng.randint(0, 2 * n)):
            if n < 2:
                break
            i, j = rng.sample(range(n), 2)
            c = rng.choice([-1, 1])
            T[i] = [a + c * b for a, b in zip(T[i], T[j])]
        rng.shuffle(T)
        T = [[-x for x in row] if rng.random() < 0.3 else row for row in T]
        if all(abs(x) <= bound for row in T for x in row) and abs(det(T)) == 1:
            return T


def r1_like(rng: random.Random) -> RingPresentation:
    """u free, t of period c, u u = t, plus free neutral generators; scrambled."""
    c = rng.randint(2, MAX_PERIOD)
    k = rng.randint(0, 2)
    n = 2 + k
    R = RingPresentation(n, [0, c] + [0] * k, {1: {}}, {(0, 0): {1: 1}})
    return change_basis(R, random_unimodular(rng, n))


def corpus(seed: int = 0, count: int = 60, max_rank: int = 4) -> list[RingPresentation]:
    rng = random.Random(seed)
    out = [r1(), z_ring(), RingPresentation.zero_ring(2)]
    while len(out) < count:
        if rng.random() < 0.25:
            out.append(r1_like(rng))
        else:
            out.append(random_ring(rng, max_rank, finite=rng.random() < 0.25))
    return out


# --------------------------------------------------------------------------
# bilinear maps on small finite groups
# --------------------------------------------------------------------------


def diag_group(periods):
    n = len(periods)
    return AbGroupPresentation(n, tuple(tuple(d * int(i == j) for j in range(n)) for i, d in enumerate(periods) if d))


def small_enough(f, max_order=64, max_maps=20000):
    inv = invariants(f.domain)
    return inv.is_finite and inv.order <= max_order and inv.order ** f.domain.ngens <= max_maps


def ring_bilinear_maps(seed, count):
    """Maps ``R/Ann x R/Ann -> R^2`` of finite random rings, small enough to enumerate."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < 2000:
        tries += 1
        R = random_ring(rng, 3, finite=True)
        f = induced_bilinear(R)
        if f.domain.ngens and small_enough(f):
            out.append(f)
    return out


def table_bilinear_maps(seed, count):
    """Full non-degenerate maps from random value tables on cyclic groups."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        dp = [rng.choice([2, 3, 4, 6]) for _ in range(rng.randint(1, 2))]
        cp = [rng.choice([2, 3, 4, 6]) for _ in range(rng.randint(1, 2))]
        D, C = diag_group(dp), diag_group(cp)
        n, k = len(dp), len(cp)
        vals = [[[rng.randint(0, 5) for _ in range(k)] for _ in range(n)] for _ in range(n)]
        try:
            f = make_bilinear(D, C, vals)
        except ValueError:
            continue
        if f.full and f.nondegenerate and small_enough(f):
            out.append(f)
    return out


# --------------------------------------------------------------------------
# finite scalar rings
# --------------------------------------------------------------------------


def quadratic(n: int, c0: int, c1: int) -> ScalarRingPresentation:
    """``Z/n[x] / (x^2 + c1 x + c0)`` on ``1, x`` (``n = 0`` for ``Z``)."""
    base = RingPresentation(
        2, [n, n], mult={(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: -c0, 1: -c1}}
    )
    return ScalarRingPresentation(base, (1, 0))


def product_ring(a: int, b: int) -> ScalarRingPresentation:
    return ScalarRingPresentation(direct_product(cyclic_ring(a).base, cyclic_ring(b).base), (1, 1))


def finite_scalar_rings():
    """Commutative unital rings of order at most 256."""
    out = [cyclic_ring(n) for n in (2, 4, 6, 8, 9, 12, 30)]
    rng = random.Random(0)
    for _ in range(10):
        n = rng.choice([2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16])
        out.append(quadratic(n, rng.randint(0, n - 1), rng.randint(0, n - 1)))
    out += [product_ring(2, 3), product_ring(4, 6), product_ring(5, 5), quadratic(16, 1, 1)]
    return out
