"""Brute-force reference computations used as independent oracles.

Everything here works by enumerating elements of small finite groups or by
rational linear algebra, never through the lattice routines under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def bareiss_det(M) -> int:
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(v) for v in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(det)


def rational_rank(rows) -> int:
    A = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c] != 0:
                f = A[r][c] / A[rank][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


# --------------------------------------------------------------------------
# finite diagonal groups Z/d1 x ... x Z/dn
# --------------------------------------------------------------------------


def reduce_mod(x, periods) -> tuple:
    return tuple(v % d for v, d in zip(x, periods))


def all_elements(periods) -> list[tuple]:
    return list(itertools.product(*(range(d) for d in periods)))


def span(gens, periods) -> frozenset:
    """Subgroup generated by ``gens`` inside the diagonal group, by closure."""
    zero = tuple(0 for _ in periods)
    seen = {zero}
    frontier = [zero]
    gens = [reduce_mod(g, periods) for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = reduce_mod([s + t for s, t in zip(a, g)], periods)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def element_order(x, periods) -> int:
    k, cur = 1, reduce_mod(x, periods)
    while any(cur):
        k += 1
        cur = reduce_mod([k * v for v in x], periods)
    return k


# --------------------------------------------------------------------------
# finite rings, by element closure
# --------------------------------------------------------------------------


def ring_elements(R) -> list[tuple]:
    """All elements of a finite ring presentation (canonical forms)."""
    zero = R.canonical([0] * R.rank)
    seen = {zero}
    frontier = [zero]
    gens = [tuple(int(i == j) for j in range(R.rank)) for i in range(R.rank)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = R.canonical([s + t for s, t in zip(a, g)])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)


def additive_closure(R, elems) -> frozenset:
    zero = R.canonical([0] * R.rank)
    seen = {zero}
    frontier = [zero]
    gens = list({R.canonical(e) for e in elems})
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = R.canonical([s + t for s, t in zip(a, g)])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def subgroup_elements(R, S) -> frozenset:
    """Elements of a library subgroup of the finite ring's group."""
    return additive_closure(R, [tuple(g) for g in S.lattice])


def brute_ann(R, elems) -> frozenset:
    zero = R.canonical([0] * R.rank)
    return frozenset(x for x in elems if all(R.multiply(x, y) == zero and R.multiply(y, x) == zero for y in elems))


def brute_square(R, elems) -> frozenset:
    return additive_closure(R, [R.multiply(x, y) for x in elems for y in elems])


def brute_width(R, elems) -> int:
    """Least ``s`` with every element of ``R^2`` a sum of ``s`` products."""
    products = {R.multiply(x, y) for x in elems for y in elems}
    sq = brute_square(R, elems)
    zero = R.canonical([0] * R.rank)
    if sq == {zero}:
        return 0
    reach = set(products)
    s = 1
    while reach != sq:
        reach = {R.canonical([a + b for a, b in zip(x, p)]) for x in reach for p in products}
        s += 1
    return s


def ideal_closure(A, gens) -> tuple[frozenset, list]:
    """Two-sided ideal generated by ``gens`` and a small generating list for it.

    By bilinearity it is enough to close under products with the ring generators.
    """
    units = [tuple(int(i == j) for j in range(A.rank)) for i in range(A.rank)]
    G = list(dict.fromkeys(A.canonical(g) for g in gens))
    I = additive_closure(A, G)
    while True:
        new = []
        for x in G:
            for u in units:
                for p in (A.multiply(x, u), A.multiply(u, x)):
                    if p not in I and p not in new:
                        new.append(p)
        if not new:
            return I, G
        G += new
        I = additive_closure(A, G)


def brute_ideals(A, elems) -> set:
    """All two-sided ideals of a finite ring, as frozensets of elements."""
    principal = {}
    for a in elems:
        I, G = ideal_closure(A, [a])
        principal.setdefault(I, G)
    out = dict(principal)
    todo = list(principal.items())
    while todo:
        I, G = todo.pop()
        for J, H in principal.items():
            if J <= I:
                continue
            K = additive_closure(A, G + H)
            if K not in out:
                out[K] = G + H
                todo.append((K, G + H))
    return set(out)


def brute_is_prime(A, I: frozenset, elems) -> bool:
    if len(I) == len(elems):
        return False
    for a in elems:
        if a in I:
            continue
        for b in elems:
            if b not in I and A.multiply(a, b) in I:
                return False
    return True


# --------------------------------------------------------------------------
# bilinear maps on finite groups
# --------------------------------------------------------------------------


def brute_scalar_endos(f) -> set:
    """Endomorphisms ``a`` of the domain with ``f(ax, y) = f(x, ay)`` and ``f(ax, y)``
    a function of ``f(x, y)``, as tuples of generator images."""
    D, C = f.domain, f.codomain
    n = D.ngens
    elems = D.elements()
    out = set()
    for imgs in itertools.product(elems, repeat=n):
        if any(any(D.canonical([sum(r[a] * imgs[a][t] for a in range(n)) for t in range(n)])) for r in D.lattice):
            continue
        ok = True
        unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        for a in range(n):
            for b in range(n):
                if f(imgs[a], unit[b]) != f(unit[a], imgs[b]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        # phi0 well defined: additive closure of (f(g_a, g_b), f(a g_a, g_b)) is a graph
        pairs = [(f(unit[a], unit[b]), f(imgs[a], unit[b])) for a in range(n) for b in range(n)]
        k = C.ngens
        zero = (C.canonical([0] * k), C.canonical([0] * k))
        seen = {zero}
        frontier = [zero]
        graph = {zero[0]: zero[1]}
        while frontier and ok:
            nxt = []
            for x0, x1 in frontier:
                for y0, y1 in pairs:
                    z = (C.canonical([s + t for s, t in zip(x0, y0)]), C.canonical([s + t for s, t in zip(x1, y1)]))
                    if z in seen:
                        continue
                    if graph.setdefault(z[0], z[1]) != z[1]:
                        ok = False
                        break
                    seen.add(z)
                    nxt.append(z)
                if not ok:
                    break
            frontier = nxt
        if ok:
            out.add(tuple(imgs))
    return out


def endo_closure(D, gens):
    """Additive closure of endomorphisms given as tuples of generator images."""
    n = D.ngens
    zero = tuple(D.canonical([0] * n) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    gens = [tuple(D.canonical(r) for r in g) for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple(D.canonical([s + t for s, t in zip(x, y)]) for x, y in zip(a, g))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen
