"""Bilinear maps, their largest ring of scalars and the scalar ring ``A(R)``.

A ring ``R`` induces the full map ``f : R/Ann x R/Ann -> R^2``.  Its largest
ring of scalars ``P(f)`` is computed in three stages:

1. ``Sym``: endomorphisms ``a`` of the domain with ``f(ax, y) = f(x, ay)``;
2. ``Z``: the members of ``Sym`` commuting with every member of ``Sym``;
3. the members of ``Z`` for which ``f(ax, y)`` only depends on ``f(x, y)``,
   imposed on a basis of the relation lattice of the values ``f(u_i, u_j)``.

The single-step pair description ``f(ax, y) = f(x, ay) = a0 f(x, y)`` is
computed as well and must agree.  ``A(R)`` is the subring of ``P(f_F)`` for
which the canonical map ``R^2 -> R/Ann(R)`` is linear.

Endomorphisms of a group ``Z^n / L`` are integer matrices acting on row
vectors, flattened row-major; two matrices give the same endomorphism when
their difference has all rows in ``L``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .ideals import ann, finite_width, square, value_union
from .ring_core import RingPresentation, ScalarRingPresentation
from .zlattice import (
    AbGroupPresentation,
    Subgroup,
    hnf_basis,
    hom_kernel,
    identity,
    invariants,
    lattice_contains,
    quotient_group,
    solve_rows,
    vecmat,
)


class ScalarComputationError(ArithmeticError):
    """The staged and single-step computations disagree, or a ring axiom failed."""

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


# --------------------------------------------------------------------------
# bilinear maps
# --------------------------------------------------------------------------


def smith_presentation(G: AbGroupPresentation) -> tuple[AbGroupPresentation, list[tuple], Callable]:
    """Diagonal presentation of ``G`` without trivial factors.

    Returns ``(H, lifts, to_H)``: ``lifts[k]`` is the element of ``G`` for the
    ``k``-th generator of ``H`` and ``to_H`` converts ``G``-coordinates.
    """
    diag = G.smith.diagonal
    keep = [k for k in range(G.ngens) if not (k < len(diag) and diag[k] == 1)]
    rels = []
    for pos, k in enumerate(keep):
        d = diag[k] if k < len(diag) else 0
        if d:
            r = [0] * len(keep)
            r[pos] = d
            rels.append(tuple(r))
    H = AbGroupPresentation(len(keep), tuple(rels))
    Vi = G._smith_inverse
    lifts = [G.canonical(Vi[k]) for k in keep]
    V = G.smith.V

    def to_H(x):
        y = vecmat(x, V, G.ngens)
        return H.canonical([y[k] for k in keep])

    return H, lifts, to_H


@dataclass(frozen=True, eq=False)
class BilinearMapPresentation:
    """``f : D x D -> C`` with ``values[a][b] = f(g_a, g_b)`` in ``C``-coordinates."""

    domain: AbGroupPresentation
    codomain: AbGroupPresentation
    values: tuple
    full: bool = True
    nondegenerate: bool = True
    diagnostics: tuple = ()
    # ring-derived maps keep the lifts of domain generators to R and the
    # embedding of codomain generators into R
    domain_lifts: Optional[tuple] = None
    codomain_embedding: Optional[tuple] = None
    ring: Optional[RingPresentation] = field(default=None, repr=False)

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> tuple:
        out = [0] * self.codomain.ngens
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if yb:
                    for e, v in enumerate(self.values[a][b]):
                        out[e] += xa * yb * v
        return self.codomain.canonical(out)


def make_bilinear(domain: AbGroupPresentation, codomain: AbGroupPresentation, values) -> BilinearMapPresentation:
    """Wrap a value table, checking compatibility with the relations."""
    n = domain.ngens
    vals = tuple(tuple(codomain.canonical(values[a][b]) for b in range(n)) for a in range(n))
    f = BilinearMapPresentation(domain, codomain, vals)
    for rel in domain.lattice:
        for g in identity(n):
            if any(f(rel, g)) or any(f(g, rel)):
                raise ValueError("values are not compatible with the domain relations")
    full = Subgroup(codomain, tuple(v for row in vals for v in row)).lattice == tuple(
        map(tuple, identity(codomain.ngens))
    )
    left, right = radicals(f)
    nondeg = left.is_trivial() and right.is_trivial()
    diags = _radical_diagnostics(left, right)
    return BilinearMapPresentation(domain, codomain, vals, full, nondeg, diags)


def radicals(f: BilinearMapPresentation) -> tuple[Subgroup, Subgroup]:
    """``({x : f(x, D) = 0}, {y : f(D, y) = 0})``."""
    n, k = f.domain.ngens, f.codomain.ngens
    rels = []
    for b in range(n):
        for r in f.codomain.lattice:
            v = [0] * (n * k)
            v[b * k:(b + 1) * k] = r
            rels.append(v)
    out = []
    for left in (True, False):
        rows = []
        for a in range(n):
            row = []
            for b in range(n):
                row += list(f.values[a][b] if left else f.values[b][a])
            rows.append(row)
        K = hom_kernel(rows, rels, n * k) if n * k else identity(n)
        out.append(Subgroup(f.domain, tuple(tuple(r) for r in K)))
    return out[0], out[1]


def _radical_diagnostics(left: Subgroup, right: Subgroup) -> tuple:
    diags = []
    if not left.is_trivial():
        diags.append(f"degenerate in the first slot: nonzero left radical {list(map(list, left.nonzero_gens()))}")
    if not right.is_trivial():
        diags.append(f"degenerate in the second slot: nonzero right radical {list(map(list, right.nonzero_gens()))}")
    return tuple(diags)


def induced_bilinear(R: RingPresentation) -> BilinearMapPresentation:
    """``f_F : R/Ann x R/Ann -> R^2``, ``f(x + Ann, y + Ann) = xy``."""
    A = ann(R)
    sq = square(R)
    D, lifts, _ = smith_presentation(AbGroupPresentation(R.rank, A.lattice))
    sq_group = sq.as_group()
    C, c_lifts, to_C = smith_presentation(sq_group)
    basis = [list(r) for r in sq.lattice]
    embed = tuple(R.canonical(vecmat(c, basis, R.rank)) for c in c_lifts)

    def coords(v):
        return to_C(solve_rows(basis, v))

    n = D.ngens
    values = [[coords(R.multiply(lifts[a], lifts[b])) for b in range(n)] for a in range(n)]
    f = make_bilinear(D, C, values)
    return BilinearMapPresentation(
        f.domain, f.codomain, f.values, f.full, f.nondegenerate, f.diagnostics,
        tuple(lifts), embed, R,
    )


def zero_map(domain: AbGroupPresentation) -> BilinearMapPresentation:
    n = domain.ngens
    return make_bilinear(domain, AbGroupPresentation(0), [[() for _ in range(n)] for _ in range(n)])


# --------------------------------------------------------------------------
# endomorphism lattices
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EndoPair:
    """Endomorphisms of the domain (``phi``) and codomain (``phi0``), rows = images."""

    phi: tuple
    phi0: tuple


def _flat(M) -> list[int]:
    return [v for row in M for v in row]


def _unflat(z, n: int) -> list[list[int]]:
    return [list(z[a * n:(a + 1) * n]) for a in range(n)]


def _block_lattice(G: AbGroupPresentation, blocks: int) -> list[list[int]]:
    n = G.ngens
    out = []
    for b in range(blocks):
        for r in G.lattice:
            v = [0] * (n * blocks)
            v[b * n:(b + 1) * n] = r
            out.append(v)
    return out


def endo_lattice(G: AbGroupPresentation) -> list[list[int]]:
    """Flattened matrices ``E`` with ``L E`` inside ``L`` (well-defined endomorphisms)."""
    n = G.ngens
    if n == 0:
        return []
    imgs = []
    for p in range(n * n):
        z = [0] * (n * n)
        z[p] = 1
        Phi = _unflat(z, n)
        imgs.append([v for rel in G.lattice for v in vecmat(rel, Phi, n)])
    rels = _block_lattice(G, len(G.lattice))
    if not G.lattice:
        return identity(n * n)
    return hom_kernel(imgs, rels, n * len(G.lattice))


def zero_endos(G: AbGroupPresentation) -> list[list[int]]:
    """Flattened matrices acting as zero: every row lies in the relation lattice."""
    return hnf_basis(_block_lattice(G, G.ngens), G.ngens ** 2) if G.lattice else []


def _restrict(basis, constraint: Callable, target: AbGroupPresentation, blocks: int, nz: int) -> list[list[int]]:
    """Sublattice of ``span(basis)`` where ``constraint(z)`` vanishes in ``target^blocks``."""
    if not basis:
        return []
    width = target.ngens * blocks
    if width == 0:
        return [list(b) for b in basis]
    imgs = [constraint(b) for b in basis]
    K = hom_kernel(imgs, _block_lattice(target, blocks), width)
    rows = [vecmat(k, basis, nz) for k in K]
    return hnf_basis(rows, nz) if rows else []


def _apply_endo(Phi, x, n) -> list[int]:
    return vecmat(x, Phi, n)


def _f_phi_left(f: BilinearMapPresentation, Phi, a: int, b: int) -> list[int]:
    """``f(phi g_a, g_b)`` as an unreduced codomain vector (linear in ``Phi``)."""
    k = f.codomain.ngens
    out = [0] * k
    for c, coef in enumerate(Phi[a]):
        if coef:
            for e, v in enumerate(f.values[c][b]):
                out[e] += coef * v
    return out


def _f_phi_right(f: BilinearMapPresentation, Phi, a: int, b: int) -> list[int]:
    k = f.codomain.ngens
    out = [0] * k
    for c, coef in enumerate(Phi[b]):
        if coef:
            for e, v in enumerate(f.values[a][c]):
                out[e] += coef * v
    return out


def value_relations(f: BilinearMapPresentation) -> list[list[int]]:
    """Basis of ``K = {(n_ab) : sum n_ab f(g_a, g_b) = 0}``."""
    n = f.domain.ngens
    imgs = [list(f.values[a][b]) for a in range(n) for b in range(n)]
    if not imgs:
        return []
    if f.codomain.ngens == 0:
        return identity(n * n)
    return hom_kernel(imgs, f.codomain.lattice, f.codomain.ngens)


def _sym_lattice(f, base) -> list[list[int]]:
    n, nz = f.domain.ngens, f.domain.ngens ** 2

    def sym(z):
        Phi = _unflat(z, n)
        return [v for a in range(n) for b in range(n)
                for v in (x - y for x, y in zip(_f_phi_left(f, Phi, a, b), _f_phi_right(f, Phi, a, b)))]

    return _restrict(base, sym, f.codomain, n * n, nz)


def _s_conditions(f, base) -> list[list[int]]:
    n, nz = f.domain.ngens, f.domain.ngens ** 2
    K = value_relations(f)

    def cond(z):
        Phi = _unflat(z, n)
        out = []
        for rel in K:
            acc = [0] * f.codomain.ngens
            for p, coef in enumerate(rel):
                if coef:
                    a, b = divmod(p, n)
                    for e, v in enumerate(_f_phi_left(f, Phi, a, b)):
                        acc[e] += coef * v
            out += acc
        return out

    return _restrict(base, cond, f.codomain, len(K), nz)


def _centralizer(f, sym_basis) -> list[list[int]]:
    n, nz = f.domain.ngens, f.domain.ngens ** 2
    D = f.domain
    alphas = [_unflat(a, n) for a in sym_basis]

    def comm(z):
        B = _unflat(z, n)
        out = []
        for A in alphas:
            AB = [vecmat(row, B, n) for row in A]
            BA = [vecmat(row, A, n) for row in B]
            out += [x - y for r1, r2 in zip(AB, BA) for x, y in zip(r1, r2)]
        return out

    return _restrict(sym_basis, comm, D, n * len(alphas), nz)


def _codomain_expressions(f) -> list[list[int]]:
    """For each codomain generator, coefficients ``m_ab`` with ``sum m_ab f(g_a, g_b)`` equal to it."""
    n, k = f.domain.ngens, f.codomain.ngens
    vals = [list(f.values[a][b]) for a in range(n) for b in range(n)]
    out = []
    for e in identity(k):
        x = solve_rows(vals + [list(r) for r in f.codomain.lattice], e)
        if x is None:
            raise ValueError("bilinear map is not full")
        out.append(x[: n * n])
    return out


def induced_codomain_endo(f, Phi) -> tuple:
    """``phi0`` defined by ``phi0(f(x, y)) = f(phi x, y)`` (needs a full map)."""
    n = f.domain.ngens
    rows = []
    for m in _codomain_expressions(f):
        acc = [0] * f.codomain.ngens
        for p, coef in enumerate(m):
            if coef:
                a, b = divmod(p, n)
                for e, v in enumerate(_f_phi_left(f, Phi, a, b)):
                    acc[e] += coef * v
        rows.append(f.codomain.canonical(acc))
    return tuple(rows)


def _pair_lattice(f) -> tuple[list[list[int]], list[list[int]]]:
    """Single-step pairs ``(phi, phi0)`` with ``f(phi x, y) = f(x, phi y) = phi0 f(x, y)``.

    Returns the lattice of flattened pairs and its projection to ``phi``.
    """
    n, k = f.domain.ngens, f.codomain.ngens
    nz, nk = n * n, k * k
    base = []
    for z in endo_lattice(f.domain):
        base.append(list(z) + [0] * nk)
    for z in endo_lattice(f.codomain):
        base.append([0] * nz + list(z))
    if not base:
        return [], []

    def cond(w):
        Phi = _unflat(w[:nz], n)
        Phi0 = _unflat(w[nz:], k) if k else []
        out = []
        for a in range(n):
            for b in range(n):
                left = _f_phi_left(f, Phi, a, b)
                right = _f_phi_right(f, Phi, a, b)
                scaled = vecmat(f.values[a][b], Phi0, k) if k else []
                out += [x - y for x, y in zip(left, right)]
                out += [x - y for x, y in zip(left, scaled)]
        return out

    L = _restrict(hnf_basis(base, nz + nk), cond, f.codomain, 2 * n * n, nz + nk)
    proj = [w[:nz] for w in L]
    return L, (hnf_basis(proj, nz) if proj else [])


def sym_endos(f: BilinearMapPresentation) -> list[EndoPair]:
    """Generators of the pairs satisfying symmetry and the relation-lattice conditions.

    Zero endomorphisms are dropped, so the list generates the group of pairs.
    """
    n, k = f.domain.ngens, f.codomain.ngens
    L, _ = _pair_lattice(f)
    zD, zC = zero_endos(f.domain), zero_endos(f.codomain)
    Z0 = [list(z) + [0] * (k * k) for z in zD] + [[0] * (n * n) + list(z) for z in zC]
    width = n * n + k * k
    G = AbGroupPresentation(width, tuple(tuple(r) for r in hnf_basis(Z0, width)) if Z0 else ())
    pairs = Subgroup(G, tuple(tuple(r) for r in L))
    out = []
    for g, _ in pairs.as_group().smith_generators():
        w = vecmat(g, pairs.lattice, width)
        out.append(EndoPair(
            tuple(map(tuple, _unflat(w[: n * n], n))),
            tuple(map(tuple, _unflat(w[n * n:], k))),
        ))
    return out


# --------------------------------------------------------------------------
# rings of scalars
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarRingResult:
    """A computed ring of scalars.

    ``generators[i]`` is the endomorphism pair of the ``i``-th generator of
    ``ring``; ``unit`` is the index of the identity pair (always 0).
    """

    generators: tuple
    ring: ScalarRingPresentation
    unit: int = 0
    diagnostics: tuple = ()


@dataclass(frozen=True)
class StagedLattices:
    sym: list
    centralizer: list
    staged: list
    one_shot: list
    zero: list


def staged_lattices(f: BilinearMapPresentation) -> StagedLattices:
    n = f.domain.ngens
    nz = n * n
    E = endo_lattice(f.domain)
    sym = _sym_lattice(f, E)
    cen = _centralizer(f, sym)
    staged = _s_conditions(f, cen)
    _, one_shot = _pair_lattice(f)
    return StagedLattices(sym, cen, staged, one_shot, zero_endos(f.domain))


def _same_mod_zero(A, B, Z0, nz) -> bool:
    LA = hnf_basis([list(r) for r in A] + [list(r) for r in Z0], nz) if (A or Z0) else []
    LB = hnf_basis([list(r) for r in B] + [list(r) for r in Z0], nz) if (B or Z0) else []
    return LA == LB


def _witness_outside(A, B, Z0, nz):
    LB = hnf_basis([list(r) for r in B] + [list(r) for r in Z0], nz) if (B or Z0) else []
    for r in A:
        if not lattice_contains(LB, r):
            return r
    return None


def _ring_from_endos(f: BilinearMapPresentation, lattice, extra_diags=()) -> ScalarRingResult:
    n = f.domain.ngens
    nz = n * n
    if n == 0:
        trivial = ScalarRingPresentation(RingPresentation(1, [1]), (0,))
        diags = tuple(f.diagnostics) + tuple(extra_diags)
        diags += ("domain is trivial: the ring of scalars is the zero ring",)
        return ScalarRingResult((EndoPair((), ()),), trivial, 0, diags)
    Z0 = zero_endos(f.domain)
    G = AbGroupPresentation(nz, tuple(tuple(r) for r in Z0))
    ident = _flat(identity(n))
    P = Subgroup(G, tuple(tuple(r) for r in lattice))
    if not P.contains(ident):
        raise ScalarComputationError("identity is missing from the ring of scalars")
    one_sub = Subgroup(G, (tuple(ident),))
    rest = quotient_group(one_sub, P)
    gens = [list(G.canonical(ident))]
    for g, _ in rest.smith_generators():
        gens.append(list(G.canonical(vecmat(g, P.lattice, nz))))
    m = len(gens)
    rels = hom_kernel(gens, G.lattice, nz) if m else []
    mats = [_unflat(g, n) for g in gens]
    tensor = []
    for i in range(m):
        row = []
        for j in range(m):
            # row-vector convention: (phi_i o phi_j)(x) = x Phi_j Phi_i
            prod = [vecmat(r, mats[i], n) for r in mats[j]]
            pz = _flat(prod)
            if not P.contains(pz):
                raise ScalarComputationError("ring of scalars is not closed under composition", (gens[i], gens[j]))
            x = solve_rows(gens + [list(r) for r in G.lattice], pz)
            row.append(tuple(x[:m]))
        tensor.append(tuple(row))
    base = RingPresentation.from_relations(m, rels, tensor)
    basis = base.basis()
    for i in range(m):
        for j in range(i + 1, m):
            if base.multiply(basis[i], basis[j]) != base.multiply(basis[j], basis[i]):
                raise ScalarComputationError("ring of scalars is not commutative", (gens[i], gens[j]))
    one = tuple(identity(m)[0]) if m else ()
    A = ScalarRingPresentation(base, one)
    pairs = []
    full = f.full
    for M in mats:
        phi0 = induced_codomain_endo(f, M) if full else ()
        pairs.append(EndoPair(tuple(map(tuple, M)), phi0))
    return ScalarRingResult(tuple(pairs), A, 0, tuple(f.diagnostics) + tuple(extra_diags))


def largest_scalar_ring(f: BilinearMapPresentation) -> ScalarRingResult:
    """``P(f)`` via the staged computation, cross-checked against the pair description."""
    if not f.full:
        raise ValueError("largest_scalar_ring needs a full bilinear map")
    S = staged_lattices(f)
    nz = f.domain.ngens ** 2
    if not _same_mod_zero(S.staged, S.one_shot, S.zero, nz):
        w = _witness_outside(S.one_shot, S.staged, S.zero, nz) or _witness_outside(S.staged, S.one_shot, S.zero, nz)
        raise ScalarComputationError(
            "staged and single-step rings of scalars differ", counterexample=w
        )
    return _ring_from_endos(f, S.staged)


def _eta_matrix(f: BilinearMapPresentation) -> list[list[int]]:
    """Rows: images in the domain of the codomain generators under ``R^2 -> R/Ann``."""
    R = f.ring
    A = ann(R)
    D_full = AbGroupPresentation(R.rank, A.lattice)
    _, _, to_D = smith_presentation(D_full)
    return [list(to_D(v)) for v in f.codomain_embedding]


def ring_of_scalars(R: RingPresentation) -> ScalarRingResult:
    """``A(R)``: pairs of ``P(f_F)`` for which ``eta : R^2 -> R/Ann(R)`` is linear."""
    f = induced_bilinear(R)
    P = largest_scalar_ring(f)
    n, k = f.domain.ngens, f.codomain.ngens
    nz = n * n
    S = staged_lattices(f)
    eta = _eta_matrix(f)
    exprs = _codomain_expressions(f) if k else []

    def cond(z):
        Phi = _unflat(z, n)
        out = []
        for e in range(k):
            # phi0(c_e) = sum m_ab f(phi g_a, g_b)
            acc = [0] * k
            for p, coef in enumerate(exprs[e]):
                if coef:
                    a, b = divmod(p, n)
                    for t, v in enumerate(_f_phi_left(f, Phi, a, b)):
                        acc[t] += coef * v
            lhs = vecmat(acc, eta, n) if k else [0] * n
            rhs = vecmat(eta[e], Phi, n)
            out += [x - y for x, y in zip(lhs, rhs)]
        return out

    L = _restrict(S.staged, cond, f.domain, k, nz)
    return _ring_from_endos(f, L)


# --------------------------------------------------------------------------
# type
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BilinearType:
    width_upper: int
    c1_upper: Optional[int]
    c2_upper: Optional[int]
    width_exact: bool = False
    c1_exact: bool = False
    c2_exact: bool = False

    def as_tuple(self) -> tuple:
        return (self.width_upper, self.c1_upper, self.c2_upper)


def _kernel_of_slot(f, elems, left: bool) -> Subgroup:
    """``{y : f(e, y) = 0 for e in elems}`` (or ``f(y, e)`` when ``left`` is false)."""
    n, k = f.domain.ngens, f.codomain.ngens
    if not elems or k == 0:
        return Subgroup(f.domain, tuple(map(tuple, identity(n))))
    rows = []
    for b in range(n):
        gb = identity(n)[b]
        row = []
        for e in elems:
            row += list(f(e, gb) if left else f(gb, e))
        rows.append(row)
    rels = _block_lattice(f.codomain, len(elems))
    K = hom_kernel(rows, rels, k * len(elems))
    return Subgroup(f.domain, tuple(tuple(r) for r in K))


WIDTH_ELEMENT_LIMIT = 4096
SUBSET_BUDGET = 20000


def _complete_count(f, left: bool, limit_elems: int = 4096) -> tuple[Optional[int], bool]:
    n = f.domain.ngens
    gens = [tuple(r) for r in identity(n)]
    if n == 0:
        return 0, True
    best = None
    for size in range(0, n + 1):
        for E in itertools.combinations(gens, size):
            if _kernel_of_slot(f, list(E), left).is_trivial():
                best = size
                break
        if best is not None:
            break
    if best is None:
        return None, False
    if best <= 1:
        return best, True
    # exact when every smaller subset of elements can be tried
    try:
        elems = f.domain.elements(limit=limit_elems)
    except ValueError:
        return best, False
    if sum(math.comb(len(elems), k) for k in range(1, best)) > SUBSET_BUDGET:
        return best, False
    for size in range(1, best):
        for E in itertools.combinations(elems, size):
            if _kernel_of_slot(f, list(E), left).is_trivial():
                return size, True
    return best, True


def type_of(f: BilinearMapPresentation) -> BilinearType:
    """Upper bounds (and exactness flags) for ``(w(f), c1(f), c2(f))``.

    ``c1`` is the least size of a set ``E`` of domain generators with
    ``f(E, y) = 0`` only for ``y = 0``; ``c2`` is the mirror image.
    """
    C, D = f.codomain, f.domain
    if invariants(C).ngens == 0:
        w, w_exact = 0, True
    else:
        w = D.ngens
        w_exact = w == 1
        unit = [tuple(r) for r in identity(D.ngens)]
        try:
            elems = D.elements(limit=WIDTH_ELEMENT_LIMIT)
        except ValueError:
            elems = None
        if elems is not None and not w_exact:
            # f(x, D) is a subgroup for each x
            values = value_union(([f(x, u) for u in unit] for x in elems), C)
            exact = 1 if values is None else finite_width(values, C, limit=w + 1)
            if exact is not None:
                w, w_exact = exact, True
    c1, c1_exact = _complete_count(f, left=True)
    c2, c2_exact = _complete_count(f, left=False)
    return BilinearType(w, c1, c2, w_exact, c1_exact, c2_exact)
