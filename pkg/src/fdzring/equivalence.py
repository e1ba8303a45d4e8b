"""Elementary equivalence of rings with finitely generated additive group.

Two such rings ``R`` and ``S`` are elementarily equivalent exactly when either
``M(R) = N(R)`` and ``R`` is isomorphic to ``S``, or there are additions
``R_0``, ``S_0`` and an additive monomorphism ``phi : R -> S`` that is
multiplicative, induces isomorphisms ``R/R_0 -> S/S_0`` and
``M(R)/N(R) -> M(S)/N(S)``, and maps ``R_0`` onto a subgroup of ``S_0`` of
finite index prime to ``e = [M(R):N(R)] != 1``.

This module builds bases adapted to ``R >= M(R) >= N(R) >= Is(R^2) >= 0``,
checks certificates for the criterion above, searches for them, constructs
twins (rings with the addition re-embedded at a finite index) and provides
the prime arithmetic behind the twisted embeddings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import sympy

from . import _search
from .ideals import addition, ann, bigM, bigN, delta, is_addition, is_regular, square, width_bounds
from .ring_core import (
    PresentationError,
    RingPresentation,
    change_basis,
    check_isomorphism,
    direct_product,
    subring_presentation,
)
from .scalars import ScalarComputationError, ring_of_scalars
from .verdict import Verdict, VerdictKind
from .zlattice import (
    AbGroupPresentation,
    Subgroup,
    complement_of,
    det,
    hom_kernel,
    identity,
    invariants,
    inverse_unimodular,
    quotient_invariants,
    relative_index,
    saturation,
    snf,
    solve_rows,
    subgroup_intersection,
    subgroup_sum,
    vecmat,
    whole,
)

# --------------------------------------------------------------------------
# adapted bases
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AdaptedBasis:
    """A generating family of ``R`` refining ``R >= M >= N >= Is(R^2) >= 0``.

    ``basis`` rows are elements of ``R`` in its own coordinates.  Breakpoints
    are 1-based: ``u_1..u_{l-1}`` lift a basis of ``R/M``, ``u_l..u_{m-1}`` the
    invariant factors ``e_factors`` of ``M/N``, ``u_m..u_{n-1}`` a basis of
    the addition (the first ``p = m - l`` being ``e_i u_i`` up to ``Is(R^2)``),
    ``u_n..u_r`` a pseudo-basis of ``Is(R^2)``.  ``presentation`` is ``R`` on
    this family; its torsion rows and products are the structure constants.
    """

    basis: tuple
    l: int
    m: int
    n: int
    r: int
    e_factors: tuple
    presentation: RingPresentation
    addition_gens: tuple

    @property
    def p(self) -> int:
        return self.m - self.l

    @property
    def e(self) -> int:
        return math.prod(self.e_factors)

    @property
    def torsion(self) -> dict:
        return self.presentation.torsion

    @property
    def mult(self) -> dict:
        return self.presentation.mult

    @property
    def periods(self) -> tuple:
        return self.presentation.periods

    def segment(self, k: int) -> range:
        """0-based index range of segment ``k`` in 1..4."""
        bounds = [0, self.l - 1, self.m - 1, self.n - 1, self.r]
        return range(bounds[k - 1], bounds[k])


def _free_basis(S: Subgroup) -> list[tuple]:
    """Lifts of Smith generators of ``S`` (torsion ones included)."""
    G = S.as_group()
    return [tuple(S.ambient.canonical(vecmat(g, S.lattice, S.n))) for g, _ in G.smith_generators()]


def adapted_basis(R: RingPresentation) -> AdaptedBasis:
    G = R.group
    W = whole(G)
    isq = saturation(square(R))
    M, N = bigM(R), bigN(R)
    R0 = addition(R)

    seg1 = _free_basis(complement_of(M, W))
    C = complement_of(isq, M)
    cb = _free_basis(C)
    k = len(cb)
    r0b = _free_basis(R0)
    if len(r0b) != k:
        raise AssertionError("addition and M/Is(R^2) have different ranks")
    seg2, seg3, efac = [], [], []
    if k:
        # project the addition onto C along Is(R^2)
        X = []
        for r in r0b:
            y = solve_rows([list(c) for c in cb] + [list(v) for v in isq.lattice], r)
            X.append(y[:k])
        sd = snf(X, k)
        F = [vecmat(row, cb, R.rank) for row in inverse_unimodular(sd.V)]
        newR0 = [vecmat(row, r0b, R.rank) for row in sd.U]
        diag = sd.diagonal
        big = [i for i in range(k) if diag[i] != 1]
        small = [i for i in range(k) if diag[i] == 1]
        seg2 = [tuple(G.canonical(F[i])) for i in big]
        efac = [diag[i] for i in big]
        seg3 = [tuple(G.canonical(newR0[i])) for i in big + small]
    seg4 = _free_basis(isq)
    rows = seg1 + seg2 + seg3 + seg4
    l = len(seg1) + 1
    m = l + len(seg2)
    n = m + len(seg3)
    r = n + len(seg4) - 1
    P = change_basis(R, rows) if rows else RingPresentation(0, [])
    ab = AdaptedBasis(tuple(rows), l, m, n, r, tuple(efac), P, tuple(seg3))
    problems = check_adapted(R, ab)
    if problems:
        raise AssertionError("adapted basis check failed: " + "; ".join(problems))
    return ab


def check_adapted(R: RingPresentation, ab: AdaptedBasis) -> list[str]:
    """Direct subgroup checks of every adapted-basis property."""
    G = R.group
    out = []
    M, N = bigM(R), bigN(R)
    isq = saturation(square(R))
    rows = [ab.basis[i] for i in range(len(ab.basis))]
    seg = [[rows[i] for i in ab.segment(k)] for k in (1, 2, 3, 4)]
    if Subgroup(G, tuple(rows)) != whole(G):
        out.append("family does not generate R")
    if subgroup_sum(M, Subgroup(G, tuple(seg[0]))) != whole(G):
        out.append("first segment does not generate R/M")
    if len(seg[0]) != invariants(quotient_group_of(M)).free_rank:
        out.append("first segment is not a basis of R/M")
    if not all(M.contains(x) for x in seg[1]):
        out.append("second segment leaves M")
    if subgroup_sum(N, Subgroup(G, tuple(seg[1]))) != M:
        out.append("second segment does not generate M/N")
    if tuple(quotient_invariants(N, M).torsion_factors) != tuple(ab.e_factors):
        out.append("invariant factors of M/N disagree")
    if any(b % a for a, b in zip(ab.e_factors, ab.e_factors[1:])):
        out.append("invariant factors do not form a divisibility chain")
    A = ann(R)
    if not all(A.contains(x) for x in seg[2]):
        out.append("third segment leaves Ann(R)")
    span3 = Subgroup(G, tuple(seg[2]))
    if subgroup_sum(isq, span3) != N:
        out.append("third segment does not generate N/Is(R^2)")
    for i, e in enumerate(ab.e_factors):
        diff = [e * a - b for a, b in zip(seg[1][i], seg[2][i])]
        if not isq.contains(diff):
            out.append(f"e_{i + 1} u_{ab.l + i} differs from u_{ab.m + i} outside Is(R^2)")
    if Subgroup(G, tuple(seg[3])) != isq:
        out.append("fourth segment does not generate Is(R^2)")
    P = ab.presentation
    for (i, j), c in P.mult.items():
        if any(k < ab.n - 1 for k in c):
            out.append(f"product u_{i + 1} u_{j + 1} leaves the Is(R^2) segment")
    return out


def quotient_group_of(S: Subgroup) -> AbGroupPresentation:
    return AbGroupPresentation(S.n, S.lattice)


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EquivCertificate:
    """``phi`` rows are images of the generators of ``R`` in ``S``."""

    phi: tuple
    R0_gens: tuple
    S0_gens: tuple
    d: int
    e: int


def _images(phi, x):
    n = len(phi[0]) if phi else 0
    return vecmat(x, phi, n)


def _image_subgroup(S: RingPresentation, phi, sub: Subgroup) -> Subgroup:
    return Subgroup(S.group, tuple(tuple(_images(phi, g)) for g in sub.lattice))


def _is_bijective(R: RingPresentation, S: RingPresentation, phi) -> bool:
    return check_isomorphism(R, S, phi)


def certificate_failures(R: RingPresentation, S: RingPresentation, cert: EquivCertificate) -> list[str]:
    """Every violated clause of the criterion (empty when the certificate holds)."""
    phi = [list(r) for r in cert.phi]
    if len(phi) != R.rank or any(len(r) != S.rank for r in phi):
        raise PresentationError(
            f"certificate map has shape {len(phi)}x{len(phi[0]) if phi else 0}, expected {R.rank}x{S.rank}"
        )
    for g in list(cert.R0_gens):
        if len(g) != R.rank:
            raise PresentationError("R0 generator has the wrong length")
    for g in list(cert.S0_gens):
        if len(g) != S.rank:
            raise PresentationError("S0 generator has the wrong length")
    out = []
    for rel in R.group.lattice:
        if any(S.canonical(_images(phi, rel))):
            out.append("phi does not respect the relations of R")
            return out
    for x in R.basis():
        for y in R.basis():
            if S.multiply(_images(phi, x), _images(phi, y)) != S.canonical(_images(phi, R.multiply(x, y))):
                out.append("phi is not multiplicative")
                return out
    K = Subgroup(R.group, tuple(tuple(r) for r in hom_kernel(phi, S.group.lattice, S.rank))) if R.rank else None
    if K is not None and not K.is_trivial():
        out.append("phi is not injective")
        return out
    if R.rank == 0 or S.rank == 0:
        if R.group.is_zero and S.group.is_zero:
            return []
    if _is_bijective(R, S, phi):
        return []
    if is_regular(R):
        out.append("M(R) = N(R) needs a full isomorphism")
        return out
    R0 = Subgroup(R.group, tuple(tuple(g) for g in cert.R0_gens))
    S0 = Subgroup(S.group, tuple(tuple(g) for g in cert.S0_gens))
    if not is_addition(R, R0):
        out.append("R0 is not an addition of R")
    if not is_addition(S, S0):
        out.append("S0 is not an addition of S")
    if out:
        return out
    img0 = _image_subgroup(S, phi, R0)
    if not img0 <= S0:
        out.append("phi(R0) is not inside S0")
        return out
    # (a) R/R0 -> S/S0 bijective
    pre = Subgroup(R.group, tuple(tuple(r) for r in hom_kernel(phi, S0.lattice, S.rank)))
    if pre != R0:
        out.append("induced map R/R0 -> S/S0 is not injective")
    if subgroup_sum(_image_subgroup(S, phi, whole(R.group)), S0) != whole(S.group):
        out.append("induced map R/R0 -> S/S0 is not surjective")
    # (b) M(R)/N(R) -> M(S)/N(S) bijective
    MR, NR, MS, NS = bigM(R), bigN(R), bigM(S), bigN(S)
    if not _image_subgroup(S, phi, MR) <= MS or not _image_subgroup(S, phi, NR) <= NS:
        out.append("phi does not map M(R), N(R) into M(S), N(S)")
    else:
        preN = Subgroup(R.group, tuple(tuple(r) for r in hom_kernel(phi, NS.lattice, S.rank)))
        if subgroup_intersection(preN, MR) != NR:
            out.append("induced map M(R)/N(R) -> M(S)/N(S) is not injective")
        if subgroup_sum(_image_subgroup(S, phi, MR), NS) != MS:
            out.append("induced map M(R)/N(R) -> M(S)/N(S) is not surjective")
    # (c) index prime to e
    e = math.prod(quotient_invariants(NR, MR).torsion_factors)
    d = relative_index(img0, S0)
    if d == math.inf:
        out.append("phi(R0) has infinite index in S0")
    else:
        if d != cert.d:
            out.append(f"index of phi(R0) in S0 is {d}, certificate claims {cert.d}")
        if math.gcd(int(d), e) != 1:
            out.append(f"index {d} is not prime to e = {e}")
    if e == 1:
        out.append("e = 1")
    if cert.e != e:
        out.append(f"[M(R):N(R)] is {e}, certificate claims {cert.e}")
    return out


def certify(R: RingPresentation, S: RingPresentation, cert: EquivCertificate) -> bool:
    return not certificate_failures(R, S, cert)


# --------------------------------------------------------------------------
# invariant prefilter and isomorphism
# --------------------------------------------------------------------------


def _sub_inv(S: Subgroup):
    return S.invariants()


def ring_invariant_table(R: RingPresentation) -> list[tuple[str, object]]:
    """Isomorphism-invariant data, in the order the prefilter compares it."""
    A, sq = ann(R), square(R)
    isq = saturation(sq)
    M, N = bigM(R), bigN(R)
    rows = [
        ("Ann", _sub_inv(A)),
        ("R²", _sub_inv(sq)),
        ("Is(R²)", _sub_inv(isq)),
        ("M", _sub_inv(M)),
        ("N", _sub_inv(N)),
        ("M/N", quotient_invariants(N, M)),
        ("R/Ann", invariants(AbGroupPresentation(R.rank, A.lattice))),
        ("R/R²", invariants(AbGroupPresentation(R.rank, sq.lattice))),
        ("additive", invariants(R.group)),
    ]
    return rows


def _scalar_ring_key(R: RingPresentation):
    try:
        A = ring_of_scalars(R).ring
    except ScalarComputationError:
        return None
    return (invariants(A.group), _sub_inv(A.base.product_span()))


def invariant_mismatch(R: RingPresentation, S: RingPresentation) -> Optional[str]:
    """Reason naming the first differing invariant, or ``None``."""
    for (name, a), (_, b) in zip(ring_invariant_table(R), ring_invariant_table(S)):
        if a != b:
            return f"{name} invariants differ: {a} vs {b}"
    wr, ws = width_bounds(R), width_bounds(S)
    if wr.exact is not None and ws.exact is not None and wr.exact != ws.exact:
        return f"widths differ: {wr.exact} vs {ws.exact}"
    ar, as_ = _scalar_ring_key(R), _scalar_ring_key(S)
    if ar is not None and as_ is not None and ar != as_:
        return "A(R) invariants differ"
    return None


def _extras(R: RingPresentation) -> dict:
    return {0: [bigM(R), bigN(R), delta(R)]}


def decide_iso(R: RingPresentation, S: RingPresentation, height: int = 3, max_nodes: int = 50_000) -> Verdict:
    reason = invariant_mismatch(R, S)
    if reason:
        return Verdict(VerdictKind.NOT_ISOMORPHIC, reason=reason)
    src, tgt = R.structure(), S.structure()
    status, maps, why = _search.decide_isomorphism(src, tgt, height, _extras(R), _extras(S), max_nodes)
    if status == "yes":
        if not _search.is_isomorphism(src, tgt, maps):
            raise AssertionError("search returned a map that is not an isomorphism")
        return Verdict(VerdictKind.ISOMORPHIC, witness=maps[0])
    if status == "no":
        return Verdict(VerdictKind.NOT_ISOMORPHIC, reason=why)
    return Verdict(VerdictKind.UNKNOWN, reason=why)


# --------------------------------------------------------------------------
# equivalence search
# --------------------------------------------------------------------------


def _foundation_iso(R, S, R0: Subgroup, S0: Subgroup, height: int, max_nodes: int):
    FR = RingPresentation.from_relations(R.rank, R0.lattice, R.tensor)
    FS = RingPresentation.from_relations(S.rank, S0.lattice, S.tensor)
    status, maps, why = _search.decide_isomorphism(FR.structure(), FS.structure(), height, max_nodes=max_nodes)
    return status, (maps[0] if maps else None), why


def _lift_system(R, S, psi, S0: Subgroup):
    """Affine family of multiplicative homomorphisms ``R -> S`` lifting ``psi`` mod ``S0``.

    ``phi(u_j) = psi_j + z_j B0`` with ``B0`` a basis of ``S0``; returns the
    particular solution and the kernel directions, each as a list of ``phi`` rows.
    """
    nR, nS = R.rank, S.rank
    B0 = _free_basis(S0)
    k = len(B0)
    nv = nR * k
    lifts = [list(S.canonical(r)) for r in psi]

    def phi_of(z):
        rows = []
        for j in range(nR):
            v = list(lifts[j])
            for t in range(k):
                c = z[j * k + t]
                if c:
                    v = [a + c * b for a, b in zip(v, B0[t])]
            rows.append(v)
        return rows

    # each constraint: sum_j coeffs_j phi(u_j) = target in S
    cons = []
    for rel in R.group.lattice:
        cons.append((list(rel), [0] * nS))
    for i in range(nR):
        for j in range(nR):
            target = S.multiply(lifts[i], lifts[j])
            cons.append((list(R.tensor[i][j]), list(target)))
    q = len(cons)
    width = q * nS
    A = [[0] * width for _ in range(nv)]
    c = [0] * width
    for ci, (coeffs, target) in enumerate(cons):
        base = [0] * nS
        for j in range(nR):
            if coeffs[j]:
                base = [a + coeffs[j] * b for a, b in zip(base, lifts[j])]
        for s in range(nS):
            c[ci * nS + s] = target[s] - base[s]
        for j in range(nR):
            if not coeffs[j]:
                continue
            for t in range(k):
                for s in range(nS):
                    A[j * k + t][ci * nS + s] += coeffs[j] * B0[t][s]
    rel_rows = []
    for ci in range(q):
        for r in S.group.lattice:
            v = [0] * width
            v[ci * nS:(ci + 1) * nS] = r
            rel_rows.append(v)
    stacked = A + rel_rows
    if not stacked:
        return (phi_of([]) if not any(c) else None), [], phi_of
    sol = solve_rows(stacked, c)
    if sol is None:
        return None, [], phi_of
    z0 = sol[:nv]
    ker = hom_kernel(A, rel_rows, width) if nv else []
    return z0, [list(r) for r in ker], phi_of


def _candidate_additions(R: RingPresentation, height: int, limit: int = 64):
    """The deterministic addition first, then graph perturbations ``x + h(x)`` into ``Delta``."""
    R0 = addition(R)
    yield R0
    D = delta(R)
    base = _free_basis(R0)
    dgens = _free_basis(D)
    if not base or not dgens:
        return
    seen = {R0}
    rng = range(-min(height, 1), min(height, 1) + 1)
    count = 0
    for coeffs in itertools.product(rng, repeat=len(base) * len(dgens)):
        if not any(coeffs):
            continue
        gens = []
        for i, b in enumerate(base):
            v = list(b)
            for t, dg in enumerate(dgens):
                cf = coeffs[i * len(dgens) + t]
                v = [a + cf * x for a, x in zip(v, dg)]
            gens.append(tuple(v))
        S0 = Subgroup(R.group, tuple(gens))
        if S0 in seen or not is_addition(R, S0):
            continue
        seen.add(S0)
        yield S0
        count += 1
        if count >= limit:
            return


def _ordered_vectors(dim: int, height: int, cap: int):
    if dim == 0:
        yield ()
        return
    out = 0
    for c in sorted(
        itertools.product(range(-height, height + 1), repeat=dim),
        key=lambda v: (sum(abs(x) for x in v), tuple(abs(x) for x in v), tuple(-x for x in v)),
    ):
        yield c
        out += 1
        if out >= cap:
            return


def search_certificate(
    R: RingPresentation, S: RingPresentation, height: int = 3, max_nodes: int = 20_000, cap: int = 2000
) -> tuple[Optional[EquivCertificate], str]:
    """Bounded search for a certificate; returns it or the envelope description."""
    R0 = addition(R)
    e = math.prod(quotient_invariants(bigN(R), bigM(R)).torsion_factors)
    tried = 0
    for S0 in _candidate_additions(S, height):
        status, psi, why = _foundation_iso(R, S, R0, S0, height, max_nodes)
        if status != "yes":
            if status == "no":
                return None, f"foundations are not isomorphic: {why}"
            continue
        z0, ker, phi_of = _lift_system(R, S, psi, S0)
        if z0 is None:
            continue
        kdim = len(ker)
        for coeffs in _ordered_vectors(kdim, 1 if kdim > 6 else height, cap):
            z = list(z0)
            for a, row in zip(coeffs, ker):
                if a:
                    z = [x + a * y for x, y in zip(z, row)]
            phi = phi_of(z)
            tried += 1
            img0 = _image_subgroup(S, phi, R0)
            if not img0 <= S0:
                continue
            d = relative_index(img0, S0)
            if d == math.inf or math.gcd(int(d), e) != 1:
                continue
            cert = EquivCertificate(
                tuple(tuple(S.canonical(r)) for r in phi),
                tuple(_free_basis(R0)),
                tuple(_free_basis(S0)),
                int(d),
                e,
            )
            if certify(R, S, cert):
                return cert, ""
    return None, f"no certificate within height {height} ({tried} candidate maps)"


def decide_equiv(R: RingPresentation, S: RingPresentation, height: int = 3, max_nodes: int = 50_000) -> Verdict:
    """Decide ``R == S`` (elementary equivalence) with a checkable certificate."""
    reason = invariant_mismatch(R, S)
    if reason:
        return Verdict(VerdictKind.NOT_EQUIVALENT, reason=reason)
    if is_regular(R):
        v = decide_iso(R, S, height, max_nodes)
        if v.kind == VerdictKind.ISOMORPHIC:
            cert = EquivCertificate(
                tuple(tuple(r) for r in v.witness),
                tuple(_free_basis(addition(R))),
                tuple(_free_basis(addition(S))),
                1,
                1,
            )
            return Verdict(VerdictKind.EQUIVALENT, witness=cert, reason="M = N: equivalent via isomorphism")
        if v.kind == VerdictKind.NOT_ISOMORPHIC:
            return Verdict(VerdictKind.NOT_EQUIVALENT, reason=f"M = N and not isomorphic: {v.reason}")
        return Verdict(VerdictKind.UNKNOWN, reason=v.reason)
    cert, why = search_certificate(R, S, height, max_nodes)
    if cert is not None:
        return Verdict(VerdictKind.EQUIVALENT, witness=cert)
    if why.startswith("foundations are not isomorphic"):
        return Verdict(VerdictKind.NOT_EQUIVALENT, reason=why)
    return Verdict(VerdictKind.UNKNOWN, reason=why)


# --------------------------------------------------------------------------
# twins
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistSpec:
    d_list: tuple
    B: Optional[tuple] = None
    j: Optional[int] = None


@dataclass(frozen=True)
class Twin:
    ring: RingPresentation
    certificate: EquivCertificate
    adapted: AdaptedBasis


def make_twin(R: RingPresentation, spec: TwistSpec) -> Twin:
    """Re-embed the addition of ``R`` so that ``e_i v_i = sum_k b_ik d_k w_k``.

    The new ring lives on the adapted family of ``R`` with the first ``p``
    addition generators replaced by fresh ``w_k``; the certificate maps
    ``u_{m+i}`` to ``sum_k b_ik d_k w_k`` and fixes every other generator.
    """
    if is_regular(R):
        raise ValueError("twin undefined when M = N")
    ab = adapted_basis(R)
    p, e = ab.p, ab.e
    d = [int(x) for x in spec.d_list]
    if len(d) == 1 and p > 1:
        d = d * p
    if len(d) != p:
        raise ValueError(f"need {p} twist factors, got {len(d)}")
    if any(x <= 0 for x in d):
        raise ValueError("twist factors must be positive")
    if math.gcd(math.prod(d), e) != 1:
        raise ValueError(f"gcd(d, e) = gcd({math.prod(d)}, {e}) != 1")
    B = [list(r) for r in spec.B] if spec.B is not None else identity(p)
    if len(B) != p or any(len(r) != p for r in B) or abs(det(B)) != 1:
        raise ValueError("B must be a unimodular p x p matrix")
    if spec.j is not None:
        raise ValueError("stage-twisted twins are not constructed; use twist_sequence")
    BD = [[B[i][k] * d[k] for k in range(p)] for i in range(p)]
    P = ab.presentation
    r = P.rank
    s3 = ab.m - 1  # 0-based start of the addition segment
    rels = []
    for row in P.group.lattice:
        row = list(row)
        piv = next(i for i, v in enumerate(row) if v)
        if piv in ab.segment(2):
            i = piv - (ab.l - 1)
            y = row[s3:s3 + p]
            if y != [-1 if t == i else 0 for t in range(p)]:
                raise AssertionError("unexpected relation shape in the adapted presentation")
            new = [sum(y[a] * BD[a][b] for a in range(p)) for b in range(p)]
            row[s3:s3 + p] = new
        elif piv not in ab.segment(4):
            raise AssertionError("relation outside the expected segments")
        rels.append(row)
    S = RingPresentation.from_relations(r, rels, P.tensor)
    # certificate in the original coordinates of R
    phi_adapted = [list(u) for u in identity(r)]
    for i in range(p):
        v = [0] * r
        v[s3:s3 + p] = BD[i]
        phi_adapted[s3 + i] = v
    basis = [list(b) for b in ab.basis]
    phi = []
    for u in identity(R.rank):
        a = solve_rows(basis + [list(x) for x in R.group.lattice], u)[:r]
        phi.append(tuple(S.canonical(vecmat(a, phi_adapted, r))))
    R0 = Subgroup(R.group, ab.addition_gens)
    S0 = Subgroup(S.group, tuple(tuple(identity(r)[i]) for i in ab.segment(3)))
    img0 = Subgroup(S.group, tuple(tuple(vecmat(g, phi, r)) for g in R0.lattice))
    cert = EquivCertificate(
        tuple(phi),
        tuple(ab.addition_gens),
        tuple(tuple(identity(r)[i]) for i in ab.segment(3)),
        int(relative_index(img0, S0)),
        e,
    )
    return Twin(S, cert, ab)


def twin(R: RingPresentation, spec: TwistSpec) -> RingPresentation:
    return make_twin(R, spec).ring


def twist_sequence(d: int, e: int, j: int) -> tuple[int, int]:
    """``q`` = product of the first ``j`` primes not dividing ``d``; ``alpha = d + q e``.

    Checks that no prime up to the ``j``-th such prime divides ``alpha``.
    """
    if j < 1:
        raise ValueError("j must be at least 1")
    if d < 1 or e < 1:
        raise ValueError("d and e must be positive")
    if math.gcd(d, e) != 1:
        raise ValueError(f"gcd(d, e) = gcd({d}, {e}) != 1")
    pool, p = [], 1
    while len(pool) < j:
        p = sympy.nextprime(p)
        if d % p:
            pool.append(p)
    q = math.prod(pool)
    alpha = d + q * e
    for t in sympy.primerange(2, pool[-1] + 1):
        if alpha % t == 0:
            raise AssertionError(f"prime {t} divides {alpha}")
    return q, alpha


# --------------------------------------------------------------------------
# neutral part
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class NeutralSplit:
    core: RingPresentation
    neutral_rank: int
    core_gens: tuple
    neutral_gens: tuple

    def witness(self) -> list[tuple]:
        return list(self.core_gens) + list(self.neutral_gens)


def neutral_split(R: RingPresentation) -> NeutralSplit:
    """Split off the addition generators that no structure constant involves."""
    ab = adapted_basis(R)
    seg3 = list(ab.segment(3))
    neutral = seg3[ab.p:]
    core_idx = [i for i in range(len(ab.basis)) if i not in neutral]
    core_gens = tuple(ab.basis[i] for i in core_idx)
    neutral_gens = tuple(ab.basis[i] for i in neutral)
    core, _ = subring_presentation(R, core_gens) if core_gens else (RingPresentation(0, []), [])
    out = NeutralSplit(core, len(neutral), core_gens, neutral_gens)
    rebuilt = direct_product(core, RingPresentation.zero_ring(len(neutral)))
    if not check_isomorphism(rebuilt, R, out.witness()):
        raise AssertionError("neutral split does not rebuild the ring")
    return out
