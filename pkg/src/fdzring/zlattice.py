"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain nested lists (or tuples) of Python ints, so entries never
overflow.  Vectors are row vectors throughout: a matrix ``A`` acts on a row
vector ``x`` as ``x A``, and the rows of a matrix generate a lattice.

A finitely generated abelian group is presented as ``Z^n / L`` where ``L`` is
the row lattice of a relation matrix.  A subgroup of it is stored as the
lattice ``L' >= L`` of its full preimage in ``Z^n``, kept in Hermite normal
form so that equality of subgroups is entry-wise comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

Matrix = Sequence[Sequence[int]]

INFINITE = math.inf


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _elimination_step(a: int, b: int) -> tuple[int, int, int, int]:
    """Unimodular ``[[x, y], [-q, p]]`` sending ``(a, b)`` to ``(g, 0)``.

    Uses plain subtraction when ``a`` divides ``b`` so that eliminating an
    already reduced entry never swaps rows.
    """
    if a and b % a == 0:
        return 1, 0, 1, b // a
    g, x, y = xgcd(a, b)
    return x, y, a // g, b // g


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def transpose(A: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    if not A:
        return []
    if not B:
        return [[0] * (ncols or 0) for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(x: Sequence[int], A: Matrix, ncols: Optional[int] = None) -> list[int]:
    """Row vector times matrix."""
    n = len(A[0]) if A else (ncols or 0)
    out = [0] * n
    for xi, row in zip(x, A):
        if xi:
            for j, a in enumerate(row):
                if a:
                    out[j] += xi * a
    return out


def vadd(x: Sequence[int], y: Sequence[int]) -> list[int]:
    return [a + b for a, b in zip(x, y)]


def vsub(x: Sequence[int], y: Sequence[int]) -> list[int]:
    return [a - b for a, b in zip(x, y)]


def vscale(c: int, x: Sequence[int]) -> list[int]:
    return [c * a for a in x]


def det(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def is_unimodular(U: Matrix) -> bool:
    return len(U) == (len(U[0]) if U else 0) and abs(det(U)) == 1


def inverse_unimodular(U: Matrix) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    n = len(U)
    H, T = hnf(U)
    # U unimodular => H is the identity and T = U^{-1}
    if any(H[i][j] != int(i == j) for i in range(n) for j in range(n)):
        raise ValueError("matrix is not unimodular")
    return T


# --------------------------------------------------------------------------
# Hermite and Smith normal forms
# --------------------------------------------------------------------------


def hnf(A: Matrix, ncols: Optional[int] = None) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U A = H``.  ``H`` is in row
    echelon form, pivots are positive, entries above a pivot lie in
    ``[0, pivot)`` and zero rows come last.
    """
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    H = [list(r) for r in A]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            x, y, p, q = _elimination_step(a, b)
            Hr, Hi = H[r], H[i]
            H[r] = [x * s + y * t for s, t in zip(Hr, Hi)]
            H[i] = [p * t - q * s for s, t in zip(Hr, Hi)]
            Ur, Ui = U[r], U[i]
            U[r] = [x * s + y * t for s, t in zip(Ur, Ui)]
            U[i] = [p * t - q * s for s, t in zip(Ur, Ui)]
        piv = H[r][c]
        if piv == 0:
            continue
        if piv < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
            piv = -piv
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [s - f * t for s, t in zip(H[i], H[r])]
                U[i] = [s - f * t for s, t in zip(U[i], U[r])]
        r += 1
    return H, U


def hnf_basis(A: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    """Nonzero rows of the Hermite normal form: a canonical lattice basis."""
    H, _ = hnf(A, ncols)
    return [row for row in H if any(row)]


def hnf_mod(A: Matrix, ncols: int, D: int) -> list[list[int]]:
    """HNF basis of ``span(A) + D Z^ncols`` with entries kept below ``D``.

    Avoids coefficient growth when the lattice is known to contain ``D Z^n``.
    """
    D = abs(D)
    rows = [[v % D for v in r] for r in A]
    rows = [r for r in rows if any(r)]
    out = []
    for c in range(ncols):
        p = [0] * ncols
        p[c] = D
        pool = []
        for q in rows:
            if q[c] == 0:
                pool.append(q)
                continue
            x, y, a, b = _elimination_step(p[c], q[c])
            p, q = ([(x * s + y * t) % D if k > c else x * s + y * t for k, (s, t) in enumerate(zip(p, q))],
                    [(a * t - b * s) % D for s, t in zip(p, q)])
            if any(q):
                pool.append(q)
        g = p[c]
        if g < 0:
            p = [-v % D if k > c else -v for k, v in enumerate(p)]
            g = -g
        extra = [(D // g) * v % D if k > c else 0 for k, v in enumerate(p)]
        if any(extra):
            pool.append(extra)
        out.append(p)
        rows = pool
    for i in range(ncols):
        for j in range(i):
            f = out[j][i] // out[i][i]
            if f:
                out[j] = [s - f * t for s, t in zip(out[j], out[i])]
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """``U A V = D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: list
    D: list
    V: list

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]


def snf(A: Matrix, ncols: Optional[int] = None) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    The diagonal is nonnegative, each entry divides the next and zeros trail.
    """
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    D = [list(r) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return _finish_snf(U, D, V)
            _, i0, j0 = best
            if i0 != t:
                swap_rows(t, i0)
            if j0 != t:
                swap_cols(t, j0)
            clean = True
            # eliminate column t below the pivot
            for i in range(t + 1, m):
                b = D[i][t]
                if b == 0:
                    continue
                a = D[t][t]
                x, y, p, q = _elimination_step(a, b)
                Dt, Di = D[t], D[i]
                D[t] = [x * s + y * w for s, w in zip(Dt, Di)]
                D[i] = [p * w - q * s for s, w in zip(Dt, Di)]
                Ut, Ui = U[t], U[i]
                U[t] = [x * s + y * w for s, w in zip(Ut, Ui)]
                U[i] = [p * w - q * s for s, w in zip(Ut, Ui)]
            # eliminate row t right of the pivot
            for j in range(t + 1, n):
                b = D[t][j]
                if b == 0:
                    continue
                a = D[t][t]
                x, y, p, q = _elimination_step(a, b)
                for row in D:
                    s, w = row[t], row[j]
                    row[t], row[j] = x * s + y * w, p * w - q * s
                for row in V:
                    s, w = row[t], row[j]
                    row[t], row[j] = x * s + y * w, p * w - q * s
                if any(D[i][t] for i in range(t + 1, m)):
                    clean = False
            if not clean:
                continue
            piv = D[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and start over
            D[t] = [s + w for s, w in zip(D[t], D[bad])]
            U[t] = [s + w for s, w in zip(U[t], U[bad])]
    return _finish_snf(U, D, V)


def _finish_snf(U, D, V) -> SmithDecomposition:
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i] < 0:
            D[i] = [-v for v in D[i]]
            U[i] = [-v for v in U[i]]
    return SmithDecomposition(U, D, V)


# --------------------------------------------------------------------------
# kernels, solving, lattices
# --------------------------------------------------------------------------


def kernel_basis(A: Matrix, ncols: Optional[int] = None) -> list[list[int]]:
    """Basis (rows, HNF) of the integer kernel ``{v : A v = 0}``."""
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(n)
    H, U = hnf(transpose(A))
    kern = [U[i] for i in range(n) if not any(H[i])]
    return hnf_basis(kern, n) if kern else []


def left_kernel(A: Matrix, nrows: Optional[int] = None) -> list[list[int]]:
    """Basis of ``{x : x A = 0}``."""
    m = len(A) if A else (nrows or 0)
    if not A or not A[0]:
        return identity(m)
    return kernel_basis(transpose(A), m)


def solve(A: Matrix, b: Sequence[int]) -> Optional[list[int]]:
    """Some integer ``x`` with ``A x = b``, or ``None`` if there is none."""
    m = len(A)
    n = len(A[0]) if A else 0
    if m == 0:
        return [0] * n
    sd = snf(A)
    c = [sum(u * v for u, v in zip(row, b)) for row in sd.U]
    y = [0] * n
    for i in range(m):
        d = sd.D[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return [sum(v * yy for v, yy in zip(row, y)) for row in sd.V]


def solve_rows(B: Matrix, v: Sequence[int]) -> Optional[list[int]]:
    """Some integer ``x`` with ``x B = v`` (``v`` in the row lattice of ``B``)."""
    if not B:
        return [] if not any(v) else None
    return solve(transpose(B), v)


def lattice_reduce(H: Matrix, x: Sequence[int]) -> list[int]:
    """Canonical representative of ``x`` modulo the lattice with HNF basis ``H``."""
    x = list(x)
    for row in H:
        c = next(i for i, v in enumerate(row) if v)
        q = x[c] // row[c]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return x


def lattice_contains(H: Matrix, x: Sequence[int]) -> bool:
    x = list(x)
    for row in H:
        c = next(i for i, v in enumerate(row) if v)
        if any(x[:c]):
            return False
        q, r = divmod(x[c], row[c])
        if r:
            return False
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return not any(x)


def lattice_intersection(A: Matrix, B: Matrix, n: int) -> list[list[int]]:
    if not A or not B:
        return []
    K = left_kernel([list(r) for r in A] + [list(r) for r in B])
    rows = [vecmat(k[: len(A)], A, n) for k in K]
    return hnf_basis(rows, n) if rows else []


def lattice_saturation(A: Matrix, n: int) -> list[list[int]]:
    """``{x in Z^n : k x in span(A) for some k != 0}``."""
    if not A:
        return []
    K = kernel_basis(A, n)
    if not K:
        return identity(n)
    return kernel_basis(K, n)


def hom_kernel(images: Matrix, target_relations: Matrix, n: int) -> list[list[int]]:
    """Basis of ``{x : x images in span(target_relations)}``.

    ``images`` is ``m x n`` (row ``i`` is the image of the ``i``-th source
    generator in ``Z^n``).  Solves the homomorphism-kernel problem exactly by a
    left kernel of the stacked matrix.
    """
    m = len(images)
    if m == 0:
        return []
    if any(len(r) != n for r in images) or any(len(r) != n for r in target_relations):
        raise ValueError("image and relation rows must have length %d" % n)
    rel = hnf_basis(target_relations, n) if target_relations else []
    if len(rel) == n and n:
        # finite target: the stacked lattice contains D Z^(n+m)
        D = math.prod(rel[i][i] for i in range(n))
        rows = [list(r) + [int(i == j) for j in range(m)] for i, r in enumerate(images)]
        rows += [list(r) + [0] * m for r in rel]
        H = hnf_mod(rows, n + m, D)
        return hnf_basis([h[n:] for h in H[n:]], m)
    K = left_kernel([list(r) for r in images] + rel, m + len(rel))
    rows = [k[:m] for k in K]
    return hnf_basis(rows, m) if rows else []


# --------------------------------------------------------------------------
# groups and subgroups
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AbInvariants:
    """Isomorphism type ``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_i | d_{i+1}``."""

    free_rank: int
    torsion_factors: tuple[int, ...] = ()

    @property
    def order(self) -> float | int:
        if self.free_rank:
            return INFINITE
        return math.prod(self.torsion_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion_factors)

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion_factors]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class AbGroupPresentation:
    """``Z^ngens`` modulo the row lattice of ``relations``."""

    ngens: int
    relations: tuple = ()

    def __post_init__(self):
        rels = tuple(tuple(int(v) for v in r) for r in self.relations)
        for r in rels:
            if len(r) != self.ngens:
                raise ValueError(
                    f"relation of length {len(r)} in a group on {self.ngens} generators"
                )
        object.__setattr__(self, "relations", rels)

    @cached_property
    def lattice(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(r) for r in hnf_basis(self.relations, self.ngens))

    def canonical(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(lattice_reduce(self.lattice, x))

    def is_zero(self, x: Sequence[int]) -> bool:
        return lattice_contains(self.lattice, x)

    @cached_property
    def smith(self) -> SmithDecomposition:
        return snf(self.lattice, self.ngens) if self.lattice else SmithDecomposition(
            [], [], identity(self.ngens)
        )

    @cached_property
    def _smith_inverse(self) -> list[list[int]]:
        return inverse_unimodular(self.smith.V)

    def smith_generators(self) -> list[tuple[tuple[int, ...], int]]:
        """Generators of a cyclic decomposition with their orders (0 = infinite).

        Factors of order 1 are dropped, so the count is the minimal number of
        generators.
        """
        diag = self.smith.diagonal
        Vi = self._smith_inverse
        out = []
        for k in range(self.ngens):
            d = diag[k] if k < len(diag) else 0
            if d == 1:
                continue
            out.append((self.canonical(Vi[k]), d))
        # torsion summands first in divisibility order, then free ones
        tors = [g for g in out if g[1]]
        free = [g for g in out if not g[1]]
        return tors + free

    def coordinates(self, x: Sequence[int]) -> list[int]:
        """Coordinates of ``x`` in the Smith basis (reduced for torsion factors)."""
        y = vecmat(x, self.smith.V, self.ngens)
        diag = self.smith.diagonal
        return [v % diag[k] if k < len(diag) and diag[k] else v for k, v in enumerate(y)]

    def element_order(self, x: Sequence[int]) -> int:
        """Additive order of ``x``; 0 means infinite."""
        y = vecmat(x, self.smith.V, self.ngens)
        diag = self.smith.diagonal
        order = 1
        for k, v in enumerate(y):
            d = diag[k] if k < len(diag) else 0
            if d == 0:
                if v:
                    return 0
            elif v % d:
                order = math.lcm(order, d // math.gcd(v, d))
        return order

    def elements(self, limit: int = 1 << 16) -> list[tuple[int, ...]]:
        """All elements (canonical forms) of a finite group."""
        gens = self.smith_generators()
        if any(d == 0 for _, d in gens):
            raise ValueError("group is infinite")
        total = math.prod(d for _, d in gens)
        if total > limit:
            raise ValueError(f"group of order {total} exceeds enumeration limit")
        elems = [tuple([0] * self.ngens)]
        for g, d in gens:
            new = []
            for e in elems:
                for k in range(d):
                    new.append(self.canonical([a + k * b for a, b in zip(e, g)]))
            elems = new
        return sorted(set(elems))

    def __eq__(self, other):
        return (
            isinstance(other, AbGroupPresentation)
            and self.ngens == other.ngens
            and self.lattice == other.lattice
        )

    def __hash__(self):
        return hash((self.ngens, self.lattice))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of ``ambient`` generated by the rows of ``gens``."""

    ambient: AbGroupPresentation
    gens: tuple = ()

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in r) for r in self.gens)
        for r in gens:
            if len(r) != self.ambient.ngens:
                raise ValueError("generator length does not match the ambient group")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def from_lattice(cls, ambient: AbGroupPresentation, rows: Matrix) -> "Subgroup":
        return cls(ambient, tuple(tuple(r) for r in rows))

    @cached_property
    def lattice(self) -> tuple[tuple[int, ...], ...]:
        rows = [list(r) for r in self.gens] + [list(r) for r in self.ambient.lattice]
        return tuple(tuple(r) for r in hnf_basis(rows, self.ambient.ngens))

    @property
    def n(self) -> int:
        return self.ambient.ngens

    def contains(self, x: Sequence[int]) -> bool:
        return lattice_contains(self.lattice, x)

    def __le__(self, other: "Subgroup") -> bool:
        _check_ambient(self, other)
        return all(other.contains(r) for r in self.lattice)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.ambient == other.ambient
            and self.lattice == other.lattice
        )

    def __hash__(self):
        return hash((self.ambient, self.lattice))

    def is_trivial(self) -> bool:
        return self.lattice == self.ambient.lattice

    def nonzero_gens(self) -> list[tuple[int, ...]]:
        """Lattice rows that are nonzero in the ambient group."""
        return [r for r in self.lattice if not self.ambient.is_zero(r)]

    def as_group(self) -> AbGroupPresentation:
        """Presentation of the subgroup itself on the generators ``self.lattice``."""
        basis = self.lattice
        rels = [solve_rows(basis, r) for r in self.ambient.lattice]
        return AbGroupPresentation(len(basis), tuple(tuple(r) for r in rels))

    def invariants(self) -> AbInvariants:
        return invariants(self.as_group())

    def __repr__(self) -> str:
        return f"Subgroup({[list(r) for r in self.nonzero_gens()]})"


def _check_ambient(S1: Subgroup, S2: Subgroup) -> None:
    if S1.ambient != S2.ambient:
        raise ValueError("subgroups live in different ambient groups")


def invariants(G: AbGroupPresentation) -> AbInvariants:
    diag = G.smith.diagonal
    nonzero = [d for d in diag if d]
    return AbInvariants(G.ngens - len(nonzero), tuple(d for d in nonzero if d > 1))


def membership(S: Subgroup, x: Sequence[int]) -> bool:
    if len(x) != S.n:
        raise ValueError("vector length does not match the ambient group")
    return S.contains(x)


def whole(G: AbGroupPresentation) -> Subgroup:
    return Subgroup(G, tuple(tuple(r) for r in identity(G.ngens)))


def trivial(G: AbGroupPresentation) -> Subgroup:
    return Subgroup(G, ())


def subgroup_sum(S1: Subgroup, *rest: Subgroup) -> Subgroup:
    rows = list(S1.lattice)
    for S in rest:
        _check_ambient(S1, S)
        rows += list(S.lattice)
    return Subgroup.from_lattice(S1.ambient, hnf_basis(rows, S1.n))


def subgroup_intersection(S1: Subgroup, S2: Subgroup) -> Subgroup:
    _check_ambient(S1, S2)
    return Subgroup.from_lattice(
        S1.ambient, lattice_intersection(S1.lattice, S2.lattice, S1.n)
    )


def saturation(S: Subgroup) -> Subgroup:
    """Isolator ``{x : k x in S for some k != 0}``."""
    rows = lattice_saturation(S.lattice, S.n)
    return Subgroup.from_lattice(S.ambient, rows)


def index(S: Subgroup) -> float | int:
    """``|ambient / S|``, or ``INFINITE``."""
    L = S.lattice
    if len(L) < S.n:
        return INFINITE
    return math.prod(row[i] for i, row in enumerate(L))


def relative_index(S: Subgroup, T: Subgroup) -> float | int:
    """``[T : S]`` for ``S <= T``."""
    if not S <= T:
        raise ValueError("first subgroup is not contained in the second")
    rels = [solve_rows(T.lattice, r) for r in S.lattice]
    sub = Subgroup.from_lattice(AbGroupPresentation(len(T.lattice)), rels)
    return index(sub)


def quotient_presentation(S: Subgroup) -> AbGroupPresentation:
    return AbGroupPresentation(S.n, S.lattice)


def torsion_subgroup(G: AbGroupPresentation) -> Subgroup:
    return saturation(trivial(G))


def complement_of(D: Subgroup, A: Subgroup) -> Subgroup:
    """A subgroup ``C`` with ``C + D = A`` and ``C & D = 0``.

    Requires ``D <= A`` with ``A / D`` torsion-free.
    """
    _check_ambient(D, A)
    if not D <= A:
        raise ValueError("first subgroup is not contained in the second")
    B = [list(r) for r in A.lattice]
    k = len(B)
    Dc = hnf_basis([solve_rows(B, r) for r in D.lattice], k)
    if lattice_saturation(Dc, k) != Dc and Dc:
        raise ValueError("no guaranteed complement: quotient has torsion")
    s = len(Dc)
    if s == 0:
        comp = identity(k)
    else:
        Vi = inverse_unimodular(snf(Dc, k).V)
        comp = Vi[s:]
    rows = [vecmat(c, B, A.n) for c in comp]
    rows = hnf_basis(rows, A.n) if rows else []
    rows = [lattice_reduce(D.lattice, r) for r in rows]
    return Subgroup(A.ambient, tuple(tuple(r) for r in rows))


def quotient_group(S: Subgroup, T: Subgroup) -> AbGroupPresentation:
    """``T / S`` for ``S <= T``, presented on the HNF generators of ``T``."""
    _check_ambient(S, T)
    if not S <= T:
        raise ValueError("first subgroup is not contained in the second")
    rels = [solve_rows(T.lattice, r) for r in S.lattice]
    return AbGroupPresentation(len(T.lattice), tuple(tuple(r) for r in rels))


def quotient_invariants(S: Subgroup, T: Subgroup) -> AbInvariants:
    return invariants(quotient_group(S, T))
