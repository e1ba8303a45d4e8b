"""Height-bounded isomorphism search for multi-sorted bilinear structures.

A structure is a list of finitely generated abelian groups (sorts) together
with bilinear operations ``sort_a x sort_b -> sort_c`` given by structure
constants on the generators.  Rings have one sort and one operation, two-sorted
modules have two sorts with the scalar product and the action, and algebras add
a module multiplication.

The search picks a small family of generators of the source structure, closes
it under the operations until it spans every sort additively, and then
backtracks over candidate images of the generators in the target.  Each
partial assignment is checked against every linear relation and product
identity that only involves already assigned elements, and against the
isomorphism types of the partial spans and their quotients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .zlattice import (
    AbGroupPresentation,
    Subgroup,
    hnf_basis,
    hom_kernel,
    identity,
    invariants,
    lattice_contains,
    saturation,
    solve_rows,
    subgroup_intersection,
    torsion_subgroup,
)

Vec = tuple


@dataclass
class Structure:
    sorts: list
    ops: list  # (a, b, c, T) with T[i][j] a vector of sort c

    def product(self, k: int, x: Sequence[int], y: Sequence[int]) -> Vec:
        a, b, c, T = self.ops[k]
        out = [0] * self.sorts[c].ngens
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = T[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                v = row[j]
                s = xi * yj
                for t, vt in enumerate(v):
                    if vt:
                        out[t] += s * vt
        return self.sorts[c].canonical(out)


class SearchBudgetExceeded(Exception):
    pass


@dataclass
class SearchOutcome:
    maps: Optional[list]  # per-sort matrices, rows = images of source generators
    exhaustive: bool
    nodes: int
    reason: str = ""


def characteristic_subgroups(st: Structure) -> list[list[Subgroup]]:
    """Subgroups preserved by every isomorphism, computed from the operations."""
    out: list[list[Subgroup]] = [[torsion_subgroup(G)] for G in st.sorts]
    for a, b, c, T in st.ops:
        Ga, Gb, Gc = st.sorts[a], st.sorts[b], st.sorts[c]
        img = Subgroup(Gc, tuple(tuple(T[i][j]) for i in range(Ga.ngens) for j in range(Gb.ngens)))
        out[c] += [img, saturation(img)]
        left = _annihilator(st, a, b, c, T, left=True)
        right = _annihilator(st, a, b, c, T, left=False)
        out[a].append(left)
        out[b].append(right)
        if a == b:
            out[a].append(subgroup_intersection(left, right))
    return out


def _annihilator(st, a, b, c, T, left: bool) -> Subgroup:
    Ga, Gb, Gc = st.sorts[a], st.sorts[b], st.sorts[c]
    nc = Gc.ngens
    src, other = (Ga, Gb) if left else (Gb, Ga)
    rows = []
    for i in range(src.ngens):
        row = []
        for j in range(other.ngens):
            row += list(T[i][j] if left else T[j][i])
        rows.append(row)
    width = nc * other.ngens
    rels = []
    for j in range(other.ngens):
        for r in Gc.lattice:
            v = [0] * width
            v[j * nc:(j + 1) * nc] = r
            rels.append(v)
    K = hom_kernel(rows, rels, width) if width else identity(src.ngens)
    return Subgroup(src, tuple(tuple(r) for r in K))


class _Plan:
    """Generator choice and the constraint schedule on the source side."""

    def __init__(self, st: Structure, preferred: Optional[list] = None):
        self.st = st
        ns = len(st.sorts)
        self.vecs: list[list[Vec]] = [[] for _ in range(ns)]
        self.kinds: list[list[tuple]] = [[] for _ in range(ns)]
        self.gens: list[tuple[int, Vec]] = []
        self.stage_entries: list[list[tuple]] = []
        self.stage_products: list[list[tuple]] = []
        spans = [list(G.lattice) for G in st.sorts]
        done = set()

        def in_span(s, v):
            return lattice_contains(spans[s], v)

        def add(s, v, kind):
            self.vecs[s].append(tuple(v))
            self.kinds[s].append(kind)
            spans[s] = hnf_basis(spans[s] + [list(v)], st.sorts[s].ngens)
            self.stage_entries[-1].append((s, len(self.vecs[s]) - 1))

        order = preferred or [
            (s, tuple(e)) for s, G in enumerate(st.sorts) for e in identity(G.ngens)
        ]
        for s, v in order:
            if in_span(s, v):
                continue
            self.gens.append((s, tuple(v)))
            self.stage_entries.append([])
            self.stage_products.append([])
            add(s, v, ("gen", len(self.gens) - 1))
            changed = True
            while changed:
                changed = False
                for k, (a, b, c, _) in enumerate(st.ops):
                    for ia in range(len(self.vecs[a])):
                        for ib in range(len(self.vecs[b])):
                            if (k, ia, ib) in done:
                                continue
                            done.add((k, ia, ib))
                            p = st.product(k, self.vecs[a][ia], self.vecs[b][ib])
                            if in_span(c, p):
                                self.stage_products[-1].append((k, ia, ib, p))
                            else:
                                add(c, p, ("op", k, ia, ib))
                                changed = True
            # express recorded products over the current prefix
            fixed = []
            for k, ia, ib, p in self.stage_products[-1]:
                c = st.ops[k][2]
                x = self.express(c, p)
                fixed.append((k, ia, ib, c, x))
            self.stage_products[-1] = fixed
        self.nstages = len(self.gens)
        self.prefix = []
        self.kernels = []
        self.sub_inv = []
        self.quot_inv = []
        counts = [0] * ns
        for stage in range(self.nstages):
            touched = set()
            for s, _ in self.stage_entries[stage]:
                counts[s] += 1
                touched.add(s)
            self.prefix.append(list(counts))
            ker, sub, quo = {}, {}, {}
            for s in touched:
                G = st.sorts[s]
                vs = self.vecs[s][: counts[s]]
                ker[s] = hom_kernel(vs, G.lattice, G.ngens)
                S = Subgroup(G, tuple(vs))
                sub[s] = S.invariants()
                quo[s] = invariants(AbGroupPresentation(G.ngens, S.lattice))
            self.kernels.append(ker)
            self.sub_inv.append(sub)
            self.quot_inv.append(quo)

    def express(self, s: int, v: Sequence[int]) -> list[int]:
        G = self.st.sorts[s]
        vs = [list(x) for x in self.vecs[s]]
        x = solve_rows(vs + [list(r) for r in G.lattice], v)
        if x is None:
            raise AssertionError("element outside the closure span")
        return x[: len(vs)]


def _element_signature(st: Structure, quots: list, s: int, x: Vec) -> tuple:
    sig = [Q.element_order(x) for Q in quots[s]]
    for k, (a, b, c, _) in enumerate(st.ops):
        if a == s and b == s:
            sq = st.product(k, x, x)
            sig.extend(Q.element_order(sq) for Q in quots[c])
    return tuple(sig)


def enumerate_elements(G: AbGroupPresentation, periods: Sequence[int], height: int) -> tuple[list[Vec], bool]:
    """Canonical elements with pseudo-basis coefficients bounded by ``height``.

    Finite-period coordinates range over a full residue system, so the result
    is the whole group when every period is finite.
    """
    ranges = []
    complete = True
    for e in periods:
        if e == 0:
            complete = False
            ranges.append(range(-height, height + 1))
        else:
            ranges.append(range(e))
    size = 1
    for r in ranges:
        size *= len(r)
    if size > 400_000:
        raise SearchBudgetExceeded(f"candidate pool of size {size} is too large")
    seen = {}
    for c in itertools.product(*ranges):
        v = G.canonical(c)
        if v not in seen:
            seen[v] = (sum(abs(t) for t in c), tuple(abs(t) for t in c), tuple(-t for t in c))
    elems = sorted(seen, key=lambda v: (seen[v], v))
    return elems, complete


def _periods(G: AbGroupPresentation) -> list[int]:
    per = [0] * G.ngens
    for row in G.lattice:
        c = next(i for i, v in enumerate(row) if v)
        per[c] = row[c]
    return per


def prefilter(src: Structure, tgt: Structure, extra_src=None, extra_tgt=None) -> Optional[str]:
    """Reason string if an invariant differs, else ``None``."""
    if len(src.sorts) != len(tgt.sorts) or len(src.ops) != len(tgt.ops):
        return "structures have different shapes"
    for s, (G, H) in enumerate(zip(src.sorts, tgt.sorts)):
        if invariants(G) != invariants(H):
            return f"additive invariants of sort {s + 1} differ"
    cs = characteristic_subgroups(src)
    ct = characteristic_subgroups(tgt)
    for s in range(len(src.sorts)):
        A = cs[s] + list((extra_src or {}).get(s, []))
        B = ct[s] + list((extra_tgt or {}).get(s, []))
        for I, J in zip(A, B):
            if I.invariants() != J.invariants():
                return f"characteristic subgroup invariants of sort {s + 1} differ"
            qi = invariants(AbGroupPresentation(I.n, I.lattice))
            qj = invariants(AbGroupPresentation(J.n, J.lattice))
            if qi != qj:
                return f"characteristic quotient invariants of sort {s + 1} differ"
    return None


def find_isomorphism(
    src: Structure,
    tgt: Structure,
    height: int,
    extra_src: Optional[dict] = None,
    extra_tgt: Optional[dict] = None,
    max_nodes: int = 50_000,
) -> SearchOutcome:
    """Search an isomorphism ``src -> tgt`` whose generator images have bounded height."""
    plan = _Plan(src)
    cs = characteristic_subgroups(src)
    ct = characteristic_subgroups(tgt)
    for s in range(len(src.sorts)):
        cs[s] = [Subgroup(src.sorts[s], ())] + cs[s] + list((extra_src or {}).get(s, []))
        ct[s] = [Subgroup(tgt.sorts[s], ())] + ct[s] + list((extra_tgt or {}).get(s, []))
    qs = [[AbGroupPresentation(I.n, I.lattice) for I in L] for L in cs]
    qt = [[AbGroupPresentation(I.n, I.lattice) for I in L] for L in ct]

    pools = {}
    exhaustive = True
    try:
        for s in {g[0] for g in plan.gens}:
            H = tgt.sorts[s]
            elems, complete = enumerate_elements(H, _periods(H), height)
            exhaustive = exhaustive and complete
            pools[s] = [(e, _element_signature(tgt, qt, s, e)) for e in elems]
    except SearchBudgetExceeded as exc:
        return SearchOutcome(None, False, 0, str(exc))
    candidates = []
    for s, v in plan.gens:
        sig = _element_signature(src, qs, s, v)
        candidates.append([e for e, es in pools[s] if es == sig])

    ns = len(src.sorts)
    nodes = 0
    images: list[list[Vec]] = [[] for _ in range(ns)]

    def lin(s, coeffs, imgs):
        out = [0] * tgt.sorts[s].ngens
        for c, v in zip(coeffs, imgs):
            if c:
                for t, vt in enumerate(v):
                    out[t] += c * vt
        return out

    def consistent(stage) -> bool:
        for s, idx in plan.stage_entries[stage][1:]:
            kind = plan.kinds[s][idx]
            _, k, ia, ib = kind
            a, b, _, _ = src.ops[k]
            images[s].append(tgt.product(k, images[a][ia], images[b][ib]))
        for s, K in plan.kernels[stage].items():
            imgs = images[s][: plan.prefix[stage][s]]
            for row in K:
                if not tgt.sorts[s].is_zero(lin(s, row, imgs)):
                    return False
        for k, ia, ib, c, x in plan.stage_products[stage]:
            a, b, _, _ = src.ops[k]
            lhs = tgt.product(k, images[a][ia], images[b][ib])
            rhs = tgt.sorts[c].canonical(lin(c, x, images[c][: len(x)]))
            if lhs != rhs:
                return False
        for s in plan.kernels[stage]:
            H = tgt.sorts[s]
            S = Subgroup(H, tuple(images[s][: plan.prefix[stage][s]]))
            if S.invariants() != plan.sub_inv[stage][s]:
                return False
            if invariants(AbGroupPresentation(H.ngens, S.lattice)) != plan.quot_inv[stage][s]:
                return False
        return True

    def dfs(stage):
        nonlocal nodes
        if stage == plan.nstages:
            return True
        s = plan.gens[stage][0]
        for cand in candidates[stage]:
            nodes += 1
            if nodes > max_nodes:
                raise SearchBudgetExceeded(f"node budget {max_nodes} exhausted")
            saved = [len(x) for x in images]
            images[s].append(cand)
            if consistent(stage) and dfs(stage + 1):
                return True
            for t in range(ns):
                del images[t][saved[t]:]
        return False

    try:
        found = dfs(0)
    except SearchBudgetExceeded as exc:
        return SearchOutcome(None, False, nodes, str(exc))
    if not found:
        return SearchOutcome(None, exhaustive, nodes, "no isomorphism within the search envelope")
    maps = []
    for s, G in enumerate(src.sorts):
        rows = []
        for e in identity(G.ngens):
            x = plan.express(s, e)
            rows.append(tuple(tgt.sorts[s].canonical(lin(s, x, images[s][: len(x)]))))
        maps.append(rows)
    return SearchOutcome(maps, exhaustive, nodes)


def apply_map(G: AbGroupPresentation, H: AbGroupPresentation, rows, x) -> Vec:
    out = [0] * H.ngens
    for c, v in zip(x, rows):
        if c:
            for t, vt in enumerate(v):
                out[t] += c * vt
    return H.canonical(out)


def is_isomorphism(src: Structure, tgt: Structure, maps) -> bool:
    """Independent check that per-sort matrices define an isomorphism."""
    if len(maps) != len(src.sorts):
        return False
    for s, (G, H) in enumerate(zip(src.sorts, tgt.sorts)):
        rows = maps[s]
        if len(rows) != G.ngens or any(len(r) != H.ngens for r in rows):
            return False
        for rel in G.lattice:
            if not H.is_zero(apply_map(G, H, rows, rel)):
                return False
        img = Subgroup(H, tuple(tuple(r) for r in rows))
        # surjective iff the image together with the relations is all of Z^n;
        # equal invariants then make it bijective (f.g. abelian groups are Hopfian)
        if img.lattice != tuple(map(tuple, identity(H.ngens))):
            return False
        if invariants(G) != invariants(H):
            return False
    for k, (a, b, c, T) in enumerate(src.ops):
        Ga, Gb, Gc = src.sorts[a], src.sorts[b], src.sorts[c]
        Ha, Hb, Hc = tgt.sorts[a], tgt.sorts[b], tgt.sorts[c]
        for i, ei in enumerate(identity(Ga.ngens)):
            for j, ej in enumerate(identity(Gb.ngens)):
                lhs = apply_map(Gc, Hc, maps[c], T[i][j])
                rhs = tgt.product(k, maps[a][i], maps[b][j])
                if lhs != rhs:
                    return False
    return True


def invert_maps(src: Structure, tgt: Structure, maps) -> list:
    """Inverse of an isomorphism given by per-sort matrices."""
    out = []
    for s, (G, H) in enumerate(zip(src.sorts, tgt.sorts)):
        rows = [list(r) for r in maps[s]]
        inv = []
        for e in identity(H.ngens):
            x = solve_rows(rows + [list(r) for r in H.lattice], e)
            if x is None:
                raise ValueError("map is not surjective")
            inv.append(G.canonical(x[: G.ngens]))
        out.append(inv)
    return out


def decide_isomorphism(
    src: Structure,
    tgt: Structure,
    height: int,
    extra_src: Optional[dict] = None,
    extra_tgt: Optional[dict] = None,
    max_nodes: int = 50_000,
) -> tuple[str, Optional[list], str]:
    """Return ``("yes", maps, "")``, ``("no", None, reason)`` or ``("unknown", None, reason)``.

    Searches in both directions; a witness found from the target side is
    inverted so that ``maps`` always goes ``src -> tgt``.
    """
    reason = prefilter(src, tgt, extra_src, extra_tgt)
    if reason:
        return "no", None, reason
    out = find_isomorphism(src, tgt, height, extra_src, extra_tgt, max_nodes)
    if out.maps is not None:
        return "yes", out.maps, ""
    if out.exhaustive:
        return "no", None, "exhaustive search over the finite target found no isomorphism"
    back = find_isomorphism(tgt, src, height, extra_tgt, extra_src, max_nodes)
    if back.maps is not None:
        return "yes", invert_maps(tgt, src, back.maps), ""
    if back.exhaustive:
        return "no", None, "exhaustive search over the finite source found no isomorphism"
    return "unknown", None, (
        f"search envelope exhausted at height {height} "
        f"({out.nodes} + {back.nodes} nodes; {out.reason}; {back.reason})"
    )
