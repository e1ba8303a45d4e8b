"""Presentation files: YAML documents with 1-based generator indices.

A ring file looks like::

    kind: ring
    rank: 3
    periods: [0, 0, 2]          # 0 = infinite period
    torsion:                    # e_i u_i = sum_k coeffs[k] u_k, k > i
      - {i: 3, coeffs: {}}
    mult:                       # u_i u_j = sum_k coeffs[k] u_k
      - {i: 1, j: 1, coeffs: {3: 1}}

``scalar_ring`` adds ``one`` (coordinates of the identity).  ``module`` has
a ``scalars`` block (a scalar ring), the module's own ``rank``, ``periods``,
``torsion`` and ``action`` entries ``{i, j, coeffs}`` meaning
``c_i u_j = sum_k coeffs[k] u_k``.  ``algebra`` is a module with ``mult``.
Certificates (``kind: certificate``) hold ``phi`` rows, ``R0_gens``,
``S0_gens``, ``d`` and ``e`` as plain coordinate lists.
"""

from __future__ import annotations

from typing import Any, Optional, Union

import yaml

from .ring_core import (
    PresentationError,
    RingPresentation,
    ScalarRingPresentation,
    TwoSortedAlgebraPresentation,
    TwoSortedModulePresentation,
)
from .zlattice import AbGroupPresentation

KINDS = ("ring", "scalar_ring", "module", "algebra")

Presentation = Union[RingPresentation, ScalarRingPresentation, TwoSortedModulePresentation, TwoSortedAlgebraPresentation]


class FileFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _line(node) -> Optional[int]:
    return node.start_mark.line + 1 if node is not None and node.start_mark else None


def _mapping(node, what: str) -> dict:
    if not isinstance(node, yaml.MappingNode):
        raise FileFormatError(f"{what} must be a mapping", _line(node))
    out = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode):
            raise FileFormatError(f"{what} has a non-scalar key", _line(k))
        key = yaml.safe_load(k.value) if k.tag.endswith(":int") else k.value
        if key in out:
            raise FileFormatError(f"duplicate key {key!r} in {what}", _line(k))
        out[key] = v
    return out


def _int(node, what: str) -> int:
    if not isinstance(node, yaml.ScalarNode):
        raise FileFormatError(f"{what} must be an integer", _line(node))
    try:
        v = yaml.safe_load(node.value)
    except yaml.YAMLError:
        v = None
    if not isinstance(v, int) or isinstance(v, bool):
        raise FileFormatError(f"{what} must be an integer, got {node.value!r}", _line(node))
    return v


def _int_list(node, what: str) -> list[int]:
    if not isinstance(node, yaml.SequenceNode):
        raise FileFormatError(f"{what} must be a list", _line(node))
    return [_int(x, f"{what} entry") for x in node.value]


def _index(node, rank: int, what: str) -> int:
    v = _int(node, what)
    if not 1 <= v <= rank:
        raise FileFormatError(f"{what} {v} out of range 1..{rank}", _line(node))
    return v - 1


def _coeffs(node, rank: int, what: str) -> dict[int, int]:
    if isinstance(node, yaml.ScalarNode) and node.value in ("", "null", "~"):
        return {}
    m = _mapping(node, what)
    out = {}
    for k, v in m.items():
        if not isinstance(k, int):
            raise FileFormatError(f"{what} keys must be generator indices", _line(node))
        if not 1 <= k <= rank:
            raise FileFormatError(f"{what} index {k} out of range 1..{rank}", _line(v))
        out[k - 1] = _int(v, f"{what} value")
    return out


def _group_block(m: dict, what: str, node) -> tuple[int, list[int], dict]:
    if "rank" not in m:
        raise FileFormatError(f"{what}: missing field 'rank'", _line(node))
    rank = _int(m["rank"], "rank")
    if rank < 0:
        raise FileFormatError("rank must be nonnegative", _line(m["rank"]))
    periods = _int_list(m["periods"], "periods") if "periods" in m else [0] * rank
    if len(periods) != rank:
        raise FileFormatError(f"{len(periods)} periods given for rank {rank}", _line(m.get("periods")))
    torsion = {}
    tnode = m.get("torsion")
    if tnode is not None and not (isinstance(tnode, yaml.ScalarNode) and tnode.value in ("", "null", "~")):
        if not isinstance(tnode, yaml.SequenceNode):
            raise FileFormatError("torsion must be a list", _line(tnode))
        for entry in tnode.value:
            e = _mapping(entry, "torsion entry")
            if "i" not in e:
                raise FileFormatError("torsion entry needs 'i'", _line(entry))
            i = _index(e["i"], rank, "torsion i")
            c = _coeffs(e.get("coeffs"), rank, "torsion coeffs") if "coeffs" in e else {}
            for k in c:
                if not i < k:
                    raise FileFormatError(
                        f"torsion coefficient at k={k + 1} for i={i + 1}: need i < k <= rank", _line(entry)
                    )
            if periods[i] == 0 and c:
                raise FileFormatError(f"torsion row {i + 1} given for a generator of infinite period", _line(entry))
            torsion[i] = c
    return rank, periods, torsion


def _table(node, n_a: int, n_b: int, n_c: int, what: str) -> dict:
    out = {}
    if node is None or (isinstance(node, yaml.ScalarNode) and node.value in ("", "null", "~")):
        return out
    if not isinstance(node, yaml.SequenceNode):
        raise FileFormatError(f"{what} must be a list", _line(node))
    for entry in node.value:
        e = _mapping(entry, f"{what} entry")
        for key in ("i", "j"):
            if key not in e:
                raise FileFormatError(f"{what} entry needs '{key}'", _line(entry))
        i = _index(e["i"], n_a, f"{what} i")
        j = _index(e["j"], n_b, f"{what} j")
        if (i, j) in out:
            raise FileFormatError(f"{what} entry ({i + 1}, {j + 1}) given twice", _line(entry))
        out[(i, j)] = _coeffs(e.get("coeffs"), n_c, f"{what} coeffs") if "coeffs" in e else {}
    return out


def _ring_from(m: dict, node) -> RingPresentation:
    rank, periods, torsion = _group_block(m, "ring", node)
    mult = _table(m.get("mult"), rank, rank, rank, "mult")
    try:
        return RingPresentation(rank, periods, torsion, mult)
    except PresentationError as exc:
        raise FileFormatError(str(exc), _line(node)) from exc


def _scalar_from(m: dict, node) -> ScalarRingPresentation:
    R = _ring_from(m, node)
    if "one" not in m:
        raise FileFormatError("scalar_ring needs 'one'", _line(node))
    one = _int_list(m["one"], "one")
    if len(one) != R.rank:
        raise FileFormatError(f"one has length {len(one)}, expected {R.rank}", _line(m["one"]))
    return ScalarRingPresentation(R, tuple(one))


def _module_from(m: dict, node) -> TwoSortedModulePresentation:
    if "scalars" not in m:
        raise FileFormatError("module needs a 'scalars' block", _line(node))
    snode = m["scalars"]
    A = _scalar_from(_mapping(snode, "scalars"), snode)
    rank, periods, torsion = _group_block(m, "module", node)
    try:
        G = RingPresentation(rank, periods, torsion).group
    except PresentationError as exc:
        raise FileFormatError(str(exc), _line(node)) from exc
    action = _table(m.get("action"), A.rank, rank, rank, "action")
    return TwoSortedModulePresentation(A, G, action)


def _document(text: str):
    try:
        node = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise FileFormatError(f"not valid YAML: {getattr(exc, 'problem', exc)}", mark.line + 1 if mark else None)
    if node is None:
        raise FileFormatError("empty document", 1)
    m = _mapping(node, "document")
    if "kind" not in m:
        raise FileFormatError("missing field 'kind'", _line(node))
    kind = m["kind"].value if isinstance(m["kind"], yaml.ScalarNode) else None
    return node, m, kind


def parse_text(text: str) -> Presentation:
    node, m, kind = _document(text)
    if kind == "ring":
        return _ring_from(m, node)
    if kind == "scalar_ring":
        return _scalar_from(m, node)
    if kind == "module":
        return _module_from(m, node)
    if kind == "algebra":
        M = _module_from(m, node)
        n = M.group.ngens
        return TwoSortedAlgebraPresentation(M, _table(m.get("mult"), n, n, n, "mult"))
    raise FileFormatError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", _line(m["kind"]))


def parse_certificate(text: str):
    from .equivalence import EquivCertificate

    node, m, kind = _document(text)
    if kind != "certificate":
        raise FileFormatError(f"expected kind 'certificate', got {kind!r}", _line(node))

    def rows(key):
        if key not in m:
            return ()
        n = m[key]
        if not isinstance(n, yaml.SequenceNode):
            raise FileFormatError(f"{key} must be a list of rows", _line(n))
        return tuple(tuple(_int_list(r, f"{key} row")) for r in n.value)

    for key in ("phi", "d", "e"):
        if key not in m:
            raise FileFormatError(f"certificate needs '{key}'", _line(node))
    return EquivCertificate(rows("phi"), rows("R0_gens"), rows("S0_gens"), _int(m["d"], "d"), _int(m["e"], "e"))


def load(path: str) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def _group_fields(G: AbGroupPresentation) -> dict:
    """Periods and torsion of a group presented by HNF rows on its generators."""
    n = G.ngens
    periods = [0] * n
    torsion = []
    for row in G.lattice:
        i = next(c for c, v in enumerate(row) if v)
        periods[i] = row[i]
        torsion.append({"i": i + 1, "coeffs": {k + 1: -row[k] for k in range(i + 1, n) if row[k]}})
    return {"rank": n, "periods": periods, "torsion": torsion}


def _table_fields(T, n_a: int, n_b: int) -> list:
    out = []
    for i in range(n_a):
        for j in range(n_b):
            v = T[i][j]
            if any(v):
                out.append({"i": i + 1, "j": j + 1, "coeffs": {k + 1: c for k, c in enumerate(v) if c}})
    return out


def _canonical_table(G: AbGroupPresentation, T, n_a: int, n_b: int):
    return [[G.canonical(T[i][j]) for j in range(n_b)] for i in range(n_a)]


def to_data(P) -> dict:
    if isinstance(P, RingPresentation):
        d = {"kind": "ring", **_group_fields(P.group)}
        d["mult"] = _table_fields(_canonical_table(P.group, P.tensor, P.rank, P.rank), P.rank, P.rank)
        return d
    if isinstance(P, ScalarRingPresentation):
        d = to_data(P.base)
        d["kind"] = "scalar_ring"
        d["one"] = list(P.one)
        return d
    if isinstance(P, TwoSortedModulePresentation):
        A = P.scalars
        d = {"kind": "module", "scalars": to_data(A), **_group_fields(P.group)}
        d["scalars"].pop("kind")
        d["action"] = _table_fields(_canonical_table(P.group, P.action, A.rank, P.group.ngens), A.rank, P.group.ngens)
        return d
    if isinstance(P, TwoSortedAlgebraPresentation):
        d = to_data(P.module)
        d["kind"] = "algebra"
        n = P.group.ngens
        d["mult"] = _table_fields(_canonical_table(P.group, P.mult, n, n), n, n)
        return d
    raise TypeError(f"cannot serialize {type(P).__name__}")


def certificate_data(cert) -> dict:
    return {
        "kind": "certificate",
        "phi": [list(r) for r in cert.phi],
        "R0_gens": [list(r) for r in cert.R0_gens],
        "S0_gens": [list(r) for r in cert.S0_gens],
        "d": cert.d,
        "e": cert.e,
    }


class _FlowDumper(yaml.SafeDumper):
    pass


def _repr_list(dumper, data):
    flow = all(not isinstance(x, (dict, list)) for x in data)
    return dumper.represent_sequence("tag:yaml.org,2002:seq", data, flow_style=flow)


def _repr_dict(dumper, data):
    def flat(x):
        if isinstance(x, dict):
            return all(not isinstance(y, (dict, list)) for y in x.values())
        return not isinstance(x, list)

    flow = "kind" not in data and all(flat(x) for x in data.values())
    return dumper.represent_mapping("tag:yaml.org,2002:map", data.items(), flow_style=flow)


_FlowDumper.add_representer(list, _repr_list)
_FlowDumper.add_representer(dict, _repr_dict)


def dump_data(data: dict) -> str:
    return yaml.dump(data, Dumper=_FlowDumper, sort_keys=False, allow_unicode=True, width=100)


def serialize(P) -> str:
    return dump_data(to_data(P))
