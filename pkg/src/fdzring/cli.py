"""Command line front end: ``fdzring <command> ...``.

Exit codes: 0 positive verdict (or valid input), 1 negative verdict (or
invalid presentation), 2 input error, 3 undecided within the search bounds.
Reports are JSON documents written to standard output (or ``--output``);
identical inputs and flags give identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Any, Optional

from . import __version__
from .equivalence import (
    TwistSpec,
    adapted_basis,
    certificate_failures,
    decide_equiv,
    decide_iso,
    make_twin,
)
from .fileformat import (
    FileFormatError,
    certificate_data,
    dump_data,
    parse_certificate,
    parse_text,
    to_data,
)
from .ideals import invariant_report
from .ring_core import (
    PresentationError,
    RingPresentation,
    ScalarRingPresentation,
    TwoSortedAlgebraPresentation,
    TwoSortedModulePresentation,
    iso_by_constants,
    module_over_itself,
    validate,
    validate_algebra,
    validate_module,
    validate_scalar_ring,
)
from .scalar_prime import (
    a_p_subring,
    find_decomposition,
    p_series_pseudo_basis,
    verify_decomposition,
)
from .scalars import ScalarComputationError, induced_bilinear, ring_of_scalars, type_of
from .verdict import Verdict, VerdictKind
from .zlattice import Subgroup, invariants

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# input
# --------------------------------------------------------------------------


def _read(path: str) -> tuple[str, dict]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8") from exc
    return text, {"path": path, "sha256": hashlib.sha256(raw).hexdigest()}


def _validate_any(P) -> list[str]:
    if isinstance(P, RingPresentation):
        return validate(P)
    if isinstance(P, ScalarRingPresentation):
        return validate_scalar_ring(P)
    if isinstance(P, TwoSortedModulePresentation):
        return validate_module(P)
    return validate_algebra(P)


def _load(path: str, need: Optional[tuple] = None, check: bool = True):
    text, meta = _read(path)
    try:
        P = parse_text(text)
    except (FileFormatError, PresentationError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    if need and not isinstance(P, need):
        names = " or ".join(t.__name__ for t in need)
        raise InputError(f"{path}: expected a {names} file")
    if check:
        diags = _validate_any(P)
        if diags:
            raise InputError(f"{path}: presentation is not valid: {diags[0]}")
    return P, meta


# --------------------------------------------------------------------------
# report blocks
# --------------------------------------------------------------------------


def _sub(S: Subgroup) -> dict:
    return {"generators": [list(g) for g in S.nonzero_gens()], "invariants": str(S.invariants())}


def _invariant_block(R: RingPresentation) -> dict:
    rep = invariant_report(R)
    return {
        "additive": str(invariants(R.group)),
        "ann": _sub(rep.ann),
        "square": _sub(rep.square),
        "is_square": _sub(rep.is_square),
        "delta": _sub(rep.delta),
        "addition": _sub(rep.addition),
        "M": _sub(rep.bigM),
        "N": _sub(rep.bigN),
        "mn_invariants": list(rep.mn_invariants.torsion_factors),
        "e": rep.e,
        "regular": rep.regular,
        "tame": rep.tame,
        "width": {"lower": rep.width_lower, "upper": rep.width_upper, "exact": rep.width_exact},
    }


def _scalar_block(R: RingPresentation) -> dict:
    try:
        res = ring_of_scalars(R)
    except ScalarComputationError as exc:
        return {"error": str(exc), "counterexample": list(exc.counterexample) if exc.counterexample else None}
    A = res.ring
    return {
        "additive": str(invariants(A.group)),
        "presentation": to_data(A),
        "diagnostics": list(res.diagnostics),
    }


def _type_block(R: RingPresentation) -> dict:
    t = type_of(induced_bilinear(R))
    return {
        "width": t.width_upper,
        "c1": t.c1_upper,
        "c2": t.c2_upper,
        "exact": {"width": t.width_exact, "c1": t.c1_exact, "c2": t.c2_exact},
    }


def _adapted_block(R: RingPresentation) -> dict:
    ab = adapted_basis(R)
    return {
        "breakpoints": {"l": ab.l, "m": ab.m, "n": ab.n, "r": ab.r},
        "basis": [list(b) for b in ab.basis],
        "e_factors": list(ab.e_factors),
        "presentation": to_data(ab.presentation),
    }


def _verdict_block(v: Verdict, witness: Any = None) -> dict:
    out = {"kind": v.kind.value, "reason": v.reason}
    if witness is not None:
        out["witness"] = witness
    return out


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_validate(args) -> tuple[int, dict]:
    text, meta = _read(args.file)
    try:
        P = parse_text(text)
    except (FileFormatError, PresentationError) as exc:
        raise InputError(f"{args.file}: {exc}") from exc
    diags = _validate_any(P)
    return (EXIT_NEGATIVE if diags else EXIT_OK), {
        "inputs": [meta],
        "kind": to_data(P)["kind"],
        "valid": not diags,
        "diagnostics": diags,
    }


def cmd_invariants(args) -> tuple[int, dict]:
    P, meta = _load(args.file)
    body: dict = {"inputs": [meta]}
    if isinstance(P, ScalarRingPresentation):
        body["scalar_ring"] = {"additive": str(invariants(P.group))}
        P = P.base
    if isinstance(P, RingPresentation):
        body["invariants"] = _invariant_block(P)
        body["ring_of_scalars"] = _scalar_block(P)
        body["type"] = _type_block(P)
        body["adapted_basis"] = _adapted_block(P)
    else:
        G = P.scalars.group
        body["invariants"] = {"scalars": str(invariants(G)), "module": str(invariants(P.group))}
    return EXIT_OK, body


def _pair(args, need=(RingPresentation,)):
    R, m1 = _load(args.file1, need)
    S, m2 = _load(args.file2, need)
    return R, S, [m1, m2]


def cmd_iso(args) -> tuple[int, dict]:
    R, m1 = _load(args.file1)
    S, m2 = _load(args.file2)
    if isinstance(R, RingPresentation) and isinstance(S, RingPresentation):
        v = decide_iso(R, S, args.height)
    else:
        v = iso_by_constants(R, S, args.height)
    witness = None
    if v.witness is not None:
        w = v.witness
        witness = [[list(r) for r in part] for part in w] if w and isinstance(w[0], list) else [list(r) for r in w]
    return v.exit_code, {"inputs": [m1, m2], "height": args.height, "verdict": _verdict_block(v, witness)}


def cmd_equiv(args) -> tuple[int, dict]:
    R, S, metas = _pair(args)
    v = decide_equiv(R, S, args.height)
    witness = certificate_data(v.witness) if v.witness is not None else None
    return v.exit_code, {"inputs": metas, "height": args.height, "verdict": _verdict_block(v, witness)}


def cmd_certify(args) -> tuple[int, dict]:
    R, S, metas = _pair(args)
    text, wmeta = _read(args.witness)
    try:
        cert = parse_certificate(text)
        failures = certificate_failures(R, S, cert)
    except (FileFormatError, PresentationError) as exc:
        raise InputError(f"{args.witness}: {exc}") from exc
    ok = not failures
    kind = VerdictKind.EQUIVALENT if ok else VerdictKind.NOT_EQUIVALENT
    return (EXIT_OK if ok else EXIT_NEGATIVE), {
        "inputs": metas + [wmeta],
        "certified": ok,
        "verdict": {"kind": kind.value, "reason": "; ".join(failures)},
    }


def _parse_matrix(text: Optional[str]):
    if text is None:
        return None
    try:
        return tuple(tuple(int(x) for x in row.split(",")) for row in text.split(";"))
    except ValueError as exc:
        raise InputError(f"--matrix: expected rows like '1,0;0,1', got {text!r}") from exc


def cmd_twin(args) -> tuple[int, dict]:
    R, meta = _load(args.file, (RingPresentation,))
    spec = TwistSpec(tuple(args.d), _parse_matrix(args.matrix))
    try:
        T = make_twin(R, spec)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    text = dump_data(to_data(T.ring))
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.emit_certificate:
        with open(args.emit_certificate, "w", encoding="utf-8") as fh:
            fh.write(dump_data(certificate_data(T.certificate)))
    return EXIT_OK, {
        "inputs": [meta],
        "d": list(args.d),
        "matrix": [list(r) for r in spec.B] if spec.B else None,
        "twin": to_data(T.ring),
        "certificate": certificate_data(T.certificate),
    }


def cmd_primes(args) -> tuple[int, dict]:
    A, meta = _load(args.file, (ScalarRingPresentation,))
    P = find_decomposition(A, max_factors=args.bound, height=args.height)
    body = {"inputs": [meta], "bound": args.bound}
    if P is None:
        body["decomposition"] = None
        body["reason"] = f"no decomposition of zero within {args.bound} factors at height {args.height}"
        return EXIT_UNKNOWN, body
    pb = p_series_pseudo_basis(module_over_itself(A), P)
    body["decomposition"] = {
        "ideals": [[list(g) for g in I.nonzero_gens()] for I in P.ideals],
        "char_vector": list(P.char_vector),
        "zero_count": P.zero_count,
        "verified": verify_decomposition(A, P),
        "minimal_among_found": P.minimal_among_found,
    }
    body["a_p_subring"] = _sub(a_p_subring(A, P))
    body["pseudo_basis"] = {"elements": [list(x) for x in pb.scalar_basis], "periods": list(pb.scalar_periods)}
    return EXIT_OK, body


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fdzring", description="Invariants, isomorphism and elementary equivalence of rings with finitely generated additive group.")
    p.add_argument("--version", action="version", version=f"fdzring {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", help="write the report here instead of standard output")

    sp = sub.add_parser("validate", help="check a presentation file")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("invariants", help="invariant ideals, ring of scalars, type, adapted basis")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_invariants)

    for name, fn, hint in (("iso", cmd_iso, "decide isomorphism"), ("equiv", cmd_equiv, "decide elementary equivalence")):
        sp = sub.add_parser(name, help=hint)
        sp.add_argument("file1")
        sp.add_argument("file2")
        sp.add_argument("--height", type=int, default=3, help="coefficient bound for basis search (default 3)")
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("certify", help="check an equivalence certificate")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--witness", required=True, help="certificate file")
    common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("twin", help="re-embed the addition at finite index")
    sp.add_argument("file")
    sp.add_argument("--d", type=int, nargs="+", required=True, help="twist factors, one per invariant factor of M/N")
    sp.add_argument("--matrix", help="unimodular matrix B as rows '1,0;0,1' (default identity)")
    sp.add_argument("--emit", help="also write the twin as a presentation file")
    sp.add_argument("--emit-certificate", help="also write the certificate file")
    common(sp)
    sp.set_defaults(func=cmd_twin)

    sp = sub.add_parser("primes", help="prime decomposition of zero in a scalar ring")
    sp.add_argument("file")
    sp.add_argument("--bound", type=int, default=16, help="maximum number of prime factors (default 16)")
    sp.add_argument("--height", type=int, default=2, help="coefficient bound for candidate generators (default 2)")
    common(sp)
    sp.set_defaults(func=cmd_primes)
    return p


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command", "output")}
    try:
        code, body = args.func(args)
        report = {"command": args.command, "flags": flags, **body}
    except InputError as exc:
        code = EXIT_INPUT
        report = {"command": args.command, "flags": flags, "error": str(exc)}
    report["exit_code"] = code
    report["tool"] = {"name": "fdzring", "version": __version__}
    text = render(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_INPUT:
        sys.stderr.write(f"error: {report['error']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
