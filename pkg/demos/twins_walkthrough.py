"""Invariants of a small non-regular ring, its twins, and the equivalence checks.

Run from the repository root:  python3 demos/twins_walkthrough.py
"""

from pathlib import Path

from fdzring.equivalence import TwistSpec, adapted_basis, certify, decide_equiv, decide_iso, make_twin
from fdzring.fileformat import load
from fdzring.ideals import invariant_report, is_regular, width_bounds
from fdzring.scalars import induced_bilinear, ring_of_scalars, type_of

DATA = Path(__file__).parent / "data"


def main() -> None:
    R = load(str(DATA / "r1.yaml"))
    Z = load(str(DATA / "zring.yaml"))

    rep = invariant_report(R)
    print("invariant ideals of R:")
    for name, value in vars(rep).items():
        print(f"  {name}: {value}")
    print("regular:", is_regular(R))
    print("width:", width_bounds(R))
    print("type of the induced map:", type_of(induced_bilinear(R)).as_tuple())
    print("ring of scalars:", ring_of_scalars(R).ring.group)

    ab = adapted_basis(R)
    print(f"adapted basis breakpoints l={ab.l} m={ab.m} n={ab.n} r={ab.r}, e={ab.e}")

    for d in (1, 3, 5):
        T = make_twin(R, TwistSpec((d,)))
        print(f"twin d={d}: certified={certify(R, T.ring, T.certificate)}", end="")
        print(f", equiv={decide_equiv(R, T.ring).kind.name}, iso={decide_iso(R, T.ring).kind.name}")

    v = decide_iso(R, Z)
    print("R vs Z:", v.kind.name, "-", v.reason)


if __name__ == "__main__":
    main()
