#!/usr/bin/env python3
"""Smoke test for the cyc_py extension module.

Builds nothing itself: run `cargo build -p cyc-py` (or --release) first.
The script copies the produced cdylib into a temporary directory under the
importable name cyc_py.so, imports it, and drives the main entry points.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_cdylib() -> pathlib.Path:
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libcyc_py.so", "libcyc_py.dylib", "cyc_py.dll")
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit("cyc_py cdylib not found; run `cargo build -p cyc-py` first")


def run(cyc_py) -> None:
    # Cycle arithmetic and canonical text.
    sq = cyc_py.Cycle.parse("diag(1,2)*diag(1,2) @@2")
    assert sq.text() == "-1*K@{1,2} @@2", sq.text()

    # The modified diagonal dies under every coordinate projection.
    g3 = cyc_py.big_gamma(3)
    assert g3.ambient == 3
    for keep in ([1], [1, 2], [2, 3]):
        assert g3.push(keep).is_zero(), keep

    # Both construction routes agree, and arity 2 has no correction terms.
    assert cyc_py.gamma(3, "e", "projector") == cyc_py.gamma(3, "e", "explicit")
    assert cyc_py.beta(2, "K") == cyc_py.gamma(2, "K")
    assert cyc_py.beta(2, "K") == cyc_py.Cycle.parse(
        "K@{1,2} + (2*g - 2)*e@1*e@2 - e@1*K@2 - K@1*e@2 @@2"
    )

    # JSON round-trip.
    again = cyc_py.Cycle.from_json(g3.to_json())
    assert again == g3

    # Pushforward to the Jacobian and the eigenspace grading. Without the
    # base-point filter a mixed word survives; with it only the curve
    # component remains.
    comp = g3.sigma(5).beauville(1, 2)
    assert comp.text() == "-6*CLS_0*DEL_2 + 36*CLS_2", comp.text()
    assert cyc_py.zhang_expand(5, True).beauville(1, 2).text() == "36*CLS_2"
    assert cyc_py.zhang_expand(5, True).beauville(1, 3).text() == "150*CLS_3"

    # Ceresa class as the doubled odd part.
    cer = cyc_py.ceresa_class(4)
    sc = cyc_py.Cycle.parse("diag(1)").sigma(4)
    assert cer == sc - sc.mult_push(-1)

    # Genus-3 tautological reduction.
    assert cyc_py.reduce_taut("8*p3 - 4*q1*p2 + q1^2*p1") == "0"

    # Torsion bounds on the worked example.
    b = cyc_py.torsion_bounds(3, qz_n="1", qz_group="48")
    assert (b["gamma3_bound"], b["ceresa_bound"]) == ("192", "2304"), b

    # Vanishing closure and a derivation chain.
    closure = cyc_py.propagate(3, ["Gamma(3)=0"])
    assert "ceresa=0" in closure["facts"], closure["facts"]
    assert any(t["rule"] == "R9" for t in closure["traces"])
    chain = cyc_py.propagate(3, ["Gamma(3)=0"], explain="delta=0")
    assert chain["chain"][0].endswith("[assumed]"), chain

    # One full identity suite through the bindings.
    results = cyc_py.verify_suite("projectors", max_n=3)
    assert results and all(ok for (_, ok, _) in results), results

    # Engine errors surface as ValueError.
    try:
        cyc_py.Cycle.parse("diag(1,2) @@1")
    except ValueError as e:
        assert "AMBIENT_MISMATCH" in str(e), e
    else:
        raise AssertionError("ambient mismatch not raised")


def main() -> None:
    lib = locate_cdylib()
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy(lib, pathlib.Path(tmp) / "cyc_py.so")
        sys.path.insert(0, tmp)
        import cyc_py

        run(cyc_py)
    print("smoke OK")


if __name__ == "__main__":
    main()
