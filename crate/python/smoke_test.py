#!/usr/bin/env python3
"""Smoke test for the rroch_py extension module.

Builds the cdylib with cargo if needed, copies it next to this script
under the importable name, then exercises the main surface.
"""

import pathlib
import shutil
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def build_module() -> pathlib.Path:
    subprocess.run(
        ["cargo", "build", "-p", "rroch-py", "--release"], cwd=ROOT, check=True
    )
    built = ROOT / "target" / "release" / "librroch_py.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / "release" / "librroch_py.dylib"
    target = HERE / "rroch_py.so"
    shutil.copy2(built, target)
    return target


def main() -> None:
    build_module()
    sys.path.insert(0, str(HERE))
    import rroch_py as rp

    # Universal polynomials.
    assert rp.universal_poly(0, 1) == "t0"
    assert rp.universal_poly(0, 2) == "-t0"
    assert rp.universal_poly(1, 1) == "-t1 + (1/2 t0^2 + 1/2 t0) u1"
    assert rp.universal_poly(1, 1, format="latex") == r"-t_1 + \binom{t_0+1}{2} u_1"

    # Series arithmetic.
    ctx = rp.Context([("x", 1), ("y", 1)], 4)
    one, x, y = ctx.one(), ctx.var("x"), ctx.var("y")
    assert (one + x) * (one + y) == one + x + y + x * y
    inv = (one + x).inverse()
    assert (one + x) * inv == one
    assert inv.coeff([3, 0]) == "-1"
    assert ((one + x) * (one + y)).component(1).text() == "x + y"

    # Bundles.
    line = ctx.bundle_from_roots([("x", 1)])
    assert line.rank() == "1"
    assert line.chern_character().text() == "1 + x + 1/2 x^2 + 1/6 x^3 + 1/24 x^4"
    assert line.todd().text() == "1 + 1/2 x + 1/12 x^2 - 1/720 x^4"
    assert line.dual().chern().text() == "1 - x"

    pair = ctx.bundle_from_roots([("x", 1), ("y", 1)])
    # Chern character is additive over sums and multiplicative over star.
    l2 = ctx.bundle_from_roots([("y", 1)])
    assert pair.chern_character() == line.chern_character() + l2.chern_character()
    assert (
        line.star(l2).chern_character()
        == line.chern_character() * l2.chern_character()
    )
    assert pair.exterior_power(2).chern().text() == "1 + x + y"
    lam = pair.lambda_minus_one_dual()
    assert lam.rank() == "0"
    # ch of the alternating dual sum factors as (1 - e^{-x})(1 - e^{-y}).
    assert lam.chern_character().coeff([1, 1]) == "1"

    # Chern-class constructor.
    e = ctx.bundle_from_chern(2, one + x + x * y)
    assert e.chern_class(2).text() == "x y"

    # Verification suites.
    ok, cases = rp.verify("rrwd", n=1, r=1, truncate=4)
    assert ok and cases and all(passed for _, passed in cases)
    ok, _ = rp.verify("grr", n=1, r=1, truncate=3)
    assert ok
    ok, _ = rp.verify("generating", r=2, truncate=4)
    assert ok

    print("smoke test: PASS")


if __name__ == "__main__":
    main()
