"""Smoke test for the pylineal extension module.

Build and run from the repository root:

    cargo build --release -p lineal-python
    python3 crates/python/python/smoke_test.py
"""

import glob
import importlib.util
import os
import shutil
import sys
import tempfile
from fractions import Fraction

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))


def load_module():
    candidates = []
    for profile in ("release", "debug"):
        candidates += glob.glob(os.path.join(ROOT, "target", profile, "libpylineal.so"))
        candidates += glob.glob(os.path.join(ROOT, "target", profile, "libpylineal.dylib"))
    if not candidates:
        sys.exit("libpylineal not found; run `cargo build --release -p lineal-python` first")
    lib = max(candidates, key=os.path.getmtime)
    target = os.path.join(tempfile.mkdtemp(), "pylineal.so")
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("pylineal", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    lin = load_module()

    f = r"\x:B. x [B] (1/2.(true + false)) (1/4.true + 3/4.false)"
    app = lin.Term(f"({f}) (1/2.(true + false))", prelude=True)
    nf = lin.normalize(app)
    assert nf == lin.Term("3/8.true + 5/8.false", prelude=True).erase(), nf
    print("normal form:", nf.resugar())

    ok, ty = lin.check_barycentric(lin.Term(f, prelude=True))
    assert ok and ty.resugar() == "B -> B", ty
    print("barycentric type:", ty.resugar())

    r1 = lin.Term(r"(2.(\x:U. \y:U. 1/4.x + 1/4.y)) z w")
    assert r1.weight() == Fraction(2)
    reduced = lin.normalize(r1, mode="unrestricted")
    assert reduced.weight() == Fraction(1), reduced
    print("weights:", r1.weight(), "->", reduced.weight())

    ctx = {"x": "U -> 2.U", "y": "U"}
    r2 = lin.Term("x (1/2.y)")
    assert str(lin.infer(r2, ctx)) == "U"
    assert r2.weight() == Fraction(1, 2)
    assert lin.derivation(r2, ctx).startswith('(equiv "x : U -> 2.U, y : U"')

    scalar, unit = lin.Type("forall X. 1/2.(X -> X)").canonical()
    assert scalar == Fraction(1, 2) and str(unit) == "forall X. X -> X"
    assert not lin.type_equiv(lin.Type("X -> 2.X"), lin.Type("2.(X -> X)"))

    try:
        lin.infer(lin.Term("x + y"), {"x": "X", "y": "Y"})
        raise AssertionError("sum of distinct units typed")
    except lin.LinealTypeError as e:
        print("type error:", e)
    try:
        lin.normalize(lin.Term(r"(\y. (\x. y + x x) (\x. y + x x)) b"), fuel=50)
        raise AssertionError("Y b normalized")
    except lin.FuelExhausted:
        pass
    try:
        lin.Term("x +")
        raise AssertionError("bad input parsed")
    except lin.ParseError:
        pass

    steps = lin.trace(lin.Term("2.x + 3.x"), mode="unrestricted")
    assert steps[0][:2] == ("root", "F1"), steps

    report = lin.run_suite("subject-reduction", seed=1, cases=30)
    assert report["failures"] == 0, report["report"]
    print(report["summary"])
    print("smoke test passed")


if __name__ == "__main__":
    main()
