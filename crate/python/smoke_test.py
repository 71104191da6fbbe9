"""Smoke test for the jmatrix Python extension.

Build the extension first:

    cargo build -p jmatrix-py --release

then run:

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        built = root / "target" / profile / "libjmatrix.so"
        if built.exists():
            stage = Path(tempfile.mkdtemp(prefix="jmatrix-py-"))
            shutil.copy2(built, stage / "jmatrix.so")
            sys.path.insert(0, str(stage))
            import jmatrix

            return jmatrix
    sys.exit("libjmatrix.so not found; run `cargo build -p jmatrix-py --release` first")


def main():
    jm = load_module()
    checks = 0

    def check(name, ok, detail=""):
        nonlocal checks
        checks += 1
        if not ok:
            sys.exit(f"FAIL {name}: {detail}")
        print(f"ok  {name}")

    spec = jm.BasisSpec("laguerre", lam=2.0, n=40, l=0)
    check("basis spec roundtrip", spec.l == 0 and spec.kappa == -1 and spec.n == 40)
    check("phi finite", math.isfinite(spec.phi(5, 1.3)) and spec.phi(5, 1.3) != 0.0)

    sw = jm.Potential.square_well(-1.0, 1.0)
    check("potential eval", sw(0.5) == -1.0 and sw(1.5) == 0.0)

    free = jm.tan_delta(spec, jm.Potential.free(), 0.5)
    check("free case exact", abs(free.tan_delta) < 1e-12, free.tan_delta)

    got = jm.tan_delta(spec, sw, 0.5)
    exact = jm.squarewell_tan_delta_analytic(-1.0, 1.0, 0.5)
    check(
        "square well vs analytic",
        abs(got.tan_delta - exact) < 1e-3,
        f"{got.tan_delta} vs {exact}",
    )

    num = jm.schrodinger_oracle(sw, 0, 0.5)
    check("numerov oracle vs analytic", abs(num - exact) < 1e-6, f"{num} vs {exact}")

    rel = jm.rel_tan_delta(spec, sw, 0.5)
    dirac = jm.dirac_oracle(sw, -1, 0.5)
    check(
        "relativistic vs Dirac oracle",
        abs(rel.tan_delta - dirac) < 1e-3,
        f"{rel.tan_delta} vs {dirac}",
    )
    check("consistency gap", rel.consistency_gap < 1e-7, rel.consistency_gap)

    rows = jm.nonrel_limit_scan(spec, sw, 0.5, [137.0, 1370.0, 13700.0])
    gaps = [row[3] for row in rows]
    check("nonrel limit monotone", gaps[0] > gaps[1] > gaps[2], gaps)

    try:
        jm.BasisSpec("laguerre", lam=2.0, n=40, kappa=0)
        check("kappa = 0 rejected", False)
    except ValueError:
        check("kappa = 0 rejected", True)

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
