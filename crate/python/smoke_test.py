#!/usr/bin/env python3
"""Smoke test for the erange Python extension.

Builds nothing itself: expects `cargo build -p erange-py --release` (or a
debug build) to have produced target/<profile>/liberange.so.  The library is
copied into a scratch directory as erange.so so the module name matches, then
imported and exercised against a handful of known values.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_cdylib() -> Path:
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("liberange.so", "liberange.dylib", "erange.dll")
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit(
        "liberange not found - run `cargo build -p erange-py --release` first\n"
        f"  looked at: {', '.join(str(c) for c in candidates)}"
    )


def main() -> None:
    lib = locate_cdylib()
    scratch = tempfile.mkdtemp(prefix="erange-py-")
    suffix = ".so" if lib.suffix != ".dll" else ".pyd"
    shutil.copy2(lib, Path(scratch) / f"erange{suffix}")
    sys.path.insert(0, scratch)

    import erange

    checks = 0

    def check(label, ok):
        nonlocal checks
        checks += 1
        if not ok:
            sys.exit(f"FAIL: {label}")
        print(f"  ok: {label}")

    # closed-form scattering lengths
    w = erange.SquareWell(1.0, 4.4)
    check("a(4.4) ~ 0.2963", abs(w.scattering_length() - 0.2963) < 2e-4)
    w0 = erange.SquareWell(1.0, 4.4934)
    check("a(4.4934) ~ 0", abs(w0.scattering_length()) < 5e-4)

    # solver against the closed form
    pot = erange.Potential.square_well(1.0, 4.4934)
    k = math.sqrt(0.3)
    rec = erange.solve_phase(pot, k)
    check(
        "numerov matches the closed form",
        abs(rec.tan_delta_over_k - w0.tan_delta_over_k(k)) < 1e-6,
    )
    check("record reciprocity", abs(rec.tan_delta_over_k * rec.k_cot_delta - 1.0) < 1e-12)

    # integral identity on a gaussian well
    gauss = erange.Potential.gaussian(2.0, 1.0)
    rec = erange.solve_phase(gauss, 0.5)
    ident = erange.integral_identity(gauss, 0.5)
    check("integral identity closes", abs(ident - rec.tan_delta_over_k) < 1e-6)

    # expansions and coefficients
    check("er22 at a=0", abs(erange.eval_expansion("er22", 0.0, 1.0, math.sqrt(0.2)) - 0.2 / 6) < 1e-12)
    coeffs = w.taylor_coefficients()
    check("b_small(4.4)", abs(coeffs["b_small"] - 0.1304248889) < 1e-9)
    ic, sl = erange.reciprocal_coefficients(coeffs["a"], coeffs["b_small"])
    check("reciprocal relation", abs(sl - coeffs["c_large"]) < 1e-10 * abs(coeffs["c_large"]))

    # inverse design and fitting round trip
    beta = erange.solve_beta_for_target_a(1.0, 1.0, 3.0, 4.4)
    check("beta for a=R is pi", abs(beta - math.pi) < 1e-10)
    ks = [math.sqrt(0.001 * i) for i in range(1, 51)]
    ts = [w.tan_delta_over_k(k) for k in ks]
    fit = erange.fit_effective_range(ks, ts, "er22", 0.0, 0.05)
    check("fit recovers a", abs(fit["a"] - w.scattering_length()) < 1e-3)

    # comparison report ordering (improved below basic away from a=0)
    reports = erange.compare_expansions(1.0, 4.4, ["er22", "er23"])
    check("er23 tracks the exact curve better", reports[1]["max_abs_dev"] < reports[0]["max_abs_dev"])

    # scan shape
    scan = erange.scattering_length_scan(1.0, 10.0, 200)
    check("scan length", len(scan) == 200)

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
