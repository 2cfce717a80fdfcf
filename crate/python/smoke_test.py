#!/usr/bin/env python3
"""Smoke test for the qsym_py extension module.

Builds nothing itself: run `cargo build -p qsym-py` (or `--release`) first,
then `python3 python/smoke_test.py`. The script locates the cdylib in the
cargo target directory, loads it under the importable name, and exercises
the main types and operations.
"""

import cmath
import importlib.util
import json
import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libqsym_py.so",
        ROOT / "target" / "debug" / "libqsym_py.so",
        ROOT / "target" / "release" / "qsym_py.dll",
        ROOT / "target" / "debug" / "qsym_py.dll",
        ROOT / "target" / "release" / "libqsym_py.dylib",
        ROOT / "target" / "debug" / "libqsym_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p qsym-py")
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="qsym-py-"))
    target = tmp / "qsym_py.so"
    shutil.copy2(built, target)
    spec = importlib.util.spec_from_file_location("qsym_py", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def approx(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    qs = load_module()

    # q-numbers: [2] = 2 cos s, [1] = 1
    s = 0.7
    d = qs.Deformation.unimodular(s)
    assert approx(qs.qnumber(1.0, d), 1.0)
    assert approx(qs.qnumber(2.0, d), 2.0 * math.cos(s))
    assert approx(qs.qnumber(3.0, d), math.sin(3 * s) / math.sin(s))

    # q-derivative of x^2 is [2] x
    f = qs.Series([0.0, 0.0, 1.0], 4)
    df = qs.q_derivative(f, d)
    assert approx(df.coeffs()[1], 2.0 * math.cos(s))

    # Jackson integral of x at q = 0.5 carries coefficient 0.4 on x^2,
    # and the q-derivative undoes it exactly
    dq = qs.Deformation.general(0.5 + 0.0j)
    g = qs.Series([0.0, 1.0], 3)
    integral = qs.jackson_integral(g, dq)
    assert approx(integral.coeffs()[2], 0.4)
    back = qs.q_derivative(integral, dq)
    assert approx(back.coeffs()[1], 1.0)

    # q-exponential eigenfunction property through the truncation
    e = qs.q_exponential(1.0 + 0.0j, d, 12)
    lhs = qs.q_derivative(e, d).coeffs()
    rhs = e.coeffs()
    assert all(approx(a, b, 1e-12) for a, b in zip(lhs[:11], rhs[:11]))

    # dilation and square-root spectra: endpoints
    dpi = qs.Deformation.unimodular(math.pi)
    assert approx(qs.sqrt_realization_spectrum(dpi, 7, "inversion"), -1.0)
    assert approx(qs.sqrt_realization_spectrum(dpi, 7, "identity"), 1.0)
    assert approx(qs.dilation_spectrum(d, 3), cmath.exp(3j * s))

    # gauge transform of x^2 gives q^2 x^2
    coeffs = qs.gauge_transform([0j, 0j, 1.0 + 0j], d)
    assert approx(coeffs[2], cmath.exp(2j * s))

    # the q-independent solver returns a q-independent eigenfunction
    sol_a = qs.solve_invariant([0j, 0j, 1 + 0j], 1 + 0j, 0j, 0.3, 16)
    sol_b = qs.solve_invariant([0j, 0j, 1 + 0j], 1 + 0j, 0j, 1.1, 16)
    assert all(approx(a, b, 1e-10) for a, b in zip(sol_a["f"], sol_b["f"]))
    assert approx(sol_a["f"][4], -1.0 / 12.0)

    # Coulomb curve: real mode s = -0.5 puts the pole near e^{0.25}
    xs = [0.02 * i for i in range(51)]
    curve = qs.coulomb_curve("real", -0.5, xs, 200)
    assert abs(curve["pole_ratio_estimate"] - math.exp(0.25)) < 0.01
    x0, v0, conv0 = curve["points"][0]
    assert approx(v0, -1.0, 1e-9) and conv0

    # Bessel of order 1/4 and the PDE variant scan
    i_small = qs.bessel_quarter_order("I", 1e-4)
    lead = (5e-5) ** 0.25 / math.gamma(1.25)
    assert abs(i_small / lead - 1.0) < 1e-6
    variants = qs.pde_variant_scan(1.0)
    assert variants[0]["residual"] < 1e-8
    assert variants[0]["sigma_y"] == "+"
    printed = [v for v in variants if v["is_printed"]][0]
    assert printed["residual"] > 1e-3

    # induced gauge field: curl and a path-dependent phase
    curl = qs.induced_curl([1.0, 1.0, 1.0], 0.01)
    assert any(abs(c) > 0 for c in curl)
    pa = qs.path_phase([1, 1, 1], 0.01, [[0, 0, 0], [1, 0, 0], [1, 1, 0]])
    pb = qs.path_phase([1, 1, 1], 0.01, [[0, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert abs(pa - pb) > 1e-4
    assert approx(abs(pa), 1.0)

    # the verification ledger round-trips as JSON and matches its baseline
    ledger = json.loads(qs.run_verify(order=16, fuzz_trials=60))
    assert ledger["schema_version"] == 1
    verdicts = {e["id"]: e["verdict"] for e in ledger["entries"]}
    assert verdicts["eq08.recursion"] == "confirmed"
    assert verdicts["eq41.curl-z-sign"] == "sign-flip"
    assert verdicts["eq38.printed-variant"] == "mismatch"

    print(f"qsym_py smoke test: all checks passed ({len(ledger['entries'])} ledger entries)")


if __name__ == "__main__":
    main()
