"""Builds the `minorant` extension, imports it and checks a handful of values.

Uses maturin when it is on PATH; otherwise builds the cdylib with cargo and
copies it next to this script.
"""

import importlib
import math
import os
import shutil
import subprocess
import sys
import sysconfig

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)
CRATE = os.path.join(ROOT, "crates", "py")


def build():
    if shutil.which("maturin"):
        subprocess.run(
            ["maturin", "develop", "--release", "-m", os.path.join(CRATE, "Cargo.toml")],
            check=True,
        )
        return
    subprocess.run(
        ["cargo", "build", "--release", "-p", "minorant-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    target = os.environ.get("CARGO_TARGET_DIR", os.path.join(ROOT, "target"))
    lib = "minorant.dll" if sys.platform == "win32" else (
        "libminorant.dylib" if sys.platform == "darwin" else "libminorant.so"
    )
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(os.path.join(target, "release", lib), os.path.join(HERE, "minorant" + suffix))
    sys.path.insert(0, HERE)


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    build()
    m = importlib.import_module("minorant")

    close(m.bessel_zero(0.5, 1), math.pi, 1e-12)
    close(m.bessel_zero(-0.5, 1), math.pi / 2, 1e-12)
    close(m.bessel_j(0.5, 1.0), math.sqrt(2 / math.pi) * math.sin(1.0), 1e-14)
    close(m.normalized_bessel(1.0, 0.0), 1.0, 0.0)
    close(m.gamma(5.0), 24.0, 1e-12)

    close(m.critical_radius(3), 1.0, 1e-12)
    close(m.critical_radius(1), 0.5, 1e-12)
    value, regime = m.beta(1, 0.75)
    assert regime == "closed_form", regime
    close(value, 0.936058, 1e-5)
    assert m.beta(3, 0.5) == (0.0, "exact_zero")
    assert m.beta(1, 5.0)[0] is None

    n = m.minimal_n(0.5)
    rep = m.verify_isometry(0.5, n)
    assert rep.passed and rep.relative_error < 1e-6, rep
    rep = m.verify_integral_identity(0.5, n, c=0.5)
    assert rep.passed, rep

    sol = m.solve_lp(1, 0.75, m.LpConfig(m=64))
    assert sol.status == "optimal", sol
    assert abs(sol.objective / value - 1) < 0.05, sol
    assert sol(0.5) <= 1 + 1e-6 and sol(2.0) <= 1e-6
    rows = m.convergence_study(1, 0.4, m.LpConfig(m=16), rungs=3)
    assert [r[0] for r in rows] == [16, 32, 64], rows

    for bad in (lambda: m.bessel_zero(-1.5, 1), lambda: m.critical_radius(0),
                lambda: m.gamma_factor(1, 1.5), lambda: m.verify_isometry(1.0, 2)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke test ok")


if __name__ == "__main__":
    main()
