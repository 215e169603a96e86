"""Build the extension module and exercise its main entry points.

Usage: python3 python/smoke_test.py [--no-build]
"""

import cmath
import json
import math
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "spinsplit-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )


def load():
    lib = ROOT / "target" / "release" / "libspinsplit_py.so"
    if not lib.exists():
        sys.exit(f"missing {lib}; run without --no-build")
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "spinsplit_py.so")
    sys.path.insert(0, str(tmp))
    import spinsplit_py

    return spinsplit_py


def main():
    if "--no-build" not in sys.argv:
        build()
    sp = load()

    lam = sp.standard_boost_matrix([0.0, 0.0, 0.75], 1.0)
    assert abs(lam[0][0] - 1.25) < 1e-12 and abs(lam[0][3] - 0.75) < 1e-12

    j, s, l = sp.massive_jsl(1)
    assert j.rank == 3
    for t in (j, s, l):
        assert t.so3_residual(samples=50) < 1e-10
    assert s.commuting_residual(l) < 1e-10
    assert s.vector_operator_residual(j) < 1e-10

    for h in (-2, -1, 1, 2):
        jm = sp.massless_j(h, "north")
        assert jm.so3_residual() < 1e-8
        assert sp.helicity_residual(h) < 1e-9
        par, perp = sp.split_parallel_perp(jm)
        consts, res = par.closure_fit()
        assert consts < 1e-8 and res < 1e-8
        assert perp.closure_fit()[1] > 0.1
        assert sp.chern_number(h, 3) == -2 * h

    assert sp.whitney_sum_chern([1, -1], 3) == 0
    hol, omega = sp.berry_holonomy(1, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], 200)
    assert abs(omega - math.pi / 2) < 1e-12
    assert abs(hol - cmath.exp(1j * omega)) < 1e-6

    d = sp.sam_descent([0, 0, 1], [1, 0, 0], 1.0, [1, 0, 0], math.pi / 2)
    assert abs(d - 1.0) < 1e-10

    report = json.loads(sp.run_suite("gauge", seed=7))
    assert report["verdict"] == "pass" and report["seed"] == 7
    assert sp.run_suite("gauge", seed=7) == sp.run_suite("gauge", seed=7)

    try:
        sp.run_suite("nonsense")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown suite accepted")
    try:
        sp.massless_j(1, "east")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown chart accepted")

    print(f"spinsplit_py {sp.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
