"""Acceptance criteria 1-7. Each test records one PASS/FAIL line, shown in
the pytest terminal summary (and printed when run as a script)."""

import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from localfactors import factors, finitegl, hecke, pseries

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


@contextmanager
def criterion(number, title, limit=None):
    """Record a pass/fail line for a criterion; a time limit is part of it."""
    state = {"detail": ""}
    start = time.perf_counter()
    try:
        yield state
    except AssertionError as exc:
        ACCEPTANCE_LINES.append(f"[{number}] FAIL {title}: {str(exc).splitlines()[0]}")
        print(ACCEPTANCE_LINES[-1])
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ACCEPTANCE_LINES.append(f"[{number}] FAIL {title}: {elapsed:.2f}s exceeds {limit}s")
        print(ACCEPTANCE_LINES[-1])
        pytest.fail(f"runtime {elapsed:.2f}s >= {limit}s")
    ACCEPTANCE_LINES.append(f"[{number}] PASS {title} ({elapsed:.2f}s) {state['detail']}".rstrip())
    print(ACCEPTANCE_LINES[-1])


def failures(results):
    return [r.line() for r in results if r.status == "fail"]


def names(results):
    return {r.name for r in results}


def test_1_hecke_identities():
    with criterion(1, "Hecke identity suite", limit=5.0) as st:
        res = hecke.identity_suite(seed=0, n_random=200, box=2)
        assert not failures(res), failures(res)[:3]
        assert names(res) >= {
            "quadratic_relation", "t_s0_is_a", "s1_t_is_a", "s1_s0_is_coroot",
            "theta_multiplicative", "commutation_relation", "psi_multiplicative",
        }
        assert all(r.status == "pass" for r in res)
        st["detail"] = f"{len(res)} checks"


def test_2_principal_series():
    with criterion(2, "principal-series suite", limit=1.0) as st:
        res = pseries.identity_suite()
        assert not failures(res), failures(res)[:3]
        assert names(res) >= {
            "local_coeff_closed_form", "intertwiner_composition", "c_sum", "spherical_eigen",
        }
        st["detail"] = f"{len(res)} checks"


def test_3_factor_grid():
    with criterion(3, "factor cross-route grid", limit=10.0) as st:
        pts = factors.grid_points()
        res = factors.grid_suite(pts)
        assert not failures(res), failures(res)[:3]
        equal = [p for p in pts if p.equal_case]
        passed = [r for r in res if r.status == "pass"]
        want = {"epsilon_fe", "plancherel_product", "ls_equals_rs", "conductor",
                "volume_product", "discriminant"}
        eq_keys = {factors.point_key(p) for p in equal}
        eq_pass = {(r.key, r.name) for r in passed if r.key in eq_keys}
        assert len(eq_pass) == len(equal) * len(want)
        st["detail"] = f"{len(equal)} equal-case points fully checked, {len(pts) - len(equal)} inequivalent (items 4-6)"


def test_4_dimension_formula():
    with criterion(4, "level-zero dimension formula") as st:
        for (n, q), want in zip(factors.DIM_CASES, (1, 2, 4, 6, 3, 16)):
            lhs, rhs, eq = factors.dim_formula_level_zero(n, q)
            assert eq and lhs == rhs == want, (n, q, lhs, rhs)
        st["detail"] = f"{len(factors.DIM_CASES)} cases"


def test_5_bessel_suite():
    with criterion(5, "finite Bessel suite q in {2,3,5}", limit=30.0) as st:
        res = finitegl.bessel_suite(qs=(2, 3, 5), seed=0)
        assert not failures(res), failures(res)[:3]
        assert names(res) >= {
            "bessel_at_identity", "bessel_bi_equivariance", "bessel_inverse_conjugate",
            "bessel_mirabolic_support", "bessel_schur_norm", "bessel_cross_orthogonality",
        }
        st["detail"] = f"{len(res)} checks"


def test_6_gauss_laws():
    with criterion(6, "Gauss-sum modulus laws", limit=10.0) as st:
        res = finitegl.gauss_suite()
        assert not failures(res), failures(res)[:3]
        nu = finitegl.oracle_nu(2, (2, 3))
        assert nu is not None
        for q in (3, 5):
            for l1, l2 in finitegl._pairs(2, q):
                rec = finitegl.level_zero_unit(q, l1, l2)
                assert rec.nu == nu and abs(abs(rec.unit) - 1) < 1e-6, (q, l1, l2)
        st["detail"] = f"nu = {nu}"


def test_7_determinism():
    with criterion(7, "determinism", limit=None) as st:
        argv = [sys.executable, "-m", "localfactors", "verify", "--seed", "7"]
        a = subprocess.run(argv, capture_output=True, check=False)
        b = subprocess.run(argv, capture_output=True, env={"LOCALFACTORS_WORKERS": "4", **_env()}, check=False)
        assert a.returncode == 0 and b.returncode == 0, a.stdout[-300:]
        assert a.stdout == b.stdout, "reports differ"
        res = finitegl.determinism_suite()
        assert not failures(res), failures(res)
        worst = 0.0
        for q in (3, 5):
            for l1, l2 in finitegl._pairs(2, q)[:6]:
                t1, t2 = finitegl.bessel(q, l1), finitegl.bessel(q, l2)
                x = finitegl.pair_sums(t1, t2, "gauss")
                y = finitegl.pair_sums(t1, t2, "gauss", schedule="chunked", chunks=5, workers=3)
                worst = max(worst, abs(x - y))
        assert worst <= 1e-10, worst
        st["detail"] = f"{len(a.stdout)} identical bytes, schedule gap {worst:.1e}"


def _env():
    import os

    return dict(os.environ)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
