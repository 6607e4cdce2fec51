import cmath
import itertools
import math

import pytest

from localfactors.finitegl import (
    NormalizationError,
    bessel,
    bessel_suite,
    canonical_label,
    cuspidal_char,
    cuspidal_labels,
    determinism_suite,
    enum_group,
    field_pair,
    gauss_suite,
    gl1_gauss,
    gl1_unit,
    level_zero_unit,
    mat_inv,
    mat_mul,
    oracle_nu,
    pair_sums,
    psi,
    _pairs,
)

QS = (2, 3, 5)


@pytest.mark.parametrize("q,order", [(2, 6), (3, 48), (4, 180), (5, 480)])
def test_group_order(q, order):
    grp = enum_group(q)
    assert len(grp) == len(set(grp)) == order


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_field_axioms(q):
    fq, fe = field_pair(q)
    for F in (fq, fe):
        n = F.order
        assert all(F.mul[a][F.inv[a]] == 1 for a in range(1, n))
        for a, b, c in itertools.product(range(n), repeat=3):
            assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
        assert len({F.pow(F.gen, k) for k in range(n - 1)}) == n - 1


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_additive_character(q):
    fq, _ = field_pair(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert abs(psi(q, fq.add[a][b]) - psi(q, a) * psi(q, b)) < 1e-12
    assert abs(sum(psi(q, x) for x in range(q))) < 1e-12


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_cuspidal_count(q):
    assert len(cuspidal_labels(q)) == (q * q - q) // 2


def test_canonical_label_frobenius():
    assert canonical_label(3, 3) == canonical_label(3, 1)


def test_character_examples_q3():
    label = cuspidal_labels(3)[0]
    assert cuspidal_char(3, label, (1, 0, 0, 1)) == pytest.approx(2)
    assert cuspidal_char(3, label, (1, 1, 0, 1)) == pytest.approx(-1)
    assert abs(cuspidal_char(3, label, (1, 0, 0, 2))) < 1e-12


@pytest.mark.parametrize("q", QS)
def test_characters_orthonormal(q):
    grp = enum_group(q)
    labels = cuspidal_labels(q)
    for a, b in itertools.combinations_with_replacement(labels, 2):
        ip = sum(cuspidal_char(q, a, g).conjugate() * cuspidal_char(q, b, g) for g in grp) / len(grp)
        assert abs(ip - (a == b)) < 1e-9


@pytest.mark.parametrize("q", QS)
def test_bessel_properties(q):
    grp = enum_group(q)
    for label in cuspidal_labels(q):
        J = bessel(q, label)
        assert abs(J((1, 0, 0, 1)) - 1) < 1e-12
        for g in grp:
            assert abs(J(mat_inv(q, g)) - J(g).conjugate()) < 1e-9
            for x, y in itertools.product(range(q), repeat=2):
                ug = mat_mul(q, mat_mul(q, (1, x, 0, 1), g), (1, y, 0, 1))
                fq, _ = field_pair(q)
                assert abs(J(ug) - psi(q, fq.add[x][y]) * J(g)) < 1e-9
        # mirabolic elements off U vanish
        for a, b in itertools.product(range(1, q), range(q)):
            if a != 1:
                assert abs(J((a, b, 0, 1))) < 1e-9


@pytest.mark.parametrize("q,norm", [(3, 24), (5, 120)])
def test_schur_norm(q, norm):
    for label in cuspidal_labels(q):
        J = bessel(q, label)
        assert abs(pair_sums(J, J, "schur") - norm) < 1e-6


@pytest.mark.parametrize("q", [3, 5])
def test_cross_orthogonal(q):
    for l1, l2 in itertools.combinations(cuspidal_labels(q), 2):
        assert abs(pair_sums(bessel(q, l1), bessel(q, l2), "cross")) < 1e-6


def test_gl1_examples():
    assert gl1_gauss(1, 1, 5) == pytest.approx(-1)
    # trivial against order-4 character
    assert abs(gl1_gauss(0, 1, 5)) == pytest.approx(math.sqrt(5), abs=1e-9)
    for e1, e2 in itertools.permutations(range(6), 2):
        assert abs(gl1_gauss(e1, e2, 7)) == pytest.approx(math.sqrt(7), abs=1e-9)


def test_gl1_direct_sum_oracle():
    # q = 7 is prime: psi(x) = exp(2 pi i x / 7), 3 generates F_7^x
    log = {pow(3, k, 7): k for k in range(6)}
    for e1, e2 in [(0, 1), (2, 5), (3, 4)]:
        want = sum(
            cmath.exp(2j * math.pi * (e2 - e1) * log[x] / 6) * cmath.exp(2j * math.pi * x / 7)
            for x in range(1, 7)
        )
        assert abs(abs(gl1_gauss(e1, e2, 7)) - abs(want)) < 1e-9


@pytest.mark.parametrize("q", [3, 5])
def test_level_zero_unit_modulus(q):
    for l1, l2 in _pairs(2, q):
        rec = level_zero_unit(q, l1, l2)
        assert abs(abs(rec.unit) - 1) < 1e-6
        assert rec.nu == 2


def test_level_zero_rejects_equivalent():
    with pytest.raises(ValueError):
        level_zero_unit(3, 1, 3)


def test_gl1_unit_rejects_equal():
    with pytest.raises(ValueError):
        gl1_unit(5, 1, 5)


def test_oracle_pins():
    assert oracle_nu(2, (2, 3)) == 2
    assert oracle_nu(1, (3, 5)) == 0.5


def test_schedules_agree():
    t1, t2 = bessel(5, 1), bessel(5, 2)
    a = pair_sums(t1, t2, "gauss")
    b = pair_sums(t1, t2, "gauss", schedule="chunked", chunks=7, workers=3)
    assert abs(a - b) < 1e-10


def test_normalization_error_is_arithmetic():
    assert issubclass(NormalizationError, ArithmeticError)


@pytest.mark.parametrize("suite", [bessel_suite, gauss_suite, determinism_suite])
def test_suites_pass(suite):
    bad = [r.line() for r in suite() if not r.ok]
    assert not bad
