import itertools

import numpy as np
import pytest

from spectre.catalog import base_triple, matrix_triple, one_point, random_triple, two_point
from spectre.ko import ALL_LABELS, KOLabel, sign_table
from spectre.linalg import SIGMA0, SIGMA1, SIGMA2, SIGMA3, eigenvalues_hermitian, tensor
from spectre.product import (ODD_ODD_TABLE, PAULI, DimensionCapError, PauliChoice, alt_even_even_dirac,
                             j_beta, product, product_signs, toggle)
from spectre.triple import infer_ko, measured_signs, verify

IS2 = 1j * SIGMA2

# reference (M+, M-) choices, rows n1 and columns n2
REFERENCE = {
    1: [(IS2, SIGMA1), (SIGMA3, SIGMA0), (IS2, SIGMA1), (SIGMA3, SIGMA0)],
    3: [(SIGMA0, SIGMA3), (SIGMA1, IS2), (SIGMA0, SIGMA3), (SIGMA1, IS2)],
    5: [(IS2, SIGMA1), (SIGMA3, SIGMA0), (IS2, SIGMA1), (SIGMA3, SIGMA0)],
    7: [(SIGMA0, SIGMA3), (SIGMA1, IS2), (SIGMA0, SIGMA3), (SIGMA1, IS2)],
}
ODD = (1, 3, 5, 7)
EVEN_LABELS = [l for l in ALL_LABELS if l.even]


class TestOddOddTable:
    def test_matches_reference(self):
        for n1, row in REFERENCE.items():
            for n2, (mp, mm) in zip(ODD, row):
                choice = ODD_ODD_TABLE[(n1, n2)]
                np.testing.assert_array_equal(choice.m_plus, mp)
                np.testing.assert_array_equal(choice.m_minus, mm)

    def test_row_symmetry(self):
        for n2 in ODD:
            assert ODD_ODD_TABLE[(1, n2)] == ODD_ODD_TABLE[(5, n2)]
            assert ODD_ODD_TABLE[(3, n2)] == ODD_ODD_TABLE[(7, n2)]

    def test_entries_are_pauli(self):
        for choice in ODD_ODD_TABLE.values():
            for m in (choice.m_plus, choice.m_minus):
                assert any(np.array_equal(m, p) for p in PAULI.values())

    def test_pauli_choice_validates(self):
        with pytest.raises(ValueError):
            PauliChoice("s2", "s0")


class TestJBeta:
    def test_conventional_unchanged(self):
        t = one_point("0+")
        assert np.array_equal(j_beta(t, 1).u, t.real_structure.u)

    def test_exotic_is_j_gamma(self):
        t = one_point("0+")
        j = j_beta(t, -1)
        np.testing.assert_array_equal(j.u, t.real_structure.u @ np.conj(t.grading))
        got = measured_signs(t, j=j)
        assert got == {"eps": [1], "eps_prime": [-1], "eps_double_prime": [1]}

    @pytest.mark.parametrize("label", EVEN_LABELS, ids=str)
    def test_round_trip(self, label):
        t = one_point(label)
        flipped = t.replace(real_structure=j_beta(t, -label.beta), ko=label.flipped())
        np.testing.assert_allclose(j_beta(flipped, label.beta).u, t.real_structure.u, atol=1e-14)

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            j_beta(one_point(3), 1)


class TestToggle:
    def test_four(self):
        t = toggle(one_point("4+"))
        assert t.ko == KOLabel(4, "minus")
        assert sign_table(t.ko).as_tuple() == (-1, -1, 1)
        assert verify(t).passed

    def test_six(self):
        t = toggle(one_point("6+"))
        assert sign_table(t.ko).as_tuple() == (-1, -1, -1)
        assert verify(t).passed

    @pytest.mark.parametrize("label", EVEN_LABELS, ids=str)
    def test_involution(self, label):
        t = one_point(label)
        tt = toggle(toggle(t))
        assert tt.ko == t.ko
        np.testing.assert_allclose(tt.real_structure.u, t.real_structure.u, atol=1e-14)
        assert np.array_equal(tt.dirac, t.dirac) and np.array_equal(tt.grading, t.grading)

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            toggle(one_point(1))


class TestProduct:
    def test_one_times_one(self):
        t1, t2 = one_point(1), one_point(1)
        p = product(t1, t2, 1)
        assert p.ko == KOLabel(2, "plus")
        np.testing.assert_array_equal(
            p.real_structure.u, tensor(t1.real_structure.u, t2.real_structure.u, IS2))
        e1, e2 = np.eye(t1.hilbert_dim), np.eye(t2.hilbert_dim)
        np.testing.assert_array_equal(p.grading, tensor(e1, e2, SIGMA3))
        assert verify(p).passed

    def test_three_times_seven_minus(self):
        t1, t2 = one_point(3), one_point(7)
        p = product(t1, t2, -1)
        np.testing.assert_array_equal(
            p.real_structure.u, tensor(t1.real_structure.u, t2.real_structure.u, IS2))
        assert p.ko.n == 2 and verify(p).passed

    @pytest.mark.parametrize("even,odd", [("2+", 1), ("4-", 3), ("6+", 7), ("0-", 5)])
    def test_even_times_odd(self, even, odd):
        t1, t2 = one_point(even), one_point(odd)
        p = product(t1, t2)
        n = (t1.ko.n + t2.ko.n) % 8
        beta = sign_table(KOLabel(n)).eps_prime
        np.testing.assert_array_equal(
            p.real_structure.u, tensor(j_beta(t1, beta).u, t2.real_structure.u))
        np.testing.assert_array_equal(
            p.dirac, tensor(t1.dirac, np.eye(t2.hilbert_dim)) + tensor(t1.grading, t2.dirac))
        assert p.grading is None and verify(p).passed

    def test_odd_times_even(self):
        t1, t2 = one_point(5), one_point("2-")
        p = product(t1, t2)
        np.testing.assert_array_equal(
            p.dirac, tensor(t1.dirac, t2.grading) + tensor(np.eye(2), t2.dirac))
        assert p.ko == KOLabel(7) and verify(p).passed

    def test_mixed_ignores_variant(self):
        for a, b in [("2+", 3), (5, "6-")]:
            p, m = product(one_point(a), one_point(b), 1), product(one_point(a), one_point(b), -1)
            assert np.array_equal(p.real_structure.u, m.real_structure.u)
            assert p.ko == m.ko

    def test_even_even_grading(self):
        t1, t2 = two_point(), one_point("6-")
        for v in (1, -1):
            p = product(t1, t2, v)
            np.testing.assert_array_equal(p.grading, tensor(t1.grading, t2.grading))

    def test_unit_triple(self):
        unit = one_point("0+", trivial_dirac=True)
        assert unit.hilbert_dim == 1
        for t in (two_point(), matrix_triple(), one_point(3)):
            p = product(unit, t)
            np.testing.assert_allclose(p.dirac, t.dirac)
            np.testing.assert_allclose(eigenvalues_hermitian(p.dirac),
                                       eigenvalues_hermitian(t.dirac), atol=1e-12)

    def test_labelled_signs_realized(self):
        for l1, l2 in itertools.product(ALL_LABELS, repeat=2):
            for v in (1, -1):
                p = product(one_point(l1), one_point(l2), v)
                assert sign_table(p.ko) == product_signs(l1, l2, v)
                assert p.ko in infer_ko(p)

    def test_large_factors(self):
        p = product(two_point(), matrix_triple(), -1)
        assert p.hilbert_dim == 32
        report = verify(p)
        assert report.passed, str(report)
        assert p.ko.n == 6

    def test_base_times_matrix(self):
        p = product(base_triple(2), matrix_triple())
        assert p.ko == KOLabel(5) and verify(p).passed

    def test_cap(self):
        with pytest.raises(DimensionCapError):
            product(matrix_triple(), matrix_triple(), cap=63)
        assert product(matrix_triple(), matrix_triple(), cap=64).hilbert_dim == 64

    def test_bad_variant(self):
        with pytest.raises(ValueError):
            product(one_point(1), one_point(1), 0)


class TestAltDirac:
    def test_zero_left(self):
        t1 = one_point("0+", trivial_dirac=True)
        t2 = one_point("2+")
        np.testing.assert_allclose(alt_even_even_dirac(t1, t2), tensor(np.eye(1), t2.dirac))

    def test_zero_right(self):
        t1 = one_point("4+")
        t2 = one_point("0-", trivial_dirac=True)
        alt = alt_even_even_dirac(t1, t2)
        np.testing.assert_allclose(alt, tensor(t1.dirac, t2.grading))
        np.testing.assert_allclose(eigenvalues_hermitian(alt),
                                   eigenvalues_hermitian(product(t1, t2).dirac), atol=1e-12)

    def test_random_spectra(self, rng):
        for _ in range(10):
            t1 = random_triple(EVEN_LABELS[rng.integers(8)], rng, multiplicity=1)
            t2 = random_triple(EVEN_LABELS[rng.integers(8)], rng, multiplicity=1)
            np.testing.assert_allclose(eigenvalues_hermitian(alt_even_even_dirac(t1, t2)),
                                       eigenvalues_hermitian(product(t1, t2).dirac), atol=1e-9)

    def test_parity(self):
        with pytest.raises(ValueError):
            alt_even_even_dirac(one_point(1), one_point("2+"))
