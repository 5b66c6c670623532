import numpy as np
import pytest

from spectre.algebra import scalar_representation
from spectre.catalog import (DEFAULT_SEED, InfeasibleConstraints, catalog, constraint_nullspace,
                             matrix_triple, one_point, random_triple, random_unitary,
                             real_structure_for, search_real_structure, two_point,
                             unitary_relabel)
from spectre.ko import ALL_LABELS, KOLabel, sign_table
from spectre.linalg import eigenvalues_hermitian, max_abs
from spectre.triple import RealSpectralTriple, infer_ko, j_fixed_subalgebra, verify


def _same_up_to_phase(u, v, atol=1e-8):
    k = np.argmax(np.abs(v))
    phase = u.flat[k] / v.flat[k]
    return abs(abs(phase) - 1) < atol and np.allclose(u, phase * v, atol=atol)


class TestOnePoint:
    @pytest.mark.parametrize("trivial", [False, True])
    @pytest.mark.parametrize("label", ALL_LABELS, ids=str)
    def test_exists_and_verifies(self, label, trivial):
        t = one_point(label, trivial_dirac=trivial)
        assert t.ko == label
        assert verify(t).max_residual <= 1e-10
        assert label in infer_ko(t)
        if sign_table(label).eps < 0:
            assert t.hilbert_dim >= 2

    def test_nontrivial_dirac(self):
        for label in ALL_LABELS:
            assert max_abs(one_point(label).dirac) > 0

    def test_zero_plus_minimal(self):
        t = one_point("0+", trivial_dirac=True)
        assert t.hilbert_dim == 1 and max_abs(t.real_structure.u - 1) == 0

    def test_one(self):
        t = one_point(1, trivial_dirac=True)
        assert t.signs.as_tuple() == (1, -1, None)

    def test_two_plus_forced_even_dim(self):
        t = one_point("2+", trivial_dirac=True)
        assert t.hilbert_dim == 2
        np.testing.assert_allclose(t.real_structure.square(), -np.eye(2))

    def test_accepts_strings_and_ints(self):
        assert one_point("6+").ko == one_point(KOLabel(6, "plus")).ko
        assert one_point(3).ko == KOLabel(3)


class TestTwoPoint:
    def test_verifies(self):
        assert verify(two_point()).passed

    def test_spectrum(self):
        # X⊗1 + 1⊗conj(X) with X having eigenvalues ±|m|
        np.testing.assert_allclose(eigenvalues_hermitian(two_point(1.5).dirac),
                                   [-3, 0, 0, 3], atol=1e-12)

    def test_complex_mass(self):
        assert verify(two_point(0.3 + 0.4j)).passed

    def test_fixed_subalgebra_direct(self):
        t = two_point()
        basis = j_fixed_subalgebra(t)
        # J swaps the tensor factors, so diag(x, y)⊗1 is fixed iff x = y
        for c in basis:
            assert abs(c[0] - c[1]) < 1e-10
        assert len(basis) == 2


class TestCatalog:
    @pytest.mark.parametrize("name,t", sorted(catalog().items()))
    def test_all_verify(self, name, t):
        assert verify(t).max_residual <= 1e-10

    def test_matrix_triple(self):
        t = matrix_triple()
        assert t.ko == KOLabel(6, "plus") and t.hilbert_dim == 8


class TestRandomHelpers:
    @pytest.mark.parametrize("label", ALL_LABELS, ids=str)
    def test_real_structure_for(self, label):
        for dim in (2, 4, 6):
            j = real_structure_for(label, dim)
            np.testing.assert_allclose(j.square(), sign_table(label).eps * np.eye(dim), atol=1e-14)
            assert j.unitary_residual() < 1e-14

    def test_real_structure_odd_dim_rejected(self):
        with pytest.raises(ValueError):
            real_structure_for("3", 3)

    @pytest.mark.parametrize("label", ALL_LABELS, ids=str)
    def test_random_triple(self, label, rng):
        t = random_triple(label, rng, multiplicity=3)
        assert verify(t).passed and label in infer_ko(t)

    def test_relabel_preserves_spectrum(self, rng):
        t = matrix_triple()
        t2 = unitary_relabel(t, random_unitary(8, rng))
        assert verify(t2).passed
        np.testing.assert_allclose(eigenvalues_hermitian(t2.dirac), eigenvalues_hermitian(t.dirac),
                                   atol=1e-10)


class TestConstraintNullspace:
    def test_solutions_satisfy_relations(self):
        t = two_point()
        s = t.signs
        basis = constraint_nullspace(t.dirac, t.grading, s)
        assert basis.shape[1] > 0
        d, g = t.dirac, t.grading
        for k in range(basis.shape[1]):
            u = basis[:, k].reshape(4, 4)
            assert max_abs(u.T - s.eps * u) < 1e-12
            assert max_abs(d @ u - s.eps_prime * u @ np.conj(d)) < 1e-12
            assert max_abs(g @ u - s.eps_double_prime * u @ np.conj(g)) < 1e-12

    def test_grading_needs_even_signs(self):
        with pytest.raises(ValueError):
            constraint_nullspace(np.eye(2), np.eye(2), sign_table(KOLabel(3)))


class TestSearch:
    def test_trivial_point(self):
        rep = scalar_representation(1)
        (j,) = search_real_structure(rep, np.zeros((1, 1)), np.eye(1), "0+")
        assert abs(abs(j.u[0, 0]) - 1) < 1e-12

    def test_two_point_finds_catalog_j(self):
        t = two_point()
        sols = search_real_structure(t.rep, t.dirac, t.grading, "0+")
        assert any(_same_up_to_phase(j.u, t.real_structure.u) for j in sols)

    def test_two_point_sign_classes(self):
        t = two_point()
        outcome = {}
        for label in (l for l in ALL_LABELS if l.even):
            try:
                outcome[str(label)] = len(search_real_structure(t.rep, t.dirac, t.grading, label))
            except InfeasibleConstraints:
                outcome[str(label)] = "infeasible"
        assert outcome["0+"] > 0 and outcome["0-"] > 0
        # J² = -1 has linear solutions for 2± and 6± but none pass order one
        for label in ("2+", "2-", "6+", "6-"):
            assert outcome[label] == 0
        assert outcome["4+"] == outcome["4-"] == "infeasible"

    def test_matrix_six_plus(self):
        t = matrix_triple()
        sols = search_real_structure(t.rep, t.dirac, t.grading, "6+", budget=4)
        assert sols
        for j in sols:
            assert verify(t.replace(real_structure=j)).passed

    @pytest.mark.parametrize("label", ALL_LABELS, ids=str)
    def test_fixed_point(self, label):
        t = one_point(label)
        sols = search_real_structure(t.rep, t.dirac, t.grading, label)
        assert any(_same_up_to_phase(j.u, t.real_structure.u) for j in sols)
        for j in sols:
            again = search_real_structure(t.rep, t.dirac, t.grading, label, seed=DEFAULT_SEED + 1)
            assert any(_same_up_to_phase(k.u, j.u) for k in again)

    def test_deterministic(self):
        t = two_point()
        a = search_real_structure(t.rep, t.dirac, t.grading, "0+", seed=7)
        b = search_real_structure(t.rep, t.dirac, t.grading, "0+", seed=7)
        assert len(a) == len(b)
        for x, y in zip(a, b):
            np.testing.assert_array_equal(x.u, y.u)

    def test_parity_mismatch(self):
        t = two_point()
        with pytest.raises(ValueError):
            search_real_structure(t.rep, t.dirac, t.grading, 3)

    def test_zero_budget_empty(self):
        t = two_point()
        assert search_real_structure(t.rep, t.dirac, t.grading, "0+", budget=0) == []

    def test_order_one_filters(self):
        # without order conditions the polish may return candidates that verify rejects
        t = two_point()
        sols = search_real_structure(t.rep, t.dirac, t.grading, "0+", order_conditions=False)
        for j in sols:
            assert verify(RealSpectralTriple(t.rep, t.dirac, j, KOLabel(0), t.grading)).passed
