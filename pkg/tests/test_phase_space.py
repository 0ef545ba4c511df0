import numpy as np
import pytest

from resdp import phase_space as ps
from resdp.errors import DegenerateBasis, NotSkewHermitian

E1 = np.array([1.0, 0.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0, 0.0])
E4 = np.array([0.0, 0.0, 0.0, 1.0])


class TestHermitian:
    def test_unit_vector_norm(self):
        a = ps.from_complex(1.0, 0.0)
        assert ps.hermitian("plus", a, a) == 1.0

    def test_minus_null_vector(self):
        a = ps.from_complex(1.0, 1.0j)
        assert ps.hermitian("minus", a, a) == 0.0

    def test_minus_orthogonal_factors(self):
        a = ps.from_complex(1.0, 0.0)
        b = ps.from_complex(0.0, 1.0)
        assert ps.hermitian("minus", a, b) == 0.0

    def test_sesquilinear(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(size=(2, 4))
        lam = 0.7 + 0.3j
        a1, a2 = ps.to_complex(a)
        scaled = ps.from_complex(lam * a1, lam * a2)
        for sign in ("plus", "minus"):
            assert ps.hermitian(sign, scaled, b) == pytest.approx(
                lam * ps.hermitian(sign, a, b), abs=1e-14)
            assert ps.hermitian(sign, b, scaled) == pytest.approx(
                np.conj(lam) * ps.hermitian(sign, b, a), abs=1e-14)


class TestMetricAndForm:
    def test_metric_examples(self):
        assert ps.metric(E1, E1) == 1.0
        assert ps.metric(E1, E2) == 0.0
        assert ps.metric([1, 1, 1, 1], [1, -1, 1, -1]) == 0.0

    def test_form_plus_first_plane(self):
        assert ps.symplectic_form("plus", E1, E2) == -1.0

    def test_form_minus_second_plane(self):
        assert ps.symplectic_form("minus", E3, E4) == 1.0

    def test_form_vanishes_on_diagonal(self):
        rng = np.random.default_rng(1)
        for sign in ("plus", "minus"):
            u = rng.normal(size=4)
            assert ps.symplectic_form(sign, u, u) == 0.0

    def test_antisymmetry_many_pairs(self):
        rng = np.random.default_rng(2)
        u = rng.normal(size=(1000, 4))
        v = rng.normal(size=(1000, 4))
        for sign in ("plus", "minus"):
            defect = np.abs(ps.symplectic_form(sign, u, v)
                            + ps.symplectic_form(sign, v, u))
            assert np.max(defect) < 1e-14

    def test_form_metric_compatibility(self):
        # plus: w(u, v) = g(u, i v); minus: second plane conjugated.
        rng = np.random.default_rng(3)
        for _ in range(200):
            u, v = rng.normal(size=(2, 4))
            v1, v2 = ps.to_complex(v)
            iv = ps.from_complex(1j * v1, 1j * v2)
            assert abs(ps.symplectic_form("plus", u, v) - ps.metric(u, iv)) < 1e-14
            ivm = ps.from_complex(1j * v1, -1j * v2)
            assert abs(ps.symplectic_form("minus", u, v) - ps.metric(u, ivm)) < 1e-14

    def test_matrix_agrees_with_form(self):
        rng = np.random.default_rng(4)
        for sign in ("plus", "minus"):
            w = ps.omega_matrix(sign)
            for _ in range(50):
                u, v = rng.normal(size=(2, 4))
                assert u @ w @ v == pytest.approx(ps.symplectic_form(sign, u, v), abs=1e-14)


class TestSymplecticOrthogonal:
    def test_full_space_gives_empty(self):
        assert ps.symplectic_orthogonal("plus", np.eye(4)) == []

    def test_single_vector_plus(self):
        # w(u, e1) = u_y1, so the complement is the g-orthogonal of e2.
        basis = ps.symplectic_orthogonal("plus", [E1])
        assert len(basis) == 3
        assert ps.subspace_distance(basis, [E1, E3, E4]) < 1e-12

    def test_single_vector_minus(self):
        basis = ps.symplectic_orthogonal("minus", [E3])
        assert len(basis) == 3
        for b in basis:
            assert abs(ps.symplectic_form("minus", b, E3)) < 1e-14

    def test_dimension_count_and_double_orthogonal(self):
        rng = np.random.default_rng(5)
        for sign in ("plus", "minus"):
            for dim in (1, 2, 3):
                for _ in range(25):
                    v = rng.normal(size=(dim, 4))
                    w = ps.symplectic_orthogonal(sign, v)
                    assert len(w) == 4 - dim
                    back = ps.symplectic_orthogonal(sign, w)
                    assert ps.subspace_distance(back, v) < 1e-10

    def test_degenerate_basis_rejected(self):
        with pytest.raises(DegenerateBasis):
            ps.symplectic_orthogonal("plus", [E1, 2 * E1])


class TestMomentumPairing:
    def test_plus_diagonal_generator(self):
        a = ps.from_complex(1.0, 0.0)
        assert ps.momentum_pairing("plus", a, np.diag([1j, -1j])) == pytest.approx(0.5)

    def test_minus_diagonal_generator(self):
        a = ps.from_complex(1.0, 0.0)
        assert ps.momentum_pairing("minus", a, np.diag([1j, -1j])) == pytest.approx(0.5)

    def test_origin(self):
        assert ps.momentum_pairing("plus", np.zeros(4), np.diag([1j, -1j])) == 0.0

    def test_imaginary_residual_small(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            a = rng.normal(size=4)
            v = rng.normal(size=3)
            xi = np.array([[1j * v[2], 1j * v[0] + v[1]],
                           [1j * v[0] - v[1], -1j * v[2]]])
            _, resid = ps.momentum_pairing_diagnostic("plus", a, xi)
            assert resid < 1e-12

    def test_rejects_non_skew(self):
        with pytest.raises(NotSkewHermitian):
            ps.momentum_pairing("plus", E1, np.eye(2))
        # skew for plus but not for minus
        xi = np.array([[0.0, 1j], [1j, 0.0]])
        with pytest.raises(NotSkewHermitian):
            ps.momentum_pairing("minus", E1, xi)


class TestIntPow:
    def test_matches_builtin(self):
        rng = np.random.default_rng(7)
        z = rng.normal(size=8) + 1j * rng.normal(size=8)
        for k in range(6):
            assert np.allclose(ps.int_pow(z, k), z ** k, rtol=1e-13)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ps.int_pow(2.0, -1)
