import math

import pytest

from quadlat.errors import BadParameter, NotInvertible, NotSaturated, TooLarge
from quadlat.lattice import make_lattice, standard
from quadlat.linalg import IntMatrix, smith_normal_form
from quadlat.embeddings import SublatticeEmbedding
from quadlat.brauer import (
    CohomologyPair,
    FiniteMatrixGroupModL,
    brauer_torsion_order,
    brute_force_points,
    fixed_subspace_mod_ell,
    minkowski_bound,
    nori_sandwich_check,
    quotient_structure,
)

H2 = make_lattice([[0, 1], [1, 0]])


def span_rows(H, rows):
    return CohomologyPair(H, SublatticeEmbedding(H, IntMatrix(rows, ncols=H.rank)))


def k3_pair(rho):
    K3 = standard("LambdaK3")
    rows = [[1 if j == i else 0 for j in range(22)] for i in range(rho)]
    return span_rows(K3, rows)


class TestQuotientStructure:
    def test_saturated_line(self):
        assert quotient_structure(span_rows(H2, [[1, 0]])) == (1, ())

    def test_index_two_line(self):
        assert quotient_structure(span_rows(H2, [[2, 0]])) == (1, (2,))

    def test_full_sublattice(self):
        assert quotient_structure(span_rows(H2, [[1, 0], [0, 1]])) == (0, ())


class TestBrauerTorsionOrder:
    def test_paper_shape_rank_two(self):
        assert brauer_torsion_order(k3_pair(20), 2, 1) == 4

    def test_full_picard_rank_kills_torsion(self):
        assert brauer_torsion_order(k3_pair(22), 3, 2) == 1

    def test_rank_one_case_against_snf_oracle(self):
        # independent check: |H/(N + ell^n H)| via the Smith form of the
        # stacked relation matrix
        P = k3_pair(1)
        ell, n = 3, 2
        stacked = P.ns.basis.stack(IntMatrix.identity(22).scale(ell**n))
        _, S, _ = smith_normal_form(stacked)
        order = 1
        for i in range(22):
            order *= S[i][i]
        assert brauer_torsion_order(P, ell, n) == order == 3**42

    def test_ladder_ratio(self):
        for rho in (1, 7, 19):
            P = k3_pair(rho)
            for ell in (2, 5):
                for n in (1, 2):
                    ratio = brauer_torsion_order(P, ell, n + 1) // brauer_torsion_order(P, ell, n)
                    assert ratio == ell ** (22 - rho)

    def test_unsaturated_rejected(self):
        with pytest.raises(NotSaturated):
            brauer_torsion_order(span_rows(H2, [[2, 0]]), 2, 1)

    def test_bad_inputs(self):
        with pytest.raises(BadParameter):
            brauer_torsion_order(k3_pair(1), 4, 1)
        with pytest.raises(BadParameter):
            brauer_torsion_order(k3_pair(1), 2, 0)


class TestFixedSubspace:
    def test_identity_fixes_everything(self):
        S = FiniteMatrixGroupModL(3, 2, (IntMatrix.identity(2),))
        dim, basis = fixed_subspace_mod_ell(S)
        assert dim == 2 and basis == IntMatrix.identity(2)

    def test_negation_fixes_nothing(self):
        S = FiniteMatrixGroupModL(3, 2, ([[-1, 0], [0, -1]],))
        assert fixed_subspace_mod_ell(S)[0] == 0

    def test_hyperbolic_swap_mod_five(self):
        S = FiniteMatrixGroupModL(5, 2, ([[0, 1], [1, 0]],))
        dim, basis = fixed_subspace_mod_ell(S)
        assert dim == 1 and basis.tolist() == [[1, 1]]

    def test_monotone_under_more_generators(self):
        g1 = [[0, 1], [1, 0]]
        g2 = [[-1, 0], [0, -1]]
        d1 = fixed_subspace_mod_ell(FiniteMatrixGroupModL(7, 2, (g1,)))[0]
        d2 = fixed_subspace_mod_ell(FiniteMatrixGroupModL(7, 2, (g1, g2)))[0]
        d0 = fixed_subspace_mod_ell(FiniteMatrixGroupModL(7, 2, ()))[0]
        assert d0 >= d1 >= d2

    def test_singular_generator_rejected(self):
        with pytest.raises(NotInvertible):
            FiniteMatrixGroupModL(3, 2, ([[3, 0], [0, 1]],))

    def test_composite_modulus_rejected(self):
        with pytest.raises(BadParameter):
            FiniteMatrixGroupModL(6, 2, ())


class TestMinkowskiBound:
    def test_hand_values(self):
        assert minkowski_bound(1) == 2
        assert minkowski_bound(2) == 24
        assert minkowski_bound(3) == 48
        assert minkowski_bound(4) == 5760

    def test_signed_permutation_group_divides(self):
        for n in range(1, 5):
            assert minkowski_bound(n) % (2**n * math.factorial(n)) == 0

    def test_monotone_divisibility(self):
        for n in range(1, 8):
            assert minkowski_bound(n + 1) % minkowski_bound(n) == 0

    def test_bad_input(self):
        with pytest.raises(BadParameter):
            minkowski_bound(0)


class TestNoriSandwich:
    def test_symplectic_example(self):
        assert nori_sandwich_check(120, 3, 5)

    def test_zero_dim(self):
        assert nori_sandwich_check(1, 0, 7)

    def test_boundary_violation(self):
        ell, dim = 5, 2
        assert not nori_sandwich_check((ell + 1) ** dim + 1, dim, ell)
        assert nori_sandwich_check((ell + 1) ** dim, dim, ell)


class TestBruteForcePoints:
    def test_sl2_mod3(self):
        assert brute_force_points("special_linear", 2, 3) == 24

    def test_sp2_mod5(self):
        assert brute_force_points("symplectic", 2, 5) == 120

    def test_sl2_equals_sp2(self):
        for ell in (3, 5, 7):
            assert brute_force_points("special_linear", 2, ell) == brute_force_points(
                "symplectic", 2, ell
            )

    def test_orthogonal_of_hyperbolic_plane_mod3(self):
        # hand count: diag(a, a^{-1}) and antidiag(b, b^{-1}), a,b in {1,2}
        assert brute_force_points("orthogonal", 2, 3, of=standard("U")) == 4

    def test_sl3_mod2_formula(self):
        # |SL3(F2)| = |GL3(F2)| = (8-1)(8-2)(8-4) = 168
        assert brute_force_points("special_linear", 3, 2) == 168

    def test_guard(self):
        with pytest.raises(TooLarge):
            brute_force_points("special_linear", 4, 11)

    def test_input_validation(self):
        with pytest.raises(BadParameter):
            brute_force_points("symplectic", 3, 3)
        with pytest.raises(BadParameter):
            brute_force_points("orthogonal", 2, 3)
        with pytest.raises(BadParameter):
            brute_force_points("weird", 2, 3)
