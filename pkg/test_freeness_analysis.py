from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import freeness_analysis
from colored_burau import cb_pure_closed_form, cb_pure_inverse_closed_form
from freeness_analysis import (
    BLOCK_X, BLOCK_Y, PINGPONG_A, PINGPONG_B, BasisRule, Region, SearchSoundnessError, block_check,
    block_extract, change_of_basis, conjugate, eigen_report, eigenvector_basis, eval_minus_one,
    free_pair_certificate, kernel_search, kernel_search_result, pingpong_check, pingpong_region,
    pure_generator_at_minus_one, relation_search, relation_search_exhaustive, unipotency_check,
    zero_pattern_ok
)
from poly_matrix import IntMatrix, PolyMatrix

ROTATION = IntMatrix([[0, -1], [1, 0]])
SHEAR = IntMatrix([[1, 1], [0, 1]])


def e(k, n):
    return tuple(1 if i == k else 0 for i in range(1, n + 1))


class TestEvaluation:
    def test_first_pure_generator(self):
        assert eval_minus_one(cb_pure_closed_form(1, 2, 4)) == IntMatrix([
            [1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
        ])

    def test_identity(self):
        assert eval_minus_one(PolyMatrix.identity(3, 3)) == IntMatrix.identity(3)

    @pytest.mark.parametrize("j", [3, 4, 5])
    def test_first_column_shift(self, j):
        shift = pure_generator_at_minus_one(j, 5) - IntMatrix.identity(5)
        assert shift.column(1) == tuple(-2 if r < j else 0 for r in range(1, 6))

    def test_inverse_evaluates_to_inverse(self):
        M = eval_minus_one(cb_pure_closed_form(2, 4, 4))
        assert M.inverse() == eval_minus_one(cb_pure_inverse_closed_form(2, 4, 4))


class TestEigenstructure:
    def test_unipotency_basics(self):
        assert unipotency_check(IntMatrix.identity(3))
        assert not unipotency_check(IntMatrix([[2, 0], [0, 2]]))
        assert unipotency_check(BLOCK_X)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_pure_generators_unipotent_with_rank_one_shift(self, n):
        for check in eigen_report(n):
            assert check.unipotent
            assert all(check.fixed)
            assert check.rank_of_shift == 1

    def test_basis_for_j2(self):
        assert eigenvector_basis(2, 4) == [e(1, 4), e(3, 4), e(4, 4)]

    def test_basis_for_j3(self):
        assert eigenvector_basis(3, 4) == [e(4, 4), (1, 0, 1, 0), (1, 1, 0, 0)]

    @pytest.mark.parametrize("j", range(2, 7))
    def test_basis_vectors_fixed_and_independent(self, j):
        n = 6
        M = pure_generator_at_minus_one(j, n)
        basis = eigenvector_basis(j, n)
        assert len(basis) == n - 1
        assert all(M.apply(v) == v for v in basis)
        padded = IntMatrix.from_columns(basis + [e(j, n) if j > 2 else e(2, n)])
        assert padded.rank() == n

    def test_index_checked(self):
        with pytest.raises(ValueError):
            eigenvector_basis(1, 4)
        with pytest.raises(ValueError):
            eigenvector_basis(5, 4)


class TestChangeOfBasis:
    def test_j2_replaces_e_jprime_minus_1(self):
        P = change_of_basis(2, 4, 4)
        assert [P.column(c) for c in range(1, 5)] == [e(1, 4), e(2, 4), (1, 0, 1, 0), e(4, 4)]

    def test_j3_replaces_with_w_vectors(self):
        P = change_of_basis(3, 4, 4)
        assert [P.column(c) for c in range(1, 5)] == [e(1, 4), (1, 1, 0, 0), (1, 1, 1, 0), e(4, 4)]

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_unimodular(self, n):
        for j in range(2, n + 1):
            for jprime in range(j + 1, n + 1):
                if (j, jprime) == (2, 3):
                    continue
                for rule in BasisRule:
                    assert change_of_basis(j, jprime, n, rule).det() in (1, -1)

    def test_excluded_pair(self):
        with pytest.raises(ValueError, match="search"):
            change_of_basis(2, 3, 4)

    def test_pair_order_checked(self):
        with pytest.raises(ValueError):
            change_of_basis(4, 3, 4)


class TestBlocks:
    def test_upper_left_blocks_for_2_4(self):
        P = change_of_basis(2, 4, 4)
        assert block_extract(conjugate(P, pure_generator_at_minus_one(2, 4)), 1) == BLOCK_X
        assert block_extract(conjugate(P, pure_generator_at_minus_one(4, 4)), 1) == BLOCK_Y

    def test_block_constants(self):
        assert BLOCK_X == IntMatrix([[1, 2], [0, 1]])
        assert BLOCK_Y == IntMatrix([[1, 0], [-2, 1]])
        assert BLOCK_Y == PINGPONG_B.inverse()

    def test_block_of_identity(self):
        assert block_extract(IntMatrix.identity(5), 3) == IntMatrix.identity(2)

    def test_zero_pattern(self):
        M = IntMatrix([[1, 0, 0], [5, 1, 2], [0, 3, 1]])
        assert zero_pattern_ok(M, 2)
        assert not zero_pattern_ok(M, 1)

    def test_rule_fallback_for_j2(self):
        split = block_check(2, 4, 4, BasisRule.SPLIT)
        assert split.blocks_ok
        assert not split.zero_pattern_ok
        assert block_check(2, 4, 4, BasisRule.UNIFORM).ok

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_every_admissible_pair_certifies(self, n):
        for j in range(2, n + 1):
            for jprime in range(j + 1, n + 1):
                if (j, jprime) == (2, 3):
                    continue
                cert = free_pair_certificate(j, jprime, n, search_depth=0)
                assert cert.blocks_ok and cert.zero_pattern_ok, (j, jprime, n)
                assert cert.block_row == j - 1


class TestPingPong:
    @pytest.mark.parametrize("v, region", [
        ((3, 1), Region.X1), ((1, 3), Region.X2), ((1, 1), Region.BOUNDARY),
        ((0, 0), Region.BOUNDARY), ((Fraction(-1, 2), Fraction(1, 3)), Region.X1),
    ])
    def test_regions(self, v, region):
        assert pingpong_region(v) == region

    @given(st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.integers(-30, 30))
    def test_containments(self, x, y, k):
        assume(k != 0 and abs(x) != abs(y))
        v = (x, y)
        if pingpong_region(v) == Region.X2:
            assert pingpong_region(PINGPONG_A.power(k).apply(v)) == Region.X1
        else:
            assert pingpong_region(PINGPONG_B.power(k).apply(v)) == Region.X2

    def test_seeded_check(self):
        result = pingpong_check(samples=300, seed=7)
        assert result.ok
        assert result.summary()["counterexample"] is None
        assert pingpong_check(samples=50, seed=7).summary() == pingpong_check(samples=50, seed=7).summary()


class TestRelationSearch:
    def test_sanov_pair_is_free(self):
        assert relation_search([BLOCK_X, BLOCK_Y], 6) is None

    def test_sanov_pair_to_depth_8(self):
        assert relation_search([PINGPONG_A, PINGPONG_B], 8) is None

    def test_rotation_has_order_four(self):
        assert relation_search([ROTATION], 4) == ((0, 1),) * 4
        assert relation_search([ROTATION], 3) is None

    def test_identity_generator(self):
        assert relation_search([IntMatrix.identity(2)], 1) == ((0, 1),)

    def test_singular_generator(self):
        with pytest.raises(ValueError, match="singular"):
            relation_search([IntMatrix([[1, 2], [2, 4]])], 3)

    def test_symbolic_generator_needs_inverse(self):
        with pytest.raises(ValueError, match="inverse"):
            relation_search([cb_pure_closed_form(1, 2, 3)], 2)

    def test_wrong_inverse_rejected(self):
        with pytest.raises(ValueError):
            relation_search([cb_pure_closed_form(1, 2, 3)], 2, inverses=[cb_pure_closed_form(1, 2, 3)])

    def test_shortest_and_least_witness(self):
        # S and T generate SL(2, Z): S^4 = 1 and (S T)^6 = 1
        found = relation_search([ROTATION, SHEAR], 6)
        assert found == relation_search_exhaustive([ROTATION, SHEAR], 6)
        assert len(found) == 4

    def test_job_count_does_not_change_result(self):
        serial = relation_search([ROTATION, SHEAR], 5, jobs=1)
        parallel = relation_search([ROTATION, SHEAR], 5, jobs=2)
        assert serial == parallel

    def test_witness_is_rechecked(self, monkeypatch):
        monkeypatch.setattr(freeness_analysis, "evaluate_abstract_word",
                            lambda word, table: IntMatrix([[2, 0], [0, 2]]))
        with pytest.raises(SearchSoundnessError):
            relation_search([IntMatrix.identity(2)], 1)


class TestKernelSearch:
    def test_n3(self):
        assert kernel_search(3, 4) is None

    def test_n4_short(self):
        assert kernel_search(4, 3) is None

    def test_commutator_is_not_identity(self):
        a, b = cb_pure_closed_form(1, 2, 4), cb_pure_closed_form(1, 3, 4)
        a_inv, b_inv = cb_pure_inverse_closed_form(1, 2, 4), cb_pure_inverse_closed_form(1, 3, 4)
        assert not (a @ b @ a_inv @ b_inv).is_identity()

    def test_result_is_labelled_bounded(self):
        result = kernel_search_result(3, 2)
        assert result.relation is None
        assert result.generators == ["A[1,2]", "A[1,3]"]
        assert "Bounded search only" in result.note

    def test_needs_three_strands(self):
        with pytest.raises(ValueError):
            kernel_search(2, 3)


class TestFreePairCertificate:
    def test_pair_2_4(self):
        cert = free_pair_certificate(2, 4, 4, search_depth=6)
        assert cert.blocks.j == [[1, 2], [0, 1]]
        assert cert.blocks.jprime == [[1, 0], [-2, 1]]
        assert cert.relation is None
        assert cert.basis_rule == BasisRule.UNIFORM.value
        assert cert.is_valid()

    def test_pair_3_5(self):
        cert = free_pair_certificate(3, 5, 5, search_depth=6)
        assert cert.block_row == 2
        assert cert.basis_rule == BasisRule.SPLIT.value
        assert cert.is_valid()

    def test_pair_2_4_full_depth(self):
        assert free_pair_certificate(2, 4, 4, search_depth=8).relation is None

    def test_pair_2_3_is_search_only(self):
        cert = free_pair_certificate(2, 3, 4, search_depth=10)
        assert cert.search_only
        assert cert.P is None
        assert cert.relation is None
        assert cert.is_valid()

    def test_json_shape(self):
        data = free_pair_certificate(3, 4, 4, search_depth=2).model_dump(mode="json")
        for key in ("n", "j", "jprime", "P", "blocks", "zero_pattern_ok", "search_depth", "relation"):
            assert key in data
        assert data["P"]["rows"][1] == [0, 1, 1, 0]

    def test_needs_four_strands(self):
        with pytest.raises(ValueError):
            free_pair_certificate(2, 3, 3)
