import pytest
from hypothesis import given

import colored_burau
from braid_core import BraidWord, Permutation, parse_word, pure_generator_word, underlying_permutation
from colored_burau import (
    CBElement, burau_generator_matrix, burau_specialize, cb_apply, cb_generator, cb_pure_closed_form,
    cb_pure_det, cb_pure_inverse_closed_form, cb_word_oracle, center_report, star_mul,
    verify_pure_generators
)
from laurent_ring import LaurentPoly
from poly_matrix import PolyMatrix
from schemas import CBElementModel
from strategies import braid_words


def variables(n):
    return [LaurentPoly.var(k, n) for k in range(1, n + 1)]


class TestGenerators:
    def test_sigma1_on_two_strands(self):
        t1, t2 = variables(2)
        one, zero = LaurentPoly.one(2), LaurentPoly.zero(2)
        g = cb_generator(1, 2)
        assert g.matrix == PolyMatrix([[-t1, one], [zero, one]])
        assert g.perm == Permutation.transposition(1, 2, 2)

    def test_sigma2_on_three_strands(self):
        t1, t2, t3 = variables(3)
        one, zero = LaurentPoly.one(3), LaurentPoly.zero(3)
        g = cb_generator(2, 3)
        assert g.matrix == PolyMatrix([[one, zero, zero], [t2, -t2, one], [zero, zero, one]])
        assert g.perm.to_list() == [1, 3, 2]

    def test_inverse_generator_matrix(self):
        t1, t2 = variables(2)
        one, zero = LaurentPoly.one(2), LaurentPoly.zero(2)
        g = cb_generator(1, 2, -1)
        assert g.matrix == PolyMatrix([[-(t2 ** -1), t2 ** -1], [zero, one]])

    @pytest.mark.parametrize("n", range(2, 9))
    def test_generator_times_inverse_is_identity(self, n):
        for i in range(1, n):
            assert (cb_generator(i, n, 1) * cb_generator(i, n, -1)).is_identity()
            assert (cb_generator(i, n, -1) * cb_generator(i, n, 1)).is_identity()

    def test_generator_determinant_is_unit(self):
        assert cb_generator(2, 4).check_unit_det() == -LaurentPoly.var(2, 4)

    @pytest.mark.parametrize("i, n, sign", [(0, 3, 1), (3, 3, 1), (1, 3, 2)])
    def test_generator_out_of_range(self, i, n, sign):
        with pytest.raises(ValueError):
            cb_generator(i, n, sign)


class TestStarProduct:
    def test_sigma1_squared(self):
        t1, t2 = variables(2)
        one, zero = LaurentPoly.one(2), LaurentPoly.zero(2)
        square = star_mul(cb_generator(1, 2), cb_generator(1, 2))
        assert square.matrix == PolyMatrix([[t1 * t2, one - t1], [zero, one]])
        assert square.perm.is_identity()

    @given(braid_words(3, 6))
    def test_identity_element(self, w):
        x = cb_apply(w)
        assert CBElement.identity(3) * x == x
        assert x * CBElement.identity(3) == x

    @given(braid_words(3, 4), braid_words(3, 4), braid_words(3, 4))
    def test_associativity(self, u, v, w):
        a, b, c = cb_apply(u), cb_apply(v), cb_apply(w)
        assert (a * b) * c == a * (b * c)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            star_mul(CBElement.identity(2), CBElement.identity(3))

    def test_element_validation(self):
        with pytest.raises(ValueError):
            CBElement(PolyMatrix.identity(3, 3), Permutation.identity(2))
        with pytest.raises(ValueError):
            CBElement(PolyMatrix.identity(3, 2), Permutation.identity(3))


class TestRepresentation:
    def test_empty_word(self):
        assert cb_apply(BraidWord(4)) == CBElement.identity(4)

    @given(braid_words(4, 6), braid_words(4, 6))
    def test_homomorphism(self, u, w):
        assert cb_apply(u + w) == cb_apply(u) * cb_apply(w)

    @given(braid_words(4, 8))
    def test_word_times_inverse(self, w):
        assert cb_apply(w + w.inverse()).is_identity()

    @pytest.mark.parametrize("n", range(3, 7))
    def test_braid_relations(self, n):
        for i in range(1, n - 1):
            lhs = cb_apply(BraidWord(n, [(i, 1), (i + 1, 1), (i, 1)]))
            rhs = cb_apply(BraidWord(n, [(i + 1, 1), (i, 1), (i + 1, 1)]))
            assert lhs == rhs
        for i in range(1, n):
            for k in range(i + 2, n):
                assert cb_apply(BraidWord(n, [(i, 1), (k, 1)])) == cb_apply(BraidWord(n, [(k, 1), (i, 1)]))

    def test_far_commutation_four_strands(self):
        assert cb_apply(parse_word("s1 s3", 4)) == cb_apply(parse_word("s3 s1", 4))

    @given(braid_words(3, 6))
    def test_permutation_part_tracks_the_braid(self, w):
        assert cb_apply(w).perm == underlying_permutation(w)

    def test_determinant_on_nine_strands(self):
        det = cb_apply(parse_word("s1 s2 s3^-1", 9)).check_unit_det()
        assert det == -LaurentPoly.monomial([2, 0, 0, -1, 0, 0, 0, 0, 0])

    @pytest.mark.parametrize("n", [9, 10, 12])
    def test_pure_generator_det_beyond_eight(self, n):
        t = variables(n)
        assert cb_pure_closed_form(2, n - 1, n).det() == t[1] * t[n - 2]

    def test_non_unit_determinant_rejected(self, monkeypatch):
        doubled = CBElement(PolyMatrix.from_ints([[2, 0], [0, 1]], 2), Permutation.identity(2))
        monkeypatch.setattr(colored_burau, "cb_generator", lambda i, n, sign=1: doubled)
        with pytest.raises(ValueError, match="not a unit"):
            cb_apply(parse_word("s1", 2))
        assert cb_apply(parse_word("s1", 2), check=False).matrix.det() == 2


class TestPureClosedForms:
    def test_base_case(self):
        t1, t2 = variables(2)
        one, zero = LaurentPoly.one(2), LaurentPoly.zero(2)
        assert cb_pure_closed_form(1, 2, 2) == PolyMatrix([[t1 * t2, one - t1], [zero, one]])

    def test_last_pair(self):
        n = 5
        ts = variables(n)
        M = cb_pure_closed_form(n - 1, n, n)
        t_a, t_b = ts[n - 2], ts[n - 1]
        assert M.entry(n - 1, n - 2) == t_a - t_a * t_b
        assert M.entry(n - 1, n - 1) == t_a * t_b
        assert M.entry(n - 1, n) == 1 - t_a
        assert M.entry(n, n) == 1
        for r in range(1, n - 1):
            assert M.entry(r, r) == 1

    def test_matches_word_expansion(self):
        assert cb_pure_closed_form(2, 4, 5) == cb_apply(pure_generator_word(2, 4, 5)).matrix

    @pytest.mark.parametrize("n", range(2, 6))
    def test_every_pair_verifies(self, n):
        for check in verify_pure_generators(n):
            assert check.ok, check.summary()

    def test_inverse_base_case(self):
        t1, t2 = variables(2)
        one, zero = LaurentPoly.one(2), LaurentPoly.zero(2)
        inv = cb_pure_inverse_closed_form(1, 2, 2)
        assert inv == PolyMatrix([[(t1 * t2) ** -1, (t1 - 1) * (t1 * t2) ** -1], [zero, one]])

    def test_inverse_matches_inverted_word(self):
        word = pure_generator_word(1, 4, 5).inverse()
        assert cb_pure_inverse_closed_form(1, 4, 5) == cb_apply(word).matrix

    def test_determinants(self):
        t = variables(5)
        assert cb_pure_det(1, 2, 5) == t[0] * t[1]
        assert cb_pure_det(2, 5, 5) == t[1] * t[4]
        assert cb_pure_closed_form(2, 5, 5).det() == t[1] * t[4]

    def test_invalid_pair(self):
        with pytest.raises(ValueError):
            cb_pure_closed_form(2, 2, 3)
        with pytest.raises(ValueError):
            cb_pure_det(3, 2, 4)

    def test_oracle_record(self):
        check = cb_word_oracle(1, 3, 4)
        assert check.matches and check.perm_trivial and check.inverse_ok and check.det_ok
        assert check.summary()["oracle_match"] is True


class TestCenter:
    def test_center_determinant_n4(self):
        report = center_report(4)
        assert report.det == LaurentPoly.monomial([3, 3, 3, 3])
        assert report.ok

    @pytest.mark.parametrize("n, power", [(3, 1), (3, 2), (3, 3), (4, 2), (3, -1), (5, 2), (6, 2), (6, 3)])
    def test_center_powers(self, n, power):
        report = center_report(n, power)
        assert report.det == LaurentPoly.monomial([power * (n - 1)] * n)
        assert report.det != 1

    def test_full_twist_is_central(self):
        report = center_report(3)
        assert report.full_twist_commutes
        assert report.non_commuting == []
        assert report.full_twist_det_ok


class TestBurau:
    def test_sigma1(self):
        t = LaurentPoly.var(1, 1)
        one, zero = LaurentPoly.one(1), LaurentPoly.zero(1)
        assert burau_specialize(cb_generator(1, 2).matrix) == PolyMatrix([[-t, one], [zero, one]])

    def test_pure_generator(self):
        t = LaurentPoly.var(1, 1)
        one, zero = LaurentPoly.one(1), LaurentPoly.zero(1)
        assert burau_specialize(cb_pure_closed_form(1, 2, 2)) == PolyMatrix([[t * t, 1 - t], [zero, one]])

    def test_identity(self):
        assert burau_specialize(PolyMatrix.identity(3, 3)) == PolyMatrix.identity(3, 1)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_generators_recover_burau(self, n):
        for i in range(1, n):
            for sign in (1, -1):
                assert burau_specialize(cb_generator(i, n, sign).matrix) == burau_generator_matrix(i, n, sign)

    @given(braid_words(4, 8))
    def test_specialization_is_plain_product(self, w):
        expected = PolyMatrix.identity(4, 1)
        for gen, sign in w.letters:
            expected = expected @ burau_generator_matrix(gen, 4, sign)
        assert burau_specialize(cb_apply(w).matrix) == expected


class TestSerialization:
    def test_element_round_trip(self):
        element = cb_apply(parse_word("s1 s2^-1 s3", 4))
        model = CBElementModel.model_validate_json(element.to_model().model_dump_json())
        assert CBElement.from_model(model) == element
