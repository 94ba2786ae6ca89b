# colored_burau.py - The Colored-Burau map, the star product and the pure braid closed forms

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List

from braid_core import (
    BraidWord, Permutation, center_word, full_twist_word, pure_generator_word
)
from laurent_ring import LaurentPoly
from poly_matrix import PolyMatrix, col_embed, col_vector
from schemas import CBElementModel

logger = logging.getLogger(__name__)


class CBElement:
    """Element (M, s) of GL_n(L_n) x| S_n with (M,s) * (M',s') = (M ^sM', ss').

    The unit determinant is checked by cb_apply, or on demand via check_unit_det.
    """

    __slots__ = ("matrix", "perm")

    def __init__(self, matrix: PolyMatrix, perm: Permutation):
        if not matrix.size == perm.degree == matrix.nvars:
            raise ValueError(
                f"CB element needs matrix size = permutation degree = variable count, "
                f"got {matrix.size}, {perm.degree}, {matrix.nvars}"
            )
        self.matrix = matrix
        self.perm = perm

    @classmethod
    def identity(cls, n: int) -> "CBElement":
        return cls(PolyMatrix.identity(n, n), Permutation.identity(n))

    @property
    def n(self) -> int:
        return self.matrix.size

    def __mul__(self, other: "CBElement") -> "CBElement":
        if not isinstance(other, CBElement):
            return NotImplemented
        return star_mul(self, other)

    def is_identity(self) -> bool:
        return self.perm.is_identity() and self.matrix.is_identity()

    def check_unit_det(self) -> LaurentPoly:
        det = self.matrix.det()
        if not det.is_unit():
            raise ValueError(f"Matrix determinant {det} is not a unit of the Laurent ring")
        return det

    def __eq__(self, other):
        return isinstance(other, CBElement) and self.perm == other.perm and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.matrix, self.perm))

    def format(self) -> str:
        return f"perm: {self.perm.to_list()}\nmatrix:\n{self.matrix.format()}"

    def __repr__(self):
        return f"CBElement(n={self.n}, perm={self.perm.to_list()})"

    def to_model(self) -> CBElementModel:
        return CBElementModel(matrix=self.matrix.to_model(), perm=self.perm.to_list())

    @classmethod
    def from_model(cls, model: CBElementModel) -> "CBElement":
        return cls(PolyMatrix.from_model(model.matrix), Permutation(model.perm))


def _check_generator(i: int, n: int, sign: int):
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError(f"Generator s{i} out of range for {n} strands")
    if sign not in (1, -1):
        raise ValueError(f"Generator sign must be +1 or -1, got {sign}")


@lru_cache(maxsize=None)
def _generator_matrix(i: int, n: int, sign: int) -> PolyMatrix:
    one = LaurentPoly.one(n)
    rows = [list(row) for row in PolyMatrix.identity(n, n).rows]
    if sign > 0:
        t = LaurentPoly.var(i, n)
        row = {i - 1: t, i: -t, i + 1: one}
    else:
        # ^{(i,i+1)} of the inverse of the sign=+1 matrix
        t_inv = LaurentPoly.var(i + 1, n) ** -1
        row = {i - 1: one, i: -t_inv, i + 1: t_inv}
    for col, value in row.items():
        if 1 <= col <= n:
            rows[i - 1][col - 1] = value
    return PolyMatrix(rows)


def cb_generator(i: int, n: int, sign: int = 1) -> CBElement:
    _check_generator(i, n, sign)
    return CBElement(_generator_matrix(i, n, sign), Permutation.transposition(i, i + 1, n))


def star_mul(a: CBElement, b: CBElement) -> CBElement:
    if a.n != b.n:
        raise ValueError(f"Size mismatch in star product: {a.n} vs {b.n}")
    return CBElement(a.matrix @ b.matrix.permute_vars(a.perm), a.perm * b.perm)


def cb_apply(w: BraidWord, check: bool = True) -> CBElement:
    """CB of a braid word: left-to-right star fold of the generator images.

    With `check`, the determinant of the result must be a unit of L_n;
    a non-unit raises ValueError.
    """
    acc = CBElement.identity(w.strands)
    for gen, sign in w.letters:
        acc = star_mul(acc, cb_generator(gen, w.strands, sign))
    if check:
        acc.check_unit_det()
    return acc


def _check_pair(i: int, j: int, n: int):
    if not 1 <= i < j <= n:
        raise ValueError(f"Pure braid generator needs 1 <= i < j <= n, got i={i}, j={j}, n={n}")


def cb_pure_closed_form(i: int, j: int, n: int) -> PolyMatrix:
    """Closed form of cb(A_{i,j}).

    I + c_{i-1}((-ti tj + ti)_{i->j}) + c_i((tj - 1)_{i->j})
      + c_{j-1}((ti tj - tj)_{i->j}) + c_j((1 - ti)_{i->j}),
    the c_{i-1} term absent when i = 1.
    """
    _check_pair(i, j, n)
    ti, tj = LaurentPoly.var(i, n), LaurentPoly.var(j, n)
    result = PolyMatrix.identity(n, n)
    if i > 1:
        result = result + col_embed(i - 1, col_vector(-ti * tj + ti, i, j, n))
    result = result + col_embed(i, col_vector(tj - 1, i, j, n))
    result = result + col_embed(j - 1, col_vector(ti * tj - tj, i, j, n))
    result = result + col_embed(j, col_vector(1 - ti, i, j, n))
    return result


def cb_pure_inverse_closed_form(i: int, j: int, n: int) -> PolyMatrix:
    """Closed form of cb(A_{i,j})^-1; every denominator is a monomial."""
    _check_pair(i, j, n)
    ti, tj = LaurentPoly.var(i, n), LaurentPoly.var(j, n)
    ti_inv, tj_inv = ti ** -1, tj ** -1
    result = PolyMatrix.identity(n, n)
    if i > 1:
        result = result + col_embed(i - 1, col_vector((tj - 1) * tj_inv, i, j, n))
    result = result + col_embed(i, col_vector((1 - tj) * ti_inv * tj_inv, i, j, n))
    result = result + col_embed(j - 1, col_vector((1 - ti) * ti_inv, i, j, n))
    result = result + col_embed(j, col_vector((ti - 1) * ti_inv * tj_inv, i, j, n))
    return result


def cb_pure_det(i: int, j: int, n: int) -> LaurentPoly:
    _check_pair(i, j, n)
    return LaurentPoly.var(i, n) * LaurentPoly.var(j, n)


def burau_specialize(M: PolyMatrix) -> PolyMatrix:
    return M.map_entries(LaurentPoly.burau_quotient)


def burau_generator_matrix(i: int, n: int, sign: int = 1) -> PolyMatrix:
    """Single-variable Burau matrix of s_i^sign (row i = (t, -t, 1) or (1, -1/t, 1/t))."""
    _check_generator(i, n, sign)
    one = LaurentPoly.one(1)
    t = LaurentPoly.var(1, 1)
    rows = [[one if r == c else LaurentPoly.zero(1) for c in range(n)] for r in range(n)]
    row = {i - 1: t, i: -t, i + 1: one} if sign > 0 else {i - 1: one, i: -(t ** -1), i + 1: t ** -1}
    for col, value in row.items():
        if 1 <= col <= n:
            rows[i - 1][col - 1] = value
    return PolyMatrix(rows)


def product_of_variables(n: int, power: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial([power] * n)


@dataclass
class OracleCheck:
    i: int
    j: int
    n: int
    closed_form: PolyMatrix
    word_image: CBElement
    matches: bool
    perm_trivial: bool
    inverse_ok: bool
    det_ok: bool

    @property
    def ok(self) -> bool:
        return self.matches and self.perm_trivial and self.inverse_ok and self.det_ok

    def summary(self) -> dict:
        return {
            "i": self.i, "j": self.j, "n": self.n,
            "oracle_match": self.matches, "perm_identity": self.perm_trivial,
            "inverse_ok": self.inverse_ok, "det_ok": self.det_ok,
        }


def cb_word_oracle(i: int, j: int, n: int) -> OracleCheck:
    """Compare the closed forms against the expansion of the generator word."""
    closed = cb_pure_closed_form(i, j, n)
    inverse = cb_pure_inverse_closed_form(i, j, n)
    image = cb_apply(pure_generator_word(i, j, n))
    check = OracleCheck(
        i=i, j=j, n=n,
        closed_form=closed,
        word_image=image,
        matches=image.matrix == closed,
        perm_trivial=image.perm.is_identity(),
        inverse_ok=(closed @ inverse).is_identity() and (inverse @ closed).is_identity(),
        det_ok=closed.det() == cb_pure_det(i, j, n),
    )
    if not check.ok:
        logger.warning(f"Closed form check failed for A[{i},{j}], n={n}: {check.summary()}")
    return check


def verify_pure_generators(n: int) -> List[OracleCheck]:
    return [cb_word_oracle(i, j, n) for j in range(2, n + 1) for i in range(1, j)]


@dataclass
class CenterReport:
    n: int
    power: int
    det: LaurentPoly
    expected: LaurentPoly
    full_twist_det_ok: bool
    full_twist_commutes: bool
    non_commuting: List[int] = field(default_factory=list)

    @property
    def det_ok(self) -> bool:
        return self.det == self.expected

    @property
    def ok(self) -> bool:
        return self.det_ok and self.full_twist_det_ok and self.full_twist_commutes

    def summary(self) -> dict:
        return {
            "n": self.n,
            "power": self.power,
            "det": self.det.to_model().model_dump(mode="json"),
            "expected": self.expected.to_model().model_dump(mode="json"),
            "det_ok": self.det_ok,
            "full_twist_det_ok": self.full_twist_det_ok,
            "full_twist_commutes": self.full_twist_commutes,
        }


def center_report(n: int, power: int = 1) -> CenterReport:
    """det CB(center)^k against prod t_i^{k(n-1)}, plus the full-twist centrality check."""
    image = cb_apply(center_word(n).power(power), check=False)
    expected = product_of_variables(n, power * (n - 1))

    twist = cb_apply(full_twist_word(n))
    non_commuting = []
    for i in range(1, n):
        gen = cb_generator(i, n)
        if twist * gen != gen * twist:
            non_commuting.append(i)
    report = CenterReport(
        n=n,
        power=power,
        det=image.matrix.det(),
        expected=expected,
        full_twist_det_ok=twist.matrix.det() == product_of_variables(n, n - 1),
        full_twist_commutes=not non_commuting,
        non_commuting=non_commuting,
    )
    logger.info(f"Center check n={n}, power={power}: det_ok={report.det_ok}, twist_commutes={report.full_twist_commutes}")
    return report
