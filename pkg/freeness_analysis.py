# freeness_analysis.py - Evaluation at t = -1, unipotency, ping-pong blocks and relation searches

import concurrent.futures
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from braid_core import (
    AbstractWord, Letter, enumerate_reduced_words, format_abstract_word, search_alphabet, word_key
)
from colored_burau import cb_pure_closed_form, cb_pure_inverse_closed_form
from config import NUMERIC_SEARCH_DEPTH, PINGPONG_MAX_POWER, PINGPONG_SAMPLES, SYMBOLIC_SEARCH_DEPTH
from poly_matrix import IntMatrix, PolyMatrix
from schemas import BlocksModel, FreePairCertificate, KernelSearchResult

logger = logging.getLogger(__name__)

Matrix = Union[IntMatrix, PolyMatrix]
Vector = Tuple[int, ...]

# Ping-pong generators and the blocks the certified pairs reduce to
PINGPONG_A = IntMatrix([[1, 2], [0, 1]])
PINGPONG_B = IntMatrix([[1, 0], [2, 1]])
BLOCK_X = PINGPONG_A
BLOCK_Y = PINGPONG_B.inverse()

# The (2,3) pair has no basis change; it is covered by search alone
SEARCH_ONLY_PAIR = (2, 3)


class SearchSoundnessError(RuntimeError):
    """A reported relation did not evaluate to the identity on re-check."""


# --- evaluation and eigenstructure ---

def eval_minus_one(M: PolyMatrix) -> IntMatrix:
    return M.evaluate([-1] * M.nvars)


def pure_generator_at_minus_one(j: int, n: int) -> IntMatrix:
    """M_j = tau(cb(A_{1,j}))."""
    return eval_minus_one(cb_pure_closed_form(1, j, n))


def unipotency_check(M: IntMatrix) -> bool:
    """True iff (M - I)^n = 0, i.e. 1 is the only eigenvalue."""
    return (M - IntMatrix.identity(M.size)).power(M.size).is_zero()


def _unit_vector(k: int, n: int) -> List[int]:
    v = [0] * n
    v[k - 1] = 1
    return v


def _check_index(j: int, n: int):
    if not 2 <= j <= n:
        raise ValueError(f"Eigenvector basis needs 2 <= j <= n, got j={j}, n={n}")


def w_vector(j: int, n: int) -> Vector:
    """w_j = e_1 + ... + e_{j-1}."""
    return tuple(1 if k < j else 0 for k in range(1, n + 1))


def v_vector(j: int, n: int) -> Vector:
    """v_j = e_1 + e_j."""
    v = _unit_vector(1, n)
    v[j - 1] += 1
    return tuple(v)


def eigenvector_basis(j: int, n: int) -> List[Vector]:
    """Fixed vectors of M_j: e_k (k != 2) for j = 2; otherwise e_k (k not in {1, j-1, j}), v_j, w_j."""
    _check_index(j, n)
    if j == 2:
        return [tuple(_unit_vector(k, n)) for k in range(1, n + 1) if k != 2]
    basis = [tuple(_unit_vector(k, n)) for k in range(1, n + 1) if k not in (1, j - 1, j)]
    basis.append(v_vector(j, n))
    basis.append(w_vector(j, n))
    return basis


@dataclass
class EigenCheck:
    j: int
    unipotent: bool
    fixed: List[bool]
    rank_of_shift: int

    @property
    def ok(self) -> bool:
        return self.unipotent and all(self.fixed) and self.rank_of_shift == 1

    def summary(self) -> dict:
        return {
            "j": self.j,
            "unipotent": self.unipotent,
            "eigenvectors_fixed": all(self.fixed),
            "rank_M_minus_I": self.rank_of_shift,
        }


def eigen_report(n: int, js: Optional[Sequence[int]] = None) -> List[EigenCheck]:
    checks = []
    for j in (js or range(2, n + 1)):
        M = pure_generator_at_minus_one(j, n)
        basis = eigenvector_basis(j, n)
        check = EigenCheck(
            j=j,
            unipotent=unipotency_check(M),
            fixed=[M.apply(v) == tuple(v) for v in basis],
            rank_of_shift=(M - IntMatrix.identity(n)).rank(),
        )
        if not check.ok:
            logger.warning(f"Eigenstructure check failed for M_{j}, n={n}: {check.summary()}")
        checks.append(check)
    return checks


# --- change of basis and blocks ---

class BasisRule(str, Enum):
    SPLIT = "split"  # j = 2 replaces e_{j'-1}; j > 2 replaces e_{j-1}, e_j with w_j, w_{j'}
    UNIFORM = "uniform"  # the j > 2 replacement for every j


def _check_pair(j: int, jprime: int, n: int):
    if not 2 <= j < jprime <= n:
        raise ValueError(f"Free pair needs 2 <= j < jprime <= n, got j={j}, jprime={jprime}, n={n}")


def change_of_basis(j: int, jprime: int, n: int, rule: BasisRule = BasisRule.SPLIT) -> IntMatrix:
    """P with the standard basis as columns, a few of them replaced."""
    _check_pair(j, jprime, n)
    if (j, jprime) == SEARCH_ONLY_PAIR:
        raise ValueError("The pair (2,3) has no change of basis; certify it by search")
    columns = [tuple(_unit_vector(k, n)) for k in range(1, n + 1)]
    if j == 2 and rule == BasisRule.SPLIT:
        columns[jprime - 2] = v_vector(jprime - 1, n)
    else:
        columns[j - 2] = w_vector(j, n)
        columns[j - 1] = w_vector(jprime, n)
    return IntMatrix.from_columns(columns)


def block_extract(M: IntMatrix, r: int) -> IntMatrix:
    return M.block(r)


def zero_pattern_ok(M: IntMatrix, r: int) -> bool:
    """Block columns r, r+1 vanish outside block rows r, r+1."""
    return all(M.entry(row, col) == 0
               for col in (r, r + 1) for row in range(1, M.size + 1) if row not in (r, r + 1))


def conjugate(P: IntMatrix, M: IntMatrix) -> IntMatrix:
    return P.inverse() @ M @ P


# --- ping-pong ---

class Region(str, Enum):
    X1 = "X1"  # |x| > |y|
    X2 = "X2"  # |x| < |y|
    BOUNDARY = "boundary"


def pingpong_region(v: Sequence[Union[int, Fraction]]) -> Region:
    x, y = (abs(Fraction(c)) for c in v)
    if x > y:
        return Region.X1
    if x < y:
        return Region.X2
    return Region.BOUNDARY


@dataclass
class PingPongResult:
    samples: int
    seed: int
    a_into_x1: int = 0
    b_into_x2: int = 0
    counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None and self.a_into_x1 == self.b_into_x2 == self.samples

    def summary(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "A^k X2 in X1": self.a_into_x1,
            "B^k X1 in X2": self.b_into_x2,
            "counterexample": self.counterexample,
        }


def _random_vector(rng: random.Random, region: Region) -> Tuple[Fraction, Fraction]:
    while True:
        v = (Fraction(rng.randint(-1000, 1000), rng.randint(1, 97)),
             Fraction(rng.randint(-1000, 1000), rng.randint(1, 97)))
        if pingpong_region(v) == region:
            return v


def _random_power(rng: random.Random, max_power: int) -> int:
    k = rng.randint(1, max_power)
    return k if rng.random() < 0.5 else -k


def pingpong_check(samples: int = PINGPONG_SAMPLES, seed: int = 0, max_power: int = PINGPONG_MAX_POWER) -> PingPongResult:
    """A^k sends X2 into X1 and B^k sends X1 into X2 for nonzero k, on seeded random rationals."""
    rng = random.Random(seed)
    result = PingPongResult(samples=samples, seed=seed)
    for matrix, source, target, counter in (
        (PINGPONG_A, Region.X2, Region.X1, "a_into_x1"),
        (PINGPONG_B, Region.X1, Region.X2, "b_into_x2"),
    ):
        for _ in range(samples):
            v = _random_vector(rng, source)
            k = _random_power(rng, max_power)
            image = matrix.power(k).apply(v)
            if pingpong_region(image) == target:
                setattr(result, counter, getattr(result, counter) + 1)
            elif result.counterexample is None:
                result.counterexample = {
                    "vector": [str(c) for c in v], "power": k,
                    "image": [str(c) for c in image], "expected": target.value,
                }
                logger.warning(f"Ping-pong containment failed: {result.counterexample}")
    return result


# --- relation search ---

def _identity_like(M: Matrix) -> Matrix:
    if isinstance(M, PolyMatrix):
        return PolyMatrix.identity(M.size, M.nvars)
    return IntMatrix.identity(M.size)


def _letter_matrices(gens: Sequence[Matrix], inverses: Optional[Sequence[Matrix]]) -> Dict[Letter, Matrix]:
    if not gens:
        raise ValueError("relation_search needs at least one generator")
    if inverses is None:
        inverses = []
        for k, g in enumerate(gens):
            if not isinstance(g, IntMatrix):
                raise ValueError(f"Generator {k} is symbolic; pass its inverse explicitly")
            if g.det() == 0:
                raise ValueError(f"Generator {k} is singular")
            inverses.append(g.inverse())
    if len(inverses) != len(gens):
        raise ValueError(f"Got {len(inverses)} inverses for {len(gens)} generators")
    for k, (g, g_inv) in enumerate(zip(gens, inverses)):
        if not (g @ g_inv).is_identity():
            raise ValueError(f"Supplied inverse of generator {k} is wrong")
    table = {}
    for k, (g, g_inv) in enumerate(zip(gens, inverses)):
        table[(k, 1)] = g
        table[(k, -1)] = g_inv
    return table


def evaluate_abstract_word(word: Sequence[Letter], table: Dict[Letter, Matrix]) -> Matrix:
    acc = _identity_like(next(iter(table.values())))
    for letter in word:
        acc = acc @ table[letter]
    return acc


def _search_partition(table: Dict[Letter, Matrix], first: Letter, max_len: int) -> Tuple[Optional[AbstractWord], int]:
    """DFS below one first letter; returns the best witness and the number of nodes visited.

    Words of one length are visited in lexicographic order, so the first
    identity found at a length is the least one there; after a hit the
    bound drops below that length.
    """
    alphabet = sorted(table, key=lambda letter: word_key([letter]))
    best: Optional[AbstractWord] = None
    bound = max_len
    visited = 1
    word: List[Letter] = [first]
    stack = [(table[first], iter(alphabet))]
    if stack[0][0].is_identity():
        return (first,), visited

    while stack:
        product, choices = stack[-1]
        if len(word) >= bound:
            stack.pop()
            word.pop()
            continue
        letter = next(choices, None)
        if letter is None:
            stack.pop()
            word.pop()
            continue
        if letter == (word[-1][0], -word[-1][1]):
            continue
        extended = product @ table[letter]
        visited += 1
        word.append(letter)
        if extended.is_identity():
            best = tuple(word)
            bound = len(word) - 1
            word.pop()
            continue
        stack.append((extended, iter(alphabet)))
    return best, visited


def relation_search(
    gens: Sequence[Matrix],
    max_len: int,
    inverses: Optional[Sequence[Matrix]] = None,
    jobs: int = 1,
) -> Optional[AbstractWord]:
    """Shortest freely reduced word of length <= max_len evaluating to the identity, or None.

    Ties at the shortest length go to the lexicographically least word in
    search_alphabet order. The answer does not depend on `jobs`.
    """
    table = _letter_matrices(gens, inverses)
    if max_len < 1:
        return None
    firsts = search_alphabet(len(gens))
    results: List[Tuple[Optional[AbstractWord], int]] = []

    if jobs <= 1:
        results = [_search_partition(table, first, max_len) for first in firsts]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(_search_partition, table, first, max_len) for first in firsts]
            for future in concurrent.futures.as_completed(futures):
                results.append(future.result())

    witnesses = [word for word, _ in results if word is not None]
    visited = sum(count for _, count in results)
    best = min(witnesses, key=word_key) if witnesses else None
    logger.debug(f"Relation search over {len(gens)} generators to length {max_len}: {visited} nodes, witness={best}")

    if best is not None and not evaluate_abstract_word(best, table).is_identity():
        raise SearchSoundnessError(f"Witness {format_abstract_word(best)} does not evaluate to the identity")
    return best


def relation_search_exhaustive(gens: Sequence[Matrix], max_len: int,
                               inverses: Optional[Sequence[Matrix]] = None) -> Optional[AbstractWord]:
    """Reference search: evaluate every reduced word from scratch, shortest first."""
    table = _letter_matrices(gens, inverses)
    for word in enumerate_reduced_words(len(gens), max_len):
        if evaluate_abstract_word(word, table).is_identity():
            return word
    return None


# --- kernel search and certificates ---

def kernel_generator_names(n: int) -> List[str]:
    return [f"A[1,{j}]" for j in range(2, n + 1)]


def kernel_search(n: int, max_len: int = SYMBOLIC_SEARCH_DEPTH, jobs: int = 1) -> Optional[AbstractWord]:
    """Search ker(cb) on the free subgroup <A_{1,2}, ..., A_{1,n}> symbolically."""
    if n < 3:
        raise ValueError(f"kernel_search needs n >= 3, got {n}")
    gens = [cb_pure_closed_form(1, j, n) for j in range(2, n + 1)]
    inverses = [cb_pure_inverse_closed_form(1, j, n) for j in range(2, n + 1)]
    word = relation_search(gens, max_len, inverses=inverses, jobs=jobs)
    if word is not None:
        logger.warning(f"Kernel element found for n={n}: {format_abstract_word(word, kernel_generator_names(n))}")
    return word


def kernel_search_result(n: int, max_len: int = SYMBOLIC_SEARCH_DEPTH, jobs: int = 1) -> KernelSearchResult:
    names = kernel_generator_names(n)
    word = kernel_search(n, max_len, jobs)
    return KernelSearchResult(
        n=n,
        search_depth=max_len,
        generators=names,
        relation=format_abstract_word(word, names) if word is not None else None,
    )


@dataclass
class BlockCheck:
    rule: BasisRule
    P: IntMatrix
    conjugated: Tuple[IntMatrix, IntMatrix]
    blocks: Tuple[IntMatrix, IntMatrix]
    blocks_ok: bool
    zero_pattern_ok: bool

    @property
    def ok(self) -> bool:
        return self.blocks_ok and self.zero_pattern_ok


def block_check(j: int, jprime: int, n: int, rule: BasisRule) -> BlockCheck:
    P = change_of_basis(j, jprime, n, rule)
    r = j - 1
    conj_j = conjugate(P, pure_generator_at_minus_one(j, n))
    conj_jprime = conjugate(P, pure_generator_at_minus_one(jprime, n))
    blocks = (block_extract(conj_j, r), block_extract(conj_jprime, r))
    return BlockCheck(
        rule=rule,
        P=P,
        conjugated=(conj_j, conj_jprime),
        blocks=blocks,
        blocks_ok=blocks == (BLOCK_X, BLOCK_Y),
        zero_pattern_ok=zero_pattern_ok(conj_j, r) and zero_pattern_ok(conj_jprime, r),
    )


def free_pair_certificate(
    j: int,
    jprime: int,
    n: int,
    search_depth: int = NUMERIC_SEARCH_DEPTH,
    jobs: int = 1,
) -> FreePairCertificate:
    """Certify <M_j, M_j'> free via the X/Y blocks, plus a relation search on the full pair."""
    if n < 4:
        raise ValueError(f"free_pair_certificate needs n >= 4, got {n}")
    _check_pair(j, jprime, n)
    names = [f"M{j}", f"M{jprime}"]
    gens = [pure_generator_at_minus_one(j, n), pure_generator_at_minus_one(jprime, n)]
    word = relation_search(gens, search_depth, jobs=jobs)
    relation = format_abstract_word(word, names) if word is not None else None

    if (j, jprime) == SEARCH_ONLY_PAIR:
        return FreePairCertificate(
            n=n, j=j, jprime=jprime,
            search_depth=search_depth,
            relation=relation,
            search_only=True,
            evidence="search only: no basis change reduces this pair to the X/Y blocks",
        )

    check = block_check(j, jprime, n, BasisRule.SPLIT)
    if not check.ok:
        logger.info(f"Basis rule '{check.rule.value}' failed for ({j},{jprime}), n={n}; trying uniform")
        check = block_check(j, jprime, n, BasisRule.UNIFORM)
    if not check.ok:
        logger.warning(f"No basis rule certifies ({j},{jprime}), n={n}")

    return FreePairCertificate(
        n=n, j=j, jprime=jprime,
        P=check.P.to_model(),
        block_row=j - 1,
        blocks=BlocksModel(j=check.blocks[0].to_lists(), jprime=check.blocks[1].to_lists()),
        blocks_ok=check.blocks_ok,
        zero_pattern_ok=check.zero_pattern_ok,
        basis_rule=check.rule.value,
        search_depth=search_depth,
        relation=relation,
        evidence="ping-pong on the X/Y blocks" if check.ok else "block reduction failed",
    )


def admissible_pairs(n: int) -> List[Tuple[int, int]]:
    return [(j, jprime) for j in range(2, n + 1) for jprime in range(j + 1, n + 1)]
