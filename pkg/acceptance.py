#!/usr/bin/env python3
"""
Acceptance suite - runs every exact check of the toolkit at full size
Each check returns a result dict; the summary table and a JSON results file
are written when run as a script (python acceptance.py [--quick])
"""

import json
import logging
import os
import random
import sys
from datetime import datetime
from typing import Callable, List, Tuple

from braid_core import BraidWord, format_abstract_word
from colored_burau import (
    burau_generator_matrix, burau_specialize, cb_apply, cb_generator, cb_pure_closed_form,
    cb_pure_inverse_closed_form, center_report, verify_pure_generators
)
from config import DEFAULT_JOBS, DEFAULT_SEED, LOG_DIR, PINGPONG_SAMPLES, STATUS_EMOJIS
from freeness_analysis import (
    BLOCK_X, BLOCK_Y, admissible_pairs, eigen_report, free_pair_certificate, kernel_generator_names,
    kernel_search, pingpong_check, relation_search
)
from laurent_ring import LaurentPoly
from poly_matrix import IntMatrix, col_embed

logger = logging.getLogger(__name__)

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")
ROTATION = IntMatrix([[0, -1], [1, 0]])


def _result(check_id: str, name: str, passed: bool, detail: str = "") -> dict:
    return {"id": check_id, "name": name, "passed": bool(passed), "detail": detail}


def random_braid_word(rng: random.Random, n: int, max_len: int) -> BraidWord:
    length = rng.randint(0, max_len)
    return BraidWord(n, [(rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(length)])


# =============================================================================
# CHECKS
# =============================================================================

def check_closed_forms(max_n: int) -> List[dict]:
    """Criteria 1-3 (pure generator part): oracle match, inverse identity, determinant."""
    checks = [check for n in range(2, max_n + 1) for check in verify_pure_generators(n)]
    failed = lambda attr: [f"A[{c.i},{c.j}] n={c.n}" for c in checks if not attr(c)]
    oracle = failed(lambda c: c.matches and c.perm_trivial)
    inverse = failed(lambda c: c.inverse_ok)
    det = failed(lambda c: c.det_ok)
    return [
        _result("1", f"closed form = word expansion, n <= {max_n}", not oracle, ", ".join(oracle)),
        _result("2", f"closed form x inverse = I, n <= {max_n}", not inverse, ", ".join(inverse)),
        _result("3a", f"det cb(A[i,j]) = ti*tj, n <= {max_n}", not det, ", ".join(det)),
    ]


def check_center(check_id: str, ns: range, powers: Tuple[int, ...]) -> List[dict]:
    failures = []
    for n in ns:
        for k in powers:
            report = center_report(n, k)
            if not report.ok:
                failures.append(f"n={n} k={k}: {report.summary()}")
    return [_result(check_id, f"center determinant and full twist, n in {list(ns)}, k in {list(powers)}",
                    not failures, "; ".join(failures))]


def check_representation(max_n: int, words: int, seed: int) -> List[dict]:
    failures = []
    for n in range(3, max_n + 1):
        for i in range(1, n):
            if i + 1 < n:
                lhs = cb_apply(BraidWord(n, [(i, 1), (i + 1, 1), (i, 1)]))
                rhs = cb_apply(BraidWord(n, [(i + 1, 1), (i, 1), (i + 1, 1)]))
                if lhs != rhs:
                    failures.append(f"braid relation s{i}, n={n}")
            for k in range(i + 2, n):
                if cb_apply(BraidWord(n, [(i, 1), (k, 1)])) != cb_apply(BraidWord(n, [(k, 1), (i, 1)])):
                    failures.append(f"far commutation s{i} s{k}, n={n}")

    rng = random.Random(seed)
    for _ in range(words):
        n = rng.randint(2, max_n)
        w = random_braid_word(rng, n, 10)
        if not cb_apply(w + w.inverse()).is_identity():
            failures.append(f"w w^-1 != 1 for '{w.format()}', n={n}")
            break
    return [_result("4", f"braid relations (n <= {max_n}) and {words} random w w^-1",
                    not failures, "; ".join(failures))]


def check_burau(max_n: int) -> List[dict]:
    failures = []
    for n in range(2, max_n + 1):
        for i in range(1, n):
            for sign in (1, -1):
                if burau_specialize(cb_generator(i, n, sign).matrix) != burau_generator_matrix(i, n, sign):
                    failures.append(f"s{i}^{sign}, n={n}")
    return [_result("5", f"Burau recovery, n <= {max_n}", not failures, ", ".join(failures))]


def check_eigen(max_n: int) -> List[dict]:
    failures = []
    for n in range(2, max_n + 1):
        failures += [f"M_{c.j} n={n}" for c in eigen_report(n) if not c.ok]
    return [_result("6", f"unipotency, fixed vectors, rank(M - I) = 1, n <= {max_n}",
                    not failures, ", ".join(failures))]


def check_blocks(ns: range, samples: int, seed: int) -> List[dict]:
    failures = []
    rules = set()
    for n in ns:
        for j, jprime in admissible_pairs(n):
            if (j, jprime) == (2, 3):
                continue
            cert = free_pair_certificate(j, jprime, n, search_depth=0)
            rules.add(cert.basis_rule)
            if not (cert.blocks_ok and cert.zero_pattern_ok):
                failures.append(f"({j},{jprime}) n={n}")
    pingpong = pingpong_check(samples, seed)
    return [
        _result("7a", f"X/Y blocks with zero pattern, n in {list(ns)}", not failures,
                ", ".join(failures) or f"basis rules used: {sorted(rules)}"),
        _result("7b", f"ping-pong containments, {samples} vectors per direction", pingpong.ok,
                json.dumps(pingpong.counterexample) if pingpong.counterexample else ""),
    ]


def check_searches(ns: range, depth: int, pair23_depth: int, jobs: int) -> List[dict]:
    xy = relation_search([BLOCK_X, BLOCK_Y], depth, jobs=jobs)
    pair_failures = []
    for n in ns:
        for j, jprime in admissible_pairs(n):
            if (j, jprime) == (2, 3):
                continue
            cert = free_pair_certificate(j, jprime, n, search_depth=depth, jobs=jobs)
            if cert.relation is not None:
                pair_failures.append(f"({j},{jprime}) n={n}: {cert.relation}")
    pair23 = free_pair_certificate(2, 3, 4, search_depth=pair23_depth, jobs=jobs)
    rotation = relation_search([ROTATION], 4)
    return [
        _result("8a", f"no relation in {{X, Y}} to length {depth}", xy is None,
                format_abstract_word(xy) if xy else ""),
        _result("8b", f"no relation in certified pairs to length {depth}, n in {list(ns)}",
                not pair_failures, "; ".join(pair_failures)),
        _result("8c", f"no relation in (M2, M3), n=4, to length {pair23_depth}", pair23.relation is None,
                pair23.relation or ""),
        _result("8d", "rotation of order 4 gives the witness a a a a", rotation == ((0, 1),) * 4,
                format_abstract_word(rotation) if rotation else "none"),
    ]


def check_kernel(jobs: int) -> List[dict]:
    n4 = kernel_search(4, 4, jobs=jobs)
    n3 = kernel_search(3, 5, jobs=jobs)
    a12, a13 = cb_pure_closed_form(1, 2, 4), cb_pure_closed_form(1, 3, 4)
    commutator = a12 @ a13 @ cb_pure_inverse_closed_form(1, 2, 4) @ cb_pure_inverse_closed_form(1, 3, 4)
    return [
        _result("9a", "kernel search n=4 to length 4 (bounded search only)", n4 is None,
                format_abstract_word(n4, kernel_generator_names(4)) if n4 else ""),
        _result("9b", "kernel search n=3 to length 5 (bounded search only)", n3 is None,
                format_abstract_word(n3, kernel_generator_names(3)) if n3 else ""),
        _result("9c", "[A[1,2], A[1,3]] is not the identity", not commutator.is_identity()),
    ]


def c2_embed_json() -> str:
    """The worked example c_2([1,2,3]^T) in golden-file form."""
    vector = [LaurentPoly.constant(x, 3) for x in (1, 2, 3)]
    return json.dumps(col_embed(2, vector).to_model().model_dump(mode="json")) + "\n"


def check_golden() -> List[dict]:
    with open(os.path.join(GOLDEN_DIR, "c2_embed.json"), "r", encoding="utf-8") as f:
        expected = f.read()
    return [_result("10", "c_2([1,2,3]^T) matches the golden file byte for byte", c2_embed_json() == expected)]


# =============================================================================
# MAIN SUITE
# =============================================================================

def run_acceptance(quick: bool = False, seed: int = DEFAULT_SEED, jobs: int = DEFAULT_JOBS) -> List[dict]:
    """Every check in order; quick mode shrinks the slowest ranges."""
    sections: List[Tuple[str, Callable[[], List[dict]]]] = [
        ("closed forms", lambda: check_closed_forms(5 if quick else 7)),
        ("center", lambda: check_center("3b", range(3, 5) if quick else range(3, 7), (1,))),
        ("center powers", lambda: check_center("3c", range(3, 5) if quick else range(3, 7), (2, 3))),
        ("representation", lambda: check_representation(5 if quick else 7, 50 if quick else 200, seed)),
        ("burau", lambda: check_burau(7)),
        ("eigenstructure", lambda: check_eigen(8)),
        ("blocks", lambda: check_blocks(range(4, 7), 200 if quick else PINGPONG_SAMPLES, seed)),
        ("searches", lambda: check_searches(range(4, 5) if quick else range(4, 7), 8, 8 if quick else 10, jobs)),
        ("kernel", lambda: check_kernel(jobs)),
        ("golden", check_golden),
    ]
    results = []
    for name, section in sections:
        logger.info(f"Acceptance section: {name}")
        for result in section():
            if not result["passed"]:
                logger.warning(f"Acceptance check {result['id']} failed: {result['detail']}")
            results.append(result)
    return results


def main():
    quick = "--quick" in sys.argv[1:]
    print("=" * 60)
    print("🧮 Colored-Burau Acceptance Suite".center(60))
    print(f"{'quick' if quick else 'full'} mode".center(60))
    print("=" * 60)

    results = run_acceptance(quick=quick)

    print(f"\n{'ID':<6}{'Status':<8}{'Check'}")
    print("-" * 60)
    for r in results:
        print(f"{r['id']:<6}{STATUS_EMOJIS[r['passed']]:<8}{r['name']}")
        if r["detail"] and not r["passed"]:
            print(f"{'':<14}{r['detail']}")

    passed = sum(r["passed"] for r in results)
    print("-" * 60)
    print(f"{passed}/{len(results)} checks passed")

    os.makedirs(LOG_DIR, exist_ok=True)
    path = os.path.join(LOG_DIR, "acceptance_results.json")
    with open(path, "w", encoding="utf-8") as f:
        json.dump({"timestamp": datetime.now().isoformat(), "quick": quick, "results": results}, f, indent=2)
    print(f"\n💾 Detailed results saved to {path}")
    print("=" * 60)
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
