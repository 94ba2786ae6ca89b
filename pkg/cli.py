# cli.py - Subcommand dispatch: builds deterministic JSON or text reports

import json
import logging
from typing import Callable, Dict, List, Tuple

from acceptance import run_acceptance
from braid_core import parse_word
from colored_burau import (
    cb_apply, cb_pure_closed_form, cb_pure_det, cb_pure_inverse_closed_form, cb_word_oracle,
    center_report, verify_pure_generators
)
from config import EXIT_OK, EXIT_VERIFY_FAILED, STATUS_EMOJIS
from freeness_analysis import eigen_report, free_pair_certificate, kernel_search_result, pingpong_check
from schemas import CommandConfig

logger = logging.getLogger(__name__)

Report = Tuple[int, str]


def _json(payload) -> str:
    return json.dumps(payload)


def _status(ok) -> int:
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


class CommandRunner:
    """Runs one validated CommandConfig and renders its report."""

    def __init__(self, config: CommandConfig):
        self.config = config
        self.handlers: Dict[str, Callable[[], Report]] = {
            "eval": self.run_eval,
            "puregen": self.run_puregen,
            "verify-lemma": self.run_verify_lemma,
            "eigen": self.run_eigen,
            "free-pair": self.run_free_pair,
            "kernel-search": self.run_kernel_search,
            "center-det": self.run_center_det,
            "pingpong": self.run_pingpong,
            "acceptance": self.run_acceptance,
        }

    @property
    def as_json(self) -> bool:
        return self.config.format == "json"

    def run(self) -> Report:
        logger.info(f"Running '{self.config.command}' with n={self.config.n}")
        return self.handlers[self.config.command]()

    # --- handlers ---

    def run_eval(self) -> Report:
        cfg = self.config
        word = parse_word(cfg.word, cfg.n)
        element = cb_apply(word)
        if self.as_json:
            return EXIT_OK, _json(element.to_model().model_dump(mode="json"))
        return EXIT_OK, "\n".join([
            f"word: {word.format() or '(empty)'}",
            f"length: {len(word)}",
            element.format(),
        ])

    def run_puregen(self) -> Report:
        cfg = self.config
        closed = cb_pure_closed_form(cfg.i, cfg.j, cfg.n)
        inverse = cb_pure_inverse_closed_form(cfg.i, cfg.j, cfg.n)
        det = cb_pure_det(cfg.i, cfg.j, cfg.n)
        oracle = cb_word_oracle(cfg.i, cfg.j, cfg.n) if cfg.check else None
        status = _status(oracle is None or oracle.ok)

        if self.as_json:
            payload = {
                "i": cfg.i, "j": cfg.j, "n": cfg.n,
                "closed_form": closed.to_model().model_dump(mode="json"),
                "inverse": inverse.to_model().model_dump(mode="json"),
                "det": det.to_model().model_dump(mode="json"),
                "check": oracle.summary() if oracle else None,
            }
            if oracle and not oracle.matches:
                payload["word_image"] = oracle.word_image.to_model().model_dump(mode="json")
            return status, _json(payload)

        lines = [
            f"A[{cfg.i},{cfg.j}] on {cfg.n} strands",
            "closed form:", closed.format(),
            "inverse:", inverse.format(),
            f"det: {det}",
        ]
        if oracle:
            lines.append(f"{STATUS_EMOJIS[oracle.matches]} oracle match: {oracle.matches}")
            lines.append(f"{STATUS_EMOJIS[oracle.perm_trivial]} permutation trivial: {oracle.perm_trivial}")
            lines.append(f"{STATUS_EMOJIS[oracle.inverse_ok]} inverse identity: {oracle.inverse_ok}")
            lines.append(f"{STATUS_EMOJIS[oracle.det_ok]} det = t{cfg.i}*t{cfg.j}: {oracle.det_ok}")
            if not oracle.matches:
                lines += ["word image:", oracle.word_image.matrix.format()]
        return status, "\n".join(lines)

    def run_verify_lemma(self) -> Report:
        n = self.config.n
        checks = verify_pure_generators(n)
        failures = [check for check in checks if not check.ok]
        status = _status(not failures)
        if self.as_json:
            return status, _json({
                "n": n,
                "pairs": len(checks),
                "ok": not failures,
                "failures": [check.summary() for check in failures],
            })
        lines = [f"{STATUS_EMOJIS[check.ok]} A[{check.i},{check.j}]" for check in checks]
        lines.append(f"{len(checks) - len(failures)}/{len(checks)} pure generators verified for n={n}")
        for check in failures:
            lines += [f"witness A[{check.i},{check.j}] closed form:", check.closed_form.format(),
                      "word image:", check.word_image.matrix.format()]
        return status, "\n".join(lines)

    def run_eigen(self) -> Report:
        cfg = self.config
        checks = eigen_report(cfg.n, [cfg.j] if cfg.j is not None else None)
        ok = all(check.ok for check in checks)
        if self.as_json:
            return _status(ok), _json({"n": cfg.n, "ok": ok, "checks": [check.summary() for check in checks]})
        lines = []
        for check in checks:
            lines.append(
                f"{STATUS_EMOJIS[check.ok]} M_{check.j}: unipotent={check.unipotent}, "
                f"eigenvectors fixed={all(check.fixed)}, rank(M - I)={check.rank_of_shift}"
            )
        return _status(ok), "\n".join(lines)

    def run_free_pair(self) -> Report:
        cfg = self.config
        cert = free_pair_certificate(cfg.j, cfg.jprime, cfg.n, cfg.search_depth(), jobs=cfg.jobs)
        status = _status(cert.is_valid())
        if self.as_json:
            return status, _json(cert.model_dump(mode="json"))

        lines = [f"pair (M{cert.j}, M{cert.jprime}) on {cert.n} strands"]
        if cert.search_only:
            lines.append(f"{STATUS_EMOJIS[None]} {cert.evidence}")
        else:
            lines += [
                f"basis rule: {cert.basis_rule}",
                f"block row: {cert.block_row}",
                f"{STATUS_EMOJIS[cert.blocks_ok]} blocks: {cert.blocks.j} and {cert.blocks.jprime}",
                f"{STATUS_EMOJIS[cert.zero_pattern_ok]} zero pattern",
            ]
        found = cert.relation is not None
        lines.append(f"{STATUS_EMOJIS[not found]} relation search to length {cert.search_depth}: "
                     f"{cert.relation if found else 'none'}")
        return status, "\n".join(lines)

    def run_kernel_search(self) -> Report:
        cfg = self.config
        result = kernel_search_result(cfg.n, cfg.search_depth(), jobs=cfg.jobs)
        status = _status(result.relation is None)
        if self.as_json:
            return status, _json(result.model_dump(mode="json"))
        found = result.relation is not None
        return status, "\n".join([
            f"generators: {', '.join(result.generators)}",
            f"{STATUS_EMOJIS[not found]} kernel element to length {result.search_depth}: "
            f"{result.relation if found else 'none'}",
            f"{STATUS_EMOJIS[None]} {result.note}",
        ])

    def run_center_det(self) -> Report:
        cfg = self.config
        report = center_report(cfg.n, cfg.power)
        if self.as_json:
            return _status(report.ok), _json(report.summary())
        lines = [
            f"{STATUS_EMOJIS[report.det_ok]} det CB(center^{cfg.power}) = {report.det}",
            f"   expected {report.expected}",
            f"{STATUS_EMOJIS[report.full_twist_det_ok]} full twist determinant",
            f"{STATUS_EMOJIS[report.full_twist_commutes]} full twist commutes with every generator",
        ]
        if report.non_commuting:
            lines.append(f"   non-commuting generators: {report.non_commuting}")
        return _status(report.ok), "\n".join(lines)

    def run_pingpong(self) -> Report:
        cfg = self.config
        result = pingpong_check(cfg.samples, cfg.seed)
        if self.as_json:
            return _status(result.ok), _json(result.summary())
        lines = [
            f"{STATUS_EMOJIS[result.a_into_x1 == cfg.samples]} A^k X2 in X1: {result.a_into_x1}/{cfg.samples}",
            f"{STATUS_EMOJIS[result.b_into_x2 == cfg.samples]} B^k X1 in X2: {result.b_into_x2}/{cfg.samples}",
        ]
        if result.counterexample:
            lines.append(f"counterexample: {result.counterexample}")
        return _status(result.ok), "\n".join(lines)

    def run_acceptance(self) -> Report:
        cfg = self.config
        results = run_acceptance(quick=cfg.quick, seed=cfg.seed, jobs=cfg.jobs)
        ok = all(r["passed"] for r in results)
        if self.as_json:
            return _status(ok), _json({"ok": ok, "results": results})
        lines: List[str] = [f"{STATUS_EMOJIS[r['passed']]} {r['id']}: {r['name']}" for r in results]
        lines.append(f"{sum(r['passed'] for r in results)}/{len(results)} acceptance checks passed")
        return _status(ok), "\n".join(lines)


def run(config: CommandConfig) -> Report:
    """Exit status and report text for one command; identical configs give identical reports."""
    return CommandRunner(config).run()
