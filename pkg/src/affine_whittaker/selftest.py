"""Exhaustive algebra-level invariants over bounded degree windows."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import product
from typing import Dict, List, Optional, Sequence

from .lie import LEVI, RADICAL_MINUS, RADICAL_PLUS, AffineAlgebra, Basis, affine_algebra, grade, parabolic_from_subset
from .roots import SUPPORTED_LABELS

ZERO = Q(0)


@dataclass
class SuiteResult:
    label: str
    passed: bool
    counts: Dict[str, int] = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"label": self.label, "passed": self.passed, "counts": self.counts, "failures": self.failures}


def _add_into(out: Dict[Basis, Q], terms: Dict[Basis, Q], scale: Q) -> None:
    for k, v in terms.items():
        s = out.get(k, ZERO) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)


def _bracket_terms(alg: AffineAlgebra, x: Dict[Basis, Q], b: Basis) -> Dict[Basis, Q]:
    out: Dict[Basis, Q] = {}
    for a, c in x.items():
        _add_into(out, alg.bracket_basis(a, b), c)
    return out


def check_antisymmetry(alg: AffineAlgebra, window: int = 3, failures: Optional[list] = None) -> int:
    basis = alg.basis_window(-window, window)
    rank = alg.rank
    n = 0
    for a, b in product(basis, repeat=2):
        n += 1
        ab = alg.bracket_basis(a, b)
        ba = alg.bracket_basis(b, a)
        bad = any(ab.get(k, ZERO) != -ba.get(k, ZERO) for k in set(ab) | set(ba))
        want = grade(a, rank) + grade(b, rank)
        if any(grade(k, rank) != want and k.kind not in "cd" for k in ab):
            bad = True
        if any(k.kind in "cd" and not want.is_zero() for k in ab):
            bad = True
        if bad and failures is not None:
            failures.append({"property": "antisymmetry/grading", "triple": [alg.render_basis(a), alg.render_basis(b)]})
    return n


def check_jacobi(alg: AffineAlgebra, window: int = 2, failures: Optional[list] = None) -> int:
    basis = alg.basis_window(-window, window)
    n = 0
    for x, y, z in product(basis, repeat=3):
        n += 1
        total: Dict[Basis, Q] = {}
        _add_into(total, _bracket_terms(alg, alg.bracket_basis(y, z), x), Q(-1))
        _add_into(total, _bracket_terms(alg, alg.bracket_basis(z, x), y), Q(-1))
        _add_into(total, _bracket_terms(alg, alg.bracket_basis(x, y), z), Q(-1))
        if total and failures is not None:
            failures.append(
                {"property": "jacobi", "triple": [alg.render_basis(x), alg.render_basis(y), alg.render_basis(z)]}
            )
    return n


def check_form_invariance(alg: AffineAlgebra, failures: Optional[list] = None) -> int:
    """([a,b]|c) + (b|[a,c]) = 0 on the finite basis."""
    labels = alg.finite_labels
    n = 0
    for a, b, c in product(labels, repeat=3):
        n += 1
        lhs = sum((v * alg.finite_form(k, c) for k, v in alg.table[(a, b)].items()), ZERO)
        lhs += sum((v * alg.finite_form(b, k) for k, v in alg.table[(a, c)].items()), ZERO)
        if lhs and failures is not None:
            failures.append({"property": "form_invariance", "triple": [str(a), str(b), str(c)]})
    return n


def check_parabolic_closure(label: str, window: int = 3, failures: Optional[list] = None) -> int:
    """[levi,levi] in levi, [levi,u+] in u+, [u+,u+] in u+ for every subset S."""
    alg = affine_algebra(label)
    rank = alg.rank
    basis = alg.basis_window(-window, window)
    n = 0
    for mask in range(1 << rank):
        spec = parabolic_from_subset(label, tuple(k for k in range(rank) if mask >> k & 1))
        cls = {b: spec.classify(b) for b in basis}
        for a, b in product(basis, repeat=2):
            ca, cb = cls[a], cls[b]
            if RADICAL_MINUS in (ca, cb):
                continue
            n += 1
            want = LEVI if ca == cb == LEVI else RADICAL_PLUS
            for k in alg.bracket_basis(a, b):
                if spec.classify(k) != want and failures is not None:
                    failures.append({"property": "parabolic_closure", "subset": list(spec.subset),
                                     "triple": [alg.render_basis(a), alg.render_basis(b)]})
    return n


def run_suite(label: str, algebra: Optional[AffineAlgebra] = None, pair_window: int = 3,
              triple_window: int = 2, closure: bool = True) -> SuiteResult:
    alg = algebra or AffineAlgebra(affine_algebra(label).rs)
    failures: List[dict] = []
    counts = {
        "antisymmetry_grading_pairs": check_antisymmetry(alg, pair_window, failures),
        "jacobi_triples": check_jacobi(alg, triple_window, failures),
        "form_invariance_triples": check_form_invariance(alg, failures),
    }
    if closure and algebra is None:
        counts["parabolic_closure_pairs"] = check_parabolic_closure(label, pair_window, failures)
    return SuiteResult(label, not failures, counts, failures[:20])


def selftest(labels: Sequence[str] = ("A1", "A2")) -> dict:
    t0 = time.perf_counter()
    suites = [run_suite(lab) for lab in labels]
    return {
        "passed": all(s.passed for s in suites),
        "suites": [s.to_json() for s in suites],
        "millis": int(round((time.perf_counter() - t0) * 1000)),
        "supported": list(SUPPORTED_LABELS),
    }
