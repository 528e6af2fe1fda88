from __future__ import annotations

from fractions import Fraction as Q

from affine_whittaker.lie import AffineAlgebra
from affine_whittaker.roots import build_root_system
from affine_whittaker.selftest import run_suite, selftest


def test_selftest_passes_for_a1_a2():
    res = selftest(("A1", "A2"))
    assert res["passed"]
    assert [s["label"] for s in res["suites"]] == ["A1", "A2"]


def test_a3_suite_small_windows():
    assert run_suite("A3", pair_window=1, triple_window=0, closure=False).passed


def test_corrupted_table_reports_offending_triple():
    alg = AffineAlgebra(build_root_system("A1"))
    alg.table[(("e", (1,)), ("e", (-1,)))] = {("h", 0): Q(2)}
    res = run_suite("A1", alg)
    assert not res.passed
    first = res.failures[0]
    assert first["triple"][0].startswith("e[a1]") and first["triple"][1].startswith("f[a1]")


def test_corrupted_form_breaks_invariance():
    alg = AffineAlgebra(build_root_system("A2"))
    alg.form_table[(("h", 0), ("h", 0))] = Q(3)
    res = run_suite("A2", alg, pair_window=0, triple_window=0)
    assert any(f["property"] == "form_invariance" for f in res.failures)
