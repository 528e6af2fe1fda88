from __future__ import annotations

import copy
import json
from fractions import Fraction as Q
from pathlib import Path

import pytest

from affine_whittaker.certify import (
    INCONCLUSIVE,
    VERIFIED,
    WITNESS,
    PreconditionError,
    check_torsion_free,
    check_whittaker,
    descend,
    extraction_identities,
    irreducibility_probe,
    recheck,
    recheck_certificate,
    reducibility_witness_charge_zero,
    span_invariance_violations,
)
from affine_whittaker.descriptors import build_inducing
from affine_whittaker.induced import induce
from affine_whittaker.inducing import EtaTable, ExtendedWhittaker, ImaginaryWhittaker, UniversalWhittakerLevi
from affine_whittaker.lie import cartan_loop, parabolic_from_subset, root_vector

GOLDEN = Path(__file__).parent / "golden"
LEVI_ETA_A2 = {"e[a1]@0": 1, "f[a1]@1": 1}


def _levi_a2(a=1):
    desc = {"kind": "universal_whittaker_levi", "eta": LEVI_ETA_A2, "charge": a, "eta_perp": {"default": 1}}
    V = build_inducing("A2", (0,), desc)
    return V, induce(parabolic_from_subset("A2", (0,)), V)


def _imaginary_induced(a=1):
    V = ExtendedWhittaker("A1", EtaTable(1), a)
    return V, induce(parabolic_from_subset("A1", ()), V)


# -- whittaker ---------------------------------------------------------------------


def test_whittaker_verified_and_products():
    eta = EtaTable(0, {cartan_loop(0, n): Q(n, 7) for n in range(1, 7)})
    V = ImaginaryWhittaker("A1", eta, 1)
    rep = check_whittaker(V, (1, 6))
    assert rep.verdict == VERIFIED and rep.budgets["generators"] == 6
    h2, h3 = cartan_loop(0, 2), cartan_loop(0, 3)
    assert V.act_vec(h2, V.act_basis(h3, ())) == {(): Q(2, 7) * Q(3, 7)}
    assert recheck(rep.to_json(), V)


def test_whittaker_detects_broken_action(monkeypatch):
    V = ImaginaryWhittaker("A1", EtaTable(1), 1)
    real = V.character_value
    monkeypatch.setattr(V, "character_value", lambda k: real(k) + (1 if k.deg == 4 else 0))
    assert check_whittaker(V, (1, 6)).verdict == WITNESS


# -- torsion -------------------------------------------------------------------------


def test_torsion_example_and_extraction_a1():
    V = UniversalWhittakerLevi("A1", (0,), {root_vector((1,), 0): 1, root_vector((-1,), 1): 1}, 1)
    u = (root_vector((-1,), -1),)
    assert V.act_basis(cartan_loop(0, -1), u)
    rep = check_torsion_free(V, samples=50, D=2, window=3, seed=1)
    assert rep.verdict == VERIFIED and len(rep.witness["pairs"]) == 50
    assert recheck(rep.to_json(), V)


def test_extraction_identity_returns_charge():
    V, _ = _levi_a2(Q(3, 2))
    ids = extraction_identities(V, (1, 2, 3, 4))
    assert [e["N"] for e in ids if e["x"].startswith("h1")] == [1, 2, 3, 4]
    for e in ids:
        assert e["holds"] and e["expected"] == [{"w": [], "coef": "3/2"}]


def test_torsion_rejects_zero_charge():
    with pytest.raises(PreconditionError, match="a = 0"):
        check_torsion_free(ImaginaryWhittaker("A1", EtaTable(1), 0))


# -- charge zero ---------------------------------------------------------------------------


def test_charge_zero_witness():
    V = ImaginaryWhittaker("A1", EtaTable(1), 0)
    hm2 = (cartan_loop(0, -2),)
    assert V.act_basis(cartan_loop(0, 2), hm2) == {hm2: 1}
    out = V.act_basis(cartan_loop(0, -1), hm2)
    assert all(V.g_minus_degree(w) >= 1 for w in out)
    rep = reducibility_witness_charge_zero(V, D=3, window=3, probe=3)
    assert rep.verdict == WITNESS
    assert recheck(rep.to_json(), V)
    _, M = _imaginary_induced(0)
    rep = reducibility_witness_charge_zero(M, D=2, window=2, probe=2)
    assert rep.verdict == WITNESS
    assert recheck(rep.to_json(), M.V, M)


def test_charge_one_escapes_span():
    V = ImaginaryWhittaker("A1", EtaTable(1), 1)
    bad = span_invariance_violations(V, 2, 2, 2)
    assert any(b["escapes_to"] == "[]" for b in bad)
    with pytest.raises(PreconditionError):
        reducibility_witness_charge_zero(V)


# -- descent ---------------------------------------------------------------------------------


def test_descent_single_bracket_example():
    _, M = _imaginary_induced()
    v = M.basis_vector([root_vector((-1,), -1)], ())
    rep = descend(M, v)
    assert rep.verdict == VERIFIED
    assert rep.witness["U"] == [[{"coef": "1", "word": ["e[a1]@0"]}]]
    assert rep.witness["result"] == [{"u": [], "w": ["h1@-1"], "coef": "1"}]


def test_descent_identity_at_tau_zero():
    _, M = _imaginary_induced()
    v = M.vector({((), (cartan_loop(0, -1),)): 3})
    rep = descend(M, v)
    assert rep.verdict == VERIFIED and rep.witness["U"] == [] and rep.witness["steps"] == []


def test_descent_golden_hand_checked():
    """e[a2]@0 lowers tau from 2 to 1; then e[a2]@-1 (pivot a2, k = 0, N = 1) gives
    f1@-1 h2@-1 v + f1@-2 v - f1@-2 v - 1/2 f1@-2 h1@0 v with h2 = ((h1+2h2) - h1)/2."""
    V, M = _levi_a2()
    v = M.basis_vector([root_vector((-1, -1), -1), root_vector((0, -1), 0)], ())
    rep = descend(M, v)
    golden = json.loads((GOLDEN / "descent-golden-A2.json").read_text())
    assert json.loads(json.dumps(rep.witness)) == golden
    res = {(tuple(t["w"]), t["coef"]) for t in golden["result"]}
    assert res == {
        (("f[a1]@-1", "(h1+2h2)@-1"), "1/2"),
        (("f[a1]@-1", "h1@-1"), "-1/2"),
        (("f[a1]@-2", "h1@0"), "-1/2"),
    }
    assert [s["tau_before"] for s in golden["steps"]] == [2, 1]


@pytest.mark.parametrize("pivot", ["largest_k", "least_tau"])
def test_both_pivots_succeed_on_golden(pivot):
    _, M = _levi_a2()
    v = M.basis_vector([root_vector((-1, -1), -1), root_vector((0, -1), 0)], ())
    rep = descend(M, v, pivot=pivot, fallback=False)
    assert rep.verdict == VERIFIED


def test_descent_projects_mixed_weights():
    _, M = _levi_a2()
    v = M.vector({
        ((root_vector((0, -1), -1),), ()): 1,
        ((root_vector((-1, -1), 0), root_vector((0, -1), 1)), ()): 2,
    })
    rep = descend(M, v)
    assert rep.verdict == VERIFIED
    assert rep.witness["steps"][0]["step"] == "project"
    assert recheck_certificate(M, rep.witness)


def test_descent_preconditions_and_budget():
    _, M0 = _imaginary_induced(0)
    with pytest.raises(PreconditionError):
        descend(M0, M0.cyclic_vector())
    _, M = _imaginary_induced()
    with pytest.raises(PreconditionError):
        descend(M, M.vector({}))
    V, M2 = _levi_a2()
    v = M2.basis_vector([root_vector((-1, -1), -1), root_vector((0, -1), 0)], ())
    rep = descend(M2, v, N_max=1, B=1)
    assert rep.verdict == INCONCLUSIVE and "budget" in rep.reason


def test_probe_and_tampered_certificate():
    _, M = _imaginary_induced()
    rep = irreducibility_probe(M, D=2, window=1, R=2, seed=3)
    assert rep.verdict == VERIFIED and not rep.witness["inconclusive"]
    data = json.loads(json.dumps(rep.to_json()))
    assert recheck(data, M.V, M)
    bad = copy.deepcopy(data)
    cert = next(c for c in bad["witness"]["certificates"] if c["U"])
    cert["result"][0]["coef"] = "12345"
    assert not recheck(bad, M.V, M)
    with pytest.raises(PreconditionError):
        irreducibility_probe(_imaginary_induced(0)[1])


def test_probe_is_seed_deterministic():
    _, M = _imaginary_induced()
    a = irreducibility_probe(M, D=2, window=1, R=3, seed=9).to_json()
    b = irreducibility_probe(M, D=2, window=1, R=3, seed=9).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
