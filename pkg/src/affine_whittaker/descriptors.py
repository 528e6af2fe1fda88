"""JSON descriptors for inducing modules.

Element names use the parabolic's adapted basis text form, e.g. ``h1@2`` or
``(h1+2h2)@3`` for Cartan loops and ``e[a1]@0`` / ``f[a1]@1`` for root
vectors.  Rationals are written as strings (``"1/2"``) or integers.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Any, Mapping, Sequence

from .inducing import (
    DAdjoined,
    EtaTable,
    Evaluation,
    ExtendedWhittaker,
    HeisenbergComplementWhittaker,
    ImaginaryWhittaker,
    InducingModule,
    LieTensor,
    ModuleError,
    Tensor,
    UniversalWhittakerLevi,
    Verma,
)
from .lie import parabolic_from_subset

KINDS = (
    "imaginary_whittaker",
    "extended_whittaker",
    "universal_whittaker_levi",
    "complement_whittaker",
    "verma",
    "evaluation",
    "lie_tensor",
    "d_adjoined",
    "tensor",
)


def _rational(x: Any, what: str) -> Q:
    try:
        return Q(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ModuleError(f"{what}: {x!r} is not an exact rational") from None


def _eta_table(obj: Any, algebra, positive, what: str) -> EtaTable:
    obj = obj or {}
    if not isinstance(obj, Mapping):
        raise ModuleError(f"{what} must be an object with 'default' and 'table'")
    table = {}
    for name, val in (obj.get("table") or {}).items():
        try:
            k = algebra.parse_basis(name)
        except ValueError as exc:
            raise ModuleError(f"{what}: {exc}") from None
        if not positive(k):
            raise ModuleError(f"{what}: {name} is not a positive generator of the character's domain")
        table[k] = _rational(val, what)
    return EtaTable(_rational(obj.get("default", 0), what), table)


def build_inducing(label: str, subset: Sequence[int], desc: Mapping[str, Any]) -> InducingModule:
    """Build an inducing module; ``subset`` holds 0-based simple-root indices."""
    kind = desc.get("kind")
    if kind not in KINDS:
        raise ModuleError(f"unknown inducing-module kind {kind!r}; expected one of {', '.join(KINDS)}")
    subset = tuple(subset)
    spec = parabolic_from_subset(label, subset)
    alg = spec.adapted
    charge = desc.get("charge", 0)

    def heis_pos(k):
        return k.kind == "h" and k.deg > 0

    def perp_pos(k):
        return spec.part(k) == "gperp" and k.deg > 0

    if kind in ("imaginary_whittaker", "extended_whittaker"):
        if subset:
            raise ModuleError(f"{kind} lives on the parabolic with empty subset")
        eta = _eta_table(desc.get("eta"), alg, heis_pos, "eta")
        if kind == "imaginary_whittaker":
            return ImaginaryWhittaker(label, eta, _rational(charge, "charge"))
        lam = [_rational(x, "lambda") for x in desc.get("lambda", [0] * spec.rs.rank)]
        return ExtendedWhittaker(label, eta, _rational(charge, "charge"), lam)
    if kind == "universal_whittaker_levi":
        eta = {}
        for name, val in (desc.get("eta") or {}).items():
            try:
                eta[alg.parse_basis(name)] = _rational(val, "eta")
            except ValueError as exc:
                raise ModuleError(f"eta: {exc}") from None
        eta_perp = _eta_table(desc.get("eta_perp"), alg, perp_pos, "eta_perp")
        lam = desc.get("lambda")
        return UniversalWhittakerLevi(
            label,
            subset,
            eta,
            _rational(charge, "charge"),
            None if lam is None else [_rational(x, "lambda") for x in lam],
            eta_perp,
            with_d=bool(desc.get("with_d", True)),
            complement=bool(desc.get("complement", True)),
        )
    if kind == "complement_whittaker":
        eta = _eta_table(desc.get("eta"), alg, perp_pos, "eta")
        return HeisenbergComplementWhittaker(label, subset, eta, _rational(charge, "charge"))
    if kind == "verma":
        highest = [_rational(x, "highest") for x in desc.get("highest", [])]
        return Verma(label, subset, highest, _rational(charge, "charge"), with_d=bool(desc.get("with_d", True)))
    if kind == "evaluation":
        mu = desc.get("mu", [])
        if any(not isinstance(m, int) for m in mu):
            raise ModuleError("mu entries must be integers")
        pts = [_rational(x, "points") for x in desc.get("points", [])]
        return Evaluation(label, subset, mu, pts)
    if kind == "lie_tensor":
        return LieTensor(build_inducing(label, subset, desc["left"]), build_inducing(label, subset, desc["right"]))
    if kind == "d_adjoined":
        return DAdjoined(build_inducing(label, subset, desc["inner"]))
    left = build_inducing(label, subset, desc["left"])
    right = build_inducing(label, subset, desc["right"])
    lam = desc.get("lambda")
    return Tensor(
        left,
        right,
        None if lam is None else [_rational(x, "lambda") for x in lam],
        None if "charge" not in desc else _rational(charge, "charge"),
    )
