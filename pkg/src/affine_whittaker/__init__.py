"""Exact symbolic engine for modules over untwisted affine Lie algebras of
type A: loop-algebra brackets, PBW straightening, Whittaker and evaluation
inducing modules, parabolic induction and descent certificates."""

from __future__ import annotations

from .inducing import (
    CharacterInduced,
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
    inducing_act,
)
from .induced import InducedModule, ModuleVector, WeightKey, act, induce, weight_components
from .lie import (
    AffineAlgebra,
    Basis,
    LieElement,
    ParabolicSpec,
    affine_algebra,
    bracket,
    heisenberg_basis,
    parabolic_from_subset,
)
from .pbw import OrderTag, PBWEngine, UEAElement, engine_for, multiply, normal_order
from .roots import AffineWeight, FiniteRootSystem, build_root_system, invariant_form, tau_count

__version__ = "0.1.0"

__all__ = [
    "AffineAlgebra",
    "AffineWeight",
    "Basis",
    "CharacterInduced",
    "DAdjoined",
    "EtaTable",
    "Evaluation",
    "ExtendedWhittaker",
    "FiniteRootSystem",
    "HeisenbergComplementWhittaker",
    "ImaginaryWhittaker",
    "InducedModule",
    "InducingModule",
    "LieElement",
    "LieTensor",
    "ModuleError",
    "ModuleVector",
    "OrderTag",
    "PBWEngine",
    "ParabolicSpec",
    "Tensor",
    "UEAElement",
    "UniversalWhittakerLevi",
    "Verma",
    "WeightKey",
    "act",
    "affine_algebra",
    "bracket",
    "build_root_system",
    "engine_for",
    "heisenberg_basis",
    "induce",
    "inducing_act",
    "invariant_form",
    "multiply",
    "normal_order",
    "parabolic_from_subset",
    "tau_count",
    "weight_components",
]
