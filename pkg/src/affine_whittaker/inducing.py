"""Inducing modules over the Levi factor, each with an exact action rule.

Every module works in the parabolic's adapted basis (S-coroots, then the
orthogonal complement); canonical elements are converted on entry.  Basis
indices are hashable and module-specific:

* character-induced modules (all Whittaker variants and Verma): a normal
  monomial in the free generators, the cyclic vector being ``()``;
* ``Evaluation``: a tuple of sl2 weight-vector indices, one per factor;
* ``LieTensor`` / ``Tensor``: a pair (left index, right index);
* ``DAdjoined``: a pair (power of d, inner index).
"""

from __future__ import annotations

from fractions import Fraction as Q
from itertools import combinations_with_replacement
from math import comb
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .lie import (
    DERIVATION,
    Basis,
    LieElement,
    ParabolicSpec,
    cartan_loop,
    grade,
    parabolic_from_subset,
    root_vector,
)
from .pbw import PBWEngine, render_monomial
from .roots import AffineWeight

ZERO = Q(0)
ONE = Q(1)

Vec = Dict[Hashable, Q]


class ModuleError(ValueError):
    """Inconsistent module descriptor or an element outside the acting algebra."""


def _add(out: Vec, k: Hashable, c: Q) -> None:
    v = out.get(k, ZERO) + c
    if v:
        out[k] = v
    else:
        out.pop(k, None)


class EtaTable:
    """Character values on positive generators: a finite table plus a default.

    The default covers every untabulated generator of positive loop degree;
    a nonzero default models "nonzero in infinitely many degrees".
    """

    def __init__(self, default=0, table: Optional[Mapping[Basis, Any]] = None):
        self.default = Q(default)
        self.table = {k: Q(v) for k, v in (table or {}).items()}

    def value(self, k: Basis) -> Q:
        return self.table.get(k, self.default)

    def hypothesis(self, generators: Sequence[Basis]) -> str:
        if self.default:
            return f"nonzero default value {self.default} on every untabulated positive degree"
        degs = sorted({g.deg for g in generators if self.value(g)})
        if degs and {g.deg for g in generators} <= set(degs):
            return f"nonzero on every probed degree {degs[0]}..{degs[-1]} (table)"
        return "zero default; nonzero only on degrees %s" % (degs or "none")


class InducingModule:
    """Base class; subclasses implement the adapted action and basis data."""

    kind = "abstract"

    def __init__(self, spec: ParabolicSpec, charge):
        self.spec = spec
        self.charge = Q(charge)
        self._cache: Dict[Tuple[Basis, Hashable], Vec] = {}

    # -- acting algebra ------------------------------------------------
    def supports(self, k: Basis) -> bool:
        raise NotImplementedError

    def supports_canonical(self, b: Basis) -> bool:
        return all(self.supports(k) for k in self.spec.adapted_terms(b))

    def act_adapted(self, k: Basis, idx) -> Vec:
        raise NotImplementedError

    def act_basis(self, b: Basis, idx) -> Vec:
        """Action of a canonical basis element on a basis vector (cached)."""
        key = (b, idx)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out: Vec = {}
        for k, c in self.spec.adapted_terms(b).items():
            if not self.supports(k):
                raise ModuleError(
                    f"{self.spec.adapted.render_basis(k)} is outside the acting algebra of {self.kind}"
                )
            for j, v in self.act_adapted(k, idx).items():
                _add(out, j, c * v)
        self._cache[key] = out
        return out

    def act_vec(self, b: Basis, vec: Mapping) -> Vec:
        out: Vec = {}
        for idx, c in vec.items():
            for j, v in self.act_basis(b, idx).items():
                _add(out, j, c * v)
        return out

    def act(self, x: LieElement, vec: Mapping) -> Vec:
        """Action of a canonical (or adapted) Lie element on a vector."""
        if x.algebra.identity == self.spec.adapted.identity:
            out: Vec = {}
            for k, c in x.terms.items():
                for idx, cv in vec.items():
                    for j, v in self.act_adapted(k, idx).items():
                        _add(out, j, c * cv * v)
            return out
        out = {}
        for b, c in x.terms.items():
            for j, v in self.act_vec(b, vec).items():
                _add(out, j, c * v)
        return out

    # -- basis data ----------------------------------------------------
    def cyclic(self):
        raise NotImplementedError

    def basis(self, max_len: int, window: int) -> List:
        raise NotImplementedError

    def index_length(self, idx) -> int:
        raise NotImplementedError

    def index_weight(self, idx) -> AffineWeight:
        raise NotImplementedError

    def render_index(self, idx) -> str:
        raise NotImplementedError

    def index_to_json(self, idx):
        raise NotImplementedError

    def index_from_json(self, obj):
        raise NotImplementedError

    def hperp_scalars(self) -> Tuple[Q, ...]:
        """Values of lambda on the adapted h_l-perp basis (zero if not acting)."""
        return (ZERO,) * len(self.spec.hperp_basis)

    def g_minus_degree(self, idx) -> int:
        """Number of negative Heisenberg factors in a basis vector."""
        return 0

    @property
    def is_whittaker(self) -> bool:
        return False

    def describe(self) -> dict:
        raise NotImplementedError


# -- character-induced modules ---------------------------------------------------


class CharacterInduced(InducingModule):
    """U(L) (x)_{U(P)} C_chi for a Levi subalgebra L, a subalgebra P and a
    character chi of P; basis = normal monomials in a complement of P.

    ``_in_algebra``, ``_in_positive``, ``_character`` and ``_free_generators``
    define the variant.
    """

    def __init__(self, spec: ParabolicSpec, charge):
        super().__init__(spec, charge)
        self.engine = PBWEngine(spec.adapted, self._order_key, name=self.kind)

    def _order_key(self, k: Basis) -> tuple:
        weight = k.root if k.kind == "e" else (0,) * self.spec.rs.rank
        return (self._in_positive(k), k.kind != "d", k.kind == "c", k.deg, weight, k.kind, k.index)

    def _in_algebra(self, k: Basis) -> bool:
        raise NotImplementedError

    def _in_positive(self, k: Basis) -> bool:
        raise NotImplementedError

    def _character(self, k: Basis) -> Q:
        raise NotImplementedError

    def _free_generators(self, window: int) -> List[Basis]:
        raise NotImplementedError

    def supports(self, k: Basis) -> bool:
        return self._in_algebra(k)

    def act_adapted(self, k: Basis, idx) -> Vec:
        if not self._in_algebra(k):
            raise ModuleError(f"{self.spec.adapted.render_basis(k)} does not act on {self.kind}")
        out: Vec = {}
        for m, c in self.engine.insert(k, idx).items():
            i = len(m)
            while i and self._in_positive(m[i - 1]):
                i -= 1
            val = c
            for p in m[i:]:
                val *= self._character(p)
                if not val:
                    break
            if val:
                _add(out, m[:i], val)
        return out

    def cyclic(self):
        return ()

    def basis(self, max_len: int, window: int) -> List:
        gens = sorted(self._free_generators(window), key=self.engine.key)
        out = []
        for n in range(max_len + 1):
            out.extend(tuple(m) for m in combinations_with_replacement(gens, n))
        return out

    def index_length(self, idx) -> int:
        return len(idx)

    def index_weight(self, idx) -> AffineWeight:
        w = AffineWeight.zero(self.spec.rs.rank)
        for k in idx:
            w = w + grade(k, self.spec.rs.rank)
        return w

    def render_index(self, idx) -> str:
        return "[" + ("" if not idx else render_monomial(self.spec.adapted, idx)) + "]"

    def index_to_json(self, idx):
        return [self.spec.adapted.render_basis(k) for k in idx]

    def index_from_json(self, obj):
        mono = tuple(self.spec.adapted.parse_basis(s) for s in obj)
        if not self.engine.is_normal(mono) or any(self._in_positive(k) for k in mono):
            raise ModuleError(f"{obj} is not a basis monomial of {self.kind}")
        return mono

    def g_minus_degree(self, idx) -> int:
        return sum(1 for k in idx if k.kind == "h" and k.deg < 0)

    @property
    def is_whittaker(self) -> bool:
        return True

    def positive_generators(self, lo: int, hi: int) -> List[Basis]:
        """Positive generators carrying the Whittaker character, degrees in [lo, hi]."""
        raise NotImplementedError

    def negative_imaginary(self, window: int) -> List[Basis]:
        raise NotImplementedError

    def character_value(self, k: Basis) -> Q:
        return self._character(k)


def _cartan_gens(indices: Iterable[int], degs: Iterable[int]) -> List[Basis]:
    return [cartan_loop(j, n) for n in degs for j in indices]


class ImaginaryWhittaker(CharacterInduced):
    """Whittaker module over the Heisenberg subalgebra G; basis U(G_-)."""

    kind = "imaginary_whittaker"

    def __init__(self, label: str, eta: EtaTable, charge):
        super().__init__(parabolic_from_subset(label, ()), charge)
        self.eta = eta

    def _in_algebra(self, k):
        return (k.kind == "h" and k.deg != 0) or k.kind == "c"

    def _in_positive(self, k):
        return k.kind == "c" or (k.kind == "h" and k.deg > 0)

    def _character(self, k):
        return self.charge if k.kind == "c" else self.eta.value(k)

    def _free_generators(self, window):
        return _cartan_gens(range(self.spec.rs.rank), range(-window, 0))

    def positive_generators(self, lo, hi):
        return _cartan_gens(range(self.spec.rs.rank), range(max(lo, 1), hi + 1))

    def negative_imaginary(self, window):
        return self._free_generators(window)

    def describe(self):
        return {
            "kind": self.kind,
            "charge": str(self.charge),
            "eta": eta_to_json(self.eta, self.spec.adapted),
        }


class ExtendedWhittaker(ImaginaryWhittaker):
    """Whittaker module over G + Cd, with h acting by lambda; basis U(G_- + Cd)."""

    kind = "extended_whittaker"

    def __init__(self, label: str, eta: EtaTable, charge, lam: Optional[Sequence] = None):
        super().__init__(label, eta, charge)
        rank = self.spec.rs.rank
        self.lam = tuple(Q(x) for x in (lam if lam is not None else [0] * rank))
        if len(self.lam) != rank:
            raise ModuleError(f"lambda needs {rank} values, got {len(self.lam)}")

    def _in_algebra(self, k):
        return k.kind in "hcd"

    def _in_positive(self, k):
        return k.kind == "c" or (k.kind == "h" and k.deg >= 0)

    def _character(self, k):
        if k.kind == "c":
            return self.charge
        if k.deg == 0:
            return self.lam[k.index]
        return self.eta.value(k)

    def _free_generators(self, window):
        return [DERIVATION] + super()._free_generators(window)

    def negative_imaginary(self, window):
        return _cartan_gens(range(self.spec.rs.rank), range(-window, 0))

    def hperp_scalars(self):
        return self.lam

    def describe(self):
        out = super().describe()
        out["lambda"] = [str(x) for x in self.lam]
        return out


def _affine_positive(k: Basis) -> bool:
    if k.kind == "e":
        return k.deg > 0 or (k.deg == 0 and any(c > 0 for c in k.root))
    return k.kind == "h" and k.deg > 0


class UniversalWhittakerLevi(CharacterInduced):
    """Universal Whittaker module over the Levi factor.

    The real-root part carries a character supported on its affine simple
    root vectors; h_l-perp acts by lambda; G(l)-perp_+ by ``eta_perp``
    (zero by default, which is induction through the smaller parabolic with
    G(l)-perp_+ in the radical).  ``with_d=False`` drops d and
    ``complement=False`` keeps only the affine part (for tensoring with
    evaluation modules).
    """

    kind = "universal_whittaker_levi"

    def __init__(
        self,
        label: str,
        subset: Sequence[int],
        eta: Mapping[Basis, Any],
        charge,
        lam: Optional[Sequence] = None,
        eta_perp: Optional[EtaTable] = None,
        with_d: bool = True,
        complement: bool = True,
    ):
        super().__init__(parabolic_from_subset(label, tuple(subset)), charge)
        simple = set(self.spec.affine_simple_vectors())
        for k, v in eta.items():
            if k not in simple and Q(v):
                raise ModuleError(
                    f"eta must vanish on [l1+, l1+]: {self.spec.adapted.render_basis(k)} is not an affine simple root vector"
                )
        self.eta = {k: Q(v) for k, v in eta.items()}
        nperp = len(self.spec.hperp_basis)
        self.lam = tuple(Q(x) for x in (lam if lam is not None else [0] * nperp))
        if len(self.lam) != nperp:
            raise ModuleError(f"lambda needs {nperp} values on h_l-perp, got {len(self.lam)}")
        self.eta_perp = eta_perp or EtaTable(0)
        self.with_d = with_d
        self.complement = complement

    def _in_algebra(self, k):
        part = self.spec.part(k)
        if part in ("l0", "c"):
            return True
        if part == "d":
            return self.with_d
        return self.complement and part in ("gperp", "hperp")

    def _in_positive(self, k):
        part = self.spec.part(k)
        if part == "c":
            return True
        if part == "l0":
            return _affine_positive(k)
        if part == "hperp":
            return True
        return part == "gperp" and k.deg > 0

    def _character(self, k):
        part = self.spec.part(k)
        if part == "c":
            return self.charge
        if part == "l0":
            return self.eta.get(k, ZERO)
        if part == "hperp":
            return self.lam[k.index - self.spec.n_levi_cartan]
        return self.eta_perp.value(k)

    def _free_generators(self, window):
        spec = self.spec
        s = spec.n_levi_cartan
        gens = []
        for n in range(-window, 1):
            for r in spec.rs.roots:
                k = root_vector(r, n)
                if spec.in_levi_span(r) and not _affine_positive(k):
                    gens.append(k)
        gens += _cartan_gens(range(s), range(-window, 1))
        if self.with_d:
            gens.append(DERIVATION)
        if self.complement:
            gens += _cartan_gens(range(s, spec.rs.rank), range(-window, 0))
        return gens

    def positive_generators(self, lo, hi):
        spec = self.spec
        out = []
        for n in range(max(lo, 0), hi + 1):
            for r in spec.rs.roots:
                k = root_vector(r, n)
                if spec.in_levi_span(r) and _affine_positive(k):
                    out.append(k)
            if n > 0:
                out += _cartan_gens(range(spec.n_levi_cartan), [n])
                if self.complement:
                    out += _cartan_gens(range(spec.n_levi_cartan, spec.rs.rank), [n])
        return out

    def negative_imaginary(self, window):
        return _cartan_gens(range(self.spec.n_levi_cartan), range(-window, 0))

    def hperp_scalars(self):
        return self.lam if self.complement else super().hperp_scalars()

    def describe(self):
        alg = self.spec.adapted
        return {
            "kind": self.kind,
            "subset": [s + 1 for s in self.spec.subset],
            "charge": str(self.charge),
            "eta": {alg.render_basis(k): str(v) for k, v in sorted(self.eta.items())},
            "eta_perp": eta_to_json(self.eta_perp, alg),
            "lambda": [str(x) for x in self.lam],
            "with_d": self.with_d,
            "complement": self.complement,
        }


class HeisenbergComplementWhittaker(CharacterInduced):
    """Whittaker module over G(l)-perp + Cd; basis U(G(l)-perp_- + Cd)."""

    kind = "complement_whittaker"

    def __init__(self, label: str, subset: Sequence[int], eta: EtaTable, charge):
        super().__init__(parabolic_from_subset(label, tuple(subset)), charge)
        self.eta = eta

    def _in_algebra(self, k):
        return self.spec.part(k) in ("gperp", "c", "d")

    def _in_positive(self, k):
        return k.kind == "c" or (self.spec.part(k) == "gperp" and k.deg > 0)

    def _character(self, k):
        return self.charge if k.kind == "c" else self.eta.value(k)

    def _perp_indices(self):
        return range(self.spec.n_levi_cartan, self.spec.rs.rank)

    def _free_generators(self, window):
        return [DERIVATION] + _cartan_gens(self._perp_indices(), range(-window, 0))

    def positive_generators(self, lo, hi):
        return _cartan_gens(self._perp_indices(), range(max(lo, 1), hi + 1))

    def negative_imaginary(self, window):
        return _cartan_gens(self._perp_indices(), range(-window, 0))

    def describe(self):
        return {
            "kind": self.kind,
            "subset": [s + 1 for s in self.spec.subset],
            "charge": str(self.charge),
            "eta": eta_to_json(self.eta, self.spec.adapted),
        }


class Verma(CharacterInduced):
    """Verma module over the affine part of the Levi (with d acting by weight)."""

    kind = "verma"

    def __init__(self, label: str, subset: Sequence[int], highest: Sequence, charge, with_d: bool = True):
        super().__init__(parabolic_from_subset(label, tuple(subset)), charge)
        self.highest = tuple(Q(x) for x in highest)
        if len(self.highest) != self.spec.n_levi_cartan:
            raise ModuleError(f"highest weight needs {self.spec.n_levi_cartan} values on the S-coroots")
        if not self.spec.subset:
            raise ModuleError("Verma module needs a nonempty simple-root subset")
        self.with_d = with_d

    def _in_algebra(self, k):
        part = self.spec.part(k)
        return part in ("l0", "c") or (part == "d" and self.with_d)

    def _in_positive(self, k):
        if k.kind in "cd":
            return True
        return _affine_positive(k) or (k.kind == "h" and k.deg == 0)

    def _character(self, k):
        if k.kind == "c":
            return self.charge
        if k.kind == "h" and k.deg == 0:
            return self.highest[k.index]
        return ZERO

    def _free_generators(self, window):
        spec = self.spec
        gens = []
        for n in range(-window, 1):
            for r in spec.rs.roots:
                k = root_vector(r, n)
                if spec.in_levi_span(r) and not _affine_positive(k):
                    gens.append(k)
        return gens + _cartan_gens(range(spec.n_levi_cartan), range(-window, 0))

    @property
    def is_whittaker(self) -> bool:
        return False

    def describe(self):
        return {
            "kind": self.kind,
            "subset": [s + 1 for s in self.spec.subset],
            "highest": [str(x) for x in self.highest],
            "charge": str(self.charge),
            "with_d": self.with_d,
        }


# -- evaluation modules -------------------------------------------------------


class Evaluation(InducingModule):
    """Tensor product of finite-dimensional sl2-modules of highest weights mu_i,
    with x t^n acting on factor i through a_i^n; c acts by 0.

    Supported for a single simple root in S (the real-root Levi part is
    affine sl2).  Basis of each factor: v_0 (highest), v_j = f^j v_0.
    """

    kind = "evaluation"

    def __init__(self, label: str, subset: Sequence[int], mu: Sequence[int], points: Sequence):
        super().__init__(parabolic_from_subset(label, tuple(subset)), 0)
        if len(self.spec.subset) != 1:
            raise ModuleError("evaluation modules are supported for a single simple root in S")
        self.mu = tuple(int(m) for m in mu)
        self.points = tuple(Q(a) for a in points)
        if len(self.mu) != len(self.points) or not self.mu:
            raise ModuleError("need one evaluation point per highest weight")
        if any(m < 0 for m in self.mu) or not any(self.mu):
            raise ModuleError("highest weights must be dominant integral and not all zero")
        if any(a == 0 for a in self.points):
            raise ModuleError("evaluation points must be nonzero")
        if len(set(self.points)) != len(self.points):
            raise ModuleError("evaluation points must be pairwise distinct")
        self.alpha = self.spec.rs.simple_roots[self.spec.subset[0]]

    def supports(self, k):
        return self.spec.part(k) in ("l0", "c")

    def _sl2(self, which: str, mu: int, j: int):
        if which == "h":
            return [(j, Q(mu - 2 * j))]
        if which == "f":
            return [(j + 1, ONE)] if j < mu else []
        return [(j - 1, Q(j * (mu - j + 1)))] if j > 0 else []

    def act_adapted(self, k, idx):
        if not self.supports(k):
            raise ModuleError(f"{self.spec.adapted.render_basis(k)} does not act on an evaluation module")
        if k.kind == "c":
            return {}
        if k.kind == "h":
            which = "h"
        else:
            which = "e" if k.root == self.alpha else "f"
        out: Vec = {}
        for i, (mu, a) in enumerate(zip(self.mu, self.points)):
            scale = a ** k.deg
            for j, c in self._sl2(which, mu, idx[i]):
                _add(out, idx[:i] + (j,) + idx[i + 1 :], scale * c)
        return out

    def cyclic(self):
        return (0,) * len(self.mu)

    def basis(self, max_len, window):
        out = [()]
        for mu in self.mu:
            out = [t + (j,) for t in out for j in range(mu + 1)]
        return out

    def index_length(self, idx):
        return 0

    def index_weight(self, idx):
        s = sum(idx)
        return AffineWeight(tuple(-s * c for c in self.alpha), 0)

    def render_index(self, idx):
        return "v[" + ",".join(str(j) for j in idx) + "]"

    def index_to_json(self, idx):
        return list(idx)

    def index_from_json(self, obj):
        idx = tuple(int(j) for j in obj)
        if len(idx) != len(self.mu) or any(not 0 <= j <= m for j, m in zip(idx, self.mu)):
            raise ModuleError(f"{obj} is not an evaluation basis index")
        return idx

    def describe(self):
        return {
            "kind": self.kind,
            "subset": [s + 1 for s in self.spec.subset],
            "mu": list(self.mu),
            "points": [str(a) for a in self.points],
        }


# -- composite modules ---------------------------------------------------------


class _Pair(InducingModule):
    def __init__(self, left: InducingModule, right: InducingModule, charge):
        if left.spec != right.spec:
            raise ModuleError("tensor factors must share the parabolic")
        super().__init__(left.spec, charge)
        self.left = left
        self.right = right

    def cyclic(self):
        return (self.left.cyclic(), self.right.cyclic())

    def basis(self, max_len, window):
        out = []
        rights = self.right.basis(max_len, window)
        for l in self.left.basis(max_len, window):
            rem = max_len - self.left.index_length(l)
            out.extend((l, r) for r in rights if self.right.index_length(r) <= rem)
        return out

    def index_length(self, idx):
        return self.left.index_length(idx[0]) + self.right.index_length(idx[1])

    def index_weight(self, idx):
        return self.left.index_weight(idx[0]) + self.right.index_weight(idx[1])

    def render_index(self, idx):
        return f"{self.left.render_index(idx[0])} (x) {self.right.render_index(idx[1])}"

    def index_to_json(self, idx):
        return [self.left.index_to_json(idx[0]), self.right.index_to_json(idx[1])]

    def index_from_json(self, obj):
        return (self.left.index_from_json(obj[0]), self.right.index_from_json(obj[1]))

    def g_minus_degree(self, idx):
        return self.left.g_minus_degree(idx[0]) + self.right.g_minus_degree(idx[1])

    def _on_left(self, k, idx) -> Vec:
        return {(j, idx[1]): c for j, c in self.left.act_adapted(k, idx[0]).items()}

    def _on_right(self, k, idx) -> Vec:
        return {(idx[0], j): c for j, c in self.right.act_adapted(k, idx[1]).items()}


class LieTensor(_Pair):
    """Tensor product of two modules over the same algebra (Leibniz rule)."""

    kind = "lie_tensor"

    def __init__(self, left: InducingModule, right: InducingModule):
        super().__init__(left, right, left.charge + right.charge)

    def supports(self, k):
        return self.left.supports(k) and self.right.supports(k)

    def act_adapted(self, k, idx):
        out = dict(self._on_left(k, idx))
        for j, c in self._on_right(k, idx).items():
            _add(out, j, c)
        return out

    def hperp_scalars(self):
        return self.left.hperp_scalars()

    def describe(self):
        return {"kind": self.kind, "left": self.left.describe(), "right": self.right.describe()}


class DAdjoined(InducingModule):
    """C[d] (x) W for a module W over a d-free algebra: basis d^p (x) w with
    x d^p = (d - n)^p x for x of loop degree n."""

    kind = "d_adjoined"

    def __init__(self, inner: InducingModule):
        super().__init__(inner.spec, inner.charge)
        if inner.supports(DERIVATION):
            raise ModuleError("inner module already carries an action of d")
        self.inner = inner

    def supports(self, k):
        return k.kind == "d" or self.inner.supports(k)

    def act_adapted(self, k, idx):
        p, w = idx
        if k.kind == "d":
            return {(p + 1, w): ONE}
        out: Vec = {}
        n = k.deg
        for w2, c in self.inner.act_adapted(k, w).items():
            for j in range(p + 1):
                coef = comb(p, j) * Q(-n) ** (p - j) if p - j else Q(comb(p, j))
                if coef:
                    _add(out, (j, w2), c * coef)
        return out

    def cyclic(self):
        return (0, self.inner.cyclic())

    def basis(self, max_len, window):
        return [
            (p, w)
            for w in self.inner.basis(max_len, window)
            for p in range(max_len - self.inner.index_length(w) + 1)
        ]

    def index_length(self, idx):
        return idx[0] + self.inner.index_length(idx[1])

    def index_weight(self, idx):
        return self.inner.index_weight(idx[1])

    def render_index(self, idx):
        p, w = idx
        inner = self.inner.render_index(w)
        if p == 0:
            return inner
        return f"d^{p}.{inner}" if p > 1 else f"d.{inner}"

    def index_to_json(self, idx):
        return [idx[0], self.inner.index_to_json(idx[1])]

    def index_from_json(self, obj):
        return (int(obj[0]), self.inner.index_from_json(obj[1]))

    def g_minus_degree(self, idx):
        return self.inner.g_minus_degree(idx[1])

    def hperp_scalars(self):
        return self.inner.hperp_scalars()

    def describe(self):
        return {"kind": self.kind, "inner": self.inner.describe()}


class Tensor(_Pair):
    """Mixed tensor M (x) S over the Levi: the affine part acts on M, the
    Heisenberg complement on S, h_l-perp by lambda, c by the shared charge
    and d by the Leibniz rule."""

    kind = "tensor"

    def __init__(self, left: InducingModule, right: InducingModule, lam: Optional[Sequence] = None, charge=None):
        if left.charge != right.charge:
            raise ModuleError(
                f"central charges must agree: left {left.charge}, right {right.charge}"
            )
        if charge is not None and Q(charge) != left.charge:
            raise ModuleError(f"declared charge {charge} differs from factor charge {left.charge}")
        super().__init__(left, right, left.charge)
        nperp = len(self.spec.hperp_basis)
        self.lam = tuple(Q(x) for x in (lam if lam is not None else [0] * nperp))
        if len(self.lam) != nperp:
            raise ModuleError(f"lambda needs {nperp} values on h_l-perp")
        if not left.supports(DERIVATION) or not right.supports(DERIVATION):
            raise ModuleError("both tensor factors need an action of d")

    def supports(self, k):
        part = self.spec.part(k)
        if part == "l0":
            return self.left.supports(k)
        if part == "gperp":
            return self.right.supports(k)
        return part in ("hperp", "c", "d")

    def act_adapted(self, k, idx):
        part = self.spec.part(k)
        if part == "c":
            return {idx: self.charge} if self.charge else {}
        if part == "hperp":
            v = self.lam[k.index - self.spec.n_levi_cartan]
            return {idx: v} if v else {}
        if part == "l0":
            return self._on_left(k, idx)
        if part == "gperp":
            return self._on_right(k, idx)
        if part == "d":
            out = dict(self._on_left(k, idx))
            for j, c in self._on_right(k, idx).items():
                _add(out, j, c)
            return out
        raise ModuleError(f"{self.spec.adapted.render_basis(k)} is not in the Levi factor")

    def hperp_scalars(self):
        return self.lam

    @property
    def is_whittaker(self) -> bool:
        return False

    def describe(self):
        return {
            "kind": self.kind,
            "left": self.left.describe(),
            "right": self.right.describe(),
            "lambda": [str(x) for x in self.lam],
            "charge": str(self.charge),
        }


def eta_to_json(eta: EtaTable, algebra) -> dict:
    return {
        "default": str(eta.default),
        "table": {algebra.render_basis(k): str(v) for k, v in sorted(eta.table.items())},
    }


def inducing_act(m: InducingModule, x, vec: Mapping) -> Vec:
    """Act by a Lie element or basis element on a vector of the inducing module."""
    if isinstance(x, Basis):
        return m.act_vec(x, vec)
    return m.act(x, vec)
