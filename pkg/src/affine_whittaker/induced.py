"""Parabolically induced modules U(g) (x)_{U(p)} V, realized as U(u_-) (x) V."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import combinations_with_replacement
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple, Union

from .inducing import InducingModule, ModuleError
from .lie import RADICAL_MINUS, RADICAL_PLUS, Basis, LieElement, ParabolicSpec, grade, root_vector
from .pbw import Monomial, OrderTag, engine_for, render_monomial
from .roots import AffineWeight

ZERO = Q(0)
ONE = Q(1)

Key = Tuple[Monomial, Hashable]


def _add(out: dict, k, c: Q) -> None:
    v = out.get(k, ZERO) + c
    if v:
        out[k] = v
    else:
        out.pop(k, None)


@dataclass(frozen=True, order=True)
class WeightKey:
    """Grading label of an induced-module basis vector.

    ``outside`` holds the non-S simple-root coordinates of the U(u_-)
    factor's weight; ``hperp`` the resulting eigenvalues of the h_l-perp
    basis (lambda included).  The two determine each other.
    """

    outside: Tuple[int, ...]
    hperp: Tuple[Q, ...]

    @property
    def tau(self) -> int:
        return sum(abs(c) for c in self.outside)

    def render(self) -> str:
        return "outside=(%s) hperp=(%s)" % (
            ",".join(str(c) for c in self.outside),
            ",".join(str(c) for c in self.hperp),
        )


class ModuleVector:
    """Finite combination of basis vectors u (x) w of an induced module."""

    __slots__ = ("module", "terms")

    def __init__(self, module: "InducedModule", terms: Mapping[Key, Q]):
        self.module = module
        self.terms: Dict[Key, Q] = {k: Q(c) for k, c in terms.items() if c}

    def __add__(self, other: ModuleVector) -> ModuleVector:
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return ModuleVector(self.module, out)

    def __neg__(self) -> ModuleVector:
        return ModuleVector(self.module, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: ModuleVector) -> ModuleVector:
        return self + (-other)

    def __rmul__(self, scalar) -> ModuleVector:
        s = Q(scalar)
        return ModuleVector(self.module, {k: s * c for k, c in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def in_inducing_space(self) -> bool:
        """True when every term has the unit U(u_-) factor (the vector lies in 1 (x) V)."""
        return all(not u for u, _ in self.terms)

    def sorted_items(self) -> List[Tuple[Key, Q]]:
        return sorted(self.terms.items(), key=lambda t: self.module.sort_key(t[0]))

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for (u, w), c in self.sorted_items():
            s = self.module.render_key((u, w))
            if c == 1:
                out.append(f"+{s}")
            elif c == -1:
                out.append(f"-{s}")
            else:
                out.append(f"{'+' if c > 0 else '-'}{abs(c)}*{s}")
        text = " ".join(out)
        return text[1:] if text.startswith("+") else text

    def to_json(self) -> list:
        return [
            {
                "u": [self.module.algebra.render_basis(b) for b in u],
                "w": self.module.V.index_to_json(w),
                "coef": str(c),
            }
            for (u, w), c in self.sorted_items()
        ]

    def __repr__(self) -> str:
        return f"ModuleVector({self.render()!r})"


class InducedModule:
    """M = U(g) (x)_{U(p)} V with basis (normal monomial in u_-) (x) (V-basis index)."""

    def __init__(self, spec: ParabolicSpec, V: InducingModule):
        if V.spec != spec:
            raise ModuleError(
                f"inducing module lives on {V.spec.render()}, not on {spec.render()}"
            )
        self.spec = spec
        self.V = V
        self.algebra = spec.algebra
        self.order = OrderTag(spec)
        self.engine = engine_for(self.order)
        self._cache: Dict[Tuple[Basis, Key], Dict[Key, Q]] = {}

    @property
    def charge(self) -> Q:
        return self.V.charge

    # -- vectors ---------------------------------------------------------
    def vector(self, terms: Mapping[Key, Q]) -> ModuleVector:
        return ModuleVector(self, terms)

    def cyclic_vector(self) -> ModuleVector:
        return ModuleVector(self, {((), self.V.cyclic()): ONE})

    def basis_vector(self, u: Sequence[Basis], w) -> ModuleVector:
        mono = tuple(u)
        if not self.engine.is_normal(mono) or any(self.spec.classify(b) != RADICAL_MINUS for b in mono):
            raise ModuleError("U(u_-) factor must be a normal monomial in the negative radical")
        return ModuleVector(self, {(mono, w): ONE})

    def from_inducing(self, vec: Mapping) -> ModuleVector:
        return ModuleVector(self, {((), w): c for w, c in vec.items()})

    def sort_key(self, key: Key):
        u, w = key
        return (len(u), [self.engine.key(b) for b in u], self.V.render_index(w))

    def render_key(self, key: Key) -> str:
        u, w = key
        vs = self.V.render_index(w)
        return vs if not u else f"{render_monomial(self.algebra, u)} (x) {vs}"

    def vector_from_json(self, obj: list) -> ModuleVector:
        terms: Dict[Key, Q] = {}
        for t in obj:
            u = tuple(self.algebra.parse_basis(s) for s in t["u"])
            w = self.V.index_from_json(t["w"])
            self.basis_vector(u, w)
            _add(terms, (u, w), Q(t["coef"]))
        return ModuleVector(self, terms)

    # -- action ----------------------------------------------------------
    def act_basis(self, b: Basis, key: Key) -> Dict[Key, Q]:
        """Action of a canonical basis element on u (x) w (cached)."""
        ck = (b, key)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        u, w = key
        out: Dict[Key, Q] = {}
        classify = self.spec.classify
        for m, c in self.engine.insert(b, u).items():
            if m and classify(m[-1]) == RADICAL_PLUS:
                continue
            i = 0
            while i < len(m) and classify(m[i]) == RADICAL_MINUS:
                i += 1
            prefix, levi = m[:i], m[i:]
            vec = {w: c}
            for x in reversed(levi):
                vec = self.V.act_vec(x, vec)
                if not vec:
                    break
            for w2, c2 in vec.items():
                _add(out, (prefix, w2), c2)
        self._cache[ck] = out
        return out

    def act(self, x: Union[LieElement, Basis], v: ModuleVector) -> ModuleVector:
        if isinstance(x, Basis):
            items: Iterable[Tuple[Basis, Q]] = [(x, ONE)]
        else:
            if x.algebra.identity != self.algebra.identity:
                x = self.spec.to_canonical(x) if x.algebra.label == self.spec.label else None
                if x is None:
                    raise ModuleError("element lives over a different root system")
            items = x.terms.items()
        out: Dict[Key, Q] = {}
        for b, cb in items:
            for key, cv in v.terms.items():
                for k2, c2 in self.act_basis(b, key).items():
                    _add(out, k2, cb * cv * c2)
        return ModuleVector(self, out)

    def act_word(self, word: Sequence[Union[LieElement, Basis]], v: ModuleVector) -> ModuleVector:
        """Apply word[0] * word[1] * ... * word[-1] to v (rightmost first)."""
        for x in reversed(word):
            v = self.act(x, v)
        return v

    # -- basis and grading -----------------------------------------------
    def minus_generators(self, window: int) -> List[Basis]:
        gens = [
            root_vector(r, n)
            for n in range(-window, window + 1)
            for r in self.spec.rs.roots
            if self.spec.classify(root_vector(r, n)) == RADICAL_MINUS
        ]
        return sorted(gens, key=self.engine.key)

    def basis(self, D: int, window: int) -> List[Key]:
        """Basis vectors of total degree <= D with loop degrees in [-window, window]."""
        gens = self.minus_generators(window)
        vbasis = self.V.basis(D, window)
        out: List[Key] = []
        for k in range(D + 1):
            vs = [w for w in vbasis if self.V.index_length(w) <= D - k]
            for u in combinations_with_replacement(gens, k):
                out.extend((tuple(u), w) for w in vs)
        return out

    def u_weight(self, u: Monomial) -> AffineWeight:
        w = AffineWeight.zero(self.spec.rs.rank)
        for b in u:
            w = w + grade(b, self.spec.rs.rank)
        return w

    def weight_key(self, key: Key) -> WeightKey:
        phi = self.u_weight(key[0]).finite
        rs = self.spec.rs
        outside = tuple(c for k, c in enumerate(phi) if k not in self.spec.subset)
        lam = self.V.hperp_scalars()
        hperp = tuple(
            lam[j]
            + sum(Q(vec[i]) * rs.form[i][l] * phi[l] for i in range(rs.rank) for l in range(rs.rank))
            for j, vec in enumerate(self.spec.hperp_basis)
        )
        return WeightKey(outside, hperp)

    def tau(self, key: Key) -> int:
        return self.weight_key(key).tau


def induce(spec: ParabolicSpec, V: InducingModule) -> InducedModule:
    return InducedModule(spec, V)


def act(M: InducedModule, x, v: ModuleVector) -> ModuleVector:
    return M.act(x, v)


def weight_components(M: InducedModule, v: ModuleVector) -> List[Tuple[WeightKey, ModuleVector]]:
    """Split v by its h_l-perp weight (the grading preserved by the Levi)."""
    groups: Dict[WeightKey, Dict[Key, Q]] = {}
    for key, c in v.terms.items():
        groups.setdefault(M.weight_key(key), {})[key] = c
    return [(wk, ModuleVector(M, terms)) for wk, terms in sorted(groups.items())]
