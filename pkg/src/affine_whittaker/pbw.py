"""PBW straightening in the universal enveloping algebra.

A monomial is a tuple of basis elements sorted ascending in a total order
(repeats allowed), read left to right as a product.  ``PBWEngine`` rewrites
arbitrary words into combinations of such monomials with the rule
``x y = y x + [x, y]`` whenever ``x`` sorts after ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import groupby
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .lie import (
    LEVI,
    RADICAL_MINUS,
    RADICAL_PLUS,
    AffineAlgebra,
    Basis,
    LieElement,
    ParabolicSpec,
)

ZERO = Q(0)
ONE = Q(1)

Monomial = Tuple[Basis, ...]
Terms = Dict[Monomial, Q]

_BLOCK = {RADICAL_MINUS: 0, LEVI: 1, RADICAL_PLUS: 2}
_KIND = {"e": 0, "h": 1, "c": 2, "d": 3}


@dataclass(frozen=True)
class OrderTag:
    """Block order radical_minus < levi < radical_plus for a parabolic.

    Inside a block: loop degree, then finite weight, then basis index; c and d
    come last inside the Levi block.
    """

    spec: ParabolicSpec

    def key(self, b: Basis) -> tuple:
        block = _BLOCK[self.spec.classify(b)]
        weight = b.root if b.kind == "e" else (0,) * self.spec.rs.rank
        return (block, b.kind in "cd", b.deg, weight, _KIND[b.kind], b.index)

    def block(self, b: Basis) -> str:
        return self.spec.classify(b)


def _add(out: Terms, m: Monomial, c: Q) -> None:
    v = out.get(m, ZERO) + c
    if v:
        out[m] = v
    else:
        out.pop(m, None)


class PBWEngine:
    """Normal ordering for one algebra and one total order on its basis.

    The insertion memo is an insert-only cache: a key always maps to the same
    value, so sharing it between callers is safe.
    """

    def __init__(self, algebra: AffineAlgebra, key: Callable[[Basis], tuple], name: str = ""):
        self.algebra = algebra
        self._key_fn = key
        self._keys: Dict[Basis, tuple] = {}
        self._memo: Dict[Tuple[Basis, Monomial], Terms] = {}
        self.name = name

    def key(self, b: Basis) -> tuple:
        k = self._keys.get(b)
        if k is None:
            k = self._keys[b] = self._key_fn(b)
        return k

    def sort_monomial(self, word: Iterable[Basis]) -> Monomial:
        return tuple(sorted(word, key=self.key))

    def is_normal(self, word: Sequence[Basis]) -> bool:
        return all(self.key(a) <= self.key(b) for a, b in zip(word, word[1:]))

    def insert(self, x: Basis, mono: Monomial) -> Terms:
        """Normal form of the product x * mono for a normal monomial."""
        memo_key = (x, mono)
        hit = self._memo.get(memo_key)
        if hit is not None:
            return hit
        if not mono or self.key(x) <= self.key(mono[0]):
            out = {(x,) + mono: ONE}
        else:
            first, rest = mono[0], mono[1:]
            out: Terms = {}
            for m2, c2 in self.insert(x, rest).items():
                for m3, c3 in self.insert(first, m2).items():
                    _add(out, m3, c2 * c3)
            for b, cb in self.algebra.bracket_basis(x, first).items():
                for m3, c3 in self.insert(b, rest).items():
                    _add(out, m3, cb * c3)
        self._memo[memo_key] = out
        return out

    def left_multiply_terms(self, x: Basis, terms: Terms) -> Terms:
        out: Terms = {}
        for m, c in terms.items():
            for m2, c2 in self.insert(x, m).items():
                _add(out, m2, c * c2)
        return out

    def normal_order_terms(self, word: Sequence[Basis]) -> Terms:
        terms: Terms = {(): ONE}
        for x in reversed(word):
            terms = self.left_multiply_terms(x, terms)
        return terms

    def normal_order(self, word: Sequence[Basis]) -> UEAElement:
        return UEAElement(self, self.normal_order_terms(tuple(word)))

    def lift(self, x: LieElement) -> UEAElement:
        self.algebra._check(x)
        return UEAElement(self, {(b,): c for b, c in x.terms.items()})

    def unit(self) -> UEAElement:
        return UEAElement(self, {(): ONE})

    def multiply(self, a: UEAElement, b: UEAElement) -> UEAElement:
        if a.engine is not self or b.engine is not self:
            raise ValueError("order-tag mismatch: elements belong to different PBW orders")
        out: Terms = {}
        for ma, ca in a.terms.items():
            partial = dict(b.terms)
            for x in reversed(ma):
                partial = self.left_multiply_terms(x, partial)
            for m, c in partial.items():
                _add(out, m, ca * c)
        return UEAElement(self, out)

    def render_monomial(self, mono: Monomial) -> str:
        return render_monomial(self.algebra, mono)


def render_monomial(algebra: AffineAlgebra, mono: Monomial) -> str:
    if not mono:
        return "1"
    parts = []
    for b, grp in groupby(mono):
        n = len(list(grp))
        s = algebra.render_basis(b)
        parts.append(s if n == 1 else f"{s}^{n}")
    return "*".join(parts)


def monomial_pairs(mono: Monomial) -> List[Tuple[Basis, int]]:
    """(element, exponent) pairs of a normal monomial."""
    return [(b, len(list(g))) for b, g in groupby(mono)]


class UEAElement:
    """Finite combination of normal monomials for one PBW engine."""

    __slots__ = ("engine", "terms")

    def __init__(self, engine: PBWEngine, terms: Terms):
        self.engine = engine
        self.terms = {m: Q(c) for m, c in terms.items() if c}

    def __mul__(self, other: UEAElement) -> UEAElement:
        if isinstance(other, UEAElement):
            return self.engine.multiply(self, other)
        s = Q(other)
        return UEAElement(self.engine, {m: s * c for m, c in self.terms.items()})

    def __rmul__(self, scalar) -> UEAElement:
        s = Q(scalar)
        return UEAElement(self.engine, {m: s * c for m, c in self.terms.items()})

    def __add__(self, other: UEAElement) -> UEAElement:
        if other.engine is not self.engine:
            raise ValueError("order-tag mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add(out, m, c)
        return UEAElement(self.engine, out)

    def __neg__(self) -> UEAElement:
        return UEAElement(self.engine, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: UEAElement) -> UEAElement:
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.engine is other.engine and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def top_degree(self) -> Terms:
        """Terms of maximal word length (the symbol)."""
        if not self.terms:
            return {}
        top = max(len(m) for m in self.terms)
        return {m: c for m, c in self.terms.items() if len(m) == top}

    def render(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (len(t[0]), [self.engine.key(b) for b in t[0]]))
        out = []
        for m, c in items:
            s = self.engine.render_monomial(m)
            if s == "1":
                out.append(f"{'+' if c > 0 else '-'}{abs(c)}")
            elif c == 1:
                out.append(f"+{s}")
            elif c == -1:
                out.append(f"-{s}")
            else:
                out.append(f"{'+' if c > 0 else '-'}{abs(c)}*{s}")
        text = "".join(out)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"UEAElement({self.render()!r})"


@lru_cache(maxsize=None)
def engine_for(order: OrderTag) -> PBWEngine:
    return PBWEngine(order.spec.algebra, order.key, name=order.spec.render())


def normal_order(word: Sequence[Basis], order: OrderTag) -> UEAElement:
    return engine_for(order).normal_order(word)


def multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    if a.engine is not b.engine:
        raise ValueError("order-tag mismatch: elements belong to different PBW orders")
    return a.engine.multiply(a, b)
