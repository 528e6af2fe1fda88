"""Untwisted affine algebras of type A: basis, exact bracket, parabolic data.

The loop algebra part follows

    [a t^m, b t^n] = [a, b] t^(m+n) + m delta_{m+n,0} (a|b) c,
    [d, x t^n] = n x t^n,  c central,

with the finite bracket read off elementary matrices in the defining
representation and (a|b) = tr(ab), so (theta|theta) = 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import sympy

from .roots import (
    AffineWeight,
    FiniteRootSystem,
    Vector,
    build_root_system,
    parse_root,
    render_root,
)

ZERO = Q(0)
ONE = Q(1)


class Basis(NamedTuple):
    """Canonical basis element; ``index`` selects a Cartan basis vector."""

    kind: str  # "e" root vector, "h" Cartan loop, "c" central, "d" derivation
    root: Vector = ()
    index: int = 0
    deg: int = 0


CENTRAL = Basis("c")
DERIVATION = Basis("d")


def root_vector(root: Sequence[int], n: int) -> Basis:
    return Basis("e", tuple(root), 0, n)


def cartan_loop(i: int, n: int) -> Basis:
    return Basis("h", (), i, n)


def grade(b: Basis, rank: int) -> AffineWeight:
    if b.kind == "e":
        return AffineWeight(b.root, b.deg)
    return AffineWeight((0,) * rank, b.deg if b.kind == "h" else 0)


_KIND_ORDER = {"e": 0, "h": 1, "c": 2, "d": 3}


def basis_sort_key(b: Basis):
    return (b.kind in "cd", b.deg, _KIND_ORDER[b.kind], b.root, b.index)


def _mat_zero(n: int) -> List[List[Q]]:
    return [[ZERO] * n for _ in range(n)]


def _commutator(a, b):
    n = len(a)
    out = _mat_zero(n)
    for i in range(n):
        for k in range(n):
            if a[i][k]:
                for j in range(n):
                    if b[k][j]:
                        out[i][j] += a[i][k] * b[k][j]
            if b[i][k]:
                for j in range(n):
                    if a[k][j]:
                        out[i][j] -= b[i][k] * a[k][j]
    return out


def _trace_product(a, b) -> Q:
    n = len(a)
    return sum((a[i][k] * b[k][i] for i in range(n) for k in range(n)), ZERO)


def rational_inverse(rows: Sequence[Sequence[Q]]) -> Tuple[Tuple[Q, ...], ...]:
    m = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in rows])
    if m.det() == 0:
        raise ValueError("Cartan basis is singular")
    inv = m.inv()
    return tuple(tuple(Q(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in inv.row(i)) for i in range(m.rows))


def rational_nullspace(rows: Sequence[Sequence[Q]], ncols: int) -> List[Tuple[int, ...]]:
    """Primitive integer basis of the right nullspace, in RREF order."""
    if not rows:
        return [tuple(1 if k == i else 0 for k in range(ncols)) for i in range(ncols)]
    m = sympy.Matrix([[sympy.Rational(Q(c).numerator, Q(c).denominator) for c in row] for row in rows])
    out = []
    for v in m.nullspace():
        denom = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
        ints = [int(x * denom) for x in v]
        g = 0
        for x in ints:
            g = sympy.igcd(g, x)
        ints = [x // g for x in ints]
        if next(x for x in ints if x) < 0:
            ints = [-x for x in ints]
        out.append(tuple(ints))
    return out


class AffineAlgebra:
    """The affine algebra over a type A root system.

    ``cartan_basis`` lists the Cartan basis as rows of coordinates in the
    simple coroots; the default is the simple coroots themselves.
    """

    def __init__(self, rs: FiniteRootSystem, cartan_basis: Optional[Sequence[Sequence]] = None):
        n = rs.rank
        self.rs = rs
        if cartan_basis is None:
            cartan_basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        self.cartan_basis: Tuple[Tuple[Q, ...], ...] = tuple(tuple(Q(c) for c in row) for row in cartan_basis)
        if len(self.cartan_basis) != n or any(len(r) != n for r in self.cartan_basis):
            raise ValueError(f"Cartan basis must be {n} vectors of length {n}")
        self.cartan_inverse = rational_inverse(self.cartan_basis)
        self.finite_labels: Tuple[tuple, ...] = tuple(("e", r) for r in rs.roots) + tuple(
            ("h", i) for i in range(n)
        )
        self.matrices = {lab: self._matrix(lab) for lab in self.finite_labels}
        self.table: Dict[tuple, Dict[tuple, Q]] = {}
        self.form_table: Dict[tuple, Q] = {}
        for a in self.finite_labels:
            for b in self.finite_labels:
                self.table[(a, b)] = self.decompose(_commutator(self.matrices[a], self.matrices[b]))
                f = _trace_product(self.matrices[a], self.matrices[b])
                if f:
                    self.form_table[(a, b)] = f
        self._bracket_cache: Dict[Tuple[Basis, Basis], Dict[Basis, Q]] = {}

    @property
    def label(self) -> str:
        return self.rs.label

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def identity(self) -> tuple:
        return (self.rs.label, self.cartan_basis)

    def is_canonical(self) -> bool:
        n = self.rank
        return all(self.cartan_basis[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    # -- finite part -----------------------------------------------------
    def _matrix(self, lab) -> List[List[Q]]:
        n = self.rank + 1
        m = _mat_zero(n)
        if lab[0] == "e":
            i, j = self.rs.matrix_indices(lab[1])
            m[i][j] = ONE
        else:
            for i, c in enumerate(self.cartan_basis[lab[1]]):
                m[i][i] += c
                m[i + 1][i + 1] -= c
        return m

    def decompose(self, mat) -> Dict[tuple, Q]:
        """Coordinates of a traceless matrix in the finite basis."""
        n = self.rank
        out: Dict[tuple, Q] = {}
        for i in range(n + 1):
            for j in range(n + 1):
                if i != j and mat[i][j]:
                    out[("e", self.rs.root_from_indices(i, j))] = Q(mat[i][j])
        if sum((mat[i][i] for i in range(n + 1)), ZERO) != 0:
            raise ValueError("matrix is not traceless")
        coroot = []
        acc = ZERO
        for k in range(n):
            acc += mat[k][k]
            coroot.append(acc)
        for j in range(n):
            y = sum((coroot[k] * self.cartan_inverse[k][j] for k in range(n)), ZERO)
            if y:
                out[("h", j)] = y
        return out

    def finite_form(self, a: tuple, b: tuple) -> Q:
        return self.form_table.get((a, b), ZERO)

    @staticmethod
    def finite_label(b: Basis) -> tuple:
        return ("e", b.root) if b.kind == "e" else ("h", b.index)

    # -- affine bracket --------------------------------------------------
    def bracket_basis(self, a: Basis, b: Basis) -> Dict[Basis, Q]:
        key = (a, b)
        hit = self._bracket_cache.get(key)
        if hit is not None:
            return hit
        out: Dict[Basis, Q] = {}
        if a.kind == "c" or b.kind == "c":
            pass
        elif a.kind == "d":
            if b.kind != "d" and b.deg:
                out[b] = Q(b.deg)
        elif b.kind == "d":
            if a.deg:
                out[a] = Q(-a.deg)
        else:
            n = a.deg + b.deg
            for lab, coef in self.table[(self.finite_label(a), self.finite_label(b))].items():
                nb = Basis("e", lab[1], 0, n) if lab[0] == "e" else Basis("h", (), lab[1], n)
                out[nb] = coef
            if n == 0 and a.deg:
                f = self.finite_form(self.finite_label(a), self.finite_label(b))
                if f:
                    out[CENTRAL] = a.deg * f
        self._bracket_cache[key] = out
        return out

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        self._check(x)
        self._check(y)
        out: Dict[Basis, Q] = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                for k, v in self.bracket_basis(a, b).items():
                    out[k] = out.get(k, ZERO) + ca * cb * v
        return LieElement(self, out)

    def form(self, x: LieElement, y: LieElement) -> Q:
        """Invariant form on the loop part: (a t^m | b t^n) = delta_{m+n,0} (a|b)."""
        total = ZERO
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                if a.kind in "eh" and b.kind in "eh" and a.deg + b.deg == 0:
                    total += ca * cb * self.finite_form(self.finite_label(a), self.finite_label(b))
        return total

    def _check(self, x: LieElement) -> None:
        if x.algebra is not self and x.algebra.identity != self.identity:
            raise ValueError(
                f"element over {x.algebra.label} cannot be combined with algebra {self.label}"
            )

    # -- constructors ----------------------------------------------------
    def element(self, b: Basis, coef=1) -> LieElement:
        return LieElement(self, {b: Q(coef)})

    def e(self, root: Sequence[int], n: int = 0) -> LieElement:
        if not self.rs.is_root(root):
            raise ValueError(f"{tuple(root)} is not a root of {self.label}")
        return self.element(root_vector(root, n))

    def f(self, root: Sequence[int], n: int = 0) -> LieElement:
        return self.e(tuple(-c for c in root), n)

    def h(self, i: int, n: int = 0) -> LieElement:
        """Cartan basis element ``i`` (1-based, as rendered) at loop degree n."""
        if not 1 <= i <= self.rank:
            raise ValueError(f"Cartan index {i} out of range")
        return self.element(cartan_loop(i - 1, n))

    def cartan_vector(self, coroot_coords: Sequence, n: int = 0) -> LieElement:
        """The Cartan element with given simple-coroot coordinates at degree n."""
        k = self.rank
        out = {}
        for j in range(k):
            y = sum((Q(coroot_coords[i]) * self.cartan_inverse[i][j] for i in range(k)), ZERO)
            if y:
                out[cartan_loop(j, n)] = y
        return LieElement(self, out)

    @property
    def c(self) -> LieElement:
        return self.element(CENTRAL)

    @property
    def d(self) -> LieElement:
        return self.element(DERIVATION)

    def basis_window(self, lo: int, hi: int) -> List[Basis]:
        """All basis elements with loop degree in [lo, hi], plus c and d."""
        out = []
        for n in range(lo, hi + 1):
            out.extend(root_vector(r, n) for r in self.rs.roots)
            out.extend(cartan_loop(i, n) for i in range(self.rank))
        return out + [CENTRAL, DERIVATION]

    # -- text form -------------------------------------------------------
    def render_basis(self, b: Basis) -> str:
        if b.kind == "c":
            return "c"
        if b.kind == "d":
            return "d"
        if b.kind == "e":
            if self.rs.is_positive(b.root):
                return f"e[{render_root(b.root)}]@{b.deg}"
            return f"f[{render_root(tuple(-c for c in b.root))}]@{b.deg}"
        vec = self.cartan_basis[b.index]
        nz = [k for k, c in enumerate(vec) if c]
        if len(nz) == 1 and vec[nz[0]] == 1:
            return f"h{nz[0] + 1}@{b.deg}"
        return f"({render_cartan(vec)})@{b.deg}"

    def parse(self, text: str) -> LieElement:
        """Parse a sum like ``2*e[a1]@1 - 1/2*h1@0 + c``."""
        text = text.replace(" ", "")
        out: Dict[Basis, Q] = {}
        for sign, coef, token in _split_terms(text):
            q = Q(coef) if coef else ONE
            if sign == "-":
                q = -q
            for b, v in self._parse_token(token).items():
                out[b] = out.get(b, ZERO) + q * v
        return LieElement(self, out)

    def parse_basis(self, text: str) -> Basis:
        terms = self._parse_token(text.replace(" ", ""))
        if len(terms) != 1 or next(iter(terms.values())) != 1:
            raise ValueError(f"{text!r} is not a basis element of this algebra")
        return next(iter(terms))

    def _parse_token(self, tok: str) -> Dict[Basis, Q]:
        if tok == "c":
            return {CENTRAL: ONE}
        if tok == "d":
            return {DERIVATION: ONE}
        m = re.fullmatch(r"([ef])\[([^\]]+)\]@(-?\d+)", tok)
        if m:
            root = parse_root(m.group(2), self.rank)
            if m.group(1) == "f":
                root = tuple(-c for c in root)
            if not self.rs.is_root(root):
                raise ValueError(f"{tok!r}: not a root of {self.label}")
            return {root_vector(root, int(m.group(3))): ONE}
        m = re.fullmatch(r"h(\d+)@(-?\d+)", tok)
        if m:
            i = int(m.group(1))
            if not 1 <= i <= self.rank:
                raise ValueError(f"{tok!r}: Cartan index out of range")
            vec = [1 if k == i - 1 else 0 for k in range(self.rank)]
            return self.cartan_vector(vec, int(m.group(2))).terms
        m = re.fullmatch(r"\(([^)]+)\)@(-?\d+)", tok)
        if m:
            vec = parse_cartan(m.group(1), self.rank)
            return self.cartan_vector(vec, int(m.group(2))).terms
        raise ValueError(f"cannot parse Lie basis element {tok!r}")


def _split_terms(text: str) -> Iterator[Tuple[str, str, str]]:
    depth = 0
    start = 0
    pieces = []
    for i, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and text[i - 1] not in "@*":
            pieces.append(text[start:i])
            start = i
    pieces.append(text[start:])
    for p in pieces:
        if not p:
            raise ValueError(f"cannot parse {text!r}")
        sign = ""
        if p[0] in "+-":
            sign, p = p[0], p[1:]
        coef = ""
        if "*" in p:
            coef, p = p.split("*", 1)
        yield sign, coef, p


def render_cartan(vec: Sequence[Q]) -> str:
    out = []
    for k, c in enumerate(vec):
        c = Q(c)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        out.append(f"{sign}{mag}h{k + 1}")
    s = "".join(out)
    return s[1:] if s.startswith("+") else s


def parse_cartan(text: str, rank: int) -> Tuple[Q, ...]:
    if not re.fullmatch(r"([+-]?(\d+(/\d+)?)?h\d+)+", text):
        raise ValueError(f"cannot parse Cartan combination {text!r}")
    vec = [ZERO] * rank
    for sign, mag, _, idx in re.findall(r"([+-]?)((\d+(?:/\d+)?)?)h(\d+)", text):
        k = int(idx) - 1
        if not 0 <= k < rank:
            raise ValueError(f"h{idx} out of range for rank {rank}")
        q = Q(mag) if mag else ONE
        vec[k] += -q if sign == "-" else q
    return tuple(vec)


class LieElement:
    """Finite exact-rational combination of basis elements of one algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AffineAlgebra, terms: Dict[Basis, Q]):
        self.algebra = algebra
        self.terms = {b: Q(c) for b, c in terms.items() if c}

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: basis_sort_key(t[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: LieElement) -> LieElement:
        self.algebra._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, ZERO) + c
        return LieElement(self.algebra, out)

    def __neg__(self) -> LieElement:
        return LieElement(self.algebra, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other: LieElement) -> LieElement:
        return self + (-other)

    def __mul__(self, scalar) -> LieElement:
        s = Q(scalar)
        return LieElement(self.algebra, {b: s * c for b, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra.identity == other.algebra.identity and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra.identity, frozenset(self.terms.items())))

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for b, c in self:
            s = self.algebra.render_basis(b)
            if c == 1:
                out.append(f"+{s}")
            elif c == -1:
                out.append(f"-{s}")
            else:
                out.append(f"{'+' if c > 0 else '-'}{abs(c)}*{s}")
        text = "".join(out)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"LieElement({self.render()!r})"


@lru_cache(maxsize=None)
def affine_algebra(label: str) -> AffineAlgebra:
    return AffineAlgebra(build_root_system(label))


def bracket(x: LieElement, y: LieElement) -> LieElement:
    if x.algebra.identity != y.algebra.identity:
        raise ValueError(f"mixed algebras: {x.algebra.label} vs {y.algebra.label}")
    return x.algebra.bracket(x, y)


def heisenberg_basis(rs: FiniteRootSystem, lo: int, hi: int) -> List[Basis]:
    """Cartan loops h_i t^n, n != 0 in [lo, hi], followed by c."""
    if lo > hi:
        raise ValueError("empty degree window")
    return [cartan_loop(i, n) for n in range(lo, hi + 1) if n for i in range(rs.rank)] + [CENTRAL]


LEVI, RADICAL_PLUS, RADICAL_MINUS = "levi", "radical_plus", "radical_minus"


@dataclass(frozen=True)
class ParabolicSpec:
    """Parabolic subalgebra whose Levi factor contains G + H, given by a
    subset S of simple roots (0-based indices).

    The adapted Cartan basis lists the S-coroots first, then an integral basis
    of their orthogonal complement; it splits every Cartan loop into its
    G(l)-part and G(l)-perp part.
    """

    rs: FiniteRootSystem
    subset: Tuple[int, ...]
    algebra: AffineAlgebra = field(compare=False, repr=False)
    adapted: AffineAlgebra = field(compare=False, repr=False)
    hperp_basis: Tuple[Tuple[int, ...], ...] = field(compare=False)

    @property
    def label(self) -> str:
        return self.rs.label

    @property
    def n_levi_cartan(self) -> int:
        return len(self.subset)

    def in_levi_span(self, root: Sequence[int]) -> bool:
        return all(c == 0 for k, c in enumerate(root) if k not in self.subset)

    def classify(self, b: Basis) -> str:
        if b.kind != "e" or self.in_levi_span(b.root):
            return LEVI
        outside = sum(c for k, c in enumerate(b.root) if k not in self.subset)
        return RADICAL_PLUS if outside > 0 else RADICAL_MINUS

    def part(self, k: Basis) -> str:
        """Finer Levi decomposition of an adapted basis element.

        Returns one of "l0" (affine part generated by real roots, incl. h_l
        and the G(l) loops), "gperp", "hperp", "c", "d", or a radical label.
        """
        if k.kind == "c":
            return "c"
        if k.kind == "d":
            return "d"
        if k.kind == "e":
            cls = self.classify(k)
            return "l0" if cls == LEVI else cls
        if k.index < self.n_levi_cartan:
            return "l0"
        return "hperp" if k.deg == 0 else "gperp"

    def to_adapted(self, x: LieElement) -> LieElement:
        return _convert(x, self.adapted)

    def to_canonical(self, x: LieElement) -> LieElement:
        return _convert(x, self.algebra)

    def adapted_terms(self, b: Basis) -> Dict[Basis, Q]:
        """Canonical basis element rewritten in the adapted basis."""
        return _convert_basis(b, self.algebra, self.adapted)

    def canonical_terms(self, k: Basis) -> Dict[Basis, Q]:
        return _convert_basis(k, self.adapted, self.algebra)

    def g_levi(self, n: int) -> List[LieElement]:
        """Basis of G(l) in degree n (S-coroot loops), canonical coordinates."""
        return [self.to_canonical(self.adapted.element(cartan_loop(j, n))) for j in range(self.n_levi_cartan)]

    def g_perp(self, n: int) -> List[LieElement]:
        """Basis of G(l)-perp in degree n (orthogonal complement of the S-coroots)."""
        k = self.n_levi_cartan
        return [self.to_canonical(self.adapted.element(cartan_loop(j, n))) for j in range(k, self.rs.rank)]

    def affine_simple_vectors(self) -> List[Basis]:
        """Root vectors of the affine simple roots of the real-root part of the Levi."""
        out = []
        for comp in _components(self.subset):
            for s in comp:
                out.append(root_vector(self.rs.simple_roots[s], 0))
            theta = tuple(1 if k in comp else 0 for k in range(self.rs.rank))
            out.append(root_vector(tuple(-c for c in theta), 1))
        return out

    def render(self) -> str:
        return f"{self.label} S={{{','.join('a%d' % (s + 1) for s in self.subset)}}}"


def _components(subset: Sequence[int]) -> List[Tuple[int, ...]]:
    comps: List[List[int]] = []
    for s in sorted(subset):
        if comps and comps[-1][-1] == s - 1:
            comps[-1].append(s)
        else:
            comps.append([s])
    return [tuple(c) for c in comps]


def _convert_basis(b: Basis, src: AffineAlgebra, dst: AffineAlgebra) -> Dict[Basis, Q]:
    if b.kind != "h":
        return {b: ONE}
    coroot = src.cartan_basis[b.index]
    return dst.cartan_vector(coroot, b.deg).terms


def _convert(x: LieElement, dst: AffineAlgebra) -> LieElement:
    out: Dict[Basis, Q] = {}
    for b, c in x.terms.items():
        for k, v in _convert_basis(b, x.algebra, dst).items():
            out[k] = out.get(k, ZERO) + c * v
    return LieElement(dst, out)


@lru_cache(maxsize=None)
def parabolic_from_subset(label: str, subset: Tuple[int, ...] = ()) -> ParabolicSpec:
    rs = build_root_system(label)
    s = tuple(sorted(set(subset)))
    if any(not 0 <= k < rs.rank for k in s):
        raise ValueError(f"subset {subset} is not a set of simple roots of {label}")
    if len(s) != len(tuple(subset)):
        raise ValueError(f"subset {subset} has repeated simple roots")
    rows = [[rs.form[k][j] for j in range(rs.rank)] for k in s]
    perp = rational_nullspace(rows, rs.rank)
    basis = [rs.simple_roots[k] for k in s] + perp
    return ParabolicSpec(rs, s, affine_algebra(label), AffineAlgebra(rs, basis), tuple(perp))
