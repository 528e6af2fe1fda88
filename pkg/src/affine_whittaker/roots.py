"""Finite root systems of type A, affine weights and the tau statistic."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property
from typing import Iterable, Sequence, Tuple

Vector = Tuple[int, ...]

SUPPORTED_LABELS = ("A1", "A2", "A3")


@dataclass(frozen=True)
class FiniteRootSystem:
    label: str
    rank: int
    simple_roots: Tuple[Vector, ...]
    positive_roots: Tuple[Vector, ...]
    roots: Tuple[Vector, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    form: Tuple[Tuple[Q, ...], ...]

    @property
    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=sum)

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._root_set

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.roots)

    def is_positive(self, root: Sequence[int]) -> bool:
        return any(c > 0 for c in root)

    def matrix_indices(self, root: Sequence[int]) -> Tuple[int, int]:
        """Row/column of the elementary matrix spanning the root space.

        In type A_n the root a_i + ... + a_{j-1} is e_i - e_j, realized by
        E_{ij}; its negative by E_{ji}.
        """
        nz = [k for k, c in enumerate(root) if c != 0]
        if not nz or not self.is_root(root):
            raise ValueError(f"{tuple(root)} is not a root of {self.label}")
        i, j = nz[0], nz[-1] + 1
        return (i, j) if root[nz[0]] > 0 else (j, i)

    def root_from_indices(self, i: int, j: int) -> Vector:
        if i == j:
            raise ValueError("diagonal entry is not a root vector")
        lo, hi = min(i, j), max(i, j)
        sign = 1 if i < j else -1
        return tuple(sign if lo <= k < hi else 0 for k in range(self.rank))


def build_root_system(label: str) -> FiniteRootSystem:
    """Hard-coded type A Cartan data; form normalized so (theta, theta) = 2."""
    if label not in SUPPORTED_LABELS:
        raise ValueError(
            f"unsupported root system {label!r}; supported labels: {', '.join(SUPPORTED_LABELS)}"
        )
    n = int(label[1:])
    simple = tuple(tuple(1 if k == i else 0 for k in range(n)) for i in range(n))
    positive = []
    for i in range(n):
        for j in range(i + 1, n + 1):
            positive.append(tuple(1 if i <= k < j else 0 for k in range(n)))
    positive.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    roots = tuple(positive) + tuple(tuple(-c for c in r) for r in positive)
    cartan = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n)
    )
    form = tuple(tuple(Q(c) for c in row) for row in cartan)
    return FiniteRootSystem(label, n, simple, tuple(positive), roots, cartan, form)


def invariant_form(rs: FiniteRootSystem, u: Sequence, v: Sequence) -> Q:
    if len(u) != rs.rank or len(v) != rs.rank:
        raise ValueError(f"dimension mismatch: expected vectors of length {rs.rank}")
    return sum(
        (Q(u[i]) * rs.form[i][j] * Q(v[j]) for i in range(rs.rank) for j in range(rs.rank)),
        Q(0),
    )


@dataclass(frozen=True, order=True)
class AffineWeight:
    finite: Vector
    delta: int = 0

    def __add__(self, other: AffineWeight) -> AffineWeight:
        if len(self.finite) != len(other.finite):
            raise ValueError("dimension mismatch")
        return AffineWeight(tuple(a + b for a, b in zip(self.finite, other.finite)), self.delta + other.delta)

    def __neg__(self) -> AffineWeight:
        return AffineWeight(tuple(-a for a in self.finite), -self.delta)

    def __sub__(self, other: AffineWeight) -> AffineWeight:
        return self + (-other)

    @classmethod
    def zero(cls, rank: int) -> AffineWeight:
        return cls((0,) * rank, 0)

    def is_zero(self) -> bool:
        return self.delta == 0 and not any(self.finite)

    def is_real_root(self, rs: FiniteRootSystem) -> bool:
        return rs.is_root(self.finite)

    def is_imaginary_root(self) -> bool:
        return not any(self.finite) and self.delta != 0

    def render(self) -> str:
        parts = [render_root(self.finite)] if any(self.finite) else []
        if self.delta or not parts:
            parts.append(f"{self.delta}delta")
        return "+".join(parts).replace("+-", "-")


def tau_count(w: AffineWeight, subset: Iterable[int]) -> int:
    """Number of simple roots outside ``subset`` occurring in w (delta ignored)."""
    s = set(subset)
    return sum(abs(c) for k, c in enumerate(w.finite) if k not in s)


def render_root(root: Sequence[int]) -> str:
    out = []
    for k, c in enumerate(root):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        out.append(f"{sign}{mag}a{k + 1}")
    s = "".join(out)
    return s[1:] if s.startswith("+") else s


def parse_root(text: str, rank: int) -> Vector:
    coeffs = [0] * rank
    text = text.replace(" ", "")
    if not re.fullmatch(r"([+-]?\d*a\d+)+", text):
        raise ValueError(f"cannot parse root {text!r}")
    for sign, mag, idx in re.findall(r"([+-]?)(\d*)a(\d+)", text):
        k = int(idx) - 1
        if not 0 <= k < rank:
            raise ValueError(f"simple root a{idx} out of range for rank {rank}")
        coeffs[k] += (-1 if sign == "-" else 1) * (int(mag) if mag else 1)
    return tuple(coeffs)
