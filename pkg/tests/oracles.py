"""Independent reference implementations used to cross-check the engine.

None of these import the engine's bracket, PBW or module code.
"""

from __future__ import annotations

from fractions import Fraction as Q
from math import factorial
from typing import Dict, List, Tuple

ZERO = Q(0)


# -- loop algebra via explicit matrices -------------------------------------------


def root_matrix_indices(root: Tuple[int, ...]) -> Tuple[int, int]:
    """Type A root a_i + ... + a_{j-1} <-> E_{ij}; negatives <-> E_{ji}."""
    nz = [k for k, c in enumerate(root) if c]
    i, j = nz[0], nz[-1] + 1
    return (i, j) if root[nz[0]] > 0 else (j, i)


def basis_matrix(kind: str, root, index: int, n: int) -> List[List[Q]]:
    m = [[ZERO] * n for _ in range(n)]
    if kind == "e":
        i, j = root_matrix_indices(root)
        m[i][j] = Q(1)
    else:
        m[index][index] = Q(1)
        m[index + 1][index + 1] = Q(-1)
    return m


def matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]


class LoopElement:
    """sum_n A_n t^n + gamma c + delta d, A_n traceless matrices."""

    def __init__(self, size: int, loops=None, c=ZERO, d=ZERO):
        self.size = size
        self.loops: Dict[int, List[List[Q]]] = loops or {}
        self.c = Q(c)
        self.d = Q(d)

    def normalized(self):
        loops = {n: m for n, m in self.loops.items() if any(x for row in m for x in row)}
        return (tuple(sorted((n, tuple(map(tuple, m))) for n, m in loops.items())), self.c, self.d)

    def __eq__(self, other):
        return self.normalized() == other.normalized()


def loop_bracket(x: LoopElement, y: LoopElement) -> LoopElement:
    n = x.size
    out: Dict[int, List[List[Q]]] = {}
    c = ZERO

    def acc(deg, mat, s):
        cur = out.setdefault(deg, [[ZERO] * n for _ in range(n)])
        for i in range(n):
            for j in range(n):
                cur[i][j] += s * mat[i][j]

    for m, a in x.loops.items():
        for k, b in y.loops.items():
            ab, ba = matmul(a, b), matmul(b, a)
            acc(m + k, [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)], Q(1))
            if m + k == 0:
                c += m * sum((ab[i][i] for i in range(n)), ZERO)
    for k, b in y.loops.items():
        if x.d:
            acc(k, b, x.d * k)
    for m, a in x.loops.items():
        if y.d:
            acc(m, a, -y.d * m)
    return LoopElement(n, out, c, ZERO)


def to_loop(basis_element, rank: int) -> LoopElement:
    """Engine basis element (kind, root, index, deg) in the canonical basis -> matrices."""
    kind, root, index, deg = basis_element
    n = rank + 1
    if kind == "c":
        return LoopElement(n, {}, 1)
    if kind == "d":
        return LoopElement(n, {}, 0, 1)
    return LoopElement(n, {deg: basis_matrix(kind, root, index, n)})


def lie_terms_to_loop(terms: Dict, rank: int) -> LoopElement:
    n = rank + 1
    out = LoopElement(n)
    for b, coef in terms.items():
        e = to_loop(tuple(b), rank)
        out.c += coef * e.c
        out.d += coef * e.d
        for deg, m in e.loops.items():
            cur = out.loops.setdefault(deg, [[ZERO] * n for _ in range(n)])
            for i in range(n):
                for j in range(n):
                    cur[i][j] += coef * m[i][j]
    return out


# -- sl2 on binary forms of degree mu ---------------------------------------------

Poly = Dict[Tuple[int, int], Q]  # (deg_x, deg_y) -> coefficient


def sl2_poly(which: str, p: Poly) -> Poly:
    """e = x d/dy, f = y d/dx, h = x d/dx - y d/dy."""
    out: Poly = {}
    for (a, b), c in p.items():
        if which == "e" and b:
            key, val = (a + 1, b - 1), c * b
        elif which == "f" and a:
            key, val = (a - 1, b + 1), c * a
        elif which == "h":
            key, val = (a, b), c * (a - b)
        else:
            continue
        out[key] = out.get(key, ZERO) + val
    return {k: v for k, v in out.items() if v}


def sym_basis(mu: int) -> List[Poly]:
    """v_j = f^j x^mu = mu!/(mu-j)! x^(mu-j) y^j."""
    return [{(mu - j, j): Q(factorial(mu), factorial(mu - j))} for j in range(mu + 1)]


def poly_coords(p: Poly, mu: int) -> Dict[int, Q]:
    basis = sym_basis(mu)
    out = {}
    for (a, b), c in p.items():
        j = b
        out[j] = c / basis[j][(mu - j, j)]
    return out


# -- Heisenberg Whittaker module as a Fock-type space --------------------------------


def fock_act(kind_deg: Tuple[str, int], poly: Dict[Tuple[int, ...], Q], eta, a, norm, nvars) -> Dict:
    """A1 Heisenberg: h@-n multiplies by x_n; h@n acts by eta_n + n*norm*a d/dx_n;
    c acts by a.  Monomials are exponent tuples (x_1..x_nvars)."""
    kind, n = kind_deg
    out: Dict[Tuple[int, ...], Q] = {}

    def add(k, v):
        out[k] = out.get(k, ZERO) + v

    for mono, c in poly.items():
        if kind == "c":
            add(mono, a * c)
        elif n < 0:
            m = list(mono)
            m[-n - 1] += 1
            add(tuple(m), c)
        else:
            add(mono, eta(n) * c)
            e = mono[n - 1] if n <= nvars else 0
            if e:
                m = list(mono)
                m[n - 1] -= 1
                add(tuple(m), c * e * n * norm * a)
    return {k: v for k, v in out.items() if v}
