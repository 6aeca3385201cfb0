"""Exact solver for the graded multiplicity polynomials P_i(t).

The defining linear system, indexed by irreducible characters, is

    sum_j (delta_ij (1 + t^2) - m_ij t) P_j(t) = (1 - t^d1)(1 - t^d2) delta_{i,triv}

with m the McKay matrix and (d1, d2) the fundamental degrees of the
reflection extension.  It is solved exactly by fraction-free (Bareiss)
elimination over Z[t]; a Cramer determinant route is kept as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import Cyclo, InexactDivision, UniPoly


class SolveError(ArithmeticError):
    pass


class AmbiguousSplit(ArithmeticError):
    pass


# -- integer polynomial helpers (ascending int lists) -----------------------

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _divexact(a, b):
    if not a:
        return []
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        raise SolveError("degree/system inconsistency")
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        if a[i] % lb:
            raise SolveError("degree/system inconsistency")
        c = a[i] // lb
        q[i - db] = c
        for j, bj in enumerate(b):
            a[i - db + j] -= c * bj
    if any(a[:db]):
        raise SolveError("degree/system inconsistency")
    return _trim(q)


def _bareiss_solve(A, rhs):
    """Solve A x = rhs exactly over Z[t] (A square with polynomial entries).

    Fraction-free one-step Bareiss elimination; every division is exact.
    Returns the solution as integer polynomials (raises if non-polynomial).
    """
    n = len(A)
    M = [[list(A[i][j]) for j in range(n)] + [list(rhs[i])] for i in range(n)]
    prev = [1]
    for k in range(n):
        if not M[k][k]:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                raise SolveError("degree/system inconsistency")
            M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                num = _sub(_mul(pk, M[i][j]), _mul(M[i][k], M[k][j]))
                M[i][j] = _divexact(num, prev) if prev != [1] else num
            M[i][k] = []
        prev = pk
    # back substitution: M[n-1][n-1] * x_{n-1} = M[n-1][n]
    xs = [None] * n
    for i in range(n - 1, -1, -1):
        acc = list(M[i][n])
        for j in range(i + 1, n):
            acc = _sub(acc, _mul(M[i][j], xs[j]))
        xs[i] = _divexact(acc, M[i][i])
    return xs


def _det_bareiss(A):
    n = len(A)
    M = [[list(A[i][j]) for j in range(n)] for i in range(n)]
    prev = [1]
    sign = 1
    for k in range(n - 1):
        if not M[k][k]:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return []
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _sub(_mul(pk, M[i][j]), _mul(M[i][k], M[k][j]))
                M[i][j] = _divexact(num, prev) if prev != [1] else num
            M[i][k] = []
        prev = pk
    d = M[n - 1][n - 1]
    return [sign * c for c in d]


# ---------------------------------------------------------------------------


@dataclass
class PoincareSolution:
    """P_i(t) indexed like the McKay matrix, with centers and degree data."""

    polys: list                    # UniPoly per character index
    centers: list                  # Fraction per index
    degrees: tuple                 # (d1, d2)
    trivial_index: int

    def split(self, i):
        """(P_i^+, P_i^-): terms above/below the center; the center
        coefficient must vanish (raises AmbiguousSplit otherwise)."""
        p = self.polys[i]
        h = self.centers[i]
        cs = p.coeffs
        if h == int(h) and int(h) < len(cs) and cs[int(h)] != 0:
            raise AmbiguousSplit("ambiguous split")
        plus = [Fraction(0)] * len(cs)
        minus = [Fraction(0)] * len(cs)
        for e, c in enumerate(cs):
            if c:
                (plus if e > h else minus)[e] = c
        return UniPoly(plus), UniPoly(minus)


def system_matrix(mckay):
    n = len(mckay)
    A = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append([1, -mckay[i][j], 1])
            else:
                row.append(_trim([0, -mckay[i][j]]))
        A.append(row)
    return A


def rhs_vector(n, d1, d2, trivial):
    r1 = [0] * (d1 + 1)
    r1[0], r1[d1] = 1, -1
    r2 = [0] * (d2 + 1)
    r2[0], r2[d2] = 1, -1
    prod = _mul(r1, r2)
    return [list(prod) if i == trivial else [] for i in range(n)]


def solve(mckay, d1, d2, trivial) -> PoincareSolution:
    """Exact solution with built-in residual and coefficient checks."""
    n = len(mckay)
    A = system_matrix(mckay)
    xs = _bareiss_solve(A, rhs_vector(n, d1, d2, trivial))
    polys = []
    for x in xs:
        if any(c < 0 for c in x):
            raise SolveError("degree/system inconsistency")
        polys.append(UniPoly(x))
    # exact residual: substitute back
    rhs = rhs_vector(n, d1, d2, trivial)
    for i in range(n):
        acc = []
        for j in range(n):
            acc = _sub(acc, [-c for c in _mul(A[i][j], xs[j])])
        if _sub(acc, rhs[i]):
            raise SolveError("degree/system inconsistency")
    centers = [p.center() if not p.is_zero() else Fraction(0) for p in polys]
    return PoincareSolution(polys=polys, centers=centers, degrees=(d1, d2),
                            trivial_index=trivial)


def cramer_poly(mckay, d1, d2, trivial, index) -> UniPoly:
    """P_index via Cramer's rule (determinant cross-check route)."""
    n = len(mckay)
    A = system_matrix(mckay)
    det = _det_bareiss(A)
    rhs = rhs_vector(n, d1, d2, trivial)
    Ai = [[rhs[i] if j == index else A[i][j] for j in range(n)]
          for i in range(n)]
    num = _det_bareiss(Ai)
    return UniPoly(num).divide_exact(UniPoly(det))


def node_point(graph, node, conductor) -> Cyclo:
    """Specialization point of a node: Xn -> zeta_{2 p_X}^n, * -> -1, 0 -> 1."""
    if node == "0":
        return Cyclo.one(conductor)
    if node == "*":
        return Cyclo.rational(-1, conductor)
    branch, n = node[0], int(node[1:])
    p = {"A": graph.triple[0], "B": graph.triple[1], "C": graph.triple[2]}[branch]
    if conductor % (2 * p):
        raise SolveError("conductor insufficient")
    return Cyclo.root_of_unity(n * (conductor // (2 * p)), conductor)


def evaluate_at_node(solution, char_index, graph, node, conductor) -> Cyclo:
    return solution.polys[char_index].eval_cyclo(node_point(graph, node, conductor))
