"""Binary polyhedral groups: construction, conjugacy classes, reflection extensions.

Groups are enumerated as explicit 2x2 unitary matrices over a fixed cyclotomic
field (one working conductor per type), then all structural data is derived
from the integer multiplication table.  Seed matrices are standard quaternion
realizations; correctness is enforced by the closure-order postcondition, not
trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exact import BiForm, ConductorError, Cyclo


class GroupError(RuntimeError):
    pass


# working conductor per type (all generator entries, eigenvalues and character
# values embed; fail fast otherwise)
def default_conductor(triple) -> int:
    if len(triple) == 1:
        return 4 * triple[0]
    pa, pb, pc = triple
    if (pb, pc) == (2, 2):
        return 4 * pa
    return {(3, 3, 2): 24, (4, 3, 2): 24, (5, 3, 2): 60}[(pa, pb, pc)]


def dynkin_label(triple) -> str:
    if len(triple) == 1:
        return f"A{triple[0] - 1}"
    pa, pb, pc = triple
    if (pb, pc) == (2, 2):
        return f"D{pa + 2}"
    return {(3, 3, 2): "E6", (4, 3, 2): "E7", (5, 3, 2): "E8"}[(pa, pb, pc)]


def predicted_order(triple) -> int:
    if len(triple) == 1:
        return triple[0]
    s = sum(Fraction(1, p) for p in triple) - 1
    if s <= 0:
        raise GroupError("infinite group")
    order = 4 / s
    if order.denominator != 1:  # pragma: no cover - admissible triples only
        raise GroupError("non-integral predicted order")
    return int(order)


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over a cyclotomic field, entries (a, b; c, d)."""

    a: Cyclo
    b: Cyclo
    c: Cyclo
    d: Cyclo

    def __mul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def adjoint(self) -> "Mat2":
        return Mat2(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())

    def det(self) -> Cyclo:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Cyclo:
        return self.a + self.d

    def neg(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def apply(self, v):
        """Matrix action on a column vector (pair of Cyclo)."""
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def is_unitary(self) -> bool:
        p = self * self.adjoint()
        return (p.a == 1 and p.d == 1 and p.b.is_zero() and p.c.is_zero())

    def key(self):
        return (self.a.key(), self.b.key(), self.c.key(), self.d.key())


def mat_identity(n: int) -> Mat2:
    return Mat2(Cyclo.one(n), Cyclo.zero(n), Cyclo.zero(n), Cyclo.one(n))


def _quat(n, a, b, c, d):
    """Matrix of the quaternion a + b i + c j + d k (Fraction coordinates)."""
    i = Cyclo.root_of_unity(n // 4, n)  # primitive 4th root
    ra, rb = Cyclo.rational(a, n), Cyclo.rational(b, n)
    rc, rd = Cyclo.rational(c, n), Cyclo.rational(d, n)
    return Mat2(ra + rb * i, rc + rd * i, -rc + rd * i, ra - rb * i)


def _seed_matrices(triple, n):
    if n % 4:
        raise ConductorError("conductor insufficient")
    if len(triple) == 1:
        m = triple[0]
        if n % m:
            raise ConductorError("conductor insufficient")
        z = Cyclo.root_of_unity(n // m, n)
        return [Mat2(z, Cyclo.zero(n), Cyclo.zero(n), z.inverse())]
    pa, pb, pc = triple
    if (pb, pc) == (2, 2):
        if n % (2 * pa):
            raise ConductorError("conductor insufficient")
        z = Cyclo.root_of_unity(n // (2 * pa), n)
        diag = Mat2(z, Cyclo.zero(n), Cyclo.zero(n), z.inverse())
        return [diag, _quat(n, 0, 0, 1, 0)]
    half = Fraction(1, 2)
    tetra = [_quat(n, 0, 1, 0, 0), _quat(n, 0, 0, 1, 0),
             _quat(n, half, half, half, half)]
    if (pa, pb, pc) == (3, 3, 2):
        return tetra
    if (pa, pb, pc) == (4, 3, 2):
        if n % 8:
            raise ConductorError("conductor insufficient")
        z8 = Cyclo.root_of_unity(n // 8, n)
        return tetra + [Mat2(z8, Cyclo.zero(n), Cyclo.zero(n), z8.inverse())]
    if (pa, pb, pc) == (5, 3, 2):
        if n % 20:
            raise ConductorError("conductor insufficient")
        z5 = Cyclo.root_of_unity(n // 5, n)
        tau = Cyclo.one(n) + z5 + z5 ** 4          # golden ratio
        taui = tau - 1                             # tau^{-1}
        return tetra + [_quat_c(n, tau * half, taui * half,
                                Cyclo.rational(half, n), Cyclo.zero(n))]
    raise GroupError(f"unsupported triple {triple}")


def _quat_c(n, a, b, c, d):
    """Quaternion matrix with Cyclo coordinates."""
    i = Cyclo.root_of_unity(n // 4, n)
    return Mat2(a + b * i, c + d * i, -c + d * i, a - b * i)


@dataclass(frozen=True)
class ConjClass:
    id: int
    rep: int
    members: tuple
    order: int             # element order
    inverse_class: int
    node: Optional[str] = None

    @property
    def size(self):
        return len(self.members)


@dataclass(frozen=True)
class MaxAbelian:
    branch: str                 # 'A', 'B' or 'C'
    generator: int              # index of e_X
    members: tuple              # indices of <e_X>
    line_plus: tuple            # eigenvector for eigenvalue zeta_{2p}
    line_minus: tuple
    eigenvalue: Cyclo           # lambda(e_X) on the plus line
    doubled: bool               # N(T)/T of order 2


class KleinGroup:
    """A fully enumerated finite subgroup of SU(2).

    ``elements[i]`` is the matrix of element i, ``table[i][j]`` the index of
    elements[i] * elements[j]; all further structure (inverses, orders,
    conjugacy classes) is integer bookkeeping on the table.
    """

    def __init__(self, triple, conductor, elements, table, words, gens):
        self.triple = tuple(triple)
        self.conductor = conductor
        self.elements = elements
        self.table = table
        self.words = words
        self.gens = gens
        self.order = len(elements)
        self.identity = 0
        self.inverse = [0] * self.order
        for i in range(self.order):
            row = table[i]
            for j in range(self.order):
                if row[j] == 0:
                    self.inverse[i] = j
                    break
        self._orders = [self._element_order(i) for i in range(self.order)]
        self.minus_one = self._find_minus_one()
        self.e_indices = None  # set for D/E triples by triangle_generators

    @property
    def label(self):
        return dynkin_label(self.triple)

    @property
    def is_cyclic(self):
        return len(self.triple) == 1

    def _element_order(self, i):
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def element_order(self, i):
        return self._orders[i]

    def _find_minus_one(self):
        for i in range(self.order):
            if i and self._orders[i] == 2:
                return i
        return None  # odd cyclic groups have no -1

    def mul(self, i, j):
        return self.table[i][j]

    def conj_by(self, g, x):
        return self.table[self.table[g][x]][self.inverse[g]]

    def power(self, i, k):
        if k < 0:
            return self.power(self.inverse[i], -k)
        r = 0
        for _ in range(k):
            r = self.table[r][i]
        return r


def _closure(seeds, n, bound):
    """BFS closure; returns (elements, table, words) with permutation-composed rows."""
    ident = mat_identity(n)
    elems = [ident]
    index = {ident.key(): 0}
    words = [""]
    parents = [None]  # (seed_no, parent_idx) for permutation composition
    frontier = [0]
    letters = "abcdefgh"
    while frontier:
        new = []
        for x in frontier:
            for s_no, s in enumerate(seeds):
                m = s * elems[x]
                k = m.key()
                if k not in index:
                    index[k] = len(elems)
                    elems.append(m)
                    words.append(letters[s_no] + words[x])
                    parents.append((s_no, x))
                    new.append(index[k])
                    if len(elems) > bound:
                        raise GroupError("closure overflow")
        frontier = new
    size = len(elems)
    # generator rows by matrix multiplication, the rest by permutation composition
    rows = [None] * size
    rows[0] = list(range(size))
    gen_rows = []
    for s in seeds:
        r = [0] * size
        for j in range(size):
            r[j] = index[(s * elems[j]).key()]
        gen_rows.append(r)
    order_built = [0]
    for i in range(1, size):
        s_no, p = parents[i]
        base = rows[p]
        g = gen_rows[s_no]
        rows[i] = [g[base[j]] for j in range(size)]
        order_built.append(i)
    return elems, rows, words, index


def build_group(triple, conductor=None, bound=10000) -> KleinGroup:
    """Enumerate the Klein group <p_A, p_B, p_C> (or cyclic <m>)."""
    triple = tuple(triple)
    if len(triple) == 3:
        pa, pb, pc = triple
        if not (pa >= pb >= pc >= 1):
            raise GroupError("triple must be ordered p_A >= p_B >= p_C")
        if Fraction(1, pa) + Fraction(1, pb) + Fraction(1, pc) <= 1:
            raise GroupError("infinite group")
    n = conductor or default_conductor(triple)
    seeds = _seed_matrices(triple, n)
    for s in seeds:
        if not s.is_unitary() or s.det() != 1:
            raise GroupError("seed matrix not in SU(2)")
    elems, rows, words, _ = _closure(seeds, n, bound)
    want = predicted_order(triple)
    if len(elems) != want:
        raise GroupError(
            f"closure produced {len(elems)} elements, expected {want}")
    K = KleinGroup(triple, n, elems, rows, words, list(range(len(seeds))))
    if not K.is_cyclic:
        K.e_indices = _triangle_generators(K)
    return K


def _triangle_generators(K: KleinGroup):
    """Deterministic search for (e_A, e_B, e_C) with orders 2p_X and product -1."""
    pa, pb, pc = K.triple
    minus = K.minus_one
    for a in range(K.order):
        if K.element_order(a) != 2 * pa:
            continue
        for b in range(K.order):
            if K.element_order(b) != 2 * pb:
                continue
            c = K.table[K.inverse[K.table[a][b]]][minus]
            if K.element_order(c) != 2 * pc:
                continue
            if _generates(K, (a, b)):
                return (a, b, c)
    raise GroupError("generator search failed")


def _generates(K, gens):
    seen = {0}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = K.table[g][x]
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return len(seen) == K.order


def conjugacy_classes(K: KleinGroup):
    """Brute-force orbit partition under conjugation; deterministic order."""
    assigned = [-1] * K.order
    raw = []
    for i in range(K.order):
        if assigned[i] >= 0:
            continue
        members = set()
        for g in range(K.order):
            members.add(K.conj_by(g, i))
        cid = len(raw)
        for m in members:
            assigned[m] = cid
        raw.append(sorted(members))
    # canonical order: identity first, by (element order, size, min member)
    def sort_key(ms):
        rep = ms[0]
        return (K.element_order(rep) != 1, K.element_order(rep), len(ms), rep)
    raw.sort(key=sort_key)
    where = {}
    for cid, ms in enumerate(raw):
        for m in ms:
            where[m] = cid
    classes = []
    for cid, ms in enumerate(raw):
        rep = ms[0]
        inv_cid = where[K.inverse[rep]]
        classes.append(ConjClass(cid, rep, tuple(ms), K.element_order(rep), inv_cid))
    return classes


def class_index_map(classes):
    where = {}
    for c in classes:
        for m in c.members:
            where[m] = c.id
    return where


def inversion_involution(classes):
    """The map [c] -> [c^{-1}] as a dict on class ids."""
    return {c.id: c.inverse_class for c in classes}


def _eigenline(K, idx, lam: Cyclo):
    """An eigenvector of elements[idx] for eigenvalue lam (exact)."""
    m = K.elements[idx]
    n = K.conductor
    lam = lam.promote(n)
    cands = [(m.b, lam - m.a), (lam - m.d, m.c)]
    for v in cands:
        if not (v[0].is_zero() and v[1].is_zero()):
            # normalize first nonzero coordinate to 1
            if not v[0].is_zero():
                w = v[0].inverse()
            else:
                w = v[1].inverse()
            v = (v[0] * w, v[1] * w)
            chk = m.apply(v)
            if chk[0] == lam * v[0] and chk[1] == lam * v[1]:
                return v
    raise GroupError("eigenline computation failed")


def maximal_abelian(K: KleinGroup):
    """The three cyclic subgroups T_X = <e_X> with exact eigenline data."""
    if K.is_cyclic:
        raise GroupError("maximal abelian triple only defined for D/E types")
    out = []
    for branch, e in zip("ABC", K.e_indices):
        p = {"A": K.triple[0], "B": K.triple[1], "C": K.triple[2]}[branch]
        members = []
        x = 0
        while True:
            members.append(x)
            x = K.table[x][e]
            if x == 0:
                break
        lam = Cyclo.root_of_unity(K.conductor // (2 * p), K.conductor)
        plus = _eigenline(K, e, lam)
        minus = _eigenline(K, e, lam.inverse())
        norm = [g for g in range(K.order)
                if all(K.conj_by(g, m) in set(members) for m in (e,))]
        # N(T) = elements normalizing the subgroup
        mem = set(members)
        norm = [g for g in range(K.order) if K.conj_by(g, e) in mem]
        out.append(MaxAbelian(branch, e, tuple(members), plus, minus, lam,
                              doubled=(len(norm) == 2 * len(members))))
    return tuple(out)


@dataclass
class ReflectionGroup:
    parent: KleinGroup
    triple: tuple
    conductor: int
    elements: list
    table: list
    inverse: list
    order: int
    coset_rep: int              # index of the chosen s in K' \ K
    reflections: tuple          # indices of order-2 reflections
    sigma: list                 # permutation of K-indices: g -> s g s^{-1}

    def element_order(self, i):
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def conj_by(self, g, x):
        return self.table[self.table[g][x]][self.inverse[g]]


def _reflection_candidates(K):
    n = K.conductor
    zero, one = Cyclo.zero(n), Cyclo.one(n)
    cands = [Mat2(one, zero, zero, -one)]
    if n % 8 == 0:
        z8 = Cyclo.root_of_unity(n // 8, n)
        cands.append(Mat2(z8, zero, zero, z8 ** 3))
    cands.append(Mat2(zero, one, one, zero))
    return cands


def build_reflection_group(K: KleinGroup) -> ReflectionGroup:
    """K' = K u K*s for the first candidate s passing all structural gates."""
    n = K.conductor
    index = {K.elements[i].key(): i for i in range(K.order)}
    for s in _reflection_candidates(K):
        if not s.is_unitary() or s.det() != -1:
            continue
        if s.key() in index:
            continue
        s_inv = s.adjoint()
        sigma = []
        ok = True
        for g in K.elements:
            m = (s * g) * s_inv
            k = m.key()
            if k not in index:
                ok = False
                break
            sigma.append(index[k])
        if not ok:
            continue
        s2 = s * s
        if s2.key() not in index:
            continue
        Kp = _assemble_reflection_group(K, s, sigma, index[s2.key()])
        if Kp is None:
            continue
        return Kp
    raise GroupError("generator search failed")


def _assemble_reflection_group(K, s, sigma, s2_idx):
    size = 2 * K.order
    n = K.conductor
    elements = list(K.elements) + [g * s for g in K.elements]
    # table via sigma and s^2: (g s)(h) = (g sigma(h)) s ; (g s)(h s) = g sigma(h) s^2
    T = K.table
    table = [[0] * size for _ in range(size)]
    for i in range(K.order):
        ti = T[i]
        row = table[i]
        for j in range(K.order):
            row[j] = ti[j]
            row[K.order + j] = K.order + ti[j]
    for i in range(K.order):
        row = table[K.order + i]
        for j in range(K.order):
            gs = T[i][sigma[j]]
            row[j] = K.order + gs
            row[K.order + j] = T[T[i][sigma[j]]][s2_idx]
    inverse = [0] * size
    for i in range(size):
        for j in range(size):
            if table[i][j] == 0:
                inverse[i] = j
                break
    refl = []
    for i in range(K.order, size):
        m = elements[i]
        if m.trace().is_zero() and table[i][i] == 0:
            refl.append(i)
    Kp = ReflectionGroup(parent=K, triple=K.triple, conductor=n,
                         elements=elements, table=table, inverse=inverse,
                         order=size, coset_rep=K.order,
                         reflections=tuple(refl), sigma=sigma)
    # gates: generated by reflections, degree equations integral
    if not refl:
        return None
    seen = {0}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for r in refl:
                y = table[r][x]
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    if len(seen) != size:
        return None
    try:
        degrees(Kp)
    except GroupError:
        return None
    return Kp


def degrees(Kp: ReflectionGroup):
    """Fundamental degrees (d1, d2) from |K'| and the reflection count."""
    ssum = len(Kp.reflections) + 2
    prod = Kp.order
    disc = ssum * ssum - 4 * prod
    if disc < 0:
        raise GroupError("degree equations inconsistent")
    r = int(disc ** 0.5)
    while r * r < disc:
        r += 1
    while r * r > disc:
        r -= 1
    if r * r != disc or (ssum + r) % 2:
        raise GroupError("degree equations inconsistent")
    d1, d2 = (ssum + r) // 2, (ssum - r) // 2
    if d1 * d2 != prod:
        raise GroupError("degree equations inconsistent")
    return d1, d2


def all_maximal_abelians(K: KleinGroup):
    """Distinct maximal abelian subgroups (conjugates of T_A, T_B, T_C)."""
    abelians = maximal_abelian(K)
    subs = {}
    for ma in abelians:
        base = set(ma.members)
        for g in range(K.order):
            s = frozenset(K.conj_by(g, m) for m in base)
            subs.setdefault(s, ma.branch)
    return subs


def check_class_equation(K: KleinGroup) -> dict:
    """|G/Z| = 1 + sum (|G/Z| / |N(H)/Z|) (|H/Z| - 1) over H-classes."""
    subs = all_maximal_abelians(K)
    # group the subgroups into conjugacy classes
    groups = list(subs)
    classes = []
    seen = set()
    for s in groups:
        if s in seen:
            continue
        orbit = set()
        for g in range(K.order):
            orbit.add(frozenset(K.conj_by(g, m) for m in s))
        seen |= orbit
        classes.append(s)
    gbar = K.order // 2
    total = 1
    terms = []
    for H in classes:
        nH = sum(1 for g in range(K.order)
                 if frozenset(K.conj_by(g, m) for m in H) == H)
        hbar, nbar = len(H) // 2, nH // 2
        term = (gbar // nbar) * (hbar - 1)
        terms.append(term)
        total += term
    return {"order_bar": gbar, "terms": sorted(terms, reverse=True),
            "total": total, "holds": total == gbar}


def check_inversion_action(Kp: ReflectionGroup, classes) -> dict:
    """Conjugation by s in K'\\K must equal the inversion involution on classes."""
    K = Kp.parent
    where = class_index_map(classes)
    inv = inversion_involution(classes)
    action = {}
    for c in classes:
        action[c.id] = where[Kp.sigma[c.rep]]
    return {"matches_inversion": action == inv, "action": action,
            "inversion": inv}
