"""Orbit forms, relative characters, Jacobian factorization, absolute invariants.

A singular line is an eigenline of a maximal abelian subgroup; its orbit form
is the product of the line's linear form over the orbit.  Relative invariance
f(g x) = mu(g) f(x) is verified by tracking how the group permutes the orbit
lines (exact scalar bookkeeping), never by expanding f(g x) for large forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import BiForm, Cyclo, InexactDivision
from .klein import KleinGroup, maximal_abelian


class FormsError(RuntimeError):
    pass


@dataclass
class LineOrbit:
    branch: str                 # 'A','B','C' or 'generic'
    base: tuple                 # base line vector (pair of Cyclo), canonical
    lines: list                 # orbit of canonical line vectors
    stabilizer_order: int


@dataclass
class OrbitForm:
    orbit: LineOrbit
    form: BiForm                # product of the orbit's linear forms
    mu: dict                    # generator index -> Cyclo scalar


def _canon_vector(v):
    x, y = v
    if not x.is_zero():
        w = x.inverse()
    elif not y.is_zero():
        w = y.inverse()
    else:
        raise FormsError("zero vector")
    return (x * w, y * w)


def _line_form(v, n) -> BiForm:
    """Linear form vanishing on the line spanned by v = (x0, y0):
    a(x, y) = y0 * x - x0 * y, canonically scaled."""
    x0, y0 = v
    return BiForm([-x0.promote(n), y0.promote(n)]).normalized()


def line_orbit(K: KleinGroup, v, branch="generic") -> LineOrbit:
    """Orbit of a line under K with the line stabilizer order."""
    v = _canon_vector(v)
    seen = {}
    order = []
    stab = 0
    for g in range(K.order):
        w = _canon_vector(K.elements[g].apply(v))
        key = (w[0].key(), w[1].key())
        if key not in seen:
            seen[key] = w
            order.append(w)
        if w[0] == v[0] and w[1] == v[1]:
            stab += 1
    return LineOrbit(branch=branch, base=v, lines=order, stabilizer_order=stab)


def singular_lines(K: KleinGroup):
    """The orbits of the base eigenlines P_A, P_B, P_C (plus-lines)."""
    out = []
    for ma in maximal_abelian(K):
        out.append(line_orbit(K, ma.line_plus, branch=ma.branch))
    return out


def orbit_form(K: KleinGroup, orbit: LineOrbit) -> OrbitForm:
    """Product of the orbit's line forms, with its relative character mu.

    mu is computed on the triangle generators: acting by g permutes the orbit
    lines, and each line form picks up an exact scalar; mu(g) is the product.
    """
    n = K.conductor
    form = BiForm.one(n)
    forms = [_line_form(v, n) for v in orbit.lines]
    for f in forms:
        form = form * f
    index = {}
    for i, v in enumerate(orbit.lines):
        index[(v[0].key(), v[1].key())] = i
    gens = K.e_indices if K.e_indices else tuple(K.gens)
    mu = {}
    for g in gens:
        mu[g] = _action_scalar(K, g, orbit, forms, index)
    return OrbitForm(orbit=orbit, form=form, mu=mu)


def _action_scalar(K, g, orbit, forms, index) -> Cyclo:
    """The scalar with (f compose g) = scalar * f for the orbit product f."""
    n = K.conductor
    m = K.elements[g]
    total = Cyclo.one(n)
    for i, v in enumerate(orbit.lines):
        # the line form a_i composed with g is a linear form vanishing on
        # g^{-1} . line_i, hence proportional to a_{j}
        a = forms[i]
        comp = a.substitute(m.a, m.b, m.c, m.d)   # a(g x)
        w = _canon_vector(K.elements[K.inverse[g]].apply(v))
        j = index[(w[0].key(), w[1].key())]
        ref = forms[j]
        scalar = None
        for cc, cr in zip(comp.coeffs, ref.coeffs):
            if not cr.is_zero():
                scalar = cc * cr.inverse()
                break
        # proportionality must be exact
        for cc, cr in zip(comp.coeffs, ref.coeffs):
            if not (cc == cr * scalar):
                raise FormsError("orbit not closed under the action")
        total = total * scalar
    return total


def verify_relative_invariance(K, of: OrbitForm) -> bool:
    """Direct symbolic check f(g x) = mu(g) f(x) on the generators."""
    for g, scalar in of.mu.items():
        m = K.elements[g]
        lhs = of.form.substitute(m.a, m.b, m.c, m.d)
        rhs = of.form * scalar
        if not (lhs - rhs).is_zero():
            return False
    return True


def generic_line_orbits(K: KleinGroup, count=2):
    """Deterministic sweep over lines (1, q), q = 0, 1, 2, ...; keep lines
    with stabilizer {+-1} in pairwise distinct orbits."""
    n = K.conductor
    found = []
    q = 0
    while len(found) < count and q < 100:
        v = (Cyclo.one(n), Cyclo.rational(q, n))
        orb = line_orbit(K, v)
        if orb.stabilizer_order == 2:
            keys = {(w[0].key(), w[1].key()) for w in orb.lines}
            if all(not (keys & {(u[0].key(), u[1].key()) for u in o.lines})
                   for o in found):
                found.append(orb)
        q += 1
    if len(found) < count:
        raise FormsError("generic line sweep exhausted")
    return found


def klein_degree_identity(K: KleinGroup) -> dict:
    """2(|G/Z| - 1) = sum_X (|G/Z| / p_X)(p_X - 1)."""
    gbar = K.order // 2
    lhs = 2 * (gbar - 1)
    terms = [(gbar // p) * (p - 1) for p in K.triple]
    return {"lhs": lhs, "terms": terms, "holds": lhs == sum(terms)}


def jacobian_check(K: KleinGroup) -> dict:
    """d(f1,f2)/d(x,y) = c * f_A^{p_A-1} f_B^{p_B-1} f_C^{p_C-1}, exactly."""
    sing = singular_lines(K)
    sforms = [orbit_form(K, o) for o in sing]
    g1, g2 = generic_line_orbits(K, 2)
    f1 = orbit_form(K, g1).form
    f2 = orbit_form(K, g2).form
    jac = f1.partial_x() * f2.partial_y() - f1.partial_y() * f2.partial_x()
    rhs = BiForm.one(K.conductor)
    for of, p in zip(sforms, K.triple):
        for _ in range(p - 1):
            rhs = rhs * of.form
    if jac.degree != rhs.degree:
        return {"holds": False, "reason": "degree mismatch",
                "jac_degree": jac.degree, "rhs_degree": rhs.degree}
    try:
        q = jac.divide_exact(rhs)
    except InexactDivision:
        return {"holds": False, "reason": "inexact division"}
    const = q.coeffs[0]
    holds = (q.degree == 0) and not const.is_zero()
    return {"holds": holds, "constant": const,
            "degree_balance": {"lhs": 2 * (K.order // 2 - 1),
                               "terms": [(K.order // 2 // p) * (p - 1)
                                         for p in K.triple]}}


def absolute_invariants(K: KleinGroup, max_exponent=4, limit=6):
    """Products f_A^a f_B^b f_C^c with trivial total character, by degree."""
    sing = singular_lines(K)
    sforms = [orbit_form(K, o) for o in sing]
    gens = list(sforms[0].mu)
    results = []
    combos = []
    for a in range(max_exponent + 1):
        for b in range(max_exponent + 1):
            for c in range(max_exponent + 1):
                if a + b + c == 0:
                    continue
                deg = (a * sforms[0].form.degree + b * sforms[1].form.degree
                       + c * sforms[2].form.degree)
                combos.append((deg, (a, b, c)))
    combos.sort()
    for deg, (a, b, c) in combos:
        if len(results) >= limit:
            break
        total = {g: Cyclo.one(K.conductor) for g in gens}
        for of, e in zip(sforms, (a, b, c)):
            for g in gens:
                total[g] = total[g] * of.mu[g] ** e
        if all(total[g] == 1 for g in gens):
            form = BiForm.one(K.conductor)
            for of, e in zip(sforms, (a, b, c)):
                for _ in range(e):
                    form = form * of.form
            results.append({"exponents": (a, b, c), "degree": deg,
                            "form": form})
    return results
