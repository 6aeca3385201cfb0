"""Exact arithmetic: cyclotomic numbers, univariate polynomials, binary forms.

Everything downstream (group entries, character values, Poincare polynomials,
orbit forms) is built on the scalar type ``Cyclo``: an element of the
cyclotomic field Q(zeta_N) stored on the power basis 1, zeta, ..., zeta^(phi(N)-1)
with a common integer denominator.  All arithmetic is exact; floating point
appears only in ``Cyclo.approx`` for display.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache


class ConductorError(ValueError):
    """Raised for incompatible or insufficient conductors."""


class InexactDivision(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending coefficient tuples)

def _ipoly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _ipoly_divexact(a, b):
    # exact division in Z[x], b monic-or-not with exact quotient expected
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        if a[i] % lb:
            raise InexactDivision("inexact division")
        c = a[i] // lb
        q[i - db] = c
        for j, bj in enumerate(b):
            a[i - db + j] -= c * bj
    if any(a[:db]):
        raise InexactDivision("inexact division")
    return q


def totient(n: int) -> int:
    r, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            r *= (p - 1) * p ** (e - 1)
        p += 1
    if m > 1:
        r *= m - 1
    return r


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _mobius(n):
    m, p, cnt = n, 2, 0
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            cnt += 1
        p += 1
    if m > 1:
        cnt += 1
    return -1 if cnt % 2 else 1


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients (ascending, monic) of the n-th cyclotomic polynomial.

    Computed as the Moebius product of (x^(n/d) - 1) factors with exact
    division; no table is trusted.
    """
    num = [1]
    den = [1]
    for d in _divisors(n):
        mu = _mobius(d)
        if mu == 0:
            continue
        f = [-1] + [0] * (n // d - 1) + [1]  # x^(n/d) - 1
        if mu == 1:
            num = _ipoly_mul(num, f)
        else:
            den = _ipoly_mul(den, f)
    return tuple(_ipoly_divexact(num, den))


@lru_cache(maxsize=None)
def _power_table(n: int):
    """zeta_n^k for k = 0..n-1 as integer vectors on the power basis."""
    phi = totient(n)
    red = list(cyclotomic_poly(n)[:-1])  # x^phi = -(red)
    rows = [[0] * phi for _ in range(n)]
    cur = [0] * phi
    cur[0] = 1
    for k in range(n):
        rows[k] = cur[:]
        # multiply by x
        carry = cur[-1]
        cur = [0] + cur[:-1]
        if carry:
            for j in range(phi):
                cur[j] -= carry * red[j]
    return tuple(tuple(r) for r in rows)


def _normalize(num, den):
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if c:
            g = math.gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class Cyclo:
    """Element of Q(zeta_N) on the power basis, canonical representation.

    Two values of the same conductor are equal iff their (num, den) data are
    equal; equality across conductors is decided after promotion to the lcm.
    Hashing uses the stored conductor's canonical vector (containers in this
    package only ever hold same-conductor values).
    """

    __slots__ = ("n", "num", "den")

    def __init__(self, n, num, den=1):
        self.n = n
        self.num, self.den = _normalize(list(num), den)

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(n=1):
        return Cyclo(n, [0] * totient(n))

    @staticmethod
    def one(n=1):
        v = [0] * totient(n)
        v[0] = 1
        return Cyclo(n, v)

    @staticmethod
    def rational(q, n=1):
        q = Fraction(q)
        v = [0] * totient(n)
        v[0] = q.numerator
        return Cyclo(n, v, q.denominator)

    @staticmethod
    def root_of_unity(k: int, n: int) -> "Cyclo":
        """zeta_n^k as an element of Q(zeta_n)."""
        if n < 1:
            raise ConductorError("conductor must be positive")
        return Cyclo(n, _power_table(n)[k % n])

    # -- structure ---------------------------------------------------------
    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def coeffs(self):
        """Coefficients as Fractions on the power basis."""
        return tuple(Fraction(c, self.den) for c in self.num)

    def key(self):
        return (self.n, self.num, self.den)

    # -- conductor handling -------------------------------------------------
    def promote(self, m: int) -> "Cyclo":
        if m == self.n:
            return self
        if m % self.n:
            raise ConductorError("incompatible conductor")
        step = m // self.n
        rows = _power_table(m)
        phi = totient(m)
        out = [0] * phi
        for j, c in enumerate(self.num):
            if c:
                row = rows[(j * step) % m]
                for t in range(phi):
                    out[t] += c * row[t]
        return Cyclo(m, out, self.den)

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(other, self.n)
        if not isinstance(other, Cyclo):
            return None, None
        if self.n == other.n:
            return self, other
        m = self.n * other.n // math.gcd(self.n, other.n)
        return self.promote(m), other.promote(m)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        den = a.den * b.den // math.gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return Cyclo(a.n, [x * fa + y * fb for x, y in zip(a.num, b.num)], den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, [-c for c in self.num], self.den)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclo(self.n, [c * q.numerator for c in self.num],
                         self.den * q.denominator)
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        phi = len(a.num)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                bn = b.num
                for j in range(phi):
                    y = bn[j]
                    if y:
                        conv[i + j] += x * y
        rows = _power_table(a.n)
        out = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = rows[k]
                for t in range(phi):
                    out[t] += c * row[t]
        return Cyclo(a.n, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[x] modulo the cyclotomic polynomial
        mod = [Fraction(c) for c in cyclotomic_poly(self.n)]
        a = [Fraction(c, self.den) for c in self.num]
        r0, r1 = mod, a
        t0, t1 = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        while deg(r1) > 0:
            q = [Fraction(0)] * (deg(r0) - deg(r1) + 1)
            rem = r0[:]
            while deg(rem) >= deg(r1):
                d = deg(rem) - deg(r1)
                c = rem[deg(rem)] / r1[deg(r1)]
                q[d] = c
                for i in range(deg(r1) + 1):
                    rem[i + d] -= c * r1[i]
            t_new = t0[:]
            t_new += [Fraction(0)] * (len(q) + len(t1) - 1 - len(t_new))
            for i, qi in enumerate(q):
                if qi:
                    for j, tj in enumerate(t1):
                        t_new[i + j] -= qi * tj
            r0, r1, t0, t1 = r1, rem, t1, t_new
        if deg(r1) != 0:
            raise ZeroDivisionError("not invertible")  # pragma: no cover
        c = r1[0]
        phi = totient(self.n)
        res = [Fraction(0)] * phi
        for i, ti in enumerate(t1[:phi]):
            res[i] = ti / c
        den = 1
        for f in res:
            den = den * f.denominator // math.gcd(den, f.denominator)
        return Cyclo(self.n, [int(f * den) for f in res], den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return self * Fraction(q.denominator, q.numerator)
        if isinstance(other, Cyclo):
            a, b = self._pair(other)
            return a * b.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = Cyclo.one(self.n)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def conj(self) -> "Cyclo":
        """Complex conjugation zeta -> zeta^-1 (a field involution)."""
        rows = _power_table(self.n)
        phi = len(self.num)
        out = [0] * phi
        for j, c in enumerate(self.num):
            if c:
                row = rows[(self.n - j) % self.n]
                for t in range(phi):
                    out[t] += c * row[t]
        return Cyclo(self.n, out, self.den)

    def galois(self, a: int) -> "Cyclo":
        """The automorphism zeta -> zeta^a (a coprime to the conductor)."""
        if math.gcd(a, self.n) != 1:
            raise ValueError("not a Galois exponent")
        rows = _power_table(self.n)
        phi = len(self.num)
        out = [0] * phi
        for j, c in enumerate(self.num):
            if c:
                row = rows[(a * j) % self.n]
                for t in range(phi):
                    out[t] += c * row[t]
        return Cyclo(self.n, out, self.den)

    # -- comparisons ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(other, self.n)
        if not isinstance(other, Cyclo):
            return NotImplemented
        if self.n == other.n:
            return self.num == other.num and self.den == other.den
        a, b = self._pair(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        return hash((self.n, self.num, self.den))

    # -- display -------------------------------------------------------------
    def approx(self) -> complex:
        """Floating approximation (display only), compensated summation."""
        re, im = 0.0, 0.0
        cre = cim = 0.0
        for j, c in enumerate(self.num):
            if not c:
                continue
            z = cmath.exp(2j * math.pi * j / self.n)
            term_re = c * z.real
            term_im = c * z.imag
            y = term_re - cre
            t = re + y
            cre = (t - re) - y
            re = t
            y = term_im - cim
            t = im + y
            cim = (t - im) - y
            im = t
        return complex(re / self.den, im / self.den)

    def __repr__(self):
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        terms = []
        for j, c in enumerate(self.num):
            if c:
                q = Fraction(c, self.den)
                base = f"z{self.n}^{j}" if j > 1 else ("z%d" % self.n if j else "")
                if j == 0:
                    terms.append(str(q))
                elif q == 1:
                    terms.append(base)
                elif q == -1:
                    terms.append("-" + base)
                else:
                    terms.append(f"{q}*{base}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self):
        """Serialization used by the CLI: conductor plus [num, den] pairs."""
        return {"conductor": self.n,
                "coeffs": [[int(f.numerator), int(f.denominator)] for f in self.coeffs()]}


def cyclo_from_json(obj) -> Cyclo:
    n = obj["conductor"]
    fr = [Fraction(a, b) for a, b in obj["coeffs"]]
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return Cyclo(n, [int(f * den) for f in fr], den)


# ---------------------------------------------------------------------------


class UniPoly:
    """Univariate polynomial with Fraction coefficients, ascending order.

    The zero polynomial has degree -inf.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def from_ints(ints):
        return UniPoly(ints)

    @staticmethod
    def monomial(k, c=1):
        return UniPoly([0] * k + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def divide_exact(self, other: "UniPoly") -> "UniPoly":
        """Exact quotient self/other; raises InexactDivision on remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return UniPoly()
        rem = list(self.coeffs)
        d, lead = other.degree, other.coeffs[-1]
        if self.degree < d:
            raise InexactDivision("inexact division")
        q = [Fraction(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            c = rem[i] / lead
            q[i - d] = c
            for j, bj in enumerate(other.coeffs):
                rem[i - d + j] -= c * bj
        if any(rem[:d]):
            raise InexactDivision("inexact division")
        return UniPoly(q)

    def eval_fraction(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_cyclo(self, x: Cyclo) -> Cyclo:
        """Exact Horner evaluation in the scalar field of x."""
        acc = Cyclo.zero(x.n)
        for c in reversed(self.coeffs):
            acc = acc * x + Cyclo.rational(c, x.n)
        return acc

    def int_coeffs(self):
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("not an integer polynomial")
        return [int(c) for c in self.coeffs]

    def exponents(self):
        return [i for i, c in enumerate(self.coeffs) if c]

    def center(self) -> Fraction:
        """(min exponent + max exponent)/2 of a nonzero polynomial."""
        e = self.exponents()
        if not e:
            raise ValueError("zero polynomial has no center")
        return Fraction(e[0] + e[-1], 2)

    def is_palindromic_about(self, h: Fraction) -> bool:
        e2 = int(2 * Fraction(h))
        n = len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            j = e2 - i
            if j < 0 or j >= n:
                if c:
                    return False
            elif c != self.coeffs[j]:
                return False
        return True

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                t = "t" if i == 1 else f"t^{i}"
                if c == 1:
                    parts.append(t)
                elif c == -1:
                    parts.append(f"-{t}")
                else:
                    parts.append(f"{c}*{t}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"UniPoly({str(self)})"


# ---------------------------------------------------------------------------


class BiForm:
    """Homogeneous binary form sum_k c_k x^k y^(d-k) over Cyclo scalars."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("empty coefficient list")
        self.coeffs = coeffs
        self.degree = len(coeffs) - 1

    @staticmethod
    def linear(a: Cyclo, b: Cyclo) -> "BiForm":
        """The linear form a*y + b*x ... coefficient order (y, x)."""
        return BiForm([a, b])

    @staticmethod
    def one(n=1):
        return BiForm([Cyclo.one(n)])

    def conductor(self):
        return max(c.n for c in self.coeffs)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BiForm) or self.degree != other.degree:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return BiForm([c * other for c in self.coeffs])
        n = max(self.conductor(), other.conductor())
        out = [Cyclo.zero(n) for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
        return BiForm(out)

    __rmul__ = __mul__

    def __add__(self, other):
        d = max(self.degree, other.degree)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return BiForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self.degree != other.degree:
            raise ValueError("cannot subtract forms of different degrees")
        return BiForm([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def substitute(self, a, b, c, d) -> "BiForm":
        """f(ax + by, cx + dy) for the matrix [[a, b], [c, d]]."""
        n = max(self.conductor(), a.n, b.n, c.n, d.n)
        xp = BiForm([b.promote(n), a.promote(n)])  # a*x + b*y
        yp = BiForm([d.promote(n), c.promote(n)])
        deg = self.degree
        xpow = [BiForm.one(n)]
        ypow = [BiForm.one(n)]
        for _ in range(deg):
            xpow.append(xpow[-1] * xp)
            ypow.append(ypow[-1] * yp)
        out = [Cyclo.zero(n) for _ in range(deg + 1)]
        for k, ck in enumerate(self.coeffs):
            if ck.is_zero():
                continue
            term = xpow[k] * ypow[deg - k] * ck
            for t in range(deg + 1):
                out[t] = out[t] + term.coeffs[t]
        return BiForm(out)

    def partial_x(self) -> "BiForm":
        n = self.conductor()
        if self.degree == 0:
            return BiForm([Cyclo.zero(n)])
        return BiForm([self.coeffs[k + 1] * (k + 1) for k in range(self.degree)])

    def partial_y(self) -> "BiForm":
        n = self.conductor()
        if self.degree == 0:
            return BiForm([Cyclo.zero(n)])
        d = self.degree
        return BiForm([self.coeffs[k] * (d - k) for k in range(d)])

    def divide_exact(self, other: "BiForm") -> "BiForm":
        """Exact quotient of homogeneous forms; InexactDivision otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero form")
        n = max(self.conductor(), other.conductor())
        a = [c.promote(n) for c in self.coeffs]
        b = [c.promote(n) for c in other.coeffs]
        # strip common x-power (leading) and y-power (trailing) monomials
        def strip(cs):
            lo = 0
            while lo < len(cs) and cs[lo].is_zero():
                lo += 1
            hi = len(cs)
            while hi > lo and cs[hi - 1].is_zero():
                hi -= 1
            return lo, cs[lo:hi]
        la, ca = strip(a)
        lb, cb = strip(b)
        if not cb:
            raise ZeroDivisionError("division by zero form")
        ylo = la - lb          # leftover y-exponent of x-free tail
        xhi = (len(a) - 1 - la - (len(ca) - 1)) - (len(b) - 1 - lb - (len(cb) - 1))
        if ylo < 0 or len(ca) < len(cb):
            raise InexactDivision("inexact division")
        # univariate long division of the cores
        rem = list(ca)
        db = len(cb) - 1
        lead = cb[-1]
        lead_inv = lead.inverse()
        q = [Cyclo.zero(n) for _ in range(len(rem) - db)]
        for i in range(len(rem) - 1, db - 1, -1):
            if rem[i].is_zero():
                continue
            c = rem[i] * lead_inv
            q[i - db] = c
            for j, bj in enumerate(cb):
                if not bj.is_zero():
                    rem[i - db + j] = rem[i - db + j] - c * bj
        if any(not r.is_zero() for r in rem[:db]):
            raise InexactDivision("inexact division")
        out = [Cyclo.zero(n) for _ in range(self.degree - other.degree + 1)]
        for i, qc in enumerate(q):
            out[ylo + i] = qc
        return BiForm(out)

    def normalized(self) -> "BiForm":
        """Scale so the first nonzero coefficient is 1 (canonical line form)."""
        for c in self.coeffs:
            if not c.is_zero():
                inv = c.inverse()
                return BiForm([x * inv for x in self.coeffs])
        raise ValueError("zero form")

    def key(self):
        return tuple(c.key() for c in self.coeffs)

    def __repr__(self):
        d = self.degree
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = []
            if k:
                mono.append("x" if k == 1 else f"x^{k}")
            if d - k:
                mono.append("y" if d - k == 1 else f"y^{d - k}")
            m = "*".join(mono) or "1"
            parts.append(f"({c!r})*{m}")
        return " + ".join(parts) or "0"
