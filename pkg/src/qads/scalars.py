"""Exact arithmetic in the cyclotomic field Q(zeta_L).

Scalars are integer coefficient vectors modulo the L-th cyclotomic
polynomial, over a common positive denominator.  The deformation
parameter is q = zeta_L^(L n / m), a primitive m-th root of unity raised
to the n-th power; L is a multiple of 4m so that q^(1/2) and q^(1/4)
exist in the field (needed for half-integral Cartan exponents and the
braiding phases).

Sign determination for real elements is done rigorously: exact zero test
first, then interval arithmetic at increasing precision until the
interval separates from zero.  No float ever decides anything.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath


@lru_cache(maxsize=None)
def cyclotomic_poly(L):
    """Integer coefficient tuple of Phi_L, lowest degree first."""
    # x^L - 1 divided by Phi_d for every proper divisor d of L
    num = [0] * (L + 1)
    num[0], num[L] = -1, 1
    for d in range(1, L):
        if L % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_div_exact(a, b):
    """Divide polynomial a by monic b, asserting zero remainder."""
    a = list(a)
    db = len(b) - 1
    assert b[-1] == 1
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            out[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert all(c == 0 for c in a[:db])
    return out


class Cyc:
    """One element of Q(zeta_L): integer vector over a positive denominator."""

    __slots__ = ("fld", "num", "den")

    def __init__(self, fld, num, den=1):
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            if c:
                g = gcd(g, abs(c))
                if g == 1:
                    break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.fld = fld
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, Cyc):
            return other
        if isinstance(other, int):
            return self.fld.from_int(other)
        if isinstance(other, Fraction):
            return self.fld.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        da, db = self.den, o.den
        return Cyc(self.fld,
                   tuple(a * db + b * da for a, b in zip(self.num, o.num)),
                   da * db)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.fld, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        fld = self.fld
        phi = fld.phi
        a, b = self.num, o.num
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:phi])
        zpow = fld._zpow
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                row = zpow[k]
                for j in range(phi):
                    rj = row[j]
                    if rj:
                        out[j] += ck * rj
        return Cyc(fld, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self.fld._inv(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.fld._inv(self)

    def __pow__(self, k):
        assert isinstance(k, int)
        if k < 0:
            return self.fld._inv(self) ** (-k)
        out = self.fld.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        """Complex conjugate: zeta -> zeta^-1."""
        fld = self.fld
        out = [0] * fld.phi
        conj = fld._conj
        for k, c in enumerate(self.num):
            if c:
                row = conj[k]
                for j in range(fld.phi):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyc(fld, tuple(out), self.den)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return any(self.num)

    def __repr__(self):
        terms = [f"{c}z^{k}" for k, c in enumerate(self.num) if c]
        body = " + ".join(terms) if terms else "0"
        return f"({body})/{self.den}" if self.den != 1 else f"({body})"


class CycField:
    """Q(zeta_L) with q = zeta^(Ln/m); the shared scalar factory.

    All elements carry a reference back here; fields with equal (m, n, L)
    behave identically but elements should not be mixed across instances.
    """

    def __init__(self, m, n=1, L=None):
        assert m >= 3 and n >= 1 and gcd(m, n) == 1
        if L is None:
            L = 4 * m
        assert L % (4 * m) == 0
        self.m = m
        self.n = n
        self.L = L
        poly = cyclotomic_poly(L)
        self.phi = len(poly) - 1
        self._tail = poly[:-1]
        self._zpow = self._power_table()
        self._conj = tuple(self._zpow[(-k) % L] for k in range(self.phi))
        self._units = [u for u in range(L) if gcd(u, L) == 1]
        assert len(self._units) == self.phi
        self._inv_cache = {}
        self.zero = Cyc(self, (0,) * self.phi)
        self.one = self.from_int(1)
        self.q = self.zeta_pow(L * n // m)
        self._sign_dps = (40, 80, 160, 320, 640, 1300, 2600)

    def _power_table(self):
        phi, L = self.phi, self.L
        rows = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(L):
            rows.append(tuple(cur))
            top = cur[phi - 1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * self._tail[j]
        # zeta^L must come back to 1
        assert tuple(cur) == rows[0]
        return rows

    def _inv(self, x):
        """Multiplicative inverse, cached by numerator vector."""
        assert bool(x), "division by zero in Q(zeta)"
        cached = self._inv_cache.get(x.num)
        if cached is None:
            cached = self._invert_vector(x.num)
            self._inv_cache[x.num] = cached
        numvec, dd = cached
        return Cyc(self, tuple(c * x.den for c in numvec), dd)

    def _invert_vector(self, num):
        # 1/x = (product of nontrivial Galois conjugates) / Norm(x); the
        # norm is rational, so one big-integer division replaces a slow
        # polynomial extended-gcd
        x = Cyc(self, num)
        prod = self.one
        for u in self._units[1:]:
            prod = prod * self._galois(x, u)
        norm = x * prod
        assert all(c == 0 for c in norm.num[1:]), "norm not rational"
        n0 = norm.num[0]
        assert n0 != 0
        # prod / (n0 / norm.den)
        numvec = tuple(c * norm.den for c in prod.num)
        den = prod.den * n0
        check = x * Cyc(self, numvec, den)
        assert check == self.one, "inverse verification failed"
        return numvec, den

    def _galois(self, x, u):
        """Field automorphism zeta -> zeta^u, gcd(u, L) = 1."""
        out = [0] * self.phi
        for k, c in enumerate(x.num):
            if c:
                row = self._zpow[(u * k) % self.L]
                for j in range(self.phi):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyc(self, tuple(out), x.den)

    # -- element constructors ------------------------------------------------

    def from_int(self, k):
        num = [0] * self.phi
        num[0] = k
        return Cyc(self, tuple(num))

    def from_fraction(self, fr):
        fr = Fraction(fr)
        num = [0] * self.phi
        num[0] = fr.numerator
        return Cyc(self, tuple(num), fr.denominator)

    def zeta_pow(self, e):
        """zeta^e for integral e."""
        return Cyc(self, self._zpow[e % self.L])

    def qpow(self, r):
        """q^r for rational r with denominator dividing L n / m."""
        e = Fraction(r) * self.L * self.n / self.m
        assert e.denominator == 1, f"q^{r} does not live in Q(zeta_{self.L})"
        return self.zeta_pow(int(e))

    # -- q-combinatorics -----------------------------------------------------

    def bracket(self, x, d=1):
        """Symmetric quantum number [x] at q^d."""
        d = Fraction(d)
        up = self.qpow(d * x)
        dn = self.qpow(-d * x)
        return (up - dn) / (self.qpow(d) - self.qpow(-d))

    def brk_factorial(self, k, d=1):
        out = self.one
        for j in range(1, k + 1):
            out = out * self.bracket(j, d)
        return out

    def brk_binom(self, nn, k, d=1):
        # product form; denominators [1]..[k] are nonzero whenever the
        # binomial is used below the [k]! wall
        out = self.one
        for j in range(1, k + 1):
            out = out * self.bracket(nn - j + 1, d) / self.bracket(j, d)
        return out

    # -- predicates and maps -------------------------------------------------

    def conj(self, x):
        return x.conjugate()

    def is_zero(self, x):
        return not bool(x)

    def is_real(self, x):
        return x.conjugate() == x

    def approx(self, x, dps=30):
        """Float shadow for reports; never used in any decision."""
        with mpmath.workdps(dps):
            two_pi_over_L = 2 * mpmath.pi / self.L
            s = mpmath.mpc(0)
            for k, c in enumerate(x.num):
                if c:
                    s += c * mpmath.exp(1j * two_pi_over_L * k)
            s /= x.den
            return complex(s)

    def sign(self, x):
        """Certified sign of a real element: -1, 0, or +1.

        Exact zero first; otherwise interval refinement.  Raises on a
        non-real input or if the precision ladder is exhausted (which
        would mean an astronomically small nonzero value; not reachable
        for the integer sizes this engine produces).
        """
        if self.is_zero(x):
            return 0
        assert self.is_real(x), "sign of a non-real element"
        iv = mpmath.iv
        saved = iv.dps
        try:
            for dps in self._sign_dps:
                iv.dps = dps
                two_pi = 2 * iv.pi
                s = iv.mpf(0)
                for k, c in enumerate(x.num):
                    if c:
                        s += c * iv.cos(two_pi * k / self.L)
                if s.a > 0:
                    return 1
                if s.b < 0:
                    return -1
        finally:
            iv.dps = saved
        raise ArithmeticError("sign undecided at maximal precision")


class ClassicalField:
    """q = 1 degeneration over plain rationals.

    Duck-types the CycField surface that the module machinery touches, so
    the same representation code runs at generic/classical parameters.
    Elements are fractions.Fraction.
    """

    def __init__(self):
        self.m = None
        self.n = None
        self.L = None
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.q = Fraction(1)

    def from_int(self, k):
        return Fraction(k)

    def from_fraction(self, fr):
        return Fraction(fr)

    def qpow(self, r):
        return Fraction(1)

    def bracket(self, x, d=1):
        # limit of the symmetric quantum number as q -> 1
        return Fraction(x)

    def brk_factorial(self, k, d=1):
        out = Fraction(1)
        for j in range(1, k + 1):
            out *= j
        return out

    def brk_binom(self, nn, k, d=1):
        out = Fraction(1)
        for j in range(1, k + 1):
            out *= Fraction(nn - j + 1, j)
        return out

    def conj(self, x):
        return x

    def is_zero(self, x):
        return x == 0

    def is_real(self, x):
        return True

    def approx(self, x, dps=30):
        return complex(x)

    def sign(self, x):
        return 0 if x == 0 else (1 if x > 0 else -1)
