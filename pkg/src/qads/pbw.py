"""Straightening engine for the raising half of the quantized algebra.

Monomials live in the convex order  E1 < E3 < E4 < E2,  where E3, E4 are
root vectors for the composite positive roots alpha1+alpha2 and
alpha1+2*alpha2:

    E3 := E1 E2 - q^{-1} E2 E1          E4 := E3 E2 - E2 E3

A monomial is an exponent tuple (a, b, c, d) against that order.  The
six adjacent-pair reordering rules are not hardcoded: they are solved at
construction time inside the free algebra modulo the defining ideal
(freealg), so the engine cannot drift from the relations.

The same file builds the symbolic commutators [F_i, E^m] used for the
lowering action on lowest-weight modules, and their transpose mirrors
[E_i, F^m] used by the braiding layer.  Cartan dependence is carried by
small "atom" tags (a bracket or a q-power in the weight components), so
one cached table serves every module over the same field.
"""

from fractions import Fraction

from . import freealg
from .roots import ALPHA

ORDER = (1, 3, 4, 2)
SLOT = {1: 0, 3: 1, 4: 2, 2: 3}
UNIT = (0, 0, 0, 0)
LETTER_GRADE = {1: (1, 0), 2: (0, 1), 3: (1, 1), 4: (1, 2)}
ALPHA_H = {j: (ALPHA[j].h1, ALPHA[j].h2) for j in (1, 2, 3, 4)}
D_SIMPLE = {1: Fraction(1), 2: Fraction(1, 2)}

# star structure: star(E_i) = STAR_SIGN[i] * F_i, conjugate-linear
STAR_SIGN = {1: -1, 2: 1}


def mono_grade(m):
    a, b, c, d = m
    return (a + b + c, b + 2 * c + d)


def mono_degree(m):
    a, b, c, d = m
    return a + 2 * b + 3 * c + d


def grade_h(g):
    """Weight of k1*alpha1 + k2*alpha2 in (h1, h2) components."""
    k1, k2 = g
    return (2 * k1 - k2, 2 * k2 - 2 * k1)


def monos_of_grade(k1, k2):
    out = []
    for b in range(min(k1, k2) + 1):
        top = min(k1 - b, (k2 - b) // 2)
        for c in range(top + 1):
            out.append((k1 - b - c, b, c, k2 - b - 2 * c))
    return sorted(out)


def _add_into(out, key, c, fld):
    s = out.get(key)
    s = c if s is None else s + c
    if fld.is_zero(s):
        out.pop(key, None)
    else:
        out[key] = s


def derive_rules(fld):
    """Normal-ordering rules for the six inverted adjacent pairs.

    Each product E_hi E_lo with hi after lo in the convex order is
    expressed in the ordered basis by linear algebra in the free
    algebra modulo the defining ideal.
    """
    one = fld.one
    f1 = {(1,): one}
    f2 = {(2,): one}
    f3 = freealg.el_add(
        freealg.el_mul(f1, f2, fld),
        freealg.el_scale(freealg.el_mul(f2, f1, fld), -fld.qpow(-1), fld),
        fld)
    f4 = freealg.el_add(
        freealg.el_mul(f3, f2, fld),
        freealg.el_scale(freealg.el_mul(f2, f3, fld), -one, fld),
        fld)
    img = {1: f1, 3: f3, 4: f4, 2: f2}

    def mono_img(m):
        e = {(): one}
        for letter, k in zip(ORDER, m):
            for _ in range(k):
                e = freealg.el_mul(e, img[letter], fld)
        return e

    rules = {}
    for hi, lo in ((2, 1), (3, 1), (2, 3), (4, 1), (4, 3), (2, 4)):
        target = freealg.el_mul(img[hi], img[lo], fld)
        g1 = LETTER_GRADE[hi][0] + LETTER_GRADE[lo][0]
        g2 = LETTER_GRADE[hi][1] + LETTER_GRADE[lo][1]
        monos = monos_of_grade(g1, g2)
        cands = [mono_img(m) for m in monos]
        coeffs = freealg.reduce_against_ideal(target, cands, g1, g2, fld)
        rules[(hi, lo)] = {m: c for m, c in zip(monos, coeffs)
                           if not fld.is_zero(c)}
    return rules


# ---------------------------------------------------------------------------
# Cartan atoms.  An atom is a function of the weight (h1, h2) of whatever
# vector the operator term is applied to:
#   ('brk', (a0, a1, a2), d)  ->  [a0 + a1 h1 + a2 h2]_{q^d}
#   ('qp',  (e0, e1, e2))     ->  q^{e0 + e1 h1 + e2 h2}

def _brk(a0, a1, a2, d):
    return ('brk', (Fraction(a0), Fraction(a1), Fraction(a2)), Fraction(d))


def _shift_atom(a, s1, s2):
    if a[0] == 'brk':
        (a0, a1, a2), d = a[1], a[2]
        return ('brk', (a0 + a1 * s1 + a2 * s2, a1, a2), d)
    e0, e1, e2 = a[1]
    return ('qp', (e0 + e1 * s1 + e2 * s2, e1, e2))


def eval_terms(fld, td, h1, h2):
    """Evaluate a term dict at a concrete weight -> {monomial: coeff}."""
    out = {}
    for (atoms, m), c in td.items():
        s = c
        for a in atoms:
            if a[0] == 'brk':
                (a0, a1, a2), d = a[1], a[2]
                s = s * fld.bracket(a0 + a1 * h1 + a2 * h2, d)
            else:
                e0, e1, e2 = a[1]
                s = s * fld.qpow(e0 + e1 * h1 + e2 * h2)
        if not fld.is_zero(s):
            _add_into(out, m, s, fld)
    return out


class Algebra:
    """Ordered-monomial arithmetic over one scalar field."""

    def __init__(self, fld):
        self.fld = fld
        self.rules = derive_rules(fld)
        self._lmul = {}
        self._mmul = {}
        self._comm = {}
        self.letter_tables = self._derive_letter_tables()

    # -- element arithmetic -------------------------------------------

    def el_add(self, a, b):
        out = dict(a)
        for m, c in b.items():
            _add_into(out, m, c, self.fld)
        return out

    def el_scale(self, a, c):
        if self.fld.is_zero(c):
            return {}
        return {m: c * v for m, v in a.items()}

    def lmul(self, letter, m):
        """Left-multiply an ordered monomial by one root vector."""
        key = (letter, m)
        hit = self._lmul.get(key)
        if hit is not None:
            return hit
        s = SLOT[letter]
        t = next((j for j in range(4) if m[j]), None)
        if t is None or s <= t:
            mm = list(m)
            mm[s] += 1
            out = {tuple(mm): self.fld.one}
        else:
            rest = list(m)
            rest[t] -= 1
            rest = tuple(rest)
            out = {}
            for rm, rc in self.rules[(letter, ORDER[t])].items():
                for m2, c2 in self.mono_mul(rm, rest).items():
                    _add_into(out, m2, rc * c2, self.fld)
        self._lmul[key] = out
        return out

    def mono_mul(self, m1, m2):
        key = (m1, m2)
        hit = self._mmul.get(key)
        if hit is not None:
            return hit
        letters = []
        for letter, k in zip(ORDER, m1):
            letters.extend([letter] * k)
        acc = {m2: self.fld.one}
        for letter in reversed(letters):
            nxt = {}
            for m, c in acc.items():
                for m3, c3 in self.lmul(letter, m).items():
                    _add_into(nxt, m3, c * c3, self.fld)
            acc = nxt
        self._mmul[key] = acc
        return acc

    def el_mul(self, a, b):
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                for m, c in self.mono_mul(m1, m2).items():
                    _add_into(out, m, c1 * c2 * c, self.fld)
        return out

    def from_word(self, letters):
        """Straighten a product of simple raising generators (1s and 2s)."""
        acc = {UNIT: self.fld.one}
        for letter in reversed(tuple(letters)):
            nxt = {}
            for m, c in acc.items():
                for m2, c2 in self.lmul(letter, m).items():
                    _add_into(nxt, m2, c * c2, self.fld)
            acc = nxt
        return acc

    # -- term-dict operations -----------------------------------------

    def _td_add(self, a, b):
        out = dict(a)
        for k, c in b.items():
            _add_into(out, k, c, self.fld)
        return out

    def _td_scale(self, td, c):
        if self.fld.is_zero(c):
            return {}
        return {k: c * v for k, v in td.items()}

    def _td_left(self, letter, td):
        out = {}
        for (atoms, m), c in td.items():
            for m2, c2 in self.lmul(letter, m).items():
                _add_into(out, (atoms, m2), c * c2, self.fld)
        return out

    def _td_right(self, td, m2):
        # appending E^{m2} on the right shifts every atom by its weight
        s1, s2 = grade_h(mono_grade(m2))
        out = {}
        for (atoms, m), c in td.items():
            sh = tuple(sorted(_shift_atom(a, s1, s2) for a in atoms))
            for m3, c3 in self.mono_mul(m, m2).items():
                _add_into(out, (sh, m3), c * c3, self.fld)
        return out

    def _derive_letter_tables(self):
        """[F_i, E_beta] for the four positive-root vectors, by Leibniz."""
        fld = self.fld
        neg = fld.from_int(-1)
        half = Fraction(1, 2)
        tabs = {
            (1, 1): {((_brk(0, 1, 0, 1),), UNIT): neg},
            (2, 2): {((_brk(0, 0, 1, half),), UNIT): neg},
            (1, 2): {},
            (2, 1): {},
        }
        u1, u2 = (1, 0, 0, 0), (0, 0, 0, 1)
        qinv = fld.qpow(-1)
        for i in (1, 2):
            a1, a2 = tabs[(i, 1)], tabs[(i, 2)]
            tabs[(i, 3)] = self._td_add(
                self._td_add(self._td_right(a1, u2), self._td_left(1, a2)),
                self._td_scale(
                    self._td_add(self._td_right(a2, u1), self._td_left(2, a1)),
                    -qinv))
        u3 = (0, 1, 0, 0)
        for i in (1, 2):
            t3, a2 = tabs[(i, 3)], tabs[(i, 2)]
            pos = self._td_add(self._td_right(t3, u2), self._td_left(3, a2))
            neg_part = self._td_add(self._td_right(a2, u3),
                                    self._td_left(2, t3))
            tabs[(i, 4)] = self._td_add(pos, self._td_scale(neg_part, neg))
        return tabs

    def comm_lower(self, i, m):
        """[F_i, E^m] as {(atoms, monomial): coeff}.

        Atoms are evaluated at the weight of the vector the whole
        expression acts on.  On a lowest-weight generator this term
        dict is the entire action of F_i E^m, since F_i kills the
        generator.
        """
        key = (i, m)
        hit = self._comm.get(key)
        if hit is not None:
            return hit
        if m == UNIT:
            out = {}
        else:
            t = next(j for j in range(4) if m[j])
            letter = ORDER[t]
            rest = list(m)
            rest[t] -= 1
            rest = tuple(rest)
            out = self._td_add(
                self._td_right(self.letter_tables[(i, letter)], rest),
                self._td_left(letter, self.comm_lower(i, rest)))
        self._comm[key] = out
        return out

    # -- transpose mirror ---------------------------------------------
    #
    # tau swaps E_i <-> F_i, fixes the Cartan part, and reverses
    # products.  F^m := tau(E^m) shares the exponent tuple, so the
    # lowering half needs no straightening of its own.

    def comm_raise_lowering(self, i, m):
        """[E_i, F^m] with all Cartan dependence pushed to the right."""
        out = {}
        for (atoms, m2), c in self.comm_lower(i, m).items():
            s1, s2 = grade_h(mono_grade(m2))
            sh = tuple(sorted(_shift_atom(a, -s1, -s2) for a in atoms))
            _add_into(out, (sh, m2), -c, self.fld)
        return out

    def skew_parts(self, i, m):
        """Split [E_i, F^m] = (rho K_i - K_i^{-1} rho') / (q_i - q_i^{-1}).

        Returns the two coefficient dicts over lowering monomials of
        grade(m) - alpha_i.  Every expanded term must carry exactly a
        K_i^{+1} or K_i^{-1} dressing; anything else is a hard error.
        """
        fld = self.fld
        di = D_SIMPLE[i]
        denom = fld.qpow(di) - fld.qpow(-di)
        z = Fraction(0)
        kvec = (Fraction(1), z) if i == 1 else (z, Fraction(1, 2))
        nvec = (-kvec[0], -kvec[1])
        rho, rhop = {}, {}
        for (atoms, fm), c in self.comm_raise_lowering(i, m).items():
            parts = [(c, z, z, z)]
            for a in atoms:
                if a[0] == 'qp':
                    e0, e1, e2 = a[1]
                    parts = [(s, p0 + e0, p1 + e1, p2 + e2)
                             for s, p0, p1, p2 in parts]
                else:
                    (a0, a1, a2), d = a[1], a[2]
                    bd = fld.one / (fld.qpow(d) - fld.qpow(-d))
                    nxt = []
                    for s, p0, p1, p2 in parts:
                        sb = s * bd
                        nxt.append((sb, p0 + d * a0, p1 + d * a1, p2 + d * a2))
                        nxt.append((-sb, p0 - d * a0, p1 - d * a1, p2 - d * a2))
                    parts = nxt
            for s, p0, p1, p2 in parts:
                s = s * fld.qpow(p0) * denom
                if (p1, p2) == kvec:
                    _add_into(rho, fm, s, fld)
                elif (p1, p2) == nvec:
                    g1, g2 = grade_h(mono_grade(fm))
                    hig = g1 if i == 1 else g2
                    _add_into(rhop, fm, -(s * fld.qpow(-di * hig)), fld)
                else:
                    raise AssertionError(
                        "unclassified Cartan dressing %r" % ((p1, p2),))
        return rho, rhop


def antipode_scale_raise(fld, i):
    """S(E_i) = -q_i E_i under the symmetric coproduct dressing."""
    return -fld.qpow(D_SIMPLE[i])


def antipode_scale_lower(fld, i):
    """S(F_i) = -q_i^{-1} F_i under the symmetric coproduct dressing."""
    return -fld.qpow(-D_SIMPLE[i])
