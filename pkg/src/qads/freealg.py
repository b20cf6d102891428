"""Free words on the two raising generators, modulo the Serre ideal.

This layer exists for honesty, not speed: the production engine works in
the ordered monomial basis, and everything it knows is derived here by
linear algebra in the free algebra.  Keeping the derivation executable
means the straightening rules can never drift from the defining
relations.

A free element is a dict {word: coeff} with word a tuple over {1, 2}.
"""

from fractions import Fraction

from .linalg import rref
from .roots import CARTAN


def grade_of_word(w):
    return (sum(1 for x in w if x == 1), sum(1 for x in w if x == 2))


def el_scale(e, c, fld):
    if fld.is_zero(c):
        return {}
    return {w: c * v for w, v in e.items()}


def el_add(a, b, fld):
    out = dict(a)
    for w, v in b.items():
        s = out.get(w)
        s = v if s is None else s + v
        if fld.is_zero(s):
            out.pop(w, None)
        else:
            out[w] = s
    return out


def el_mul(a, b, fld):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            c = c1 * c2
            s = out.get(w)
            s = c if s is None else s + c
            if fld.is_zero(s):
                out.pop(w, None)
            else:
                out[w] = s
    return out


def serre_elements(fld):
    """The two defining higher relations, as free elements.

    ad-degree 2 in the long-root generator against one short, and
    ad-degree 3 in the short-root generator against one long; the
    exponents come from the Cartan matrix rows (1 - A_21, 1 - A_12).
    """
    assert 1 - CARTAN[1][0] == 2 and 1 - CARTAN[0][1] == 3
    sA = {}
    for k in range(3):
        w = (1,) * k + (2,) + (1,) * (2 - k)
        coeff = fld.brk_binom(2, k) * fld.from_int((-1) ** k)
        sA = el_add(sA, {w: coeff}, fld)
    sB = {}
    half = Fraction(1, 2)
    for k in range(4):
        w = (2,) * k + (1,) + (2,) * (3 - k)
        coeff = fld.brk_binom(3, k, d=half) * fld.from_int((-1) ** k)
        sB = el_add(sB, {w: coeff}, fld)
    return sA, sB


def words_of_grade(k1, k2):
    """All free words with k1 ones and k2 twos, lexicographic."""
    if k1 == 0:
        return [(2,) * k2]
    if k2 == 0:
        return [(1,) * k1]
    out = []
    for w in words_of_grade(k1 - 1, k2):
        out.append((1,) + w)
    for w in words_of_grade(k1, k2 - 1):
        out.append((2,) + w)
    return out


def serre_ideal_basis(k1, k2, fld):
    """Spanning set u sigma v of the two-sided ideal slice at a grade."""
    sA, sB = serre_elements(fld)
    out = []
    for sig, (g1, g2) in ((sA, (2, 1)), (sB, (1, 3))):
        r1, r2 = k1 - g1, k2 - g2
        if r1 < 0 or r2 < 0:
            continue
        for u1 in range(r1 + 1):
            for u2 in range(r2 + 1):
                for u in words_of_grade(u1, u2):
                    for v in words_of_grade(r1 - u1, r2 - u2):
                        out.append(el_mul({u: fld.one},
                                          el_mul(sig, {v: fld.one}, fld),
                                          fld))
    return out


def element_vector(e, basis_words, fld):
    idx = {w: i for i, w in enumerate(basis_words)}
    v = [fld.zero] * len(basis_words)
    for w, c in e.items():
        v[idx[w]] = c
    return v


def quotient_dim(k1, k2, fld):
    """Dimension of the Serre quotient at a grade, by brute rank."""
    words = words_of_grade(k1, k2)
    ideal = serre_ideal_basis(k1, k2, fld)
    if not ideal:
        return len(words)
    rows = [element_vector(e, words, fld) for e in ideal]
    _, pivots = rref(rows, fld)
    return len(words) - len(pivots)


def reduce_against_ideal(target, candidates, k1, k2, fld):
    """Write target = sum c_i candidate_i modulo the ideal slice.

    Returns the coefficient list, or raises if the expression is not
    unique (candidates dependent mod ideal) or has no solution.  Solved
    by row reduction of [ideal | candidates | target] transposed.
    """
    words = words_of_grade(k1, k2)
    ideal = serre_ideal_basis(k1, k2, fld)
    cols = []
    for e in ideal:
        cols.append(element_vector(e, words, fld))
    ncand = len(candidates)
    for e in candidates:
        cols.append(element_vector(e, words, fld))
    cols.append(element_vector(target, words, fld))
    # solve cols-matrix x = target over the word coordinates
    A = [[cols[j][i] for j in range(len(cols) - 1)] for i in range(len(words))]
    b = [cols[-1][i] for i in range(len(words))]
    aug = [A[i] + [b[i]] for i in range(len(words))]
    R, pivots = rref(aug, fld)
    ncols = len(cols) - 1
    if ncols in pivots:
        raise ArithmeticError("target not in span: inconsistent system")
    sol = [fld.zero] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = R[r][ncols]
    # uniqueness of the candidate block: every candidate column pivotal
    nideal = len(ideal)
    for j in range(nideal, ncols):
        if j not in pivots:
            raise ArithmeticError("candidate set dependent modulo ideal")
    return sol[nideal:]
