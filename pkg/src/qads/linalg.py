"""Exact dense linear algebra over the cyclotomic field, plus a
modular-certified fast path for large nullspace computations.

The fast path evaluates a matrix over Q(zeta_L) at all phi(L) embeddings
zeta -> g^u mod p for primes p = 1 (mod L), row-reduces each evaluation
independently with numpy int64 arithmetic, demands agreement of rank and
pivot structure, reconstructs the canonical nullspace basis through a
Vandermonde solve + CRT + rational reconstruction, and finally certifies
the result exactly: A N = 0 over the field together with a nonzero r x r
pivot minor modulo one prime (a ring homomorphism argument gives
rank >= r, so the basis is complete).  On any failure it falls back to
plain exact elimination, so the modular layer can never produce a wrong
answer, only a slow one.
"""

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .scalars import Cyc, CycField


# -- generic exact dense routines -------------------------------------------

def mat_zero(rows, cols, fld):
    return [[fld.zero for _ in range(cols)] for _ in range(rows)]


def mat_identity(n, fld):
    out = mat_zero(n, n, fld)
    for i in range(n):
        out[i][i] = fld.one
    return out


def matmul(A, B, fld):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = mat_zero(rows, cols, fld)
    for i in range(rows):
        Ai = A[i]
        oi = out[i]
        for k in range(inner):
            a = Ai[k]
            if fld.is_zero(a):
                continue
            Bk = B[k]
            for j in range(cols):
                b = Bk[j]
                if not fld.is_zero(b):
                    oi[j] = oi[j] + a * b
    return out


def matvec(A, x, fld):
    out = []
    for row in A:
        acc = fld.zero
        for a, xi in zip(row, x):
            if not (fld.is_zero(a) or fld.is_zero(xi)):
                acc = acc + a * xi
        out.append(acc)
    return out


def _cyc_to_int_block(A, fld):
    """Clear denominators: (int coefficient array [r, c, phi], common den)."""
    den = 1
    for row in A:
        for x in row:
            den = den * (x.den // gcd(den, x.den))
    arr = np.zeros((len(A), len(A[0]), fld.phi), dtype=object)
    for i, row in enumerate(A):
        for j, x in enumerate(row):
            s = den // x.den
            if s == 1:
                arr[i, j, :] = x.num
            else:
                arr[i, j, :] = [v * s for v in x.num]
    return arr, den


def fast_matmul(A, B, fld):
    """Exact product of Cyc matrices through integer coefficient blocks.

    The naive triple loop pays Python dispatch per scalar product; here
    the zeta-power convolution runs as phi stacked integer matmuls
    (int64 when a worst-case bound fits, object dtype otherwise) and
    entries are rebuilt once at the end.
    """
    rows, inner = len(A), len(B)
    cols = len(B[0]) if B else 0
    if not rows or not inner or not cols:
        return mat_zero(rows, cols, fld)
    if not isinstance(fld, CycField):
        return matmul(A, B, fld)
    phi = fld.phi
    NA, dA = _cyc_to_int_block(A, fld)
    NB, dB = _cyc_to_int_block(B, fld)
    amax = max(1, int(np.abs(NA.astype(object)).max()))
    bmax = max(1, int(np.abs(NB.astype(object)).max()))
    if amax * bmax * inner * phi < 2 ** 62:
        NA = NA.astype(np.int64)
        NB = NB.astype(np.int64)
    wide = np.zeros((rows, cols, 2 * phi - 1), dtype=NA.dtype)
    flatB = NB.reshape(inner, cols * phi)
    for u in range(phi):
        part = (NA[:, :, u] @ flatB).reshape(rows, cols, phi)
        wide[:, :, u:u + phi] += part
    # fold zeta^t for t >= phi back onto the power basis
    low = wide[:, :, :phi].astype(object)
    for t in range(phi, 2 * phi - 1):
        zt = fld._zpow[t]
        col = wide[:, :, t]
        if not col.any():
            continue
        for k in range(phi):
            if zt[k]:
                low[:, :, k] += col * zt[k]
    den = dA * dB
    out = []
    for i in range(rows):
        out.append([Cyc(fld, tuple(int(v) for v in low[i, j]), den)
                    for j in range(cols)])
    return out


def mat_conj_transpose(A, fld):
    if not A:
        return []
    return [[fld.conj(A[i][j]) for i in range(len(A))]
            for j in range(len(A[0]))]


def rref(A, fld):
    """Reduced row echelon form; returns (R, pivot_cols)."""
    R = [row[:] for row in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not fld.is_zero(R[i][c]):
                pr = i
                break
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = fld.one / R[r][c]
        R[r] = [inv * x for x in R[r]]
        for i in range(rows):
            if i != r and not fld.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def nullspace_exact(A, fld):
    """Canonical kernel basis (one vector per free column)."""
    if not A:
        return []
    cols = len(A[0])
    R, pivots = rref(A, fld)
    pivset = set(pivots)
    basis = []
    for j in range(cols):
        if j in pivset:
            continue
        v = [fld.zero] * cols
        v[j] = fld.one
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][j]
        basis.append(v)
    return basis


def solve(A, B, fld):
    """Solve A X = B for square invertible A (B given as columns list)."""
    n = len(A)
    aug = [A[i][:] + [col[i] for col in B] for i in range(n)]
    R, pivots = rref(aug, fld)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix in solve")
    ncols = len(B)
    return [[R[i][n + j] for i in range(n)] for j in range(ncols)]


def inverse(A, fld):
    n = len(A)
    cols = solve(A, [[fld.one if i == j else fld.zero for i in range(n)]
                     for j in range(n)], fld)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def hermitian_minor_signs(G, fld):
    """Leading principal minor signs via swap-free elimination.

    Returns (is_positive_definite, pivot_signs).  A zero pivot before
    completion means a singular leading block: not positive definite,
    reported with sign 0 at that position.
    """
    n = len(G)
    W = [row[:] for row in G]
    signs = []
    for k in range(n):
        piv = W[k][k]
        s = fld.sign(piv)
        signs.append(s)
        if s <= 0:
            return False, signs
        inv = fld.one / piv
        for i in range(k + 1, n):
            f = W[i][k] * inv
            if fld.is_zero(f):
                continue
            Wk = W[k]
            Wi = W[i]
            for j in range(k, n):
                Wi[j] = Wi[j] - f * Wk[j]
    return True, signs


# -- modular machinery -------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(p):
    if p < 2:
        return False
    for sp in _SMALL_PRIMES:
        if p % sp == 0:
            return p == sp
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _primes_1_mod(L, bound=30_000_000):
    """Primes p = 1 (mod L) descending from bound; deterministic order."""
    k = (bound - 1) // L
    while k > 0:
        p = k * L + 1
        if _is_prime(p):
            yield p
        k -= 1


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _primitive_root_of_unity(p, L):
    facs = _prime_factors(L)
    for a in range(2, 200):
        g = pow(a, (p - 1) // L, p)
        if g == 1:
            continue
        if all(pow(g, L // f, p) != 1 for f in facs):
            return g
    raise ArithmeticError(f"no order-{L} element found mod {p}")


def _rref_modp(M, p):
    """RREF over GF(p); returns (R, pivot_cols, pivot_rows, rank)."""
    R = M.copy()
    rows, cols = R.shape
    perm = list(range(rows))
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
            perm[r], perm[pr] = perm[pr], perm[r]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            R[mask] = (R[mask] - np.outer(col[mask], R[r])) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots, perm[:r], r


def _det_modp(M, p):
    A = M.copy()
    n = A.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        pr = c + int(nz[0])
        if pr != c:
            A[[c, pr]] = A[[pr, c]]
            det = (-det) % p
        piv = int(A[c, c])
        det = det * piv % p
        inv = pow(piv, p - 2, p)
        A[c] = (A[c] * inv) % p
        col = A[c + 1:, c].copy()
        mask = np.nonzero(col)[0]
        if mask.size:
            A[c + 1 + mask] = (A[c + 1 + mask] - np.outer(col[mask], A[c])) % p
    return det


def _rat_recon(c, M):
    """Smallest num/den with num = c den (mod M); None if out of range."""
    bound = isqrt(M // 2)
    a0, a1 = M, c % M
    x0, x1 = 0, 1
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        x0, x1 = x1, x0 - q * x1
    den, num = x1, a1
    if den < 0:
        den, num = -den, -num
    if den == 0 or den > bound or gcd(num, den) != 1:
        return None
    if (num - c * den) % M != 0:
        return None
    return num, den


class _BadPrime(Exception):
    pass


class _Evaluation:
    """One prime, one embedding zeta -> z; numpy image of the matrix."""

    def __init__(self, p, z, L):
        self.p = p
        self.z = z
        self.zpows = [pow(z, k, p) for k in range(L)]


def _eval_matrix(A, ev, phi):
    p = ev.p
    zp = ev.zpows
    rows = len(A)
    cols = len(A[0])
    out = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        Ai = A[i]
        for j in range(cols):
            x = Ai[j]
            num = x.num
            acc = 0
            for k in range(phi):
                c = num[k]
                if c:
                    acc += c * zp[k]
            d = x.den
            if d != 1:
                if d % p == 0:
                    raise _BadPrime(p)
                acc = acc * pow(d, p - 2, p)
            out[i, j] = acc % p
    return out


def _matrix_residues(A, p, phi):
    """Coefficient residues of every entry, reduced once per prime.

    Returns an int64 array of shape (rows*cols, phi); evaluating at an
    embedding is then a single numpy matvec shared by all phi units.
    """
    rows, cols = len(A), len(A[0])
    out = np.zeros((rows * cols, phi), dtype=np.int64)
    dinv_cache = {1: 1}
    idx = 0
    for row in A:
        for x in row:
            d = x.den
            dinv = dinv_cache.get(d)
            if dinv is None:
                if d % p == 0:
                    raise _BadPrime(p)
                dinv = pow(d, p - 2, p)
                dinv_cache[d] = dinv
            for k, c in enumerate(x.num):
                if c:
                    out[idx, k] = (c % p) * dinv % p
            idx += 1
    return out


def nullspace_certified(A, fld, max_primes=64):
    """Kernel basis of a Cyc matrix through the modular path.

    Falls back to nullspace_exact if reconstruction or certification
    fails; the returned basis is always exactly verified.
    """
    if not A or not A[0]:
        return nullspace_exact(A, fld)
    L, phi = fld.L, fld.phi
    units = [u for u in range(L) if gcd(u, L) == 1]
    assert len(units) == phi

    rows = len(A)
    prime_iter = _primes_1_mod(L)
    collected = []   # (p, g, per-unit RREF data)
    structure = None  # (rank, pivot tuple)
    n_primes_target = 2

    while True:
        try:
            p = next(prime_iter)
        except StopIteration:
            return nullspace_exact(A, fld)
        try:
            g = _primitive_root_of_unity(p, L)
            residues = _matrix_residues(A, p, phi)
            per_unit = []
            ok = True
            for u in units:
                ev = _Evaluation(p, pow(g, u, p), L)
                zvec = np.array(ev.zpows[:phi], dtype=np.int64)
                M = (residues @ zvec % p).reshape(rows, -1)
                R, pivots, pivrows, rank = _rref_modp(M, p)
                if structure is None:
                    structure = (rank, tuple(pivots))
                if (rank, tuple(pivots)) != structure:
                    ok = False  # unlucky prime somewhere; restart detection
                    break
                per_unit.append((ev, R, pivots, pivrows, rank))
        except _BadPrime:
            continue
        if not ok:
            collected = []
            structure = None
            continue
        collected.append((p, g, per_unit))
        if len(collected) < n_primes_target:
            continue

        basis = _reconstruct_nullspace(A, fld, collected)
        if basis is not None:
            if _certify_nullspace(A, basis, fld, collected, structure):
                return basis
        n_primes_target *= 2
        if n_primes_target > max_primes:
            return nullspace_exact(A, fld)


def _reconstruct_nullspace(A, fld, collected):
    _, _, per_unit0 = collected[0]
    pivots = per_unit0[0][2]
    rank = len(pivots)
    cols = len(A[0])
    phi = fld.phi
    pivset = set(pivots)
    free = [j for j in range(cols) if j not in pivset]
    if not free:
        return []

    # per prime: solve Vandermonde for zeta-coefficients of each needed entry
    per_prime_coeffs = []
    moduli = []
    for p, g, per_unit in collected:
        V = np.zeros((phi, phi), dtype=np.int64)
        for r, (ev, _, _, _, _) in enumerate(per_unit):
            for k in range(phi):
                V[r, k] = ev.zpows[k]
        Vinv = _inverse_modp(V, p)
        # entries: for each free col j, the pivot-row values; stack as
        # (phi, rank*nfree) then multiply
        stacked = np.zeros((phi, len(free) * max(rank, 1)), dtype=np.int64)
        for r, (ev, R, pv, _, _) in enumerate(per_unit):
            colidx = 0
            for j in free:
                for rr in range(rank):
                    stacked[r, colidx] = R[rr, j]
                    colidx += 1
        coeffs = _matmul_modp(Vinv, stacked, p)
        per_prime_coeffs.append(coeffs)
        moduli.append(p)

    # CRT + rational reconstruction, entry by entry
    M = 1
    for p in moduli:
        M *= p
    basis = []
    colidx = 0
    for j in free:
        vec = [fld.zero] * cols
        vec[j] = fld.one
        ok = True
        for rr in range(len(pivots)):
            coeff_vec = []
            for k in range(phi):
                residues = [int(per_prime_coeffs[t][k, colidx + rr])
                            for t in range(len(moduli))]
                c = _crt(residues, moduli)
                rec = _rat_recon(c, M)
                if rec is None:
                    return None
                coeff_vec.append(Fraction(rec[0], rec[1]))
            den = 1
            for fr in coeff_vec:
                den = den * fr.denominator // gcd(den, fr.denominator)
            num = tuple(int(fr * den) for fr in coeff_vec)
            vec[pivots[rr]] = -Cyc(fld, num, den)
        colidx += len(pivots)
        basis.append(vec)
    return basis


def _crt(residues, moduli):
    x, M = 0, 1
    for r, p in zip(residues, moduli):
        h = (r - x) * pow(M % p, p - 2, p) % p
        x += M * h
        M *= p
    return x % M


def _matmul_modp(A, B, p):
    # int64-safe: entries < p <= 3e7, inner dimension phi <= 16, so the
    # accumulated sums stay under 2^54
    assert A.shape[1] <= 16
    return (A @ B) % p


def _inverse_modp(V, p):
    n = V.shape[0]
    aug = np.concatenate([V % p, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots, _, rank = _rref_modp(aug, p)
    if rank < n or pivots[:n] != list(range(n)):
        raise ArithmeticError("Vandermonde singular mod p")
    return R[:, n:]


def _certify_nullspace(A, basis, fld, collected, structure):
    # exact A v = 0 for every candidate, in one convolution matmul
    B = [[v[r] for v in basis] for r in range(len(A[0]))]
    for row in fast_matmul(A, B, fld):
        for x in row:
            if not fld.is_zero(x):
                return False
    # rank certificate: nonzero pivot minor of the original matrix mod p
    rank, pivots = structure
    if rank == 0:
        return True
    p, g, per_unit = collected[0]
    ev, _, _, pivrows, _ = per_unit[0]
    M = _eval_matrix([[A[i][j] for j in pivots] for i in pivrows], ev, fld.phi)
    return _det_modp(M, p) != 0


def nullspace(A, fld, threshold=26):
    """Dispatch: exact for small or non-cyclotomic, modular above."""
    if not A:
        return []
    n = max(len(A), len(A[0]))
    if isinstance(fld, CycField) and n > threshold:
        return nullspace_certified(A, fld)
    return nullspace_exact(A, fld)


def coordinate_complement(vectors, n, fld):
    """Split coordinates into (dependent, free) against a vector family.

    The dependent set indexes a maximal subfamily of coordinates carried
    by the span; the free set indexes a complement basis of the quotient.
    """
    if not vectors:
        return [], list(range(n))
    R, pivots = rref(vectors, fld)
    free = [j for j in range(n) if j not in set(pivots)]
    return list(pivots), free
