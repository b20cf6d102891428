"""Tensor products under the coproduct and the physical truncated product.

The coproduct dresses each generator symmetrically,
Delta(X_i) = X_i (x) q_i^{H_i/2} + q_i^{-H_i/2} (x) X_i, matching the
antipode convention in pbw.  A tensor product is exposed as a lazy
GradedModule (blocks assembled on demand), so the relation and Serre
checks run on products unchanged.

truncated_product keeps, out of all joint lowest-weight states of the
product, exactly those whose abstract irrep carries a positive definite
contravariant form; everything else is discarded and reported.  Weights
differing by multiples of 2*lambda0 reduce to the fundamental alcove
exactly, since q^(m/n) = 1 makes every bracket periodic under the shift.

Rank bookkeeping on large products runs modulo two fixed word-size
primes whose answers must agree; the low-energy region, where weight
spaces are still narrow, is mirrored in exact arithmetic and asserted
against the modular answer.  Summand modules and their unitarity
certificates are always exact.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import (
    _Evaluation, _BadPrime, _eval_matrix, _primes_1_mod,
    _primitive_root_of_unity, _rref_modp, fast_matmul, mat_conj_transpose,
    nullspace_exact, rref,
)
from .roots import ALPHA, Weight
from .verma import (
    BoxTooSmall, GradedModule, _gkey, _shift, build_physical_irrep,
    is_unitary,
)

D_I = {1: Fraction(1), 2: Fraction(1, 2)}

# widest weight space still mirrored in exact arithmetic
EXACT_COLS = 48

# products at most this large memoize their assembled blocks
BLOCK_MEMO_LIMIT = 6500


def _pair_segments(A, B, g):
    """Ordered (ga, gb, offset) segments of the product grade g."""
    segs = []
    off = 0
    for ga in A.grades:
        na = A.dim(ga)
        if not na:
            continue
        gb = (g[0] - ga[0], g[1] - ga[1])
        if gb[0] < 0 or gb[1] < 0:
            continue
        nb = B.dim(gb)
        if not nb:
            continue
        segs.append((ga, gb, off))
        off += na * nb
    return segs


class TensorPair(GradedModule):
    """Product module with generator blocks assembled on demand.

    Pair states are ordered segment by segment (left factor grade in
    grade order), row-major within a segment.  Everything a GradedModule
    offers works except the stored gram dict, which gram_block replaces.
    """

    def block(self, kind, i, g):
        memo = self.meta['blockmemo']
        key = (kind, i, g)
        if key in memo:
            return memo[key]
        M = self._assemble(kind, i, g, opposite=False)
        if self.total_dim <= BLOCK_MEMO_LIMIT:
            memo[key] = M
        return M

    def _assemble(self, kind, i, g, opposite):
        """Coproduct block of generator i from grade g.

        opposite assembles the flipped coproduct instead (the Cartan
        dressing swaps legs); the form check needs it.
        """
        A, B = self.meta['factors']
        fld = self.fld
        step = +1 if kind == 'up' else -1
        tgt = _shift(g, i, step)
        if not self.labels.get(tgt) or not self.labels.get(g):
            return None
        toff = {(ga, gb): off for ga, gb, off in _pair_segments(A, B, tgt)}
        out = [[fld.zero] * self.dim(g) for _ in range(self.dim(tgt))]
        d = D_I[i]
        for ga, gb, off in _pair_segments(A, B, g):
            na, nb = A.dim(ga), B.dim(gb)
            wa, wb = A.weight_at(ga), B.weight_at(gb)
            hb = wb.h1 if i == 1 else wb.h2
            ha = wa.h1 if i == 1 else wa.h2
            sA = fld.qpow(d * Fraction(hb, 2) * (-1 if opposite else 1))
            sB = fld.qpow(d * Fraction(ha, 2) * (1 if opposite else -1))
            MA = A.block(kind, i, ga)
            ta = _shift(ga, i, step)
            if MA is not None and (ta, gb) in toff:
                o2 = toff[(ta, gb)]
                for ra in range(len(MA)):
                    row = MA[ra]
                    for ca in range(na):
                        x = row[ca]
                        if not fld.is_zero(x):
                            sx = sA * x
                            for ib in range(nb):
                                out[o2 + ra * nb + ib][off + ca * nb + ib] = sx
            MB = B.block(kind, i, gb)
            tb = _shift(gb, i, step)
            if MB is not None and (ga, tb) in toff:
                o2 = toff[(ga, tb)]
                nb2 = B.dim(tb)
                for rb in range(len(MB)):
                    row = MB[rb]
                    for cb in range(nb):
                        x = row[cb]
                        if not fld.is_zero(x):
                            sx = sB * x
                            for ia in range(na):
                                r = o2 + ia * nb2 + rb
                                c = off + ia * nb + cb
                                out[r][c] = out[r][c] + sx
        return out

    def gram_block(self, g):
        """Product contravariant form on one grade, exact."""
        A, B = self.meta['factors']
        fld = self.fld
        n = self.dim(g)
        G = [[fld.zero] * n for _ in range(n)]
        for ga, gb, off in _pair_segments(A, B, g):
            GA, GB = A.gram[ga], B.gram[gb]
            na, nb = len(GA), len(GB)
            for ia in range(na):
                for ja in range(na):
                    x = GA[ia][ja]
                    if fld.is_zero(x):
                        continue
                    for ib in range(nb):
                        for jb in range(nb):
                            y = GB[ib][jb]
                            if not fld.is_zero(y):
                                G[off + ia * nb + ib][off + ja * nb + jb] = x * y
        return G


def tensor_module(A, B):
    """Tensor product of two graded modules under the coproduct."""
    if A.fld is not B.fld:
        raise ValueError("factors live over different cyclotomic fields")
    seen = set()
    for ga in A.support():
        for gb in B.support():
            seen.add((ga[0] + gb[0], ga[1] + gb[1]))
    grades = sorted(seen, key=_gkey)
    T = TensorPair(
        fld=A.fld, lw=A.lw + B.lw, grades=grades, labels={}, up={},
        down={}, gram={}, kind='tensor',
        meta={'factors': (A, B), 'blockmemo': {},
              'alg': A.meta.get('alg') or B.meta.get('alg'),
              'star': A.meta.get('star') or B.meta.get('star')})
    for g in grades:
        n = sum(A.dim(ga) * B.dim(gb)
                for ga, gb, _ in _pair_segments(A, B, g))
        if n:
            T.labels[g] = [(g, k) for k in range(n)]
    T.grades = [g for g in grades if g in T.labels]
    closed = A.meta.get('closed', True) and B.meta.get('closed', True)
    rim = max(g[0] for g in T.grades)
    for M in (A, B):
        if not M.meta.get('closed', True):
            # pair states beyond a factor's rim are unreliable, so the
            # product inherits the tightest factor rim
            rim = min(rim, M.meta['box'][0])
    T.meta.update(closed=closed,
                  box=(rim, max(g[1] for g in T.grades)))
    return T


def tensor_form_check(T):
    """Contravariance of the product form under the factor-flip star.

    The adjoint of a coproduct block w.r.t. the product form is the
    star partner acting through the flipped coproduct: for each
    generator block M from g to tgt,  M^dag G_tgt = sign * G_g N  with
    N the opposite-coproduct partner block from tgt back to g.  Exact,
    so only sensible on small products.
    """
    if T.total_dim > 1600:
        raise ValueError("exact form check is meant for small products")
    fld = T.fld
    star = T.meta.get('star') or (-1, 1)
    sgn = {1: star[0], 2: star[1]}
    grams = {g: T.gram_block(g) for g in T.grades}
    for g in T.grades:
        for i in (1, 2):
            for kind, back in (('up', 'down'), ('down', 'up')):
                M = T.block(kind, i, g)
                if M is None:
                    continue
                tgt = _shift(g, i, +1 if kind == 'up' else -1)
                N = T._assemble(back, i, tgt, opposite=True)
                lhs = fast_matmul(mat_conj_transpose(M, fld), grams[tgt], fld)
                rhs = fast_matmul(grams[g], N, fld)
                sg = sgn[i]
                for r in range(len(lhs)):
                    for c in range(len(lhs[0])):
                        if not fld.is_zero(lhs[r][c] - sg * rhs[r][c]):
                            raise AssertionError(
                                "product form not contravariant at grade "
                                f"{g}, generator {i}, {kind}")
    return True


def _stacked_down(T, g):
    """Exact joint lowering matrix; empty list when nothing constrains."""
    rows = []
    for i in (1, 2):
        M = T.block('down', i, g)
        if M is not None:
            rows.extend(M)
    return rows


def lowest_weight_states(T, e_cap=None):
    """Joint kernel of both lowering actions, grade by grade, exact.

    Returns [(grade, weight, basis rows)].  Size-guarded; the
    decomposition pipeline handles large products on its own.
    """
    if T.total_dim > 6000 and e_cap is None:
        raise ValueError("product too large for a full exact kernel scan; "
                         "pass e_cap or use truncated_product")
    out = []
    for g in T.grades:
        w = T.weight_at(g)
        if e_cap is not None and w.energy > e_cap:
            continue
        rows = _stacked_down(T, g)
        n = T.dim(g)
        if not rows:
            ker = [[T.fld.one if j == k else T.fld.zero for j in range(n)]
                   for k in range(n)]
        else:
            ker = nullspace_exact(rows, T.fld)
        if ker:
            out.append((g, w, ker))
    return out


def translate_module(M, k):
    """Shift a module by k copies of 2*lambda0 = (m/n) alpha3.

    Exact because q^(m/n) = 1: every Cartan eigenvalue moves by a
    multiple of m/n, so all brackets, blocks and gram matrices coincide
    with the untranslated ones and can be shared.
    """
    fld = M.fld
    per = Fraction(fld.m, fld.n)
    assert per.denominator == 1, "integral-window roots only"
    assert fld.qpow(per) == fld.one
    return GradedModule(
        fld=fld, lw=M.lw + (int(per) * k) * ALPHA[3], grades=M.grades,
        labels=M.labels, up=M.up, down=M.down, gram=M.gram, kind=M.kind,
        meta=dict(M.meta, translated=M.meta.get('translated', 0) + k))


# -- modular rank layer -----------------------------------------------------

class _ModCtx:
    """One prime: factor blocks and q-powers embedded as int64 images."""

    def __init__(self, fld, p):
        self.fld = fld
        self.p = p
        z = _primitive_root_of_unity(p, fld.L)
        self.ev = _Evaluation(p, z, fld.L)
        self._blocks = {}

    def qpow(self, r):
        e = Fraction(r) * self.fld.L * self.fld.n / self.fld.m
        assert e.denominator == 1, "q-power leaves the cyclotomic field"
        return self.ev.zpows[int(e) % self.fld.L]

    def factor_block(self, M, kind, i, g):
        key = (id(M), kind, i, g)
        if key not in self._blocks:
            blk = M.block(kind, i, g)
            self._blocks[key] = (None if not blk else
                                 _eval_matrix(blk, self.ev, self.fld.phi))
        return self._blocks[key]

    def pair_block(self, T, kind, i, g):
        """Product block as an int64 image, no exact intermediates."""
        A, B = T.meta['factors']
        step = +1 if kind == 'up' else -1
        tgt = _shift(g, i, step)
        if not T.labels.get(tgt) or not T.labels.get(g):
            return None
        toff = {(ga, gb): off for ga, gb, off in _pair_segments(A, B, tgt)}
        out = np.zeros((T.dim(tgt), T.dim(g)), dtype=np.int64)
        d = D_I[i]
        p = self.p
        for ga, gb, off in _pair_segments(A, B, g):
            na, nb = A.dim(ga), B.dim(gb)
            wa, wb = A.weight_at(ga), B.weight_at(gb)
            hb = wb.h1 if i == 1 else wb.h2
            ha = wa.h1 if i == 1 else wa.h2
            MA = self.factor_block(A, kind, i, ga)
            ta = _shift(ga, i, step)
            if MA is not None and (ta, gb) in toff:
                o2 = toff[(ta, gb)]
                blk = (MA * self.qpow(d * Fraction(hb, 2))) % p
                for ib in range(nb):
                    out[o2 + ib:o2 + len(MA) * nb + ib:nb,
                        off + ib:off + na * nb + ib:nb] = blk
            MB = self.factor_block(B, kind, i, gb)
            tb = _shift(gb, i, step)
            if MB is not None and (ga, tb) in toff:
                o2 = toff[(ga, tb)]
                nb2 = B.dim(tb)
                blk = (MB * self.qpow(-d * Fraction(ha, 2))) % p
                for ia in range(na):
                    out[o2 + ia * nb2:o2 + (ia + 1) * nb2,
                        off + ia * nb:off + (ia + 1) * nb] += blk
        return out % p


def _nullspace_modp(M, p):
    """Kernel basis rows of an int64 matrix over GF(p)."""
    rows, cols = M.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots, _, _ = _rref_modp(M % p, p)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        out[k, c] = 1
        for r, pc in enumerate(pivots):
            out[k, pc] = (-R[r, c]) % p
    return out


class _SpanP:
    """Row spans over GF(p), one echelon matrix per grade."""

    def __init__(self, p):
        self.p = p
        self.rows = {}

    def residual_rank(self, g, new):
        return self._reduce(g, new)[1]

    def _reduce(self, g, new):
        p = self.p
        new = new % p
        R = self.rows.get(g)
        if R is not None and R.shape[0]:
            for r in range(R.shape[0]):
                c = int(np.nonzero(R[r])[0][0])
                col = new[:, c].copy()
                nz = np.nonzero(col)[0]
                if nz.size:
                    new[nz] = (new[nz] - np.outer(col[nz], R[r])) % p
        red, _, _, rank = _rref_modp(new, p)
        return red[:rank], rank

    def add(self, g, new):
        if new is None or new.shape[0] == 0:
            return
        red, rank = self._reduce(g, new)
        if not rank:
            return
        R = self.rows.get(g)
        self.rows[g] = red if R is None else np.vstack([R, red])


# -- physical classification ------------------------------------------------

@dataclass
class Summand:
    """One kept piece of a truncated product."""
    label: tuple            # (E0, s) of the lowest weight
    weight: Weight
    multiplicity: int
    dim: int
    translate: int          # alcove translate count, 0 = fundamental
    module: object = None


@dataclass
class FusionResult:
    summands: list
    discarded: list         # (label, kernel_dim, reason)
    diagnostics: dict = field(default_factory=dict)

    def multiset(self):
        out = {}
        for s in self.summands:
            out[s.label] = out.get(s.label, 0) + s.multiplicity
        return out

    def total_kept_dim(self):
        return sum(s.dim * s.multiplicity for s in self.summands)


class PhysicalCache:
    """Face-value unitarity classification of candidate lowest weights.

    A candidate is reduced into the fundamental alcove by the 2*lambda0
    period, screened by its first-level norm signs (a strictly negative
    level-one norm survives into the irrep, so rejection is sound), and
    otherwise settled by building the abstract irrep and certifying its
    form exactly.  Verdicts are cached by reduced label.
    """

    def __init__(self, alg):
        self.alg = alg
        self.fld = alg.fld
        self.per = Fraction(self.fld.m, self.fld.n)
        self._verdicts = {}

    def reduce(self, w):
        """(alcove representative, translate count)."""
        if self.per.denominator != 1:
            return w, 0
        k = int(w.energy // int(self.per))
        return w + (-int(self.per) * k) * ALPHA[3], k

    def _sign_reject(self, w):
        fld = self.fld
        for val in (fld.bracket(w.h1), -fld.bracket(w.h2, Fraction(1, 2))):
            if not fld.is_zero(val) and fld.sign(val) < 0:
                return True
        return False

    def classify(self, w):
        """(unitary, translate count, fundamental module or None)."""
        res, k = self.reduce(w)
        lab = res.label
        if lab not in self._verdicts:
            self._verdicts[lab] = self._build(res)
        ok, mod = self._verdicts[lab]
        return ok, k, mod

    def _build(self, res):
        if self._sign_reject(res):
            return False, None
        e0, s = res.label
        # cheap probe: a violation below the probe cap is conclusive on
        # a truncated module, and most rejects show up early
        probe_cap = res.energy + self.per / 2
        try:
            P = build_physical_irrep(self.alg, e0, s, e_max=probe_cap,
                                     force=True)
        except BoxTooSmall:
            P = None          # closing family that wants a taller box
        except ValueError:
            return False, None
        if P is not None:
            if P.meta.get('closed', True):
                return self._certify(P)
            try:
                if not is_unitary(P, e_window=probe_cap):
                    return False, None
            except ValueError:
                return False, None
        try:
            L = build_physical_irrep(self.alg, e0, s, force=True)
        except (ValueError, BoxTooSmall):
            return False, None
        if not L.meta.get('closed', True):
            # never closes inside the scan box: not a finite summand
            return False, None
        return self._certify(L)

    @staticmethod
    def _certify(L):
        try:
            return bool(is_unitary(L)), L
        except ValueError:
            return False, None


# -- the truncated product --------------------------------------------------

def truncated_product(A, B, cache=None, exact_limit=EXACT_COLS):
    """Decompose A (x) B into its physical part, discarding the rest.

    Joint lowest-weight states are found grade by grade in raising-
    monotone order; kept states seed spans that are pushed along both
    raising directions, and later lowest-weight states only count
    modulo the spans (a state inside an earlier generator's closure
    generates a submodule that the quotient construction kills).

    Returns a FusionResult.  diagnostics['exact_verified_below'] is the
    energy at which the exact mirror of the rank bookkeeping first gave
    up (None when it covered the whole product).
    """
    if A.fld is not B.fld:
        raise ValueError("factors live over different cyclotomic fields")
    for M in (A, B):
        if not M.meta.get('closed', True):
            raise ValueError("cannot decompose an energy-truncated factor; "
                             "tensor_module still works on it")
    fld = A.fld
    if cache is None:
        cache = PhysicalCache(A.meta.get('alg') or B.meta.get('alg'))
    primes = _primes_1_mod(fld.L)
    for _attempt in range(5):
        pair = (next(primes), next(primes))
        try:
            return _decompose(tensor_module(A, B), cache, pair, exact_limit)
        except _BadPrime:
            continue
    raise ArithmeticError("ran out equal-characteristic prime pairs")


def _decompose(T, cache, primes, exact_limit):
    fld = T.fld
    ctxs = [_ModCtx(fld, p) for p in primes]
    spans = [_SpanP(p) for p in primes]
    exact_span = {}          # grade -> exact row list, mirrored region only
    exact_ok = {}            # grade -> whole feeder history stayed exact
    summands, discarded, absorbed = [], [], []
    kernels = {}             # label -> joint kernel dimension
    bad_exact_energy = None
    # the exact mirror stops past the window region it exists to certify
    exact_ecap = T.lw.energy + Fraction(fld.m, 2 * fld.n) + 2

    def exact_rank(rows):
        if not rows:
            return 0
        return len(rref(rows, fld)[1])

    for g in T.grades:
        w = T.weight_at(g)
        n = T.dim(g)
        feeders = [f for f in ((g[0] - 1, g[1]), (g[0], g[1] - 1))
                   if T.labels.get(f)]
        exact_ok[g] = (n <= exact_limit and w.energy <= exact_ecap
                       and all(exact_ok.get(f, False) for f in feeders))
        if not exact_ok[g] and bad_exact_energy is None:
            bad_exact_energy = w.energy

        kers = []
        for ctx in ctxs:
            mats = [M for M in (ctx.pair_block(T, 'down', i, g)
                                for i in (1, 2)) if M is not None]
            stack = (np.vstack(mats) if mats
                     else np.zeros((0, n), dtype=np.int64))
            kers.append(_nullspace_modp(stack, ctx.p))
        kdim = kers[0].shape[0]
        if kers[1].shape[0] != kdim:
            raise _BadPrime(ctxs[0].p)

        ker_exact = None
        if n <= exact_limit and w.energy <= exact_ecap:
            rows = _stacked_down(T, g)
            ker_exact = (nullspace_exact(rows, fld) if rows else
                         [[fld.one if j == k else fld.zero for j in range(n)]
                          for k in range(n)])
            assert len(ker_exact) == kdim, \
                f"exact and modular kernels disagree at grade {g}"

        if kdim:
            kernels[w.label] = kdim
            unitary, k_tr, mod = cache.classify(w)
            mults = [sp.residual_rank(g, K) for sp, K in zip(spans, kers)]
            if mults[0] != mults[1]:
                raise _BadPrime(ctxs[0].p)
            mult = mults[0]
            if exact_ok[g]:
                base = exact_span.get(g, [])
                em = exact_rank(base + ker_exact) - exact_rank(base)
                assert em == mult, \
                    f"exact and modular multiplicities disagree at grade {g}"
            if unitary and mult:
                summands.append(Summand(
                    label=w.label, weight=w, multiplicity=mult,
                    dim=mod.total_dim, translate=k_tr,
                    module=mod if k_tr == 0 else translate_module(mod, k_tr)))
                for sp, K in zip(spans, kers):
                    sp.add(g, K)
                if exact_ok[g]:
                    exact_span.setdefault(g, []).extend(ker_exact)
            elif unitary:
                absorbed.append((w.label, kdim))
            else:
                discarded.append((w.label, kdim, 'nonunitary'))

        for i in (1, 2):
            tgt = _shift(g, i, +1)
            if not T.labels.get(tgt):
                continue
            for ctx, sp in zip(ctxs, spans):
                R = sp.rows.get(g)
                if R is not None and R.shape[0]:
                    U = ctx.pair_block(T, 'up', i, g)
                    if U is not None:
                        sp.add(tgt, (R @ U.T) % ctx.p)
            rows = exact_span.get(g)
            if rows and exact_ok[g] and T.dim(tgt) <= exact_limit \
                    and T.weight_at(tgt).energy <= exact_ecap:
                U = T.block('up', i, g)
                if U is not None:
                    Ut = [list(col) for col in zip(*U)]
                    exact_span.setdefault(tgt, []).extend(
                        fast_matmul(rows, Ut, fld))

    summands.sort(key=lambda s: (s.weight.energy, s.weight.jz, s.label))
    discarded.sort()
    absorbed.sort()
    return FusionResult(summands, discarded, {
        'factors': tuple(M.lw.label for M in T.meta['factors']),
        'dim': T.total_dim,
        'primes': list(primes),
        'absorbed': absorbed,
        'kernels': kernels,
        'exact_verified_below': bad_exact_energy,
    })


# -- iterated products ------------------------------------------------------

class FusionContext:
    """Shared classification and product memo for an associativity run.

    Products are memoized by the alcove representatives of both factor
    lowest weights: translating a factor by 2*lambda0 translates every
    summand the same way (the blocks are literally shared), so one
    computation serves the whole translate class.
    """

    def __init__(self, alg):
        self.phys = PhysicalCache(alg)
        self.memo = {}

    def _split(self, M):
        k = M.meta.get('translated', 0)
        return (translate_module(M, -k) if k else M), k

    def product(self, A, B):
        baseA, ka = self._split(A)
        baseB, kb = self._split(B)
        key = (baseA.lw.label, baseB.lw.label)
        if key not in self.memo:
            self.memo[key] = truncated_product(baseA, baseB, cache=self.phys)
        return _shift_result(self.memo[key], ka + kb, self.phys)

    def fuse(self, mods):
        """Left-associated iterated product; returns (multiset, reports)."""
        if not mods:
            raise ValueError("nothing to fuse")
        current = [(mods[0], 1)]
        reports = []
        for nxt in mods[1:]:
            acc = {}
            step = []
            for M, mult in current:
                res = self.product(M, nxt)
                step.append(res)
                for s in res.summands:
                    if s.label in acc:
                        acc[s.label][1] += mult * s.multiplicity
                    else:
                        acc[s.label] = [s.module, mult * s.multiplicity]
            reports.append(step)
            current = sorted(((M, m) for M, m in acc.values()),
                             key=lambda t: (t[0].lw.energy, t[0].lw.jz))
        out = {}
        for M, mult in current:
            out[M.lw.label] = out.get(M.lw.label, 0) + mult
        return out, reports

    def associativity(self, Ma, Mb, Mc):
        """Multiset comparison of the two association orders."""
        for M in (Ma, Mb, Mc):
            if not M.lw.is_integral():
                raise ValueError("the associativity statement needs all "
                                 "three lowest weights integral")
        left, _ = self.fuse([Ma, Mb, Mc])
        inner = self.product(Mb, Mc)
        right = {}
        for s in inner.summands:
            res = self.product(Ma, s.module)
            for t in res.summands:
                right[t.label] = (right.get(t.label, 0)
                                  + s.multiplicity * t.multiplicity)
        return {'left': left, 'right': right, 'equal': left == right}


def _shift_result(res, j, cache):
    if not j:
        return res
    per = int(cache.per)
    summands = [Summand(
        label=(s.label[0] + per * j, s.label[1]),
        weight=s.weight + (per * j) * ALPHA[3],
        multiplicity=s.multiplicity, dim=s.dim,
        translate=s.translate + j,
        module=translate_module(s.module, j)) for s in res.summands]
    discarded = [((lab[0] + per * j, lab[1]), kd, why)
                 for lab, kd, why in res.discarded]
    return FusionResult(summands, discarded,
                        dict(res.diagnostics, shifted_by=j))


def check_associativity(Ma, Mb, Mc, cache=None):
    ctx = FusionContext(Ma.meta['alg'])
    if cache is not None:
        ctx.phys = cache
    return ctx.associativity(Ma, Mb, Mc)


# -- generic branching oracle -----------------------------------------------

def generic_char_source(e_cap, m_far=48):
    """char_of callback for branching_oracle, built at a far root.

    At m_far the first bracket wall sits at m_far/2, so below e_cap the
    constructed characters agree with the generic-q ones as long as
    e_cap stays well under it.  Characters are truncated at e_cap + 1;
    rows below an energy truncation are box-independent, hence exact.
    """
    from .pbw import Algebra
    from .roots import lowest_weight_of
    from .scalars import CycField
    from .verma import build_irrep
    assert 2 * (e_cap + 2) < m_far, "cap too close to the far wall"
    alg = Algebra(CycField(m_far))
    memo = {}

    def char_of(lab):
        if lab not in memo:
            mu = lowest_weight_of(lab[0], lab[1])
            k1cap = max(2, int(Fraction(e_cap) + 1 - mu.energy))
            L = build_irrep(alg, mu, e_max=Fraction(e_cap) + 1,
                            box=(k1cap, 8), open_ok=True)
            memo[lab] = L.character()
        return memo[lab]

    return char_of


def branching_oracle(char_a, char_b, e_cap, char_of):
    """Greedy lowest-weight content of a product character.

    Convolves the two characters, then peels irreducible characters off
    in ascending (energy, spin projection) order; char_of(label) must
    return the character of the irrep at that lowest weight.  Only the
    region up to e_cap is examined, so the result is exactly what a
    complete-reducibility argument would give there.  Returns
    {(E0, s): multiplicity}.
    """
    conv = {}
    for (e1, j1), m1 in char_a.items():
        for (e2, j2), m2 in char_b.items():
            e = e1 + e2
            if e <= e_cap:
                key = (e, j1 + j2)
                conv[key] = conv.get(key, 0) + m1 * m2
    out = {}
    for key in sorted(conv):
        m = conv[key]
        if m < 0:
            raise AssertionError(f"negative remainder at {key}; the cap "
                                 "exceeds the reliable region")
        if m == 0:
            continue
        e0, jz = key
        lab = (e0, -jz)
        out[lab] = m
        for kk, c in char_of(lab).items():
            if kk[0] <= e_cap:
                conv[kk] = conv.get(kk, 0) - m * c
        if conv.get(key, 0) != 0:
            raise AssertionError(f"peeling at {key} did not clear its "
                                 "own weight")
    return out
