"""Lowest-weight modules at a root of unity.

Everything here is organized around one object: a graded module with
exact generator blocks between weight spaces.  Verma modules are built
on a finite grade rectangle with the contravariant form filled in by a
leading-letter recursion; irreps are radical quotients; the shift
construction tensors a compact irrep with the one-dimensional top
module.  Unitarity is decided by certified signs of leading principal
minors, never numerically.

Grades are pairs (k1, k2): the multiplicity of each simple root above
the lowest weight.  Energy grows with k1 only, so the spin direction
needs its own truncation; a support-driven reachability prune keeps the
rectangle affordable (a grade whose feeder spaces are entirely radical
is itself entirely radical, so it is never materialized).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import fast_matmul, hermitian_minor_signs, mat_conj_transpose, \
    nullspace, rref
from .pbw import ORDER, UNIT, eval_terms, monos_of_grade
from .roots import ALPHA, RootData, Weight, lowest_weight_of

# Star conventions, as the pair of signs in star(E_i) = sign_i * F_i.
# The spacetime form flips the sign on the long simple root only; the
# omega twist q^3-rescales that pair of generators, and since q^6 = -1
# this exactly exchanges the two conventions.  That exchange is what
# makes positivity of the shifted module equivalent to compact-star
# positivity of its partner.
STAR_SPACETIME = (-1, 1)
STAR_COMPACT = (1, 1)


def _gram_signs(star):
    # star(E_beta) = sign * (starred lowering word), by
    # anti-multiplicativity through the two composite root vectors
    s1, s2 = star
    return {1: s1, 3: s1 * s2, 4: s1, 2: s2}


LETTER_OF_SIMPLE = {1: 1, 2: 2}


class BoxTooSmall(Exception):
    """Support reached the truncation rectangle at the energy cap."""


class NotPhysical(ValueError):
    """Requested lowest weight is outside the unitarizable families."""


class DegenerateForm(ValueError):
    """Positivity queried on a form with a null direction."""


def _gkey(g):
    return (g[0] + g[1], g[0])


def _shift(g, i, step):
    return (g[0] + step, g[1]) if i == 1 else (g[0], g[1] + step)


@dataclass
class GradedModule:
    """A weight-graded module with exact generator block matrices.

    up[(i, g)] maps grade g into g + alpha_i, down[(i, g)] into
    g - alpha_i; blocks between empty spaces are simply absent.  gram
    holds the Hermitian contravariant form blockwise in the same basis
    as labels.
    """
    fld: object
    lw: Weight
    grades: list
    labels: dict
    up: dict
    down: dict
    gram: dict
    kind: str
    meta: dict = field(default_factory=dict)

    def dim(self, g):
        return len(self.labels.get(g, ()))

    @property
    def total_dim(self):
        return sum(len(v) for v in self.labels.values())

    def weight_at(self, g):
        return self.lw + g[0] * ALPHA[1] + g[1] * ALPHA[2]

    def support(self):
        return [g for g in self.grades if self.labels.get(g)]

    def character(self):
        out = {}
        for g in self.support():
            w = self.weight_at(g)
            key = (w.energy, w.jz)
            out[key] = out.get(key, 0) + self.dim(g)
        return out

    def block(self, kind, i, g):
        """Generator block or None; kind is 'up' or 'down'."""
        store = self.up if kind == 'up' else self.down
        return store.get((i, g))

    def compose(self, ops, g):
        """Matrix of a generator word on grade g; ops outermost first.

        Each op is ('up'|'down', i).  Returns (matrix, target_grade);
        the matrix is None when anything along the way is zero.
        """
        cur = g
        acc = None
        started = False
        for kind, i in reversed(ops):
            tgt = _shift(cur, i, +1 if kind == 'up' else -1)
            blk = self.block(kind, i, cur)
            if blk is None or not blk or not self.labels.get(tgt):
                return None, None
            acc = blk if not started else fast_matmul(blk, acc, self.fld)
            started = True
            cur = tgt
        return acc, cur


# -- Verma construction ----------------------------------------------------

def build_verma(alg, mu, box, prune=True, star=STAR_SPACETIME):
    """Truncated lowest-weight Verma module with its contravariant form.

    The rectangle box = (K1, K2) bounds the two grade directions.  With
    prune on, a grade is materialized only when one of its feeders has
    nonzero form rank; the skipped region is provably radical, so the
    stored module is the faithful image of the Verma on its reachable
    part.  Radical bases per grade are kept in meta for the quotient.
    star picks the convention of the form; the radical (hence the
    quotient) does not depend on it, being the maximal submodule either
    way.
    """
    fld = alg.fld
    K1, K2 = box
    h1, h2 = mu.h1, mu.h2
    q = fld.qpow(1)
    gram_sign = _gram_signs(star)

    dcache = {}

    def down_simple(i, g):
        key = (i, g)
        if key in dcache:
            return dcache[key]
        tg = _shift(g, i, -1)
        if tg[0] < 0 or tg[1] < 0:
            dcache[key] = []
            return []
        src = monos_of_grade(*g)
        dst = monos_of_grade(*tg)
        ix = {m: r for r, m in enumerate(dst)}
        M = [[fld.zero] * len(src) for _ in dst]
        for c, mono in enumerate(src):
            acted = eval_terms(fld, alg.comm_lower(i, mono), h1, h2)
            for m2, v in acted.items():
                M[ix[m2]][c] = v
        dcache[key] = M
        return M

    d3cache = {}

    def down_alpha3(g):
        # starred word for the alpha1+alpha2 vector: F2 F1 - q F1 F2
        if g in d3cache:
            return d3cache[g]
        if g[0] < 1 or g[1] < 1:
            d3cache[g] = []
            return []
        A = fast_matmul(down_simple(2, _shift(g, 1, -1)), down_simple(1, g),
                        fld)
        B = fast_matmul(down_simple(1, _shift(g, 2, -1)), down_simple(2, g),
                        fld)
        M = [[a - q * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
        d3cache[g] = M
        return M

    def down_alpha4(g):
        # F2 F3hat - F3hat F2 for the alpha1+2*alpha2 vector
        if g[0] < 1 or g[1] < 2:
            return []
        A = fast_matmul(down_simple(2, (g[0] - 1, g[1] - 1)), down_alpha3(g),
                        fld)
        B = fast_matmul(down_alpha3(_shift(g, 2, -1)), down_simple(2, g), fld)
        return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]

    down_of = {3: down_alpha3, 4: down_alpha4}
    beta_grade = {1: (1, 0), 3: (1, 1), 4: (1, 2), 2: (0, 1)}

    grades = sorted(((a, b) for a in range(K1 + 1) for b in range(K2 + 1)),
                    key=_gkey)
    gram, radical, rank = {}, {}, {}
    processed = []
    for g in grades:
        if g == (0, 0):
            gram[g] = [[fld.one]]
            radical[g] = []
            rank[g] = 1
            processed.append(g)
            continue
        feeders = [f for f in (_shift(g, 1, -1), _shift(g, 2, -1))
                   if f[0] >= 0 and f[1] >= 0]
        if prune and not any(rank.get(f, 0) for f in feeders):
            continue
        monos = monos_of_grade(*g)
        n = len(monos)
        G = [[fld.zero] * n for _ in range(n)]
        prods = {}
        for r, mono in enumerate(monos):
            t = next(j for j in range(4) if mono[j])
            beta = ORDER[t]
            bg = beta_grade[beta]
            gb = (g[0] - bg[0], g[1] - bg[1])
            if gb not in gram:
                continue  # feeder provably radical: the whole row vanishes
            if beta not in prods:
                Db = down_of[beta](g) if beta in (3, 4) else \
                    down_simple(beta, g)
                prods[beta] = fast_matmul(gram[gb], Db, fld)
            tail = list(mono)
            tail[t] -= 1
            src_ix = monos_of_grade(*gb).index(tuple(tail))
            row = prods[beta][src_ix]
            G[r] = [x if gram_sign[beta] > 0 else -x for x in row]
        assert G == mat_conj_transpose(G, fld), \
            "contravariant form must be Hermitian at grade %r" % (g,)
        ns = nullspace(G, fld)
        gram[g] = G
        radical[g] = ns
        rank[g] = n - len(ns)
        processed.append(g)

    labels = {g: tuple(monos_of_grade(*g)) for g in processed}
    up = {}
    for g in processed:
        src = labels[g]
        for i in (1, 2):
            tg = _shift(g, i, +1)
            if tg not in labels:
                continue
            ix = {m: r for r, m in enumerate(labels[tg])}
            M = [[fld.zero] * len(src) for _ in labels[tg]]
            for c, mono in enumerate(src):
                for m2, v in alg.lmul(LETTER_OF_SIMPLE[i], mono).items():
                    M[ix[m2]][c] = v
            up[(i, g)] = M
    down = {}
    for g in processed:
        for i in (1, 2):
            tg = _shift(g, i, -1)
            if tg in labels:
                down[(i, g)] = down_simple(i, g)

    support = [g for g in processed if rank[g]]
    escape = [g for g in support
              if g[0] + 1 > K1 or g[1] + 1 > K2]
    return GradedModule(
        fld=fld, lw=mu, grades=processed, labels=labels, up=up, down=down,
        gram=gram, kind='verma',
        meta={'box': box, 'radical': radical, 'rank': rank, 'star': star,
              'support': support, 'escape': escape, 'alg': alg})


def quotient_by_radical(V):
    """Irreducible quotient: drop the blockwise nullspace of the form.

    Kept coordinates are the non-pivot columns of the row-reduced
    radical; generator blocks descend through the induced projection.
    The restricted form is automatically the form of the quotient and
    is nondegenerate.
    """
    fld = V.fld
    keep, proj = {}, {}
    for g in V.grades:
        ns = V.meta['radical'][g]
        n = V.dim(g)
        if not ns:
            keep[g] = list(range(n))
            proj[g] = None  # identity
            continue
        R, piv = rref([list(v) for v in ns], fld)
        pivset = set(piv)
        kp = [j for j in range(n) if j not in pivset]
        keep[g] = kp
        if kp:
            P = [[fld.zero] * n for _ in kp]
            for r, j in enumerate(kp):
                P[r][j] = fld.one
            for k, pk in enumerate(piv):
                for r, j in enumerate(kp):
                    P[r][pk] = -R[k][j]
            proj[g] = P

    labels = {g: tuple(V.labels[g][j] for j in keep[g])
              for g in V.grades if keep[g]}
    grades = [g for g in V.grades if g in labels]
    up, down, gram = {}, {}, {}
    for g in grades:
        kp = keep[g]
        G = V.gram[g]
        gram[g] = [[G[a][b] for b in kp] for a in kp]
        for store, vstore, step in ((up, V.up, +1), (down, V.down, -1)):
            for i in (1, 2):
                tg = _shift(g, i, step)
                if tg not in labels:
                    continue
                B = vstore.get((i, g))
                if B is None:
                    continue
                cols = [[row[j] for j in kp] for row in B]
                P = proj[tg]
                store[(i, g)] = cols if P is None else fast_matmul(
                    P, cols, fld)
    return GradedModule(
        fld=fld, lw=V.lw, grades=grades, labels=labels, up=up, down=down,
        gram=gram, kind='irrep',
        meta={'box': V.meta['box'], 'alg': V.meta['alg'],
              'star': V.meta['star'], 'verma_rank': dict(V.meta['rank'])})


def default_energy_cap(fld, mu):
    return mu.energy + Fraction(2 * fld.m, fld.n)


def default_box(rd, mu):
    """Rectangle sized so the support of the irreducible quotient fits
    with one rim grade to spare: mirror symmetry caps the energy spread
    at twice the distance to the window top."""
    spread = 2 * (rd.window - mu.energy)
    k1 = max(2, int(-(-spread // 1)) + 1)
    return (k1, 2 * k1 + 2)


def build_irrep(alg, mu, e_max=None, box=None, star=STAR_SPACETIME,
                open_ok=False):
    """Radical quotient on an adaptively grown rectangle.

    Grows the box until no supported grade touches the escape rim, so
    every generator image of a kept state is accounted for.  If growth
    in the energy direction would push past the cap, either raises
    BoxTooSmall or, with open_ok, returns the energy-truncated module
    flagged closed=False (its stored form blocks are still exact, being
    box-independent; only states above the cap are missing).
    """
    fld = alg.fld
    rd = RootData(fld.m, fld.n)
    if e_max is None:
        e_max = default_energy_cap(fld, mu)
    k1, k2 = box if box is not None else default_box(rd, mu)
    k1cap = int(Fraction(e_max) - mu.energy)
    k1 = min(k1, k1cap)
    truncated = False
    while True:
        V = build_verma(alg, mu, (k1, k2), star=star)
        esc = V.meta['escape']
        need_k1 = any(g[0] + 1 > k1 for g in esc)
        need_k2 = any(g[1] + 1 > k2 for g in esc)
        if need_k1:
            if k1 + 1 <= k1cap:
                k1 = min(k1 + 2, k1cap)
                continue
            if not open_ok:
                raise BoxTooSmall(
                    "support reaches energy %s but the cap is %s"
                    % (mu.energy + k1, e_max))
            truncated = True  # freeze k1 at the cap, keep closing k2
        if need_k2:
            k2 += 4
            continue
        L = quotient_by_radical(V)
        L.meta['e_max'] = e_max
        L.meta['closed'] = not truncated
        return L


# -- singular vectors ------------------------------------------------------

@dataclass
class SingularVector:
    grade: tuple
    weight: Weight
    vectors: list
    truncated: bool  # close enough to the cutoff to be suspect


def _full_down_matrix(alg, mu, i, g):
    """Lowering block on the complete monomial basis at grade g,
    independent of any reachability pruning."""
    fld = alg.fld
    tg = _shift(g, i, -1)
    if tg[0] < 0 or tg[1] < 0:
        return []
    src = monos_of_grade(*g)
    dst = monos_of_grade(*tg)
    ix = {m: r for r, m in enumerate(dst)}
    M = [[fld.zero] * len(src) for _ in dst]
    for c, mono in enumerate(src):
        for m2, v in eval_terms(fld, alg.comm_lower(i, mono),
                                mu.h1, mu.h2).items():
            M[ix[m2]][c] = v
    return M


def _full_up_matrix(alg, i, g):
    fld = alg.fld
    src = monos_of_grade(*g)
    dst = monos_of_grade(*_shift(g, i, +1))
    ix = {m: r for r, m in enumerate(dst)}
    M = [[fld.zero] * len(src) for _ in dst]
    for c, mono in enumerate(src):
        for m2, v in alg.lmul(LETTER_OF_SIMPLE[i], mono).items():
            M[ix[m2]][c] = v
    return M


def find_singular_vectors(alg, mu, box, e_scan=None, margin=None):
    """Joint kernels of both lowering actions, including the generator.

    Works on the raw monomial basis of the Verma at mu over the whole
    rectangle, so no Gram data or reachability pruning is involved;
    e_scan caps the energy direction (the spin direction is never
    capped, zero-energy strings matter).  Results with energy above
    E(box rim) - margin are flagged as possible cutoff artifacts.
    Increasing energy order.
    """
    fld = alg.fld
    K1, K2 = box
    if e_scan is not None:
        K1 = min(K1, int(Fraction(e_scan) - mu.energy))
    if margin is None:
        margin = RootData(fld.m, fld.n).window
    ceiling = mu.energy + box[0] - margin
    out = [SingularVector((0, 0), mu, [[fld.one]], False)]
    for g in sorted(((a, b) for a in range(K1 + 1) for b in range(K2 + 1)),
                    key=_gkey):
        if g == (0, 0):
            continue
        stacked = []
        for i in (1, 2):
            stacked.extend(_full_down_matrix(alg, mu, i, g))
        n = len(monos_of_grade(*g))
        if not stacked:
            ker = [[fld.one if a == b else fld.zero for a in range(n)]
                   for b in range(n)]
        else:
            ker = nullspace(stacked, fld)
        if ker:
            w = mu + g[0] * ALPHA[1] + g[1] * ALPHA[2]
            out.append(SingularVector(g, w, ker, w.energy > ceiling))
    out.sort(key=lambda s: (s.weight.energy, s.weight.jz))
    return out


def primitive_singular_weights(alg, mu, box, e_strict):
    """Label set of singular vectors below e_strict outside the raising
    closure of earlier ones.  Includes the generator.

    The closure span is propagated over the smallest rectangle holding
    the candidates; raising matrices do not depend on the lowest
    weight, so this stays exact right up to the rim.
    """
    fld = alg.fld
    found = [s for s in find_singular_vectors(alg, mu, box, e_scan=e_strict)
             if s.weight.energy < e_strict]
    sing = {s.grade: s for s in found}
    K1 = max(s.grade[0] for s in found)
    K2 = max(s.grade[1] for s in found)
    span = {}
    prim = []
    for g in sorted(((a, b) for a in range(K1 + 1) for b in range(K2 + 1)),
                    key=_gkey):
        rows = []
        for i in (1, 2):
            f = _shift(g, i, -1)
            if f[0] < 0 or f[1] < 0 or not span.get(f):
                continue
            B = _full_up_matrix(alg, i, f)
            for v in span[f]:
                rows.append([sum((B[r][c] * v[c] for c in range(len(v))),
                                 fld.zero) for r in range(len(B))])
        s = sing.get(g)
        if s is not None:
            if g == (0, 0):
                # the generator is singular by definition but its raising
                # closure is the whole module; it must not seed the span
                prim.append(mu)
            else:
                R, piv = rref(rows, fld) if rows else ([], [])
                for v in s.vectors:
                    red = list(v)
                    for k, pk in enumerate(piv):
                        c = red[pk]
                        if not fld.is_zero(c):
                            red = [a - c * b for a, b in zip(red, R[k])]
                    if any(not fld.is_zero(a) for a in red):
                        prim.append(s.weight)
                        break
                rows.extend([list(v) for v in s.vectors])
        if rows:
            R, _ = rref(rows, fld)
            span[g] = [r for r in R if any(not fld.is_zero(a) for a in r)]
    return sorted((w.label for w in prim if w.energy < e_strict))


# -- physical irreps -------------------------------------------------------

def twist_with_omega(M, rd):
    """Tensor with the one-dimensional module at the top of the window.

    On the right leg the coproduct degenerates to a q-power twist of the
    alpha1 generators and a weight shift; the form is unchanged.
    """
    fld = M.fld
    lam0 = rd.window * ALPHA[3]
    scale = {i: fld.qpow(Fraction(1, 2) * d * h)
             for i, (d, h) in ((1, (Fraction(1), lam0.h1)),
                               (2, (Fraction(1, 2), lam0.h2)))}
    up = {(i, g): [[scale[i] * x for x in row] for row in B]
          for (i, g), B in M.up.items()}
    down = {(i, g): [[scale[i] * x for x in row] for row in B]
            for (i, g), B in M.down.items()}
    return GradedModule(
        fld=fld, lw=M.lw + lam0, grades=list(M.grades), labels=dict(M.labels),
        up=up, down=down, gram=dict(M.gram), kind=M.kind,
        meta=dict(M.meta, omega_shifted=True))


PRESETS = {
    'rac': (Fraction(1, 2), Fraction(0)),
    'di': (Fraction(1), Fraction(1, 2)),
    'vector5': (Fraction(-1), Fraction(0)),
}


def build_physical_irrep(alg, e0, s, e_max=None, force=False, path='direct',
                         box=None):
    """The finite-dimensional irrep with lowest weight labeled (e0, s).

    path 'direct' quotients the Verma at mu; path 'shift' builds the
    compact partner at lowest weight -lambda and tensors with the top
    one-dimensional module.  Both must agree in character.
    """
    fld = alg.fld
    rd = RootData(fld.m, fld.n)
    e0 = Fraction(e0)
    s = Fraction(s)
    mu = lowest_weight_of(e0, s)
    lam = rd.shift_weight(mu)
    preset = (e0, s) in (PRESETS['rac'], PRESETS['di'])
    physical = rd.is_compact(lam) or preset
    if not physical and not force:
        raise NotPhysical(
            "lowest weight (%s, %s): shifted partner %r is not a compact "
            "window weight and no singleton preset applies; pass force=True "
            "to build it anyway" % (e0, s, lam))
    if path == 'direct':
        if not physical and e_max is None:
            # forced families are too large to close; truncate at twice
            # the window so the certification range is fully covered
            e_max = 2 * Fraction(rd.window)
        L = build_irrep(alg, mu, e_max=e_max, box=box,
                        open_ok=not physical)
    elif path == 'shift':
        if not rd.is_compact(lam):
            raise NotPhysical(
                "shift path requires a compact partner, got %r" % (lam,))
        # positivity of the shifted form is compact-star positivity of
        # the partner: the q^3 twist swaps the star conventions
        neg = Weight(-lam.c1, -lam.c2)
        C = build_irrep(alg, neg, e_max=e_max, box=box, star=STAR_COMPACT)
        L = twist_with_omega(C, rd)
        assert L.lw == mu
    else:
        raise ValueError("unknown path %r" % (path,))
    L.meta.update(e0=e0, s=s, path=path, forced=not physical,
                  unitarity_window=None if physical else rd.window)
    return L


def build_omega(alg, e_max=None):
    rd = RootData(alg.fld.m, alg.fld.n)
    return build_physical_irrep(alg, rd.window, 0, e_max=e_max)


# -- unitarity -------------------------------------------------------------

@dataclass
class UnitarityCertificate:
    unitary: bool
    e_window: object
    blocks: list          # ((E, jz), dim, minor signs) in scan order
    violation: object     # ((E, jz), pivot index) or None

    def __bool__(self):
        return self.unitary


def is_unitary(M, e_window=None):
    """Positivity of the contravariant form, block by certified block.

    e_window restricts the scan to energies <= e_window.  Scanning stops
    at the first non-positive pivot; an exactly zero pivot means the
    form is degenerate (quotient not taken) and raises instead.  A found
    violation is conclusive even on an energy-truncated module (form
    blocks are box-independent), but a clean scan of a truncated module
    certifies nothing beyond its cap, so that combination raises.
    """
    fld = M.fld
    if e_window is not None and not M.meta.get('closed', True):
        stored = M.lw.energy + M.meta['box'][0]
        if Fraction(e_window) > stored:
            raise ValueError(
                "window %s exceeds the stored energy range %s of a "
                "truncated module" % (e_window, stored))
    blocks = []
    for g in sorted(M.support(), key=lambda g: _gkey(g)):
        w = M.weight_at(g)
        if e_window is not None and w.energy > e_window:
            continue
        ok, signs = hermitian_minor_signs(M.gram[g], fld)
        key = (w.energy, w.jz)
        blocks.append((key, M.dim(g), tuple(signs)))
        if not ok:
            if signs and signs[-1] == 0:
                raise DegenerateForm(
                    "null direction in the form at weight %r; quotient by "
                    "the radical first" % (key,))
            return UnitarityCertificate(False, e_window, blocks,
                                        (key, len(signs) - 1))
    if e_window is None and not M.meta.get('closed', True):
        raise ValueError(
            "module is energy-truncated at %s; a clean full scan proves "
            "nothing above the cap, pass e_window" % (M.meta.get('e_max'),))
    return UnitarityCertificate(True, e_window, blocks, None)


# -- structural checks -----------------------------------------------------

def relations_check(M):
    """Defining commutators on every stored block; raises on failure.

    On an energy-truncated module, grades whose raising step would hit
    the missing rim are skipped: absence of a block means zero only in
    a closed module.
    """
    fld = M.fld
    half = Fraction(1, 2)
    rim = None if M.meta.get('closed', True) else M.meta['box'][0]
    for g in M.support():
        d = M.dim(g)
        w = M.weight_at(g)
        for i in (1, 2):
            if rim is not None and i == 1 and g[0] + 1 > rim:
                continue
            for j in (1, 2):
                A, tg = M.compose((('up', i), ('down', j)), g)
                B, tb = M.compose((('down', j), ('up', i)), g)
                if A is None and B is None and i != j:
                    continue
                tgt = _shift(_shift(g, j, -1), i, +1)
                td = M.dim(tgt) if i != j else d
                comm = [[fld.zero] * d for _ in range(td)]
                for S, sgn in ((A, 1), (B, -1)):
                    if S is None:
                        continue
                    for r in range(len(S)):
                        for c in range(d):
                            comm[r][c] = comm[r][c] + S[r][c] if sgn > 0 \
                                else comm[r][c] - S[r][c]
                if i == j:
                    hval = fld.bracket(w.h1) if i == 1 else \
                        fld.bracket(w.h2, half)
                    for r in range(d):
                        for c in range(d):
                            want = hval if r == c else fld.zero
                            if comm[r][c] != want:
                                raise ValueError(
                                    "[E%d, F%d] failed at grade %r" %
                                    (i, j, g))
                else:
                    for r in range(td):
                        for c in range(d):
                            if not fld.is_zero(comm[r][c]):
                                raise ValueError(
                                    "[E%d, F%d] failed at grade %r" %
                                    (i, j, g))
    return True


def serre_check(M):
    """Both higher relations, on raising and lowering blocks alike.

    Truncated modules skip grades whose word would climb past the rim,
    as in relations_check.
    """
    fld = M.fld
    half = Fraction(1, 2)
    words = []
    for kind in ('up', 'down'):
        ext = {'up': 1, 'down': 0}[kind]
        words.append((2 * ext,
                      [(((kind, 1),) * k + ((kind, 2),) + ((kind, 1),) *
                        (2 - k),
                        fld.brk_binom(2, k) * fld.from_int((-1) ** k))
                       for k in range(3)]))
        words.append((ext,
                      [(((kind, 2),) * k + ((kind, 1),) + ((kind, 2),) *
                        (3 - k),
                        fld.brk_binom(3, k, d=half) * fld.from_int((-1) ** k))
                       for k in range(4)]))
    rim = None if M.meta.get('closed', True) else M.meta['box'][0]
    for g in M.support():
        d = M.dim(g)
        for k1ext, combo in words:
            if rim is not None and g[0] + k1ext > rim:
                continue
            acc = {}
            for ops, coeff in combo:
                S, tg = M.compose(ops, g)
                if S is None:
                    continue
                cur = acc.setdefault(tg, [[fld.zero] * d
                                          for _ in range(len(S))])
                for r in range(len(S)):
                    for c in range(d):
                        cur[r][c] = cur[r][c] + coeff * S[r][c]
            for tg, mat in acc.items():
                for row in mat:
                    for x in row:
                        if not fld.is_zero(x):
                            raise ValueError(
                                "Serre relation failed at grade %r" % (g,))
    return True
