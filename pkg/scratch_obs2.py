"""Scratch: composition accounting of the massless x vector block."""
import time
from fractions import Fraction as F

from qads.scalars import CycField
from qads.pbw import Algebra
from qads.verma import build_physical_irrep
from qads.fusion import tensor_module, lowest_weight_states, PhysicalCache
from qads.linalg import rref
from qads.ribbon import (quasi_r, ribbon_matrix, ribbon_scalar, brst_operator,
                         cohomology, submodule_closure, gauge_submodule)
from qads.roots import lowest_weight_of

fld = CycField(12, 1)
alg = Algebra(fld)
theta = quasi_r(alg)
print('theta ready')


def charof(M):
    return dict(M.character())


def peel(target, pieces):
    """Greedy least-energy peel of a character into irrep characters."""
    rem = dict(target)
    used = {}
    names = sorted(pieces, key=lambda n: min(pieces[n]))
    progress = True
    while progress and any(rem.values()):
        progress = False
        low = min((k for k, c in rem.items() if c), default=None)
        if low is None:
            break
        for name in names:
            ch = pieces[name]
            if min(ch) == low and all(rem.get(k, 0) >= c for k, c in ch.items()):
                for k, c in ch.items():
                    rem[k] = rem.get(k, 0) - c
                used[name] = used.get(name, 0) + 1
                progress = True
                break
    rem = {k: c for k, c in rem.items() if c}
    return used, rem


# candidate composition factors
cands = {}
for lab in [(1, 1), (2, 1), (2, 2), (3, 0), (3, 1)]:
    t0 = time.time()
    M = build_physical_irrep(alg, F(lab[0]), F(lab[1]), force=True)
    cands[lab] = charof(M)
    print('L%s dim %d  v-scalar %s  [%.1fs]' % (
        lab, M.total_dim,
        repr(ribbon_scalar(fld, lowest_weight_of(F(lab[0]), F(lab[1])))),
        time.time() - t0))

ml = build_physical_irrep(alg, 2, 1)
v5 = build_physical_irrep(alg, -1, 0, force=True)
T = tensor_module(ml, v5)
print('T dim', T.total_dim)

rib = ribbon_matrix(T, theta)
Q = brst_operator(T, rib)
coh = cohomology(Q)
print('rank Q', sum(coh.im_char.values()), 'ker', sum(coh.ker_char.values()),
      'quot', coh.quot_dim)

print('T char decomposition:', peel(charof(T), cands))
print('ker decomposition:   ', peel(coh.ker_char, cands))
print('im  decomposition:   ', peel(coh.im_char, cands))
print('quot decomposition:  ', peel(coh.quot_char, cands))

# fusion-kept copy vs Im Q as SUBSPACES
cache = PhysicalCache(alg)
unitary_seed = {}
for g, w, rows in lowest_weight_states(T):
    ok, _, _ = cache.classify(w)
    print('  kernel at grade', g, 'label', w.label, 'count', len(rows),
          'unitary', ok)
    if ok:
        unitary_seed.setdefault(g, []).extend(rows)

t0 = time.time()
kept = submodule_closure(T, unitary_seed)
print('closure of unitary singular vector: dim %d [%.1fs]' % (
    kept.dim, time.time() - t0))
print('  char == im char:', kept.char == coh.im_char)

same = True
keys = set(kept.basis) | set(coh.im_basis)
for g in keys:
    a = kept.basis.get(g, [])
    b = coh.im_basis.get(g, [])
    if len(a) != len(b):
        same = False
        break
    R1, _ = rref([list(r) for r in a], fld) if a else ([], [])
    R2, _ = rref([list(r) for r in b], fld) if b else ([], [])
    if R1 != R2:
        same = False
        break
print('Im Q == unitary-singular closure as subspaces:', same)

# second massless case
ml2 = build_physical_irrep(alg, 3, 2)
T2 = tensor_module(ml2, v5)
print('T2 dim', T2.total_dim)
for g, w, rows in lowest_weight_states(T2):
    ok, _, _ = cache.classify(w)
    print('  T2 kernel at grade', g, 'label', w.label, 'count', len(rows),
          'unitary', ok)

t0 = time.time()
rib2 = ribbon_matrix(T2, theta)
print('ribbon on T2: %.1fs scalar=%s' % (time.time() - t0, rib2.scalar))
Q2 = brst_operator(T2, rib2)
print('Q2 is_zero=%s nilpotent=%s' % (Q2.is_zero, Q2.nilpotent))
coh2 = cohomology(Q2)
print('rank Q2', sum(coh2.im_char.values()), 'quot', coh2.quot_dim)
print('im char == L(3,2) char:', coh2.im_char == charof(ml2))

cands2 = dict(cands)
cands2[(3, 2)] = charof(ml2)
for lab in [(4, 1), (4, 2), (4, 3), (2, 0)]:
    try:
        M = build_physical_irrep(alg, F(lab[0]), F(lab[1]), force=True)
        cands2[lab] = charof(M)
        print('L%s dim %d  v-scalar %s' % (lab, M.total_dim,
              repr(ribbon_scalar(fld, lowest_weight_of(F(lab[0]), F(lab[1]))))))
    except Exception as e:
        print('L%s: %s' % (lab, e))
print('T2 char decomposition:', peel(charof(T2), cands2))
print('quot2 decomposition:  ', peel(coh2.quot_char, cands2))
