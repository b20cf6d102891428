"""Scratch: BRST structure of massless x vector, gauge content."""
import time
from fractions import Fraction as F

from qads.scalars import CycField
from qads.pbw import Algebra
from qads.verma import build_physical_irrep
from qads.fusion import tensor_module, lowest_weight_states, PhysicalCache
from qads.ribbon import (quasi_r, ribbon_matrix, brst_operator, cohomology,
                         gauge_submodule)

fld = CycField(12, 1)
alg = Algebra(fld)
theta = quasi_r(alg)
print('theta ready')

ml = build_physical_irrep(alg, 2, 1)
v5 = build_physical_irrep(alg, -1, 0, force=True)
T = tensor_module(ml, v5)
print('T dim', T.total_dim)

t0 = time.time()
rib = ribbon_matrix(T, theta)
print('ribbon on T: %.1fs scalar=%s' % (time.time() - t0, rib.scalar))

t0 = time.time()
Q = brst_operator(T, rib)
print('Q: %.1fs is_zero=%s nilpotent=%s' % (time.time() - t0, Q.is_zero,
                                            Q.nilpotent))
coh = cohomology(Q)
print('ker char:', dict(sorted(coh.ker_char.items())))
print('im  char:', dict(sorted(coh.im_char.items())))
print('quot char:', dict(sorted(coh.quot_char.items())))
print('quot dim:', coh.quot_dim)
print('massless char == quot char:',
      dict(ml.character()) == coh.quot_char)

t0 = time.time()
gs = gauge_submodule(T)
print('gauge closure: %.1fs dim %d' % (time.time() - t0, gs.dim))
print('gauge char:', dict(sorted(gs.char.items())))
im_total = sum(coh.im_char.values())
print('im dim:', im_total)
print('gauge char == im char:', gs.char == coh.im_char)

cache = PhysicalCache(alg)
print('kernels:')
for g, w, rows in lowest_weight_states(T):
    ok, k, _ = cache.classify(w)
    print('  grade', g, 'label', w.label, 'count', len(rows), 'unitary', ok)
