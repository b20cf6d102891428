"""Scratch: massive (5/2,1) full module, unitarity certificate, product battery."""
import time
from fractions import Fraction as F

from qads.scalars import CycField
from qads.pbw import Algebra
from qads.roots import lowest_weight_of
from qads.verma import build_physical_irrep, is_unitary
from qads.fusion import tensor_module, lowest_weight_states, PhysicalCache
from qads.ribbon import composition_chars, split_certificate, ribbon_scalar

fld = CycField(12, 1)
alg = Algebra(fld)

t0 = time.time()
M = build_physical_irrep(alg, F(5, 2), 1, e_max=F(5, 2) + 24, force=True)
print('massive dim', M.total_dim, 'closed', M.meta.get('closed'),
      '[%.0fs]' % (time.time() - t0), flush=True)

cert = is_unitary(M)
print('unitary', bool(cert), 'first violation', cert.violation, flush=True)
w6 = is_unitary(M, e_window=6)
print('window<=6 unitary', bool(w6), 'violation', w6.violation, flush=True)

t0 = time.time()
v5 = build_physical_irrep(alg, -1, 0, force=True)
T = tensor_module(M, v5)
print('T dim', T.total_dim, '[%.0fs]' % (time.time() - t0), flush=True)

t0 = time.time()
cache = PhysicalCache(alg)
for g, w, rows in lowest_weight_states(T):
    ok, why, _ = cache.classify(w)
    print('  kernel', w.label, 'count', len(rows), 'unitary-label', ok,
          flush=True)
print('kernels done [%.0fs]' % (time.time() - t0), flush=True)

memo = {}
t0 = time.time()
counts = composition_chars(T, alg, memo)
print('factors', counts, '[%.0fs]' % (time.time() - t0), flush=True)
for lab in sorted(counts):
    mu = lowest_weight_of(lab[0], lab[1])
    print('  v-scalar', lab, repr(ribbon_scalar(fld, mu)), flush=True)

t0 = time.time()
sc = split_certificate(T, memo)
print('split', sc.splits, 'covered', sc.covered, '/', sc.total_dim,
      '[%.0fs]' % (time.time() - t0), flush=True)
print('pieces', sc.pieces, flush=True)
