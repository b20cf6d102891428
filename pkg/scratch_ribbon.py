"""Scratch: braiding solve sanity, V5xV5 validation, twist pins."""
import time
from fractions import Fraction as F

from qads.scalars import CycField
from qads.pbw import Algebra
from qads.roots import lowest_weight_of, Weight
from qads.verma import build_irrep, build_omega, build_physical_irrep
from qads.fusion import tensor_module
from qads.ribbon import (Braiding, quasi_r, ribbon_matrix, ribbon_scalar,
                         brst_operator, cohomology, intertwining_check)

fld = CycField(12, 1)
alg = Algebra(fld)

th = Braiding(alg)
b01 = th.component((0, 1))
q2 = fld.qpow(F(1, 2))
z2 = -(q2 - fld.qpow(F(-1, 2)))
print('comp(0,1) basis', b01[0], 'match z2:', b01[1][0][0] == z2)
b10 = th.component((1, 0))
z1 = -(fld.qpow(1) - fld.qpow(-1))
print('comp(1,0) match z1:', b10[1][0][0] == z1)
b11 = th.component((1, 1))
print('comp(1,1) basis:', b11[0])
kap1 = -(fld.qpow(1) - fld.qpow(-1)) * fld.qpow(1)
pred00 = kap1 * z2
i_mix = b11[0].index((1, 0, 0, 1))
i_e3 = b11[0].index((0, 1, 0, 0))
Z = b11[1]
print('  Z[mix][mix] == kap1*z2:', Z[i_mix][i_mix] == pred00)
print('  off-diagonals zero:', fld.is_zero(Z[i_mix][i_e3]), fld.is_zero(Z[i_e3][i_mix]))
pred11 = -fld.qpow(1) * pred00 / (fld.qpow(1) - fld.qpow(-1))
print('  Z[e3][e3] == -q*Z00/(q-q^-1):', Z[i_e3][i_e3] == pred11)

t0 = time.time()
theta = quasi_r(alg)
print('quasi_r validated on V5xV5 in %.1fs' % (time.time() - t0))

for e0, s, name, force in [(0, 0, 'trivial', True), (-1, 0, 'vector', True),
                           (F(1, 2), 0, 'rac', False), (1, F(1, 2), 'di', False),
                           (2, 1, 'massless', False)]:
    t0 = time.time()
    M = build_physical_irrep(alg, e0, s, force=force)
    rib = ribbon_matrix(M, theta)
    pred = ribbon_scalar(fld, M.lw)
    ok = rib.scalar is not None and rib.scalar == pred
    print('%-9s dim %4d scalar-match %s  [%.1fs]'
          % (name, M.total_dim, ok, time.time() - t0))

om = build_omega(alg)
rib = ribbon_matrix(om, theta)
print('omega scalar == -1:', rib.scalar == -fld.one,
      ' matches formula:', rib.scalar == ribbon_scalar(fld, om.lw))
