"""Scratch: revised gauge submodule + split certificates, both massless."""
import time

from qads.scalars import CycField
from qads.pbw import Algebra
from qads.verma import build_physical_irrep
from qads.fusion import tensor_module
from qads.ribbon import (quasi_r, ribbon_matrix, brst_operator, cohomology,
                         gauge_submodule, split_certificate,
                         composition_chars)

fld = CycField(12, 1)
alg = Algebra(fld)
theta = quasi_r(alg)
memo = {}

ml = build_physical_irrep(alg, 2, 1)
v5 = build_physical_irrep(alg, -1, 0, force=True)
ml2 = build_physical_irrep(alg, 3, 2)

for name, M in (('spin1', ml), ('spin2', ml2)):
    T = tensor_module(M, v5)
    print('== %s product, dim %d' % (name, T.total_dim))
    t0 = time.time()
    rib = ribbon_matrix(T, theta)
    Q = brst_operator(T, rib)
    coh = cohomology(Q)
    print('  ribbon+charge %.1fs  rank %d  quot %d' % (
        time.time() - t0, sum(coh.im_char.values()), coh.quot_dim))
    t0 = time.time()
    gs = gauge_submodule(T, memo=memo)
    print('  gauge dim %d [%.1fs]  char == im char: %s' % (
        gs.dim, time.time() - t0, gs.char == coh.im_char))
    t0 = time.time()
    cert = split_certificate(T, memo=memo)
    print('  split %s  covered %d/%d  factors %s  [%.1fs]' % (
        cert.splits, cert.covered, cert.total_dim,
        {k: v for k, v in sorted(cert.factors.items())}, time.time() - t0))
    for lab, d, irr in cert.pieces:
        print('    piece label %s dim %d irreducible %s' % (lab, d, irr))

print('composition memo labels:', sorted(memo))
