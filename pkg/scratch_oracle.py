import sys, time
sys.path.insert(0, 'src')
from fractions import Fraction as F

from qads.scalars import CycField
from qads.pbw import Algebra
from qads.verma import build_physical_irrep
from qads.fusion import branching_oracle, generic_char_source

fld = CycField(12, 1)
alg = Algebra(fld)

triv = build_physical_irrep(alg, 0, 0, force=True)
ml = build_physical_irrep(alg, 2, 1)
rac = build_physical_irrep(alg, F(1, 2), 0)

t0 = time.time()
src5 = generic_char_source(5)
out = branching_oracle(triv.character(), ml.character(), 5, src5)
print('triv*massless cap5:', dict(out), '%.1fs' % (time.time() - t0))

t0 = time.time()
src4 = generic_char_source(4)
out = branching_oracle(rac.character(), rac.character(), 4, src4)
print('rac*rac cap4:', dict(out), '%.1fs' % (time.time() - t0))

t0 = time.time()
out = branching_oracle(ml.character(), ml.character(), 4, src4)
print('ml*ml cap4:', dict(out), '%.1fs' % (time.time() - t0))
