import sys, time
sys.path.insert(0, 'src')
from qads.scalars import CycField
from qads.pbw import Algebra
from qads.verma import build_physical_irrep
from qads.fusion import truncated_product, PhysicalCache

fld = CycField(12)
alg = Algebra(fld)
cache = PhysicalCache(alg)

which = sys.argv[1] if len(sys.argv) > 1 else 'massless'

if which == 'massless':
    t0 = time.time()
    ml = build_physical_irrep(alg, 2, 1)
    print('massless dim', ml.total_dim, f'{time.time()-t0:.1f}s', flush=True)
    t0 = time.time()
    res = truncated_product(ml, ml, cache=cache)
    print(f'massless (x)~ massless  [{time.time()-t0:.1f}s]', flush=True)
else:
    t0 = time.time()
    from fractions import Fraction
    rac = build_physical_irrep(alg, Fraction(1, 2), 0)
    print('rac dim', rac.total_dim, f'{time.time()-t0:.1f}s', flush=True)
    t0 = time.time()
    res = truncated_product(rac, rac, cache=cache)
    print(f'rac (x)~ rac  [{time.time()-t0:.1f}s]', flush=True)

print('kept:')
for s in res.summands:
    print('  ', s.label, 'x', s.multiplicity, 'dim', s.dim, 'translate', s.translate)
print('discarded:', res.discarded)
print('absorbed:', res.diagnostics['absorbed'])
print('exact_verified_below:', res.diagnostics['exact_verified_below'])
print('total kept dim', res.total_kept_dim(), 'of', res.diagnostics['dim'])
print('primes:', res.diagnostics['primes'])
