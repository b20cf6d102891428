import sys, time
sys.path.insert(0, 'src')
from qads.scalars import CycField
from qads.pbw import Algebra
from qads.roots import RootData
from qads.verma import build_physical_irrep, build_omega, is_unitary
from qads.fusion import truncated_product, PhysicalCache, FusionContext

fld = CycField(12)
alg = Algebra(fld)
rd = RootData(12, 1)
cache = PhysicalCache(alg)

V5 = build_physical_irrep(alg, -1, 0, force=True)
om = build_omega(alg)
massless = build_physical_irrep(alg, 2, 1)

ok, k, L50 = cache.classify(V5.lw + 6 * __import__('qads.roots', fromlist=['ALPHA']).ALPHA[3])
print('L(5,0): unitary', ok, 'dim', L50.total_dim if L50 else None,
      'char', sorted(L50.character().items()) if L50 else None)
print('  in paper window:', rd.in_window(L50.lw) if L50 else None,
      'is_compact:', rd.is_compact(L50.lw) if L50 else None)

t0 = time.time()
res = truncated_product(massless, L50, cache=cache)
print(f'massless (x)~ L(5,0)  [{time.time()-t0:.1f}s]')
print('  kept:', [(s.label, s.multiplicity, s.dim, s.translate) for s in res.summands])
print('  discarded:', res.discarded)
print('  absorbed:', res.diagnostics['absorbed'])
print('  exact_verified_below:', res.diagnostics['exact_verified_below'])

# the full criterion triple, both association orders
t0 = time.time()
ctx = FusionContext(alg)
rep = ctx.associativity(massless, V5, om)
print(f'assoc (massless, V5, om) [{time.time()-t0:.1f}s]:', rep)
