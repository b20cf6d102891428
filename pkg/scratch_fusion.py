import sys, time
sys.path.insert(0, 'src')
from qads.scalars import CycField
from qads.pbw import Algebra
from qads.verma import (build_physical_irrep, build_omega, relations_check,
                        serre_check, is_unitary)
from qads.fusion import (tensor_module, tensor_form_check, lowest_weight_states,
                         truncated_product, PhysicalCache, branching_oracle,
                         translate_module, FusionContext)

fld = CycField(12)
alg = Algebra(fld)

t0 = time.time()
V5 = build_physical_irrep(alg, -1, 0, force=True)
om = build_omega(alg)
triv = build_physical_irrep(alg, 0, 0, force=True)
print('V5 dim', V5.total_dim, 'omega dim', om.total_dim,
      'trivial dim', triv.total_dim, f'{time.time()-t0:.1f}s')

# counit: tensoring with the trivial module changes nothing
T = tensor_module(V5, triv)
print('V5 x triv char == V5 char:', T.character() == V5.character())
print('V5 x triv relations:', relations_check(T))

# omega x omega sits at 2*lambda0
T = tensor_module(om, om)
print('om x om dim', T.total_dim, 'lw', T.lw, 'label', T.lw.label)

# V5 x V5: 25 states, exact layer
T = tensor_module(V5, V5)
print('V5xV5 dim', T.total_dim)
t0 = time.time()
print('relations:', relations_check(T), 'serre:', serre_check(T),
      f'{time.time()-t0:.1f}s')
t0 = time.time()
print('form check:', tensor_form_check(T), f'{time.time()-t0:.1f}s')
lws = lowest_weight_states(T)
print('lw states:', [(w.label, len(k)) for g, w, k in lws])

t0 = time.time()
massless = build_physical_irrep(alg, 2, 1)
print('massless dim', massless.total_dim, f'{time.time()-t0:.1f}s')

# the first genuine truncated product
t0 = time.time()
cache = PhysicalCache(alg)
res = truncated_product(massless, V5, cache=cache)
print(f'massless (x)~ V5  [{time.time()-t0:.1f}s]')
print('  kept:', [(s.label, s.multiplicity, s.dim, s.translate)
                  for s in res.summands])
print('  discarded:', res.discarded)
print('  absorbed:', res.diagnostics['absorbed'])
print('  exact_verified_below:', res.diagnostics['exact_verified_below'])
print('  total kept dim', res.total_kept_dim(), 'of', res.diagnostics['dim'])

# V5 (x)~ omega: the shifted candidate must be rejected face-value
t0 = time.time()
res2 = truncated_product(V5, om, cache=cache)
print(f'V5 (x)~ om [{time.time()-t0:.1f}s] kept:', res2.multiset(),
      'discarded:', res2.discarded)

# omega (x)~ omega: translate of the trivial module
res3 = truncated_product(om, om, cache=cache)
print('om (x)~ om kept:', [(s.label, s.multiplicity, s.translate)
                           for s in res3.summands])

# massless (x)~ omega
res4 = truncated_product(massless, om, cache=cache)
print('massless (x)~ om kept:', res4.multiset(), 'discarded:', res4.discarded)
