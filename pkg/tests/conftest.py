import pytest

from qads.scalars import CycField, ClassicalField


@pytest.fixture(scope="session")
def fld():
    """The default working field: m=12, n=1, L=48."""
    return CycField(12, 1)


@pytest.fixture(scope="session")
def cfld():
    return ClassicalField()


@pytest.fixture(scope="session")
def alg(fld):
    from qads.pbw import Algebra
    return Algebra(fld)


@pytest.fixture(scope="session")
def theta(alg):
    """Braiding element, validated on the flat-vector square."""
    from qads.ribbon import quasi_r
    return quasi_r(alg)


@pytest.fixture(scope="session")
def vec_flat(alg):
    from qads.verma import build_physical_irrep
    return build_physical_irrep(alg, -1, 0, force=True)


@pytest.fixture(scope="session")
def omega_mod(alg):
    from qads.verma import build_omega
    return build_omega(alg)


@pytest.fixture(scope="session")
def massless1(alg):
    from qads.verma import build_physical_irrep
    return build_physical_irrep(alg, 2, 1)


@pytest.fixture(scope="session")
def massless2(alg):
    from qads.verma import build_physical_irrep
    return build_physical_irrep(alg, 3, 2)


@pytest.fixture(scope="session")
def char_memo():
    """Shared irreducible-character cache for composition accounting."""
    return {}


@pytest.fixture(scope="session")
def small_ribbons(alg, theta, vec_flat, omega_mod, massless1):
    """Twist matrices on the small irreps, keyed by name."""
    from fractions import Fraction
    from qads.ribbon import ribbon_matrix
    from qads.verma import build_physical_irrep
    out = {}
    out['trivial'] = build_physical_irrep(alg, 0, 0, force=True)
    out['rac'] = build_physical_irrep(alg, Fraction(1, 2), 0)
    out['di'] = build_physical_irrep(alg, 1, Fraction(1, 2))
    out['vector'] = vec_flat
    out['omega'] = omega_mod
    out['massless'] = massless1
    return {name: (M, ribbon_matrix(M, theta)) for name, M in out.items()}


def _battery(massless, vec, theta, memo):
    from qads.fusion import tensor_module
    from qads.ribbon import (ribbon_matrix, brst_operator, cohomology,
                             gauge_submodule, split_certificate)
    T = tensor_module(massless, vec)
    rib = ribbon_matrix(T, theta)
    charge = brst_operator(T, rib)
    return {
        'T': T,
        'rib': rib,
        'charge': charge,
        'coh': cohomology(charge),
        'gauge': gauge_submodule(T, memo=memo),
        'cert': split_certificate(T, memo=memo),
    }


@pytest.fixture(scope="session")
def spin1(massless1, vec_flat, theta, char_memo):
    """Full charge battery on the spin-1 massless times vector product."""
    return _battery(massless1, vec_flat, theta, char_memo)


@pytest.fixture(scope="session")
def spin2(massless2, vec_flat, theta, char_memo):
    """Full charge battery on the spin-2 massless times vector product."""
    return _battery(massless2, vec_flat, theta, char_memo)
