"""Weight lattice and root geometry for the rank-2 symmetry algebra.

Weights are stored as coefficients (c1, c2) over the simple roots, so a
grade shift by (k1, k2) lowering/raising steps is plain coordinate
addition.  The invariant form is normalized with the long root alpha1 at
squared length 2 and the short root alpha2 at 1; physics labels (E, s)
sit on the diagonal root alpha3 = alpha1 + alpha2.
"""

from dataclasses import dataclass
from fractions import Fraction


def pair(u, v):
    """Invariant bilinear form in simple-root coordinates."""
    return (2 * u[0] * v[0] + u[1] * v[1]
            - (u[0] * v[1] + u[1] * v[0]))


@dataclass(frozen=True)
class Weight:
    c1: Fraction
    c2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c2", Fraction(self.c2))

    # Cartan eigenvalues H_1, H_2
    @property
    def h1(self):
        return 2 * self.c1 - self.c2

    @property
    def h2(self):
        return 2 * self.c2 - 2 * self.c1

    @property
    def energy(self):
        return self.c1

    @property
    def jz(self):
        return self.c2 - self.c1

    @property
    def label(self):
        """(E, s) with s = -j_z, the lowest-weight naming convention."""
        return (self.c1, self.c1 - self.c2)

    def dot(self, other):
        return pair((self.c1, self.c2), (other.c1, other.c2))

    def is_integral(self):
        return self.h1.denominator == 1 and self.h2.denominator == 1

    def __add__(self, other):
        return Weight(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other):
        return Weight(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self):
        return Weight(-self.c1, -self.c2)

    def __rmul__(self, k):
        return Weight(k * self.c1, k * self.c2)

    def __repr__(self):
        return f"wt({self.c1},{self.c2})"


ALPHA = {
    1: Weight(1, 0),
    2: Weight(0, 1),
    3: Weight(1, 1),
    4: Weight(1, 2),
}

# half root lengths: q_beta = q^(d_beta)
D_ROOT = {1: Fraction(1), 2: Fraction(1, 2), 3: Fraction(1, 2), 4: Fraction(1)}

# Cartan matrix A[i][j] = (alpha_i, alpha_j) * 2/(alpha_j, alpha_j), i,j in {1,2}
CARTAN = ((2, -2), (-1, 2))

RHO = Weight(Fraction(3, 2), 2)


def lowest_weight_of(E0, s):
    """Lowest weight with energy E0 and spin s (labels on the AdS diagonal)."""
    E0, s = Fraction(E0), Fraction(s)
    assert s >= 0 and (2 * s).denominator == 1, f"bad spin {s}"
    assert (2 * E0).denominator == 1, f"bad energy {E0}"
    return Weight(E0, E0 - s)


def kostant_count(k1, k2):
    """Dimension of the (k1, k2) grade of a free lowering/raising cone."""
    if k1 < 0 or k2 < 0:
        return 0
    cnt = 0
    for b in range(min(k1, k2) + 1):
        for c in range((k2 - b) // 2 + 1):
            if b + c <= k1 and k2 - b - 2 * c >= 0:
                cnt += 1
    return cnt


def weyl_dim_b2(a, b):
    """Classical irrep dimension from Dynkin labels (a on the long node)."""
    num = (a + 1) * (b + 1) * (a + b + 2) * (2 * a + b + 3)
    assert num % 6 == 0
    return num // 6


class RootData:
    """Root-of-unity window data for (m, n): q = exp(2 pi i n / m)."""

    def __init__(self, m, n=1):
        self.m = m
        self.n = n
        self.window = Fraction(m, 2 * n)
        # per-root bracket walls: [x]_{q^d} = 0 at integral x iff wall | x
        self.wall = {}
        for beta in ALPHA:
            w = Fraction(m, 2 * n) / D_ROOT[beta]
            assert w.denominator == 1
            self.wall[beta] = int(w)

    def in_window(self, lam):
        """0 <= (lam, alpha) < m/2n for every positive root alpha."""
        for beta in (1, 2, 3, 4):
            p = lam.dot(ALPHA[beta])
            if not (0 <= p < self.window):
                return False
        return True

    def is_compact(self, lam):
        """Integral dominant weight strictly inside the affine window."""
        return lam.is_integral() and self.in_window(lam)

    def shift_weight(self, mu):
        """Involution tying a lowest weight to its compact partner."""
        return -mu + self.window * ALPHA[3]

    def singleton_labels(self):
        """The two preset ultra-short reps (E0, s) at this root of unity."""
        return {"rac": (Fraction(1, 2), Fraction(0)),
                "di": (Fraction(1), Fraction(1, 2))}
