"""Sublattice point counts and Pick-type volume formulas.

Counts on the sublattice ``(1/n) Z^d`` are taken as integer points of the
dilate ``n P``.  Euler characteristics are those of a convex polytope:
``chi(P) = 1`` and ``chi(boundary) = 1 + (-1)^(d-1)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .core import LatticePolytope
from .errors import NoInteriorPoints, WrongDimension


@dataclass(frozen=True)
class SublatticeCounts:
    n: int
    b_n: int
    k_n: int


@dataclass(frozen=True)
class EulerData:
    chi_P: int
    chi_boundary: int


def euler_data(d):
    return EulerData(1, 1 + (-1) ** (d - 1))


def _polytope(p):
    return p if isinstance(p, LatticePolytope) else LatticePolytope.from_points(p)


def sublattice_counts(p, n):
    """Boundary and interior points of ``p`` on the lattice ``(1/n) Z^d``."""
    if n < 1:
        raise ValueError("n must be positive")
    p = _polytope(p)
    c = p.scaled(n).census if n > 1 else p.census
    return SublatticeCounts(n, c.boundary_count, c.k)


def _require_dim(p, d):
    if p.ambient_dim != d or not p.is_full_dimensional:
        raise WrongDimension(f"expected a full-dimensional {d}-polytope")


def pick_volume(p):
    """Area ``k + b/2 - 1`` of a lattice polygon."""
    p = _polytope(p)
    _require_dim(p, 2)
    c = p.census
    return c.k + Fraction(c.boundary_count, 2) - 1


def reeve_volume(p, n=2):
    """Volume of a lattice polyhedron from its counts on ``Z^3`` and ``(1/n) Z^3``.

    ``2n(n^2-1) Vol = b_n - n b_1 + 2(k_n - n k_1) + (n-1)(2 chi(P) - chi(bd P))``.
    """
    p = _polytope(p)
    _require_dim(p, 3)
    if n < 2:
        raise ValueError("n must be at least 2")
    e = euler_data(3)
    c1, cn = sublattice_counts(p, 1), sublattice_counts(p, n)
    num = cn.b_n - n * c1.b_n + 2 * (cn.k_n - n * c1.k_n) + (n - 1) * (2 * e.chi_P - e.chi_boundary)
    return Fraction(num, 2 * n * (n * n - 1))


def macdonald_volume(p, d=None):
    """Volume from ``b_i, k_i`` for ``i = 1..d-1``.

    ``(d-1) d! Vol = sum_{i=1}^{d-1} (-1)^(i-1) C(d-1, i-1) (b_{d-i} + 2 k_{d-i})
    + (-1)^(d-1) (2 chi(P) - chi(bd P))``.
    """
    p = _polytope(p)
    d = p.ambient_dim if d is None else d
    if d < 2:
        raise WrongDimension("need d >= 2")
    _require_dim(p, d)
    e = euler_data(d)
    total = (-1) ** (d - 1) * (2 * e.chi_P - e.chi_boundary)
    for i in range(1, d):
        c = sublattice_counts(p, d - i)
        total += (-1) ** (i - 1) * comb(d - 1, i - 1) * (c.b_n + 2 * c.k_n)
    return Fraction(total, (d - 1) * factorial(d))


def kk_volume(p, d=None):
    """Volume from interior counts ``k_1, ..., k_d`` alone.

    ``d! Vol = sum_{i=0}^{d-1} (-1)^i C(d, i) k_{d-i} + (-1)^d (chi(P) - chi(bd P))``.
    """
    p = _polytope(p)
    d = p.ambient_dim if d is None else d
    if d < 2:
        raise WrongDimension("need d >= 2")
    _require_dim(p, d)
    e = euler_data(d)
    total = (-1) ** d * (e.chi_P - e.chi_boundary)
    for i in range(d):
        total += (-1) ** i * comb(d, i) * sublattice_counts(p, d - i).k_n
    return Fraction(total, factorial(d))


@dataclass(frozen=True)
class PickInequality:
    bound: Fraction
    volume: Fraction
    satisfied: bool
    tight: bool


def pick_inequality_check(p):
    """Compare ``Vol(P)`` with ``(2b + 3k - 7) / 6`` for a lattice polyhedron with ``k >= 1``."""
    p = _polytope(p)
    _require_dim(p, 3)
    c = p.census
    if c.k == 0:
        raise NoInteriorPoints("the bound needs at least one interior lattice point")
    bound = Fraction(2 * c.boundary_count + 3 * c.k - 7, 6)
    vol = p.volume
    return PickInequality(bound, vol, vol >= bound, vol == bound)
