"""Stalk combinatorics of the Uhlenbeck compactification.

The boundary strata of the level-n space are indexed by a Calogero-Moser
level m and a partition lam of n - m recording collisions on the line at
infinity; the stratum has dimension 2m + l(lam).  The intersection
cohomology stalk on such a stratum is the graded vector space

    q^{2m} * prod_i ( sum_{mu |- lam_i} q^{2 l(mu)} ),

encoded here as a polynomial in q (a summand in shift d contributes q^d).
The coefficient profile of the deepest one-point factor reproduces the Betti
numbers of the punctual Hilbert scheme of the plane.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import RatPoly
from .partitions import Partition, partition_count, partition_count_by_length, partitions


@dataclass(frozen=True)
class GradedStalk:
    """Multiset of even shifts, as a polynomial in q."""

    poly: RatPoly

    def __post_init__(self):
        for k, c in enumerate(self.poly.coeffs):
            if c != 0 and (k % 2 == 1 or c != int(c) or c < 0):
                raise ValueError("stalk polynomial must have nonnegative integer coefficients in even degrees")

    @property
    def total(self) -> int:
        return int(self.poly(1))

    @property
    def min_shift(self) -> int:
        if self.poly.is_zero:
            raise ValueError("zero stalk")
        return next(k for k, c in enumerate(self.poly.coeffs) if c != 0)

    @property
    def max_shift(self) -> int:
        return self.poly.degree

    def coefficient(self, shift: int) -> int:
        return int(self.poly[shift])

    def to_str(self) -> str:
        return self.poly.to_str(ascending=True)

    def __str__(self):
        return self.to_str()


def length_counting_poly(k: int) -> RatPoly:
    """sum over partitions mu of k of q^{2 l(mu)}, by explicit enumeration."""
    coeffs: dict[int, int] = {}
    for mu in partitions(k):
        coeffs[2 * mu.length] = coeffs.get(2 * mu.length, 0) + 1
    top = max(coeffs) if coeffs else 0
    return RatPoly([coeffs.get(i, 0) for i in range(top + 1)], var="q")


def ic_stalk(n: int, m: int, lam) -> GradedStalk:
    """IC stalk on the stratum (m, lam): q^{2m} times the product over parts."""
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    if m < 0 or m + lam.size != n:
        raise ValueError(f"need m + |lam| = n with m >= 0; got m={m}, |lam|={lam.size}, n={n}")
    poly = RatPoly.monomial(2 * m, 1, var="q")
    for part in lam:
        poly = poly * length_counting_poly(part)
    return GradedStalk(poly)


def punctual_hilbert_betti(n: int) -> list[int]:
    """Betti numbers b_0, b_2, ... of the punctual Hilbert scheme of n points.

    b_{2k-2} counts partitions of n with exactly k parts; odd Betti numbers
    vanish and are omitted.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return [partition_count_by_length(n, k) for k in range(1, n + 1)]


@dataclass(frozen=True)
class Stratum:
    m: int
    lam: Partition

    @property
    def dim(self) -> int:
        return 2 * self.m + self.lam.length

    @property
    def is_open(self) -> bool:
        return self.lam.length == 0


def strata(n: int) -> list[Stratum]:
    """All strata (m, lam |- n-m), open stratum first."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for m in range(n, -1, -1):
        for lam in partitions(n - m):
            out.append(Stratum(m, lam))
    return out


@dataclass(frozen=True)
class SmallnessRow:
    stratum: Stratum
    codim: int
    fiber_bound: int
    strict: bool


def smallness_audit(n: int) -> list[SmallnessRow]:
    """Check 2 * fiber bound < codim on every non-open stratum.

    The fiber bound sum(lam_i - 1) is read off the stalk: each factor spans
    shifts 2..2*lam_i, so its width is twice the fiber dimension over that
    part.  A violation raises, since it would contradict smallness.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = []
    for st in strata(n):
        codim = 2 * n - st.dim
        bound = sum(p - 1 for p in st.lam)
        strict = True if st.is_open else (2 * bound < codim)
        if not strict:
            raise ValueError(f"smallness violated on stratum {st}")
        rows.append(SmallnessRow(st, codim, bound, strict))
    return rows


@dataclass(frozen=True)
class UhlenbeckFixedPoint:
    m: int
    lam: Partition
    k0: int
    kinf: int
    attracting: bool


def uhlenbeck_fixed_points(n: int) -> list[UhlenbeckFixedPoint]:
    """Torus-fixed points: a fixed point of level m plus a divisor supported
    at the two fixed points of the line, k0 + kinf = n - m.  Exactly one of
    them (m = 0, everything at the attracting end) is attracting."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for m in range(n, -1, -1):
        for lam in partitions(m):
            for k0 in range(n - m, -1, -1):
                kinf = n - m - k0
                attracting = m == 0 and kinf == 0
                out.append(UhlenbeckFixedPoint(m, lam, k0, kinf, attracting))
    return out


def uhlenbeck_fixed_point_count(n: int) -> int:
    """sum over m of p(m) * (n - m + 1), with no enumeration."""
    return sum(partition_count(m) * (n - m + 1) for m in range(n + 1))
