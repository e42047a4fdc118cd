from collections import Counter
from itertools import product

import pytest

from uhlenbeck.core import RatPoly
from uhlenbeck.ic import (
    GradedStalk,
    ic_stalk,
    length_counting_poly,
    punctual_hilbert_betti,
    smallness_audit,
    strata,
    uhlenbeck_fixed_point_count,
    uhlenbeck_fixed_points,
)
from uhlenbeck.partitions import Partition, partition_count, partitions


def brute_force_stalk(n: int, m: int, lam: Partition) -> Counter:
    """Independent multiset of shifts {2m + sum 2 l(mu_i)} over tuples mu_i |- lam_i."""
    assert m + lam.size == n
    shifts = Counter()
    for mus in product(*[partitions(part) for part in lam]):
        shifts[2 * m + sum(2 * mu.length for mu in mus)] += 1
    return shifts


def stalk_counter(stalk: GradedStalk) -> Counter:
    return Counter({k: int(c) for k, c in enumerate(stalk.poly.coeffs) if c != 0})


# ---------------------------------------------------------------------------
# stalks


def test_stalk_deepest_n3():
    stalk = ic_stalk(3, 0, Partition((3,)))
    assert stalk.to_str() == "q^2+q^4+q^6"


def test_stalk_all_ones():
    for n in range(1, 7):
        for m in range(n + 1):
            lam = Partition((1,) * (n - m))
            assert ic_stalk(n, m, lam).poly == RatPoly.monomial(2 * n, 1, "q")


def test_stalk_example_n4():
    assert ic_stalk(4, 1, Partition((2, 1))).to_str() == "q^6+q^8"


def test_stalk_validates_stratum():
    with pytest.raises(ValueError):
        ic_stalk(4, 2, Partition((3,)))


def test_stalk_matches_brute_force_small():
    for n in range(0, 7):
        for m in range(n + 1):
            for lam in partitions(n - m):
                assert stalk_counter(ic_stalk(n, m, lam)) == brute_force_stalk(n, m, lam)


def test_stalk_total_is_product_of_counts():
    for n in range(1, 8):
        for m in range(n + 1):
            for lam in partitions(n - m):
                expected = 1
                for part in lam:
                    expected *= partition_count(part)
                assert ic_stalk(n, m, lam).total == expected


def test_stalk_factorizes_over_parts():
    for n in range(1, 8):
        for m in range(n + 1):
            for lam in partitions(n - m):
                product_poly = RatPoly.monomial(2 * m, 1, "q")
                for part in lam:
                    product_poly = product_poly * ic_stalk(part, 0, Partition((part,))).poly
                assert ic_stalk(n, m, lam).poly == product_poly


def test_stalk_min_shift():
    for n in range(1, 8):
        for m in range(n + 1):
            for lam in partitions(n - m):
                stalk = ic_stalk(n, m, lam)
                assert stalk.min_shift == 2 * m + 2 * lam.length
                assert all(k % 2 == 0 for k, c in enumerate(stalk.poly.coeffs) if c != 0)


def test_length_counting_poly_empty():
    assert length_counting_poly(0) == RatPoly([1], "q")


# ---------------------------------------------------------------------------
# Betti numbers


def test_betti_small():
    assert punctual_hilbert_betti(1) == [1]
    assert punctual_hilbert_betti(3) == [1, 1, 1]
    assert punctual_hilbert_betti(4) == [1, 2, 1, 1]


def test_betti_bridge_to_stalk():
    for n in range(1, 12):
        stalk = ic_stalk(n, 0, Partition((n,)))
        betti = punctual_hilbert_betti(n)
        for k in range(1, n + 1):
            assert stalk.coefficient(2 * k) == betti[k - 1]


# ---------------------------------------------------------------------------
# strata


def test_strata_n1():
    st = strata(1)
    assert [(s.m, s.lam.parts, s.dim) for s in st] == [(1, (), 2), (0, (1,), 1)]


def test_strata_count():
    assert len(strata(2)) == 4
    for n in range(8):
        assert len(strata(n)) == sum(partition_count(n - m) for m in range(n + 1))


def test_open_stratum_dimension():
    for n in range(8):
        st = strata(n)[0]
        assert st.is_open and st.m == n and st.dim == 2 * n


def test_stratum_dims():
    for n in range(8):
        for st in strata(n):
            assert st.dim == 2 * st.m + st.lam.length
            assert st.m + st.lam.size == n


# ---------------------------------------------------------------------------
# smallness


def test_smallness_rows_n1():
    rows = smallness_audit(1)
    closed = [r for r in rows if not r.stratum.is_open]
    assert len(closed) == 1
    assert closed[0].codim == 1 and closed[0].fiber_bound == 0


def test_smallness_n3_deepest():
    rows = {(r.stratum.m, r.stratum.lam.parts): r for r in smallness_audit(3)}
    row = rows[(0, (3,))]
    assert row.codim == 5 and row.fiber_bound == 2
    assert 2 * row.fiber_bound < row.codim


def test_smallness_strict_up_to_12():
    for n in range(1, 13):
        rows = smallness_audit(n)
        for r in rows:
            if not r.stratum.is_open:
                assert 2 * r.fiber_bound < r.codim


def test_fiber_bound_matches_stalk_width():
    # width of the stalk polynomial is twice the fiber bound
    for n in range(1, 9):
        for r in smallness_audit(n):
            stalk = ic_stalk(n, r.stratum.m, r.stratum.lam)
            if r.stratum.lam.length:
                assert stalk.max_shift - stalk.min_shift == 2 * r.fiber_bound


# ---------------------------------------------------------------------------
# fixed points


def test_fixed_points_n0():
    points = uhlenbeck_fixed_points(0)
    assert len(points) == 1 and points[0].attracting


def test_fixed_points_n2():
    assert len(uhlenbeck_fixed_points(2)) == 7


def test_fixed_point_count_formula_matches_enumeration():
    for n in range(11):
        assert len(uhlenbeck_fixed_points(n)) == uhlenbeck_fixed_point_count(n)


def test_unique_attracting_point():
    for n in range(1, 8):
        attracting = [p for p in uhlenbeck_fixed_points(n) if p.attracting]
        assert len(attracting) == 1
        p = attracting[0]
        assert p.m == 0 and p.k0 == n and p.kinf == 0
