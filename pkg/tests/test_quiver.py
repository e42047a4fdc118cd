import random
from fractions import Fraction

import pytest

from conftest import rand_invertible, rand_matrix
from uhlenbeck.core import RatMatrix, RatPoly, Subspace
from uhlenbeck.ncalgebra import dual_relation_kernel
from uhlenbeck.quiver import (
    Polarization,
    QuiverRep,
    SheafNumerics,
    alpha,
    artin_numerics,
    check_relations,
    conjugate_rep,
    decide_stability_121,
    find_destabilizer,
    generated_subrep,
    hilbert_poly,
    line_bundle_numerics,
    monad_of_point,
    polarizations,
    poly_eventually_positive,
    relation_tensor_residual,
    rep_direct_sum,
    sample_relation_rep,
    slope,
    slopes_MG,
)

ONE = Fraction(1)


def zero_rep(dim, tau=ONE) -> QuiverRep:
    r1, r2, r3 = dim
    F = {a: RatMatrix.zero(r2, r1) for a in ("xi", "eta", "zeta")}
    G = {a: RatMatrix.zero(r3, r2) for a in ("xi", "eta", "zeta")}
    return QuiverRep(dim, F, G, tau)


# ---------------------------------------------------------------------------
# dimension vectors and polarizations


def test_alpha_rank_one():
    for n in range(0, 6):
        assert alpha(1, 0, n) == (n, 2 * n + 1, n)


def test_alpha_artin_bookkeeping():
    for n in range(0, 6):
        assert alpha(0, 0, n) == (n, 2 * n, n)


def test_alpha_specific():
    assert alpha(2, 1, 1) == (1, 3, 0)


def test_alpha_preconditions():
    with pytest.raises(ValueError):
        alpha(1, 1, 5)
    with pytest.raises(ValueError):
        alpha(3, 2, 2)  # n < d(d+1)/2


def test_polarizations_rank_one():
    for n in range(1, 5):
        theta0, theta1 = polarizations(1, 0, n)
        assert theta0.theta == (Fraction(-1), Fraction(0), Fraction(1))
        assert theta1.theta == (Fraction(2 * n + 1), Fraction(-2 * n), Fraction(2 * n + 1))


def test_pairings_vanish_on_grid():
    for r in range(1, 5):
        for d in range(0, r):
            for n in range(d * (d + 1) // 2, 9):
                a = alpha(r, d, n)
                theta0, theta1 = polarizations(r, d, n)
                assert slope(theta0, a) == 0
                assert slope(theta1, a) == 0


def test_theta1_on_point_dimension():
    for (r, d, n) in [(2, 1, 3), (3, 1, 4), (4, 2, 6)]:
        _, theta1 = polarizations(r, d, n)
        assert slope(theta1, (1, 2, 1)) == 2 * r


def test_slope_examples():
    theta = Polarization(-1, 0, 1)
    assert slope(theta, (0, 0, 1)) == 1
    assert slope(theta, (0, 0, 0)) == 0
    for n in range(4):
        assert slope(theta, (n, 2 * n, n)) == 0


# ---------------------------------------------------------------------------
# relations


def test_zero_rep_passes():
    assert check_relations(zero_rep((2, 3, 2))).ok


def test_monad_passes():
    rep = monad_of_point((Fraction(2), Fraction(-1)), Fraction(3, 7))
    assert check_relations(rep).ok
    assert rep.dim == (1, 2, 1)


def test_identity_rep_fails_first_identity():
    one = RatMatrix.identity(1)
    zero = RatMatrix.zero(1)
    F = {"xi": one, "eta": zero, "zeta": zero}
    G = {"xi": one, "eta": zero, "zeta": zero}
    report = check_relations(QuiverRep((1, 1, 1), F, G, ONE))
    assert not report.ok
    assert "xi.xi" in report.failures


def test_relations_equal_kernel_membership():
    # passing check_relations must coincide with vanishing of G_b F_a summed
    # against every basis vector of the computed multiplication kernel
    rng = random.Random(401)
    for trial in range(12):
        tau = Fraction(rng.choice([1, -2, 3]), rng.choice([1, 5]))
        dim = (rng.randint(1, 2), rng.randint(1, 3), rng.randint(1, 2))
        if trial % 2 == 0:
            rep = sample_relation_rep(dim, tau, seed=rng.randint(0, 10**6))
            if rep is None:
                continue
        else:
            F = {a: rand_matrix(rng, dim[1], dim[0], -2, 2) for a in ("xi", "eta", "zeta")}
            G = {a: rand_matrix(rng, dim[2], dim[1], -2, 2) for a in ("xi", "eta", "zeta")}
            rep = QuiverRep(dim, F, G, tau)
        kernel = dual_relation_kernel(tau)
        residuals_vanish = all(relation_tensor_residual(rep, kv).is_zero for kv in kernel)
        assert residuals_vanish == check_relations(rep).ok


def test_relations_conjugation_invariant():
    rng = random.Random(402)
    for _ in range(8):
        dim = (2, 4, 2)
        h1 = (Fraction(rng.randint(1, 4)), Fraction(rng.randint(-4, -1)))
        h2 = (Fraction(rng.randint(-4, -1)), Fraction(rng.randint(1, 4)))
        rep = rep_direct_sum(monad_of_point(h1, Fraction(2)), monad_of_point(h2, Fraction(2)))
        bad = QuiverRep(
            dim,
            {a: rand_matrix(rng, 4, 2, -2, 2) for a in ("xi", "eta", "zeta")},
            {a: rand_matrix(rng, 2, 4, -2, 2) for a in ("xi", "eta", "zeta")},
            Fraction(2),
        )
        gs = tuple(rand_invertible(rng, n) for n in dim)
        for candidate in (rep, bad):
            assert check_relations(conjugate_rep(candidate, *gs)).ok == check_relations(candidate).ok


def test_monad_rejects_degenerate_input():
    with pytest.raises(ValueError):
        monad_of_point((Fraction(0), Fraction(0)), ONE)
    with pytest.raises(ValueError):
        monad_of_point((ONE, ONE), Fraction(0))


def test_monad_scalar_rescaling_equivalence():
    # h and c*h define the same point; the reps differ by a vertex change of basis
    h = (Fraction(2), Fraction(5))
    c = Fraction(3, 4)
    rep = monad_of_point(h, ONE)
    scaled = monad_of_point((c * h[0], c * h[1]), ONE)
    g1 = RatMatrix.identity(1)
    g2 = RatMatrix.diagonal([c, 1])
    g3 = RatMatrix.diagonal([c])
    transformed = conjugate_rep(rep, g1, g2, g3)
    assert transformed.F == scaled.F and transformed.G == scaled.G


def test_monad_torus_equivariance():
    # diag(s, 1/s) on the point matches rescaling the arrows (xi, eta) by (s, 1/s)
    h = (Fraction(1), Fraction(2))
    s = Fraction(3)
    rep = monad_of_point(h, ONE)
    moved = monad_of_point((s * h[0], h[1] / s), ONE)
    assert moved.F["xi"] == rep.F["xi"].scale(s)
    assert moved.F["eta"] == rep.F["eta"].scale(1 / s)
    assert moved.F["zeta"] == rep.F["zeta"]
    assert moved.G["xi"] == rep.G["xi"].scale(s)
    assert moved.G["eta"] == rep.G["eta"].scale(1 / s)
    assert moved.G["zeta"] == rep.G["zeta"]


# ---------------------------------------------------------------------------
# subrepresentation closure


def test_generated_subrep_zero_seeds():
    rep = monad_of_point((ONE, ONE), ONE)
    dims, _ = generated_subrep(rep, Subspace.zero(1), Subspace.zero(2), Subspace.zero(1))
    assert dims == (0, 0, 0)


def test_generated_subrep_full_top():
    rep = monad_of_point((ONE, Fraction(2)), ONE)
    dims, _ = generated_subrep(rep, Subspace.full(1), Subspace.zero(2), Subspace.zero(1))
    assert dims == (1, 2, 1)


def test_generated_subrep_bottom_only():
    rep = monad_of_point((ONE, Fraction(2)), ONE)
    dims, _ = generated_subrep(rep, Subspace.zero(1), Subspace.zero(2), Subspace.full(1))
    assert dims == (0, 0, 1)


# ---------------------------------------------------------------------------
# stability


def test_monad_stable_for_theta0_grid():
    for r in range(1, 4):
        for d in range(0, r):
            theta0, _ = polarizations(r, d, max(1, d * (d + 1) // 2))
            rep = monad_of_point((Fraction(1), Fraction(-2)), ONE)
            verdict, witness = decide_stability_121(rep, theta0)
            assert verdict == "stable" and witness is None


def test_decide_preconditions():
    rep1 = monad_of_point((ONE, ONE), ONE)
    doubled = rep_direct_sum(rep1, monad_of_point((ONE, Fraction(2)), ONE))
    theta0, _ = polarizations(1, 0, 1)
    with pytest.raises(ValueError):
        decide_stability_121(doubled, theta0)
    with pytest.raises(ValueError):
        decide_stability_121(rep1, Polarization(1, 1, 1))


def test_g_zero_rep_unstable_by_exhaustion():
    # F as in a point monad, G identically zero: the (1,2,0) closure of the
    # full first vertex destabilizes theta0 = (-1, 0, 1) at slope -1
    rep = monad_of_point((ONE, Fraction(2)), ONE)
    gzero = QuiverRep(rep.dim, rep.F, {a: RatMatrix.zero(1, 2) for a in ("xi", "eta", "zeta")}, ONE)
    verdict, witness = decide_stability_121(gzero, Polarization(-1, 0, 1))
    assert verdict == "unstable"
    assert witness.dim == (1, 2, 0)
    assert witness.slopes[0] == -1


def test_negative_third_weight_destabilizes_monad():
    rep = monad_of_point((ONE, ONE), ONE)
    theta = Polarization(1, 0, -1)
    verdict, witness = decide_stability_121(rep, theta)
    assert verdict == "unstable" and witness.dim == (0, 0, 1)
    found = find_destabilizer(rep, theta, budget=8, seed=0)
    assert found is not None and found.dim == (0, 0, 1)


def test_find_destabilizer_monad_theta0_none():
    rep = monad_of_point((Fraction(3), Fraction(-1)), ONE)
    theta0, _ = polarizations(1, 0, 2)
    assert find_destabilizer(rep, theta0, budget=16, seed=1) is None


def test_find_destabilizer_zero_rep():
    rep = zero_rep((1, 2, 1))
    for r, d in [(1, 0), (2, 1), (3, 1)]:
        theta0, _ = polarizations(r, d, max(1, d * (d + 1) // 2))
        witness = find_destabilizer(rep, theta0, budget=8, seed=0)
        assert witness is not None
        assert witness.dim == (1, 0, 0)
        assert witness.slopes[0] == -(r + d)


def test_decide_agrees_with_found_witnesses():
    rng = random.Random(403)
    for _ in range(25):
        rep = sample_relation_rep((1, 2, 1), Fraction(1), seed=rng.randint(0, 10**6))
        if rep is None:
            continue
        t1, t2 = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        theta = Polarization(t1, t2, -t1 - 2 * t2)
        witness = find_destabilizer(rep, theta, budget=12, seed=7)
        verdict, _ = decide_stability_121(rep, theta)
        if witness is not None:
            assert verdict == "unstable"
        if verdict == "stable":
            assert witness is None


def brute_force_min_slope(rep, theta):
    """Oracle for the (1,2,1) decision: sweep closures over a dense family of
    rational lines plus the distinguished subspaces (images of the F maps,
    kernels of the G maps and their meets), and take the minimal slope over
    proper nonzero subrepresentation classes.  Any subrepresentation's middle
    space is a sum of such seeds, so the sweep reaches every realizable
    dimension class."""
    from uhlenbeck.core import column_space, kernel_space

    lines2 = [Subspace(2, [(a, b)]) for a in range(-3, 4) for b in range(-3, 4) if (a, b) != (0, 0)]
    distinguished = [column_space(rep.F[a]) for a in ("xi", "eta", "zeta")]
    distinguished.append(distinguished[0].sum(distinguished[1]).sum(distinguished[2]))
    kernels = [kernel_space(rep.G[a]) for a in ("xi", "eta", "zeta")]
    distinguished.extend(kernels)
    distinguished.append(kernels[0].intersect(kernels[1]).intersect(kernels[2]))
    v2_options = [Subspace.zero(2), Subspace.full(2)] + lines2 + distinguished
    v1_options = [Subspace.zero(1), Subspace.full(1)]
    v3_options = [Subspace.zero(1), Subspace.full(1)]
    best = None
    for u1 in v1_options:
        for u2 in v2_options:
            for u3 in v3_options:
                dims, _ = generated_subrep(rep, u1, u2, u3)
                if dims == (0, 0, 0) or dims == (1, 2, 1):
                    continue
                s = slope(theta, dims)
                if best is None or s < best:
                    best = s
    return best


def test_decide_matches_brute_force_enumeration():
    rng = random.Random(406)
    checked = 0
    while checked < 20:
        rep = sample_relation_rep((1, 2, 1), Fraction(2), seed=rng.randint(0, 10**6))
        if rep is None:
            continue
        checked += 1
        t1, t2 = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        theta = Polarization(t1, t2, -t1 - 2 * t2)
        verdict, witness = decide_stability_121(rep, theta)
        brute = brute_force_min_slope(rep, theta)
        assert brute is not None
        if verdict == "unstable":
            assert witness.slopes[0] == brute < 0
        elif verdict == "semistable":
            assert brute == 0
        else:
            assert brute > 0


def test_lexicographic_tiebreak():
    # theta0-slope 0 everywhere, theta1 negative on a (0,0,1) subrep
    rep = zero_rep((1, 2, 1))
    theta0 = Polarization(0, 0, 0)
    theta1 = Polarization(1, 0, -1)
    witness = find_destabilizer(rep, theta0, theta1, budget=8, seed=0)
    assert witness is not None
    assert witness.slopes[0] == 0 and witness.slopes[1] < 0


# ---------------------------------------------------------------------------
# numeric invariants of sheaves


def test_hilbert_line_bundles():
    t = RatPoly.variable()
    for i in range(-2, 4):
        expected = (t + (i + 1)) * (t + (i + 2)) * Fraction(1, 2)
        assert hilbert_poly(line_bundle_numerics(i)) == expected


def test_hilbert_rank_one_with_points():
    t = RatPoly.variable()
    assert hilbert_poly(SheafNumerics(1, 0, 2)) == (t + 1) * (t + 2) * Fraction(1, 2) - 2


def test_hilbert_artin_constant():
    for n in range(5):
        h = hilbert_poly(artin_numerics(n))
        assert h == RatPoly.constant(n)
        assert artin_numerics(n).ch2 == n


def test_hilbert_additive_over_sums():
    rng = random.Random(404)
    for _ in range(20):
        a = SheafNumerics(rng.randint(0, 3), rng.randint(0, 2), rng.randint(-3, 3))
        b = SheafNumerics(rng.randint(0, 3), rng.randint(0, 2), rng.randint(-3, 3))
        s = a.direct_sum(b)
        assert hilbert_poly(s) == hilbert_poly(a) + hilbert_poly(b)
        assert s.ch2 == a.ch2 + b.ch2


def test_slopes():
    mu_m, mu_g = slopes_MG(SheafNumerics(2, 1, 0))
    assert mu_m == Fraction(1, 2)
    assert mu_g.leading == Fraction(1, 2)
    assert slopes_MG(SheafNumerics(1, 0, 3))[0] == 0
    with pytest.raises(ValueError):
        slopes_MG(SheafNumerics(0, 0, 1))


def test_gieseker_slope_orders_like_mumford():
    rng = random.Random(405)
    for _ in range(20):
        a = SheafNumerics(rng.randint(1, 4), rng.randint(0, 3), rng.randint(-2, 4))
        b = SheafNumerics(rng.randint(1, 4), rng.randint(0, 3), rng.randint(-2, 4))
        mm_a, mg_a = slopes_MG(a)
        mm_b, mg_b = slopes_MG(b)
        if mm_a > mm_b:
            assert poly_eventually_positive(mg_a - mg_b)
