import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from coverlab.errors import BracketError, DomainError
from coverlab.graphs import MultiGraph
from coverlab.colorings import ClassProfile, count_proper
from coverlab.moments import (
    BALLS_BINS_OVERHEAD_CAP,
    D_3COL_REPORTED,
    RateParams,
    balanced_coloring_rate,
    balanced_rate_root,
    balls_bins_joint,
    bounds_table,
    chernoff_tails,
    chernoff_upper_multiple,
    coloring_rate,
    cover_rate,
    cover_terms,
    cover_threshold,
    d_AN,
    d_cavity,
    d_first,
    d_second,
    expected_colorings_exact,
    grad_f,
    hessian_f,
    optimal_alpha0,
    phi,
    poisson_conditioned_joint,
    poissonization_overhead,
    stability_factor,
    taylor_bound,
)


def test_phi_values():
    assert phi(0.0) == 0.0
    assert phi(1.0) == pytest.approx(2 * math.log(2) - 1, abs=1e-15)
    assert phi(1.0) == pytest.approx(0.3862943611198906, abs=1e-15)
    # (1+x) = e makes the first term e, so phi = e - (e-1) = 1
    assert phi(math.e - 1) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(DomainError):
        phi(-1.0)


def test_chernoff_tails_basic():
    upper, lower = chernoff_tails(10, 5)
    assert upper == pytest.approx(0.3389249367546413, rel=1e-14)
    assert lower == pytest.approx(0.21561430397073494, rel=1e-14)


def test_chernoff_tails_beyond_mean():
    upper, lower = chernoff_tails(1, math.e - 1)
    assert upper == pytest.approx(1 / math.e, rel=1e-14)
    assert lower is None


def test_chernoff_tails_at_mean():
    # t is the deviation above the mean, so t = mu evaluates phi at 1
    # upward and hits the limiting exp(-mu) downward
    upper, lower = chernoff_tails(2, 2)
    assert upper == pytest.approx(math.exp(-2 * phi(1.0)), rel=1e-14)
    assert lower == pytest.approx(math.exp(-2), rel=1e-14)


def test_chernoff_bounds_a_real_binomial_tail():
    # Pr[Bin(20, 1/2) > 15], exactly, against the Poisson-style bound
    # for a deviation of 5 above mean 10
    exact = sum(Fraction(math.comb(20, j)) for j in range(16, 21)) / Fraction(2) ** 20
    assert exact == Fraction(1549, 262144)
    upper, _ = chernoff_tails(10, 5)
    assert float(exact) < upper


def test_chernoff_upper_multiple():
    assert chernoff_upper_multiple(2, 3) == pytest.approx(0.5534002654221329, rel=1e-14)
    with pytest.raises(DomainError):
        chernoff_upper_multiple(2, 1.0)
    # decreasing in t once past e
    vals = [chernoff_upper_multiple(2, t) for t in (3, 4, 5)]
    assert vals == sorted(vals, reverse=True)


def test_balls_bins_joint_values():
    assert balls_bins_joint(2, 2, (1, 1)) == Fraction(1, 2)
    assert balls_bins_joint(2, 2, (2, 0)) == Fraction(1, 4)
    assert balls_bins_joint(0, 3, (0, 0, 0)) == 1


def test_balls_bins_joint_sums_to_one():
    total = sum(
        balls_bins_joint(4, 3, c)
        for c in itertools.product(range(5), repeat=3)
        if sum(c) == 4
    )
    assert total == 1


def test_balls_bins_joint_validation():
    with pytest.raises(DomainError):
        balls_bins_joint(2, 2, (1,))
    with pytest.raises(DomainError):
        balls_bins_joint(2, 2, (3, 0))


def test_poisson_conditioning_drops_lambda():
    for counts in ((1, 1), (2, 0), (1, 2, 0)):
        mu = sum(counts)
        vals = {poisson_conditioned_joint(lam, counts, mu) for lam in (0.5, 1.0, 5.0)}
        spread = max(vals) - min(vals)
        assert spread <= 1e-15
        assert abs(next(iter(vals)) - float(balls_bins_joint(mu, len(counts), counts))) <= 1e-14


def test_poissonization_overhead():
    assert poissonization_overhead(1) == pytest.approx(math.e, rel=1e-14)
    values = [poissonization_overhead(mu) for mu in range(1, 40)]
    assert all(v <= BALLS_BINS_OVERHEAD_CAP for v in values)
    # decreases toward sqrt(2 pi)
    assert values == sorted(values, reverse=True)
    assert values[-1] > math.sqrt(2 * math.pi)


def test_expected_colorings_exact_values():
    assert expected_colorings_exact(2, 1, (1, 1)) == 1
    assert expected_colorings_exact(2, 0, (1, 1)) == 2
    assert expected_colorings_exact(3, 2, (1, 1, 1)) == Fraction(8, 3)
    with pytest.raises(DomainError):
        expected_colorings_exact(3, 1, (1, 1))


def test_expected_colorings_matches_tuple_average_tiny():
    # n=2, m=1, k=2: the four ordered edge tuples are (1,1), (1,2),
    # (2,1), (2,2); loops kill all colorings, the rest admit two
    total = Fraction(0)
    for u, v in itertools.product((1, 2), repeat=2):
        g = MultiGraph(2, ((u, v),))
        total += count_proper(g, 2, ClassProfile((1, 1)))
    assert total / 4 == expected_colorings_exact(2, 1, (1, 1))


def test_coloring_rate_golden():
    got = coloring_rate(3, 5.0, (1 / 3, 1 / 3, 1 / 3))
    assert got == pytest.approx(0.08494951839769874, rel=1e-12)
    # the balanced shortcut agrees up to float rounding of 1/3
    assert got == pytest.approx(balanced_coloring_rate(3, 5.0), rel=1e-14)


def test_coloring_rate_validates_simplex():
    with pytest.raises(DomainError):
        coloring_rate(3, 5.0, (0.5, 0.5, 0.5))
    with pytest.raises(DomainError):
        coloring_rate(3, 5.0, (1.2, -0.1, -0.1))


def test_balanced_rate_near_root():
    assert abs(balanced_coloring_rate(3, 5.419037)) <= 1e-5


def test_balanced_rate_root():
    root = balanced_rate_root(3)
    assert root == pytest.approx(5.4190225827029096, abs=1e-8)
    assert balanced_coloring_rate(3, root - 1e-4) > 0
    assert balanced_coloring_rate(3, root + 1e-4) < 0


def test_gradient_vanishes_at_balanced():
    for k, d in ((3, 4.0), (4, 7.0), (6, 2.5)):
        g = grad_f(k, d, (1 / k,) * k)
        assert np.allclose(g, 0.0, atol=1e-12)


def test_hessian_k2_closed_form():
    h = hessian_f(2, 1.0, (0.5, 0.5))
    assert h.shape == (1, 1)
    assert h[0, 0] == pytest.approx(-8.0, rel=1e-12)


def test_hessian_eigenvalues_below_minus_d():
    rng = np.random.default_rng(20)
    for _ in range(20):
        k = int(rng.integers(2, 7))
        d = float(rng.uniform(0.5, 10.0))
        raw = rng.random(k) + 0.3
        alpha = raw / raw.sum()
        eig = np.linalg.eigvalsh(hessian_f(k, d, alpha))
        assert eig.max() < -d


def test_taylor_bound_golden():
    val = taylor_bound(3, d_first(3), 0.0, (0.4, 0.3, 0.3), o_constant=10.0)
    assert val == pytest.approx(1.202370115931209, rel=1e-12)


def test_taylor_bound_requires_consistent_offset():
    with pytest.raises(DomainError):
        taylor_bound(3, d_first(3), 1.0, (0.4, 0.3, 0.3))


def test_stability_factor_closed_form_points():
    assert stability_factor(0.0) == 0.0
    assert stability_factor(5.0) == pytest.approx(1 - 6 * math.exp(-5), rel=1e-14)
    with pytest.raises(DomainError):
        stability_factor(-0.5)


def test_stability_factor_series_meets_direct_form():
    mpmath.mp.dps = 40
    for x in (1e-8, 1e-4, 0.01, 0.049, 0.05, 0.051, 0.2, 1.0):
        direct = float(1 - (1 + mpmath.mpf(x)) * mpmath.e ** (-mpmath.mpf(x)))
        assert stability_factor(x) == pytest.approx(direct, rel=1e-13, abs=1e-300)


def test_cover_terms_golden():
    terms = cover_terms(3, 10.0, (0.0, 1 / 3, 1 / 3, 1 / 3))
    assert terms.F == pytest.approx(1 / 3, rel=1e-15)
    assert terms.x == pytest.approx((5.0, 5.0, 5.0), rel=1e-14)
    for p in terms.p[1:]:
        assert p == pytest.approx(0.9207790334824238, rel=1e-12)
    assert terms.p[0] == pytest.approx(0.0014981976821620015, rel=1e-10)


def test_cover_rate_degenerate_cases():
    # d=0 gives no support anywhere: colored classes are impossible
    assert cover_rate(3, 0.0, (0.0, 1 / 3, 1 / 3, 1 / 3)) == float("-inf")
    # everything uncolored: the rate is the count exponent of choosing
    # nothing, ln(k(k-1)/2) at alpha_0 = 1
    assert cover_rate(3, 4.0, (1.0, 0.0, 0.0, 0.0)) == pytest.approx(math.log(3), rel=1e-12)


def test_cover_rate_finite_entropy_variant():
    inf_n = cover_rate(3, 10.0, (0.0, 1 / 3, 1 / 3, 1 / 3))
    fin_n = cover_rate(3, 10.0, (0.0, 1 / 3, 1 / 3, 1 / 3), n_for_entropy=300)
    assert math.isfinite(fin_n)
    assert fin_n < inf_n


def test_optimal_alpha0_hits_grid_cap_at_k100():
    res = optimal_alpha0(100, d_cavity(100))
    assert res.boundary
    assert res.alpha0 == pytest.approx(100 ** (-2 / 3), rel=1e-9)
    assert math.isfinite(res.rate)


def test_cover_threshold_golden_k100():
    val = cover_threshold(100)
    assert val == pytest.approx(908.858287446, abs=1e-6)
    assert val < d_first(100)


def test_cover_threshold_no_root_small_k():
    with pytest.raises(BracketError) as exc:
        cover_threshold(10)
    scan = exc.value.scan
    assert set(scan) == {"d", "g"}
    assert len(scan["d"]) == len(scan["g"]) == 25
    assert all(v <= 0 for v in scan["g"])


def test_degree_markers_k3():
    assert d_first(3) == pytest.approx(5.493061443340549, rel=1e-15)
    assert d_AN(3) == pytest.approx(2.772588722239781, rel=1e-15)
    assert d_second(3) == pytest.approx(4.106767082220658, rel=1e-15)
    assert d_cavity(3) == pytest.approx(4.493061443340549, rel=1e-15)
    assert d_second(3) == pytest.approx(d_first(3) - 2 * math.log(2), rel=1e-15)
    with pytest.raises(DomainError):
        d_AN(2)


def test_degree_markers_order_large_k():
    for k in (100, 1000):
        assert d_AN(k) < d_second(k) < d_cavity(k) < d_first(k)


def test_reported_3col_threshold_sits_between_bounds():
    assert d_AN(3) < D_3COL_REPORTED < d_first(3)


def test_rate_params():
    p = RateParams(5, 12.0)
    assert p.c == pytest.approx(d_first(5) - 12.0, rel=1e-15)
    q = RateParams.from_offset(5, p.c)
    assert q.d == pytest.approx(12.0, rel=1e-12)


def test_bounds_table_small_k_has_note():
    row = bounds_table(3)
    assert row.d_cover is None
    assert row.d_cover_note
    assert row.csv_cells()[-1] == ""
    assert row.csv_cells()[0] == "3"
    with pytest.raises(DomainError):
        bounds_table(2)


def test_rate_functions_are_thread_safe():
    # the high-precision context is shared; hammer it from threads
    def work(i):
        a = stability_factor(0.03 + i * 1e-6)
        b = coloring_rate(3, 5.0, (1 / 3, 1 / 3, 1 / 3))
        return a, b

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(work, range(64)))
    base = coloring_rate(3, 5.0, (1 / 3, 1 / 3, 1 / 3))
    for i, (a, b) in enumerate(results):
        assert a == stability_factor(0.03 + i * 1e-6)
        assert b == base
