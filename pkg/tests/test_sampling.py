import hashlib
import math

import mpmath as mp
import numpy as np
import pytest
from scipy import stats

from savi.group import GROUP_ORDER
from savi.group.encoding import quantize_vector
from savi.sampling import (
    CheckParameters,
    chi_square_quantile,
    compute_b0,
    derive_seed,
    max_expected_damage,
    pass_rate_F,
    plaintext_check,
    sample_matrix,
)

Q = GROUP_ORDER


# -- seed derivation ---------------------------------------------------------


def test_derive_seed_deterministic_and_order_sensitive():
    pks = [b"A" * 32, b"B" * 32, b"C" * 32]
    s = b"\x07" * 32
    assert derive_seed(s, pks) == derive_seed(s, pks)
    assert derive_seed(s, pks) != derive_seed(s, [pks[1], pks[0], pks[2]])
    flipped = bytes([s[0] ^ 1]) + s[1:]
    assert derive_seed(flipped, pks) != derive_seed(s, pks)
    assert derive_seed(s, pks[:2]) != derive_seed(s, pks)


def test_derive_seed_length_prefixing():
    # moving a byte across the nonce/key boundary must change the hash
    a = derive_seed(b"xy", [b"z" + b"k" * 31, b"w" * 32])
    b = derive_seed(b"xyz", [b"k" * 31 + b"w", b"w" * 31])
    assert a != b


# -- matrix statistics -------------------------------------------------------


def test_rows_are_rounded_gaussians():
    m = sample_matrix(b"stats", 1000, 100, 1 << 24)
    unrounded = m.gaussian_rows()
    assert np.all(np.abs(m.rows - unrounded) <= 0.5)
    flat = unrounded.ravel() / float(1 << 24)
    n = flat.size
    assert abs(flat.mean()) < 4.0 / math.sqrt(n)
    assert abs(flat.std() - 1.0) < 0.01
    # kurtosis separates a true normal from e.g. uniform or laplace
    assert abs(stats.kurtosis(flat)) < 0.05


def test_a0_row_full_width():
    m = sample_matrix(b"widths", 4, 64, 1 << 12)
    assert len(m.a0) == 64
    assert all(0 <= a < Q for a in m.a0)
    # a_0 entries are ~256-bit; their top bytes must not all agree
    assert len({a >> 200 for a in m.a0}) > 32


def test_determinism_frozen():
    m = sample_matrix(b"frozen-fixture", 8, 8, 1024)
    h = hashlib.sha256()
    h.update(b",".join(str(a).encode() for a in m.a0))
    h.update(m.rows.tobytes())
    assert (
        h.hexdigest()
        == "7885d8a25935e3cd7dcfa7fafdf1375e5886d6d77229005984e687e1d0ce0499"
    )
    assert m.rows[0, :4].tolist() == [-433, -845, -1229, 1481]


def test_row_inner_matches_numpy():
    m = sample_matrix(b"inner", 8, 16, 1 << 10)
    u = list(range(-8, 8))
    v = m.row_inner(u)
    assert v[0] == sum(a * x for a, x in zip(m.a0, u)) % Q
    ref = m.rows @ np.asarray(u)
    assert v[1:] == [int(x) for x in ref]


def test_row_inner_huge_coordinates_exact():
    # force the object-dtype fallback and compare against pure python
    m = sample_matrix(b"big", 4, 4, 1 << 10)
    u = [1 << 40, -(1 << 41), 1 << 39, 3]
    v = m.row_inner(u)
    for t in range(4):
        assert v[1 + t] == sum(int(a) * x for a, x in zip(m.rows[t], u))


def test_weighted_combination_matches_naive():
    m = sample_matrix(b"wc", 6, 10, 1 << 10)
    rng = np.random.default_rng(3)
    weights = [int.from_bytes(rng.bytes(32), "little") % Q for _ in range(7)]
    got = m.weighted_combination(weights)
    rows = [list(m.a0)] + [[int(x) for x in r] for r in m.rows]
    want = [
        sum(w * row[l] for w, row in zip(weights, rows)) % Q for l in range(10)
    ]
    assert got == want


def test_projection_distribution_ks():
    # normalized squared-projection sums must follow chi2_k
    for k in (4, 16):
        totals = []
        u = np.zeros(8)
        u[0] = 1.0  # unit vector: projections are N(0, M^2) exactly
        M = 1 << 12
        for i in range(2500):
            m = sample_matrix(f"ks/{k}/{i}".encode(), k, 8, M)
            vs = m.rows @ u
            totals.append(float(np.sum(vs * vs)) / (M * M))
        res = stats.kstest(totals, stats.chi2(df=k).cdf)
        assert res.pvalue > 1e-3, f"k={k}: {res}"


# -- chi-square quantile -----------------------------------------------------


def test_quantile_known_values():
    assert abs(chi_square_quantile(1, 0.5) - 0.4549364231) < 1e-6
    # P[chi2_2 >= g] = exp(-g/2), so eps = e^-1 gives exactly 2
    assert abs(chi_square_quantile(2, math.exp(-1)) - 2.0) < 1e-12


def test_quantile_extreme_tail_mpmath():
    g = chi_square_quantile(1000, 2.0**-128)
    mp.mp.dps = 60
    logsf = mp.log(
        mp.gammainc(mp.mpf(1000) / 2, mp.mpf(g) / 2, mp.inf, regularized=True), 2
    )
    assert abs(float(logsf) + 128.0) < 0.5
    assert abs(g - 1701.7372838) < 1e-4


def test_quantile_inverts_sf():
    for k in (1, 2, 7, 64, 333):
        for eps in (0.3, 1e-2, 1e-6, 1e-12):
            g = chi_square_quantile(k, eps)
            assert math.isclose(stats.chi2.sf(g, k), eps, rel_tol=1e-9)


def test_quantile_monotonicity():
    gs = [chi_square_quantile(50, eps) for eps in (0.5, 0.1, 1e-3, 1e-9, 1e-30)]
    assert gs == sorted(gs)
    ks = [chi_square_quantile(k, 1e-6) for k in (1, 2, 10, 100, 1000)]
    assert ks == sorted(ks)


def test_quantile_input_validation():
    with pytest.raises(ValueError):
        chi_square_quantile(0, 0.5)
    with pytest.raises(ValueError):
        chi_square_quantile(4, 0.0)
    with pytest.raises(ValueError):
        chi_square_quantile(4, 1.0)


# -- B0 ----------------------------------------------------------------------


def test_compute_b0_oracle():
    b_enc, M, k, d, eps = 19, 16, 16, 32, 2.0**-16
    gamma = chi_square_quantile(k, eps)
    want = math.ceil(b_enc**2 * M**2 * (math.sqrt(gamma) + math.sqrt(k * d) / (2 * M)) ** 2)
    assert compute_b0(b_enc, M, k, d, eps) == want


def test_compute_b0_large_M_limit():
    # rounding slack vanishes: b0 -> ceil(b_enc^2 M^2 gamma)
    gamma = chi_square_quantile(8, 1e-6)
    M = 1 << 40
    b0 = compute_b0(3, M, 8, 100, 1e-6)
    assert abs(b0 / (9 * M * M) - gamma) < 1e-4


def test_compute_b0_monotone_in_epsilon():
    assert compute_b0(10, 1 << 20, 64, 100, 1e-12) > compute_b0(
        10, 1 << 20, 64, 100, 1e-3
    )


# -- pass rate F and damage --------------------------------------------------


def test_pass_rate_reference_values():
    # deployment-scale setting: k=1000, eps=2^-128, d=1e6, M=2^24
    f12 = pass_rate_F(1.2, 1000, 2.0**-128, 10**6, 1 << 24)
    f14 = pass_rate_F(1.4, 1000, 2.0**-128, 10**6, 1 << 24)
    assert f12 > 0.9999
    assert abs(f14 - 1.075e-3) < 0.005e-3


def test_pass_rate_limits():
    assert pass_rate_F(1e9, 64, 2.0**-20, 100, 1 << 20) == 0.0
    # tiny c: the check essentially always passes
    assert pass_rate_F(1e-6, 64, 2.0**-20, 100, 1 << 20) > 1 - 1e-12
    with pytest.raises(ValueError):
        pass_rate_F(0.0, 64, 2.0**-20, 100, 1 << 20)


def test_pass_rate_monotone_decreasing_in_c():
    vals = [pass_rate_F(c, 128, 2.0**-30, 1000, 1 << 20) for c in np.linspace(1, 3, 30)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_pass_rate_against_monte_carlo():
    # empirical pass rate over real (rounded) matrices; M large enough
    # that the 1x-vs-3x rounding-correction gap is far below 3 sigma
    k, d, M, eps = 16, 8, 1 << 12, 2.0**-16
    b_enc = 100
    c = 2.0
    b0 = compute_b0(b_enc, M, k, d, eps)
    u = [round(c * b_enc)] + [0] * (d - 1)
    hits = 0
    n = 4000
    for i in range(n):
        m = sample_matrix(f"mc/{i}".encode(), k, d, M)
        hits += plaintext_check(u, m, b0=b0)
    f = pass_rate_F(c, k, eps, d, M)
    assert 0.2 < f < 0.8  # the test point must actually discriminate
    sigma = math.sqrt(f * (1 - f) / n)
    assert abs(hits / n - f) < 3 * sigma + 2e-3


def test_max_damage_against_grid():
    k, eps, d, M = 256, 2.0**-40, 10**4, 1 << 24
    c_star, peak = max_expected_damage(k, eps, d, M)
    grid = np.geomspace(1.0 + 1e-9, 50.0, 200_000)
    brute = max(c * pass_rate_F(c, k, eps, d, M) for c in grid)
    assert abs(peak - brute) < 1e-3
    assert c_star * pass_rate_F(c_star, k, eps, d, M) >= brute - 1e-6


def test_max_damage_deployment_scale():
    c_star, peak = max_expected_damage(1000, 2.0**-128, 10**6, 1 << 24)
    assert abs(c_star - 1.2375) < 5e-4
    assert abs(peak - 1.2279) < 5e-4


# -- plaintext check ---------------------------------------------------------


def test_plaintext_check_zero_update():
    m = sample_matrix(b"zero", 16, 8, 1 << 10)
    assert plaintext_check([0] * 8, m, b0=0)


def test_plaintext_check_honest_rate():
    # honest norms <= B fail with probability <= eps = 0.01
    params = CheckParameters(
        n=2, m=0, d=16, k=32, epsilon=0.01, M=1 << 10, B=4.0,
        b_ip=32, b_max=64, frac_bits=4, b_coord=16,
    )
    rng = np.random.default_rng(77)
    fails = 0
    n_trials = 10_000
    for i in range(n_trials):
        x = rng.standard_normal(params.d)
        x *= params.B / np.linalg.norm(x)  # worst case: norm exactly B
        u = quantize_vector(x.tolist(), params.frac_bits, params.b_coord)
        m = sample_matrix(f"honest/{i}".encode(), params.k, params.d, params.M)
        fails += not plaintext_check(u, m, b0=params.b0)
    # binomial 3-sigma band around eps (the bound is conservative, so
    # the observed rate generally sits well below it)
    assert fails <= n_trials * 0.01 + 3 * math.sqrt(n_trials * 0.01 * 0.99)


def test_plaintext_check_double_norm_rejected():
    params = CheckParameters(
        n=2, m=0, d=16, k=1000, epsilon=2.0**-40, M=1 << 20, B=4.0,
        b_ip=64, b_max=128, frac_bits=4, b_coord=16,
    )
    rng = np.random.default_rng(78)
    f2 = pass_rate_F(2.0, params.k, params.epsilon, params.d, params.M)
    assert f2 < 1e-30
    for i in range(200):
        x = rng.standard_normal(params.d)
        x *= 2.0 * params.B / np.linalg.norm(x)
        u = quantize_vector(x.tolist(), params.frac_bits, params.b_coord)
        m = sample_matrix(f"dbl/{i}".encode(), params.k, params.d, params.M)
        assert not plaintext_check(u, m, b0=params.b0)


def test_plaintext_check_idealized_route():
    m = sample_matrix(b"ideal", 8, 8, 1 << 10)
    u = [3, -1, 0, 2, 0, 0, 1, -2]
    total = sum(int(v) ** 2 for v in (m.rows @ np.asarray(u)))
    gamma_tight = total / ((1 << 10) ** 2 * sum(x * x for x in u))
    assert plaintext_check(
        u, m, B=math.sqrt(sum(x * x for x in u)), M=1 << 10, gamma=gamma_tight * 1.01
    )
    assert not plaintext_check(
        u, m, B=math.sqrt(sum(x * x for x in u)), M=1 << 10, gamma=gamma_tight * 0.99
    )
    with pytest.raises(ValueError):
        plaintext_check(u, m)  # neither b0 nor (B, M, gamma)


# -- rounding lemma ----------------------------------------------------------


def test_quantization_norm_slack():
    # encoded norm <= B*2^fb + sqrt(d)/2 <= b_enc for any float input
    params = CheckParameters(
        n=2, m=0, d=64, k=4, epsilon=0.01, M=1 << 10, B=2.0,
        b_ip=32, b_max=64, frac_bits=6, b_coord=16,
    )
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(500):
        x = rng.standard_normal(params.d)
        x *= params.B / np.linalg.norm(x)
        u = quantize_vector(x.tolist(), params.frac_bits, params.b_coord)
        worst = max(worst, math.sqrt(sum(v * v for v in u)))
    bound = params.B * (1 << params.frac_bits) + math.sqrt(params.d) / 2
    assert worst <= params.b_enc
    assert worst <= bound
    # and the slack is not vacuous: some vector must exceed B*2^fb
    assert worst > params.B * (1 << params.frac_bits) - 1


def test_matrix_rounding_projection_drift():
    # |<a_t,u> - <a~_t,u>| <= sqrt(d)/2 * ||u||_2, both directions live
    m = sample_matrix(b"drift", 32, 16, 1 << 6)  # tiny M: rounding matters
    real = m.gaussian_rows()
    rng = np.random.default_rng(9)
    for _ in range(50):
        u = rng.integers(-50, 51, size=16)
        exact = m.rows @ u
        ideal = real @ u
        drift = np.abs(exact - ideal)
        assert np.all(drift <= math.sqrt(16) / 2 * np.linalg.norm(u) + 1e-9)


def test_parameter_validation():
    with pytest.raises(ValueError):
        sample_matrix(b"x", 0, 4, 16)
    with pytest.raises(ValueError):
        sample_matrix(b"x", 4, 0, 16)
    with pytest.raises(ValueError):
        sample_matrix(b"x", 4, 4, 0)
    with pytest.raises(ValueError):
        CheckParameters(  # B too wide for the coordinate window
            n=2, m=0, d=4, k=4, epsilon=0.01, M=16, B=300.0,
            b_ip=32, b_max=64, frac_bits=8, b_coord=16,
        )
    with pytest.raises(ValueError):
        CheckParameters(  # b_ip not a power of two
            n=2, m=0, d=4, k=4, epsilon=0.01, M=16, B=1.0,
            b_ip=24, b_max=64, frac_bits=8, b_coord=16,
        )
    with pytest.raises(ValueError):
        CheckParameters.from_epsilon_log2(
            16, n=2, m=0, d=4, k=4, M=16, B=1.0, b_ip=32, b_max=64
        )


def test_check_parameters_derived_fields():
    p = CheckParameters(
        n=10, m=2, d=100, k=24, epsilon=2.0**-20, M=1 << 16, B=1.0,
        b_ip=32, b_max=64, frac_bits=8, b_coord=16,
    )
    assert p.threshold == 3
    assert p.k_padded == 32
    assert p.range_slots == 32 * 32
    assert p.b_enc == math.ceil(256 + 5.0)
    assert p.b0 == compute_b0(p.b_enc, p.M, p.k, p.d, p.epsilon)
