"""Generated models: sine control, the two high-density families, shifts."""

import io
import math
from fractions import Fraction

import numpy as np
import pytest

from stripzeros import (
    PreconditionError,
    blaschke_sum,
    cluster_model,
    count_claim_check,
    hot_unit_window,
    load_delta_csv,
    referee_example1,
    referee_example2,
    relative_zero_set,
    separation_constant,
    shift_to_strip,
    sine_type_model,
    upper_density_profile,
    write_delta_csv,
)


def brute_force_interval_count(k: int) -> int:
    """Exact-rational count of zeros in (3^k - 1, 3^k).

    Evaluates z = 3^k - 3^k/(3^(n^2-n)+1) in exact arithmetic for every
    admissible n; no floating point anywhere.
    """
    lo = Fraction(3) ** k - 1
    hi = Fraction(3) ** k
    count = 0
    for n in range(1, k):
        z = hi - Fraction(3**k, 3 ** (n * n - n) + 1)
        if lo < z < hi:
            count += 1
    return count


# ----------------------------------------------------------------------
# sine-type control


def test_sine_log_modulus_band():
    model = sine_type_model(1.0)
    xs = np.linspace(-40.0, 40.0, 5001)
    vals = model.log_modulus(xs)
    lo, hi = math.log(math.sinh(math.pi)), math.log(math.cosh(math.pi))
    assert vals.min() >= lo - 1e-12
    assert vals.max() <= hi + 1e-12


def test_sine_zero_geometry():
    model = sine_type_model(1.0, truncation=50)
    assert separation_constant(model.zeros) == 1.0
    prof = upper_density_profile(model.zeros, [1.0, 10.0])
    assert prof.entries[0].density == 1.0
    assert prof.entries[1].density == 1.0
    assert model.indicator_width == pytest.approx(2 * math.pi)


# ----------------------------------------------------------------------
# unbounded-multiplicity family


def test_example1_factor_two_zeros():
    model = referee_example1(2, window=300.0)
    twos = [x for x, mult in model.raw_points if mult == 2]
    expected = [8 * math.pi * (m + 0.5) for m in range(-15, 15)]
    expected = [x for x in expected if abs(x) <= 300.0]
    assert twos == pytest.approx(sorted(expected))


def test_example1_singularity_tagged():
    # cos of the float nearest pi/2 is ~6e-17, so the unshifted evaluator
    # spikes to log|cos| ~ -37 there; an argument whose cosine underflows
    # to exact zero would yield the -inf tag, which the integral
    # estimators treat as a skipped node
    model = referee_example1(1, window=10.0)
    assert model.log_modulus(math.pi / 2) < -30.0
    assert math.isfinite(model.log_modulus(1.0))
    vals = model.log_modulus(np.array([0.0, 1.0, math.pi / 2]))
    assert vals[2] < -30.0 and np.isfinite(vals[:2]).all()


def test_example1_density_grows_with_truncation():
    sups = []
    for factors in (1, 2, 3, 4, 5):
        model = shift_to_strip(referee_example1(factors, window=500.0), 1.0)
        sups.append(upper_density_profile(model.zeros, [1.0]).entries[0].sup_count)
        assert sups[-1] >= factors
    assert all(b >= a for a, b in zip(sups, sups[1:]))


def test_example1_log_modulus_is_sum_of_factors():
    model = referee_example1(4, window=50.0)
    xs = np.array([0.3, 1.7, -9.2])
    direct = sum(
        n * np.log(np.abs(np.cos(xs / n**3))) for n in range(1, 5)
    )
    assert np.abs(model.log_modulus(xs) - direct).max() <= 1e-10


def test_example1_shift_closed_form():
    model = shift_to_strip(referee_example1(3, window=50.0), 1.0)
    xs = np.array([0.0, math.pi / 2, 4.4])
    direct = sum(
        n * 0.5 * np.log(np.cos(xs / n**3) ** 2 + math.sinh(1.0 / n**3) ** 2)
        for n in range(1, 4)
    )
    assert np.abs(model.log_modulus(xs) - direct).max() <= 1e-10
    assert np.isfinite(model.log_modulus(np.linspace(-40, 40, 2001))).all()


# ----------------------------------------------------------------------
# offset-form family


def test_example2_frozen_offsets():
    model = referee_example2(5)
    by_kn = {(p.k, p.n): p for p in model.delta_points}
    d53 = 3.0 ** by_kn[(5, 3)].delta_log3
    assert d53 == pytest.approx(243.0 / 730.0, rel=1e-12)
    assert by_kn[(5, 3)].position == pytest.approx(242.66712328767124, rel=1e-12)
    d52 = 3.0 ** by_kn[(5, 2)].delta_log3
    assert d52 == pytest.approx(24.3, rel=1e-12)
    assert by_kn[(5, 2)].position == pytest.approx(218.7, rel=1e-12)


def test_example2_counts_match_exact_brute_force():
    model = referee_example2(25)
    for k in range(2, 26):
        count, _ = count_claim_check(model, k)
        assert count == brute_force_interval_count(k)


def test_example2_count_claim_verdicts():
    model = referee_example2(25)
    assert count_claim_check(model, 10) == (6, True)
    count14, ok14 = count_claim_check(model, 14)
    assert count14 >= 7 and ok14
    # small k legitimately fails the k/2 claim; that is data, not an error
    assert count_claim_check(model, 5) == (2, False)


def test_example2_deltas_are_distinct():
    model = referee_example2(20)
    for k in range(2, 21):
        logs = sorted(p.delta_log3 for p in model.delta_points if p.k == k)
        assert all(b - a > 1e-12 * max(1.0, abs(a)) for a, b in zip(logs, logs[1:]))


def test_example2_shift_and_summability():
    model = shift_to_strip(referee_example2(12), 1.0)
    assert model.zeros.alpha == model.zeros.beta == 1.0
    assert np.isfinite(model.log_modulus(np.linspace(-50, 50, 1001))).all()
    total = blaschke_sum(model.zeros)
    assert 0.0 < total < 1.0


def test_example2_float_density_matches_delta_counts():
    # float window scans agree with the delta-criterion cluster size while
    # the offsets stay representable (k <= 16)
    for k_max in (6, 10, 14, 16):
        model = shift_to_strip(referee_example2(k_max), 1.0)
        sup = upper_density_profile(model.zeros, [1.0]).entries[0].sup_count
        cluster, _ = count_claim_check(model, k_max)
        assert sup == cluster


def test_example2_density_grows_with_k_max():
    sups = []
    for k_max in (6, 8, 10, 12, 14, 16):
        model = shift_to_strip(referee_example2(k_max), 1.0)
        sups.append(upper_density_profile(model.zeros, [1.0]).entries[0].sup_count)
    assert sups == sorted(sups)
    assert sups[-1] > sups[0]


def test_example2_relative_offsets_are_exact():
    model = shift_to_strip(referee_example2(30), 1.0)
    base, anchor, count = hot_unit_window(model)
    assert base == 3.0**30
    assert anchor == -1.0
    assert count == 24
    rel = relative_zero_set(model, base)
    # offsets -delta; the deepest ones sit far below the float spacing of
    # 3^30 itself (the last two underflow double precision entirely)
    cluster = sorted(-p.re for p in rel.points if -1.0 < p.re <= 0.0)
    assert len(cluster) == 24
    assert min(d for d in cluster if d > 0) < 1e-150
    deltas = sorted(
        3.0**p.delta_log3
        for p in model.delta_points
        if p.k == 30 and p.delta_log3 < 0
    )
    assert cluster == pytest.approx(deltas, rel=1e-15)


# ----------------------------------------------------------------------
# cluster helper and delta CSV


def test_cluster_model_shape():
    model = cluster_model(12)
    assert model.zeros.weight == 12
    (pt,) = model.zeros.points
    assert (pt.re, pt.im, pt.mult) == (0.5, 1.0, 12)
    assert model.log_modulus(0.5) == pytest.approx(0.0)  # 12*log(1)/... log(h)=0


def test_delta_csv_round_trip():
    model = shift_to_strip(referee_example2(8), 1.0)
    buf = io.StringIO()
    write_delta_csv(model, buf)
    text = buf.getvalue()
    assert text.splitlines()[0].startswith("# format: delta-log3")
    back = load_delta_csv(io.StringIO(text))
    assert back.shift == 1.0
    assert [(p.k, p.delta_log3) for p in back.delta_points] == [
        (p.k, p.delta_log3) for p in model.delta_points
    ]
    count, ok = count_claim_check(back, 8)
    assert (count, ok) == count_claim_check(model, 8)


def test_shift_requires_positive_h():
    with pytest.raises(PreconditionError):
        shift_to_strip(referee_example2(5), 0.0)
