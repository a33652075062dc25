import json
import math

import pytest

from lorentz_seq.constants import const_B, dual_norm_uK, maximal_norm_uK
from lorentz_seq.harness import (
    CHECK_ORDER,
    SuiteConfig,
    check_dual_bounds,
    check_holder,
    check_level_sequence,
    check_norm_equivalences,
    check_pointwise_lemmas,
    check_pooling_lemma,
    check_reversed_hardy,
    default_pointwise_grid,
    random_cases,
    run_full_suite,
    suite_passed,
)
from lorentz_seq.level import WeightSeq
from lorentz_seq.norms import Exponents
from lorentz_seq.report import CheckReport
from lorentz_seq.seq import Seq, indicator, random_decreasing
from lorentz_seq.tails import zeta


def small_config(**kw):
    base = dict(cases_per_point=25, max_support=30, pooling_support=20, holder_pairs=25, level_cases=10,
                pointwise=default_pointwise_grid(60), extremal_K=(1, 2, 16), sweep_K=(1, 100))
    base.update(kw)
    return SuiteConfig(**base)


def by_id(reports):
    out = {}
    for r in reports:
        out.setdefault(r.check_id, []).append(r)
    return out


def test_report_tally_semantics():
    from lorentz_seq.enclosure import Enclosure
    r = CheckReport("demo")
    assert r.record(Enclosure(1, 1), Enclosure(2, 2))
    assert r.record(Enclosure(1, 1.5), Enclosure(1.2, 3))
    assert not r.record(Enclosure(2, 2), Enclosure(1, 1), {"x": [1]})
    assert (r.n_cases, r.n_pass, r.n_tight) == (3, 2, 1)
    assert r.worst_margin == pytest.approx(-0.5) and not r.passed and len(r.witnesses) == 1
    d = r.to_dict()
    assert list(d)[:6] == ["check_id", "params", "n_cases", "n_pass", "worst_margin", "witnesses"]


def test_pointwise_example_point():
    # (n=2, p=2, a=0): LHS = 2 (zeta(2) - 1) ~ 1.28987 against RHS = 1
    r = check_pointwise_lemmas({"n_max": 2, "points": ((2.0, 0.0),), "exponents": ()})
    assert r.passed and r.n_cases == 1
    lhs = 2 * (math.pi ** 2 / 6 - 1)
    assert lhs == pytest.approx(1.28987, abs=1e-5)
    assert r.worst_margin == pytest.approx((lhs - 1) / lhs, rel=1e-9)


def test_pointwise_default_grid_and_a0_subset():
    r = check_pointwise_lemmas()
    assert r.passed and r.n_cases == r.n_pass
    d = r.details
    assert d["tail_product_bound"]["n_cases"] == 50 * 499
    assert d["weighted_tail_product_bound"]["n_cases"] == 150 * 499
    assert d["tail_integral_bound"]["n_cases"] == 25 * 500
    a0 = check_pointwise_lemmas({"n_max": 500, "points": tuple((p, 0.0) for p, _ in default_pointwise_grid()["points"][::4]),
                                 "exponents": ()})
    assert a0.details["tail_product_bound"]["worst_margin"] == d["tail_product_bound"]["worst_margin"]


def test_pointwise_rejects_window():
    with pytest.raises(ValueError):
        check_pointwise_lemmas({"n_max": 5, "points": ((2.0, 1.0),)})


def test_pooling_examples():
    const = check_pooling_lemma(Seq([0.7] * 12), 2.5, 0.5)
    assert const.passed and const.n_cases == 11
    assert abs(const.worst_margin) < 1e-12
    spike = check_pooling_lemma(Seq([1, 0, 0, 0]), 2.0, 0.5)
    assert spike.passed and spike.n_tight == 3
    with pytest.raises(ValueError):
        check_pooling_lemma(Seq([1, 2]), 2, 0.5)
    with pytest.raises(ValueError):
        check_pooling_lemma(Seq([1]), 2, 0.5)
    with pytest.raises(ValueError):
        check_pooling_lemma(Seq([2, 1]), 2, 1.0)


def test_pooling_random_all_pass():
    total = CheckReport("pooling_inequality")
    for x in random_cases(0, 1, 1000, 50):
        total.merge(check_pooling_lemma(x, 2.0, 0.5))
    assert total.passed and total.n_cases > 1000


def test_reversed_hardy_u1_is_tight():
    for p, a in ((2, 0), (2, 0.5), (3, 1), (1.5, 0.25)):
        r = check_reversed_hardy(indicator(1), p, a, "increasing_weight")
        assert r.passed and abs(r.worst_margin) < 1e-11


def test_reversed_hardy_decreasing_uK_close_to_constant():
    margins = []
    for K in (100, 1000, 10000):
        r = check_reversed_hardy(indicator(K), 2.0, -0.5, "decreasing_weight")
        assert r.passed
        margins.append(r.worst_margin)
    assert margins[0] > margins[1] > margins[2] > 0 and margins[2] < 1e-3


def test_reversed_hardy_decreasing_counterexample_detected():
    # (p - a - 1) zeta(p - a) < p at (4, -0.2), so u^1 breaks the claimed bound
    assert 3.2 * zeta(4.2).hi < 4
    r = check_reversed_hardy(indicator(1), 4.0, -0.2, "decreasing_weight")
    assert not r.passed and r.witnesses[0]["x"] == [1.0]


def test_reversed_hardy_windows():
    with pytest.raises(ValueError):
        check_reversed_hardy(indicator(1), 2, -0.5, "increasing_weight")
    with pytest.raises(ValueError):
        check_reversed_hardy(indicator(1), 2, 0.5, "decreasing_weight")
    with pytest.raises(ValueError):
        check_reversed_hardy(indicator(1), 2, 0.5, "sideways")
    with pytest.raises(ValueError):
        check_reversed_hardy(Seq([1, 2]), 2, 0.5, "increasing_weight")


def test_equivalence_u1_lower_tight_p_le_s():
    low, up = check_norm_equivalences(indicator(1), Exponents(2, 4))
    assert low.passed and up.passed and low.n_tight == 1
    assert low.params["side"] == "lower" and up.params["side"] == "upper"


def test_equivalence_margins_scale_invariant():
    x = random_decreasing(40, 3)
    for e in (Exponents(2, 4), Exponents(3, 2)):
        a = check_norm_equivalences(x, e)
        b = check_norm_equivalences(x.scaled(37.5), e)
        for ra, rb in zip(a, b):
            assert ra.worst_margin == pytest.approx(rb.worst_margin, abs=1e-12)


def test_equivalence_s_lt_p_lower_side_fails_at_u1():
    # ||u^1||* = zeta(7/3)^(1/2) ~ 1.1896 is below (3/2)^(1/2) ~ 1.2247
    low, up = check_norm_equivalences(indicator(1), Exponents(3, 2))
    assert not low.passed and up.passed


def test_equivalence_s_lt_p_upper_side_fails_at_u1():
    low, up = check_norm_equivalences(indicator(1), Exponents(5, 1.25))
    assert not up.passed


def test_dual_B_exceeded_along_uK():
    e = Exponents(2, 4)
    ratio = dual_norm_uK(10 ** 4, e) / maximal_norm_uK(10 ** 4, e).mid
    assert abs(ratio - const_B(e)) / const_B(e) <= 0.02
    assert ratio > const_B(e)
    reports = {r.check_id: r for r in check_dual_bounds(indicator(1), e)}
    assert not reports["dual_maximal_B"].passed
    assert reports["dual_maximal_B_reversed"].passed and not reports["dual_maximal_B_reversed"].asserted
    assert not reports["dual_maximal_pprime_p_lt_s"].passed
    assert reports["maximal_dual_pprime"].passed


def test_dual_s_lt_p_uses_standard_norm():
    x = random_decreasing(50, 1)
    reports = {r.check_id: r for r in check_dual_bounds(x, Exponents(3, 2))}
    assert set(reports) == {"dual_maximal_pprime_s_lt_p", "maximal_dual_pprime"}
    assert not reports["dual_maximal_pprime_s_lt_p"].asserted
    bad = {r.check_id: r for r in check_dual_bounds(indicator(1), Exponents(5, 1.25))}
    assert not bad["maximal_dual_pprime"].passed


def test_holder_u1_examples():
    # at p = s = 2 the u^1 ratio is 1/zeta(2) ~ 0.608, above A_{2,2} = 1/2
    r1, r2 = check_holder(indicator(1), indicator(1), Exponents(2, 2))
    assert r1.details["max_ratio"] == pytest.approx(6 / math.pi ** 2, rel=1e-12)
    assert not r1.passed and r2.passed and not r1.asserted and not r2.asserted
    (r,) = check_holder(indicator(1), indicator(1), Exponents(2, 4))
    assert r.check_id == "holder_A" and not r.passed
    assert r.details["max_ratio"] == pytest.approx(0.5429, abs=1e-4)


def test_holder_uK_ratio_near_A():
    # the u^K ratio approaches A from above, so even the extremal family exceeds it
    (r,) = check_holder(indicator(2000), indicator(2000), Exponents(2, 4))
    assert -0.01 < r.worst_margin < 0 and not r.passed


def test_level_check():
    r = check_level_sequence(random_decreasing(100, 2), WeightSeq.power(0.5))
    assert r.passed and r.n_cases == 4 and r.details["idempotent"]["passed"]
    assert r.params == {"alpha": 0.5, "tol": 1e-9}


def test_random_cases_deterministic_and_streams_differ():
    a = random_cases(4, 1, 20, 30)
    assert a == random_cases(4, 1, 20, 30)
    assert a != random_cases(4, 2, 20, 30)
    assert all(1 <= x.N <= 30 for x in a)


def test_suite_is_deterministic():
    cfg = small_config()
    one = json.dumps([r.to_dict() for r in run_full_suite(3, cfg)], sort_keys=True)
    two = json.dumps([r.to_dict() for r in run_full_suite(3, cfg)], sort_keys=True)
    assert one == two
    assert one != json.dumps([r.to_dict() for r in run_full_suite(4, cfg)], sort_keys=True)


def test_suite_invalid_window_becomes_error_report():
    cfg = small_config(hardy_increasing=((2.0, 1.5), (2.0, 0.5)), only=("hardy",))
    reports = by_id(run_full_suite(0, cfg))
    errs = [r for r in reports["reversed_hardy_increasing"] if r.error]
    assert len(errs) == 1 and errs[0].params == {"p": 2.0, "a": 1.5}
    ok = [r for r in reports["reversed_hardy_increasing"] if not r.error]
    assert ok[0].passed and ok[0].n_cases == 25 + 3
    assert "reversed_hardy_decreasing" in reports
    assert not suite_passed(run_full_suite(0, cfg))


def test_suite_only_and_unknown_group():
    reports = run_full_suite(0, small_config(only=("level", "pooling")))
    assert {r.check_id for r in reports} == {"level_properties", "pooling_inequality"}
    assert all(r.passed for r in reports)
    with pytest.raises(ValueError):
        run_full_suite(0, small_config(only=("bogus",)))


def test_suite_ordering_and_outcome():
    reports = run_full_suite(0, small_config())
    ids = [r.check_id for r in reports]
    rank = [CHECK_ORDER.index(i) for i in ids]
    assert rank == sorted(rank)
    failing = {r.check_id for r in reports if r.asserted and not r.passed}
    # the claims that hold survive; the broken ones are caught on this small budget
    assert failing == {"reversed_hardy_decreasing", "norm_equivalence_s_lt_p", "dual_maximal_B",
                       "maximal_dual_pprime", "holder_A"}
    assert not suite_passed(reports)
    sharp = [r for r in reports if r.check_id == "sharpness"]
    assert sharp and all(not r.asserted and r.error is None for r in sharp)
