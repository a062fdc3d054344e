import math
from fractions import Fraction as F

import pytest

from bicoeff.bounds import (
    COROLLARIES,
    BoundDomainError,
    bound_a2_alpha,
    bound_a2_beta,
    bound_a3_alpha,
    bound_a3_beta,
    bound_a3_beta_route_bound,
    corollary_formula,
    corollary_general,
    evaluate_bounds,
    radicand_alpha,
)
from bicoeff.class_operator import ArgFamily, ClassParams, ReFamily

SRIVASTAVA = ClassParams(1, 1, 0)
BISTARLIKE = ClassParams(1, 0, 0)


def test_a2_alpha_examples():
    assert bound_a2_alpha(SRIVASTAVA, 1) == pytest.approx(2 / math.sqrt(6), abs=1e-15)
    assert bound_a2_alpha(SRIVASTAVA, 1) == pytest.approx(math.sqrt(2 / 3), abs=1e-12)
    assert bound_a2_alpha(BISTARLIKE, 1) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_a2_alpha_small_alpha_limit():
    for p in (SRIVASTAVA, ClassParams(2, F(1, 2), 1)):
        t = float(p.lam + p.mu + 2 * p.xi * p.delta)
        alpha = F(1, 10 ** 9)
        assert bound_a2_alpha(p, alpha) / float(alpha) == pytest.approx(2 / t, rel=1e-8)


def test_a3_alpha_examples():
    assert bound_a3_alpha(SRIVASTAVA, 1) == pytest.approx(5 / 3, abs=1e-15)
    assert bound_a3_alpha(BISTARLIKE, 1) == pytest.approx(5, abs=1e-15)
    # xi = (2*2 + 1)/(2*2 + 1) = 1 so lam+mu+2 xi delta = 5, 2lam+mu+6 xi delta = 11
    assert bound_a3_alpha(ClassParams(2, 1, 1), F(1, 2)) == pytest.approx(1 / 25 + 1 / 11, abs=1e-15)


def test_a2_beta_examples():
    v, tag = bound_a2_beta(SRIVASTAVA, 0)
    assert v == pytest.approx(math.sqrt(2 / 3), abs=1e-15) and tag == "sqrt-form"
    v, tag = bound_a2_beta(SRIVASTAVA, F(1, 2))
    assert v == pytest.approx(0.5, abs=1e-15) and tag == "linear-form"
    v, tag = bound_a2_beta(SRIVASTAVA, F(1, 3))
    assert tag == "equal" and v == pytest.approx(2 / 3, abs=1e-15)
    assert bound_a2_beta(ClassParams(3, 2, 1), F(999999, 10 ** 6))[0] < 1e-2


def test_a3_beta_examples():
    v, tag = bound_a3_beta(SRIVASTAVA, 0)
    assert v == pytest.approx(2 / 3, abs=1e-15) and tag == "mu-ge-1"
    v, tag = bound_a3_beta(BISTARLIKE, 0)
    assert v == pytest.approx(2, abs=1e-15) and tag == "min-first"
    v, tag = bound_a3_beta(BISTARLIKE, F(9, 10))
    assert v == pytest.approx(0.14, abs=1e-15) and tag == "min-second"
    assert v == pytest.approx(0.1 * (5 - 3.6), abs=1e-15)


def test_mu_split_matches_absolute_value_form():
    for p in (SRIVASTAVA, ClassParams(2, 3, 1), ClassParams(F(3, 2), F(5, 4), F(1, 2))):
        assert bound_a3_beta(p, F(1, 5))[0] == pytest.approx(bound_a3_beta_route_bound(p, F(1, 5)), abs=1e-14)
    for p in (BISTARLIKE, ClassParams(2, F(1, 2), 1)):
        assert bound_a3_beta(p, F(1, 5))[0] <= bound_a3_beta_route_bound(p, F(1, 5)) + 1e-14


def test_radicand_positive_on_wide_box():
    for lam in (1, 2, 5):
        for mu in (0, F(5, 2), 5):
            for delta in (0, 1, 5):
                for alpha in (F(1, 100), F(1, 2), 1):
                    assert radicand_alpha(ClassParams(lam, mu, delta), alpha) > 0


def test_radicand_guard_is_defensive():
    bad = ClassParams.unchecked(F(-10), 0, 0)
    # with lam = -10 the radicand is 100 + alpha(-20 - 100) < 0 for alpha = 1
    with pytest.raises(BoundDomainError):
        bound_a2_alpha(bad, 1)


def test_beta_a3_continuous_in_beta():
    for p in (BISTARLIKE, ClassParams(2, F(1, 2), 1), ClassParams(1, F(9, 10), 2)):
        prev = None
        for k in range(0, 2000):
            v = bound_a3_beta(p, F(k, 2000))[0]
            if prev is not None:
                assert abs(v - prev) < 1e-2
            prev = v


def test_beta_branch_switches_only_at_crossings():
    p = BISTARLIKE
    tags = [bound_a3_beta(p, F(k, 400))[1] for k in range(400)]
    switches = [k for k in range(1, 400) if tags[k] != tags[k - 1] and "equal" not in (tags[k], tags[k - 1])]
    assert switches == []
    assert tags[300] == "equal"  # beta = 3/4


def test_evaluate_bounds_report():
    r = evaluate_bounds(ArgFamily(1), SRIVASTAVA)
    assert r.radicand == pytest.approx(6)
    assert r.as_dict()["family"] == {"mode": "alpha", "alpha": "1"}
    r = evaluate_bounds(ReFamily(F(1, 2)), SRIVASTAVA)
    assert r.radicand is None and r.branch_taken == {"a2": "linear-form", "a3": "mu-ge-1"}


def test_corollary_examples():
    a2, a3 = corollary_formula("alpha-srivastava", 1)
    assert a2 == pytest.approx(0.8164966, abs=1e-7) and a3 == pytest.approx(5 / 3, abs=1e-15)
    a2, _ = corollary_formula("beta-srivastava", F(1, 3))
    assert a2 == pytest.approx(2 / 3, abs=1e-15)
    _, a3 = corollary_formula("beta-bistarlike", F(3, 4))
    assert a3 == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(KeyError):
        corollary_formula("gamma-unknown", 1)


def test_bistarlike_improvement_at_nine_tenths():
    g2, _ = corollary_general("beta-bistarlike", F(9, 10))
    c2, _ = corollary_formula("beta-bistarlike", F(9, 10))
    assert g2 == pytest.approx(0.2, abs=1e-15)
    assert c2 == pytest.approx(math.sqrt(0.2), abs=1e-15)


@pytest.mark.parametrize("cid", [c for c in COROLLARIES if c != "beta-bistarlike"])
def test_reductions_agree(cid):
    cor = COROLLARIES[cid]
    lam, mu = (F(5, 2) if "lam" in cor.needs else None), (F(2, 3) if "mu" in cor.needs else None)
    for k in range(1, 20):
        x = F(k, 20)
        g = corollary_general(cid, x, lam, mu)
        c = corollary_formula(cid, x, lam, mu)
        assert g == pytest.approx(c, abs=1e-12)
