"""Registry contracts, gating, suite determinism, and the iff criterion."""
import pytest

from wolstenholme import errors
from wolstenholme.checks import (
    Scope,
    all_check_ids,
    cor4_equivalence,
    lookup,
    registry,
    run_check,
    run_suite,
)
from wolstenholme.modring import is_prime

PRIMES_300 = [p for p in range(2, 300) if is_prime(p)]


def test_registry_shape():
    reg = registry()
    assert len(reg) >= 24
    ids = [c.id for c in reg]
    assert len(set(ids)) == len(ids)
    assert registry() is reg  # immutable singleton


def test_wolstenholme_only_gates():
    for check in registry():
        if check.scope is Scope.WOLSTENHOLME_ONLY:
            assert check.min_prime >= 11, check.id


def test_lookup():
    assert lookup("cor2_p7").modulus_exponent == 7
    assert lookup("prop1_p8").modulus_exponent == 8
    assert lookup("wolstenholme_thm").min_prime == 5
    with pytest.raises(errors.UnknownCheck):
        lookup("nope")


def test_run_check_examples():
    outcome = run_check("wolstenholme_thm", 5)
    assert outcome.passed and outcome.residual_valuation == 3
    assert outcome.lhs == "126"

    outcome = run_check("glaisher_p4", 7)
    assert outcome.passed
    assert int(outcome.lhs) % 7 ** 4 == 1716
    assert int(outcome.rhs) % 7 ** 4 == 1716

    outcome = run_check("prop1_p8", 11)
    assert outcome.skipped and outcome.reason == "not a Wolstenholme prime"
    assert outcome.lhs is None and outcome.rhs is None

    outcome = run_check("wolstenholme_thm", 4)
    assert outcome.skipped and outcome.reason == "not prime"

    outcome = run_check("wolstenholme_thm", 3)
    assert outcome.skipped and "below minimum prime" in outcome.reason

    outcome = run_check("sun_wan_p5", 409)
    assert outcome.skipped and "oracle bound" in outcome.reason


def test_pass_iff_valuation_reaches_exponent():
    for p in (11, 97, 499):
        for check in registry():
            outcome = run_check(check.id, p)
            if not outcome.skipped:
                assert outcome.passed == (
                    outcome.residual_valuation >= check.modulus_exponent)


def test_all_primes_checks_below_300():
    ids = [c.id for c in registry() if c.scope is Scope.ALL_PRIMES]
    for outcome in run_suite(ids, PRIMES_300):
        assert outcome.skipped or outcome.passed, outcome


def test_wolstenholme_prime_suite():
    ids = [c.id for c in registry() if c.scope is Scope.WOLSTENHOLME_ONLY]
    outcomes = list(run_suite(ids, [16843]))
    assert len(outcomes) == len(ids)
    for outcome in outcomes:
        assert not outcome.skipped and outcome.passed, outcome


def test_cor1_displays_agree_at_wolstenholme_prime():
    from wolstenholme.checks import _ev_cor1_first, _ev_cor1_second

    lhs1, rhs1 = _ev_cor1_first(16843)
    lhs2, rhs2 = _ev_cor1_second(16843)
    assert (rhs1.reduce_to(7) - rhs2.reduce_to(7)).valuation() >= 7


def test_suite_order_and_determinism():
    from wolstenholme.cli import record_dict

    ids = ["wolstenholme_thm", "lemma1_p4", "lemma13_r1"]
    primes = [5, 7, 11, 13, 17]
    serial = list(run_suite(ids, primes))
    assert [(o.p, o.check_id) for o in serial] == sorted(
        [(p, i) for p in primes for i in ids])
    parallel = list(run_suite(ids, primes, parallelism=2))
    # determinism is a serialized-record contract; elapsed_ns is timing
    assert [record_dict(o) for o in serial] == [record_dict(o) for o in parallel]


def test_suite_empty_range():
    assert list(run_suite(["wolstenholme_thm"], [])) == []


def test_suite_unknown_id():
    with pytest.raises(errors.UnknownCheck):
        list(run_suite(["wolstenholme_thm", "bogus"], [5]))


def test_cor4_equivalence():
    assert cor4_equivalence(16843)  # both sides hold
    assert cor4_equivalence(13)     # both sides fail
    assert cor4_equivalence(10007)  # both sides fail
    for p in PRIMES_300:
        if p >= 11:
            assert cor4_equivalence(p), p


@pytest.mark.slow
def test_cor4_equivalence_to_1e4():
    from wolstenholme.scan import SieveConfig, sieve_primes

    bad = [p for p in sieve_primes(SieveConfig(11, 10 ** 4))
           if not cor4_equivalence(p)]
    assert not bad, bad[:10]


def test_check_ids_cover_picked_names():
    ids = set(all_check_ids())
    for required in (
        "wolstenholme_thm", "glaisher_p4", "lehmer_p3", "helou_terjanian_p6",
        "granville_p5", "sun_wan_p5", "lemma1_p4", "lemma2a_p5", "lemma2b_p5",
        "lemma12_i_p6", "lemma12_ii_p4", "lemma12_iii_p3", "lemma12_iv_p4",
        "lemma13_r1", "lemma13_r5", "eq19_p8", "prop1_p8", "prop2_p8",
        "cor1_first_p7", "cor1_second_p7", "cor2_p7", "cor3_p7", "cor4_iff",
        "remark2_p8", "lemma7_n2", "lemma7_n6", "lemma4_valuations",
        "lemma6_valuations", "kummer_eq10", "kummer_eq11", "eq26_n2_s4",
        "eq26_n4_s2", "zhao_eq4_p5",
    ):
        assert required in ids, required
