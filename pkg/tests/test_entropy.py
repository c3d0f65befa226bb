import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factattr.entropy import (
    LN2,
    HypothesisCheck,
    SupportKind,
    SupportSet,
    entropy,
    hypothesis_gap,
    sequence_probability,
    support_entropy_bound,
)
from factattr.errors import EmptySet, NotNormalized


def test_entropy_point_mass_is_zero():
    assert entropy([1.0]) == 0.0


def test_entropy_uniform_is_log_n():
    for n in (1, 2, 10, 1000):
        assert entropy([1.0 / n] * n) == pytest.approx(math.log(n), abs=1e-9)


def test_entropy_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        entropy([0.5, 0.4])


def test_entropy_uses_natural_log():
    assert entropy([0.5, 0.5]) == pytest.approx(LN2, abs=1e-12)


def test_sequence_probability_is_product():
    assert sequence_probability([0.5, 0.5, 0.4]) == pytest.approx(0.1)
    with pytest.raises(ValueError):
        sequence_probability([0.0, 0.5])


def test_support_bound_and_empty_set():
    s = SupportSet.of(["a", "b", "c", "a"], SupportKind.ATOMIC_FACTS)
    assert support_entropy_bound(s) == pytest.approx(math.log(3))
    with pytest.raises(EmptySet):
        support_entropy_bound(SupportSet.of([], SupportKind.ATOMIC_FACTS))


def test_hypothesis_gap_kind_checks():
    af = SupportSet.of(["f1"], SupportKind.ATOMIC_FACTS)
    q = SupportSet.of(["q1", "q2"], SupportKind.SUB_QUESTIONS)
    check = hypothesis_gap(af, q)
    assert isinstance(check, HypothesisCheck)
    assert check.holds and check.premise_satisfied
    with pytest.raises(ValueError):
        hypothesis_gap(q, af)


def test_hypothesis_gap_random_pairs_satisfying_premise():
    rng = random.Random(42)
    for _ in range(1000):
        n_af = rng.randint(1, 50)
        n_q = rng.randint(2 * n_af, 4 * n_af)
        af = SupportSet.of([f"f{i}" for i in range(n_af)], SupportKind.ATOMIC_FACTS)
        q = SupportSet.of([f"q{i}" for i in range(n_q)], SupportKind.SUB_QUESTIONS)
        check = hypothesis_gap(af, q)
        assert check.premise_satisfied
        assert check.holds
        assert check.gap >= LN2 - 1e-9


def test_gap_below_premise_need_not_hold():
    af = SupportSet.of(["f1", "f2"], SupportKind.ATOMIC_FACTS)
    q = SupportSet.of(["q1", "q2", "q3"], SupportKind.SUB_QUESTIONS)
    check = hypothesis_gap(af, q)
    assert not check.premise_satisfied
    assert not check.holds


@given(
    st.lists(st.floats(0.01, 1.0), min_size=2, max_size=4),
    st.lists(st.floats(0.01, 1.0), min_size=2, max_size=4),
)
@settings(max_examples=100, deadline=None)
def test_chain_rule_identity(raw_a, raw_b):
    # H(A,B) = H(A) + H(B|A) for a product joint
    pa = [v / sum(raw_a) for v in raw_a]
    pb = [v / sum(raw_b) for v in raw_b]
    joint = [a * b for a in pa for b in pb]
    h_joint = entropy(joint)
    h_a = entropy(pa)
    h_b_given_a = sum(a * entropy(pb) for a in pa)
    assert h_joint == pytest.approx(h_a + h_b_given_a, abs=1e-9)


def test_chain_rule_on_dependent_joint():
    # 2x2 joint with dependence; conditional entropy computed by definition
    joint = {(0, 0): 0.4, (0, 1): 0.1, (1, 0): 0.2, (1, 1): 0.3}
    h_joint = entropy(list(joint.values()))
    pa = {a: sum(p for (x, _), p in joint.items() if x == a) for a in (0, 1)}
    h_a = entropy(list(pa.values()))
    h_b_given_a = sum(
        pa[a] * entropy([joint[(a, b)] / pa[a] for b in (0, 1)]) for a in (0, 1)
    )
    assert h_joint == pytest.approx(h_a + h_b_given_a, abs=1e-9)
