import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supersingular.arith import kronecker, primes_between
from supersingular.classnum import (
    class_number,
    class_number_bound,
    count_reduced_forms,
    divergence_threshold,
    field_discriminant,
    genus_x0,
    is_squarefree,
    threshold_chain,
)

SQUAREFREE = [d for d in range(1, 501) if is_squarefree(d)]


def dirichlet_class_number(D):
    """h(D) = -(w / 2|D|) * sum_{a=1}^{|D|} (D/a) a."""
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(kronecker(D, a) * a for a in range(1, -D + 1))
    h = -w * s / (2 * -D)
    assert h == int(h)
    return int(h)


def test_examples():
    assert class_number(3) == 1
    assert class_number(37) == 2
    assert class_number(74) == 10
    assert class_number(1) == 1
    assert class_number(5) == 2


def test_field_discriminant():
    assert field_discriminant(3).D == -3
    assert field_discriminant(37).D == -148
    assert field_discriminant(74).D == -296
    assert field_discriminant(7).D == -7
    with pytest.raises(ValueError):
        field_discriminant(12)
    with pytest.raises(ValueError):
        class_number(8)


def test_agrees_with_dirichlet_formula():
    for d in SQUAREFREE:
        D = field_discriminant(d).D
        assert class_number(d) == dirichlet_class_number(D), d


def test_count_reduced_forms_rejects_bad_discriminant():
    for D in (0, 5, -2, -5):
        with pytest.raises(ValueError):
            count_reduced_forms(D)


def test_bound_holds_and_is_monotone():
    for d in SQUAREFREE:
        if d >= 5:
            assert class_number(d) < class_number_bound(1, d)
    assert class_number(37) < class_number_bound(1, 37)
    assert math.isclose(class_number_bound(1, 37), 2 * math.sqrt(37) / math.pi * math.log(148))
    assert round(class_number_bound(1, 37), 2) == 19.35
    assert class_number(74) < class_number_bound(2, 37)
    ps = primes_between(5, 10000)
    vals = [class_number_bound(1, p) for p in ps]
    assert vals == sorted(vals)
    with pytest.raises(ValueError):
        class_number_bound(1, 3)


def test_divergence_thresholds():
    assert divergence_threshold("2*") == 10321
    p3 = divergence_threshold("3*")
    assert p3 <= 30341
    # positive at and beyond the reported primes, negative just below 10321
    assert threshold_chain("2*", 10321) > 0
    last_bad = max(q for q in primes_between(5, 10321) if threshold_chain("2*", q) <= 0)
    assert last_bad == 10313
    for q in primes_between(30341, 40000):
        assert threshold_chain("3*", q) > 0


def test_genus_examples():
    assert genus_x0(11) == 1
    assert genus_x0(37) == 2
    assert genus_x0(13) == 0
    assert genus_x0(2) == 0 and genus_x0(3) == 0
    with pytest.raises(ValueError):
        genus_x0(15)


@given(st.sampled_from(primes_between(5, 2000)))
def test_genus_matches_degree_formula(p):
    # deg ss_p = floor(p/12) + correction, which must equal 1 + genus
    r = p % 12
    deg = p // 12 + {1: 0, 5: 1, 7: 1, 11: 2}[r]
    assert genus_x0(p) + 1 == deg


@given(st.integers(1, 3000))
def test_is_squarefree(n):
    assert is_squarefree(n) == all(n % (k * k) for k in range(2, math.isqrt(n) + 1))
