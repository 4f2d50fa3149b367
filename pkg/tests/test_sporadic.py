import pytest

from supersingular.arith import MONSTER_PRIMES
from supersingular.sporadic import GROUPS, divides, group_order, prime_divisors


def test_monster_order():
    m = group_order("M")
    assert m.order == 808017424794512875886459904961710757005754368000000000
    assert tuple(prime_divisors("Monster")) == MONSTER_PRIMES


def test_factorizations_multiply_back():
    for g in GROUPS.values():
        prod = 1
        for q, e in g.factorization:
            prod *= q ** e
        assert prod == int(g)


def test_subgroup_orders_divide_monster():
    m = int(group_order("M"))
    for name in ("B", "Fi24'", "HN", "He", "Th"):
        assert m % int(group_order(name)) == 0, name


def test_prime_divisor_sets():
    assert prime_divisors("B") == [2, 3, 5, 7, 11, 13, 17, 19, 23, 31, 47]
    assert prime_divisors("Fi24'") == [2, 3, 5, 7, 11, 13, 17, 23, 29]
    assert prime_divisors("HN") == [2, 3, 5, 7, 11, 19]
    assert prime_divisors("He") == [2, 3, 5, 7, 17]
    assert prime_divisors("Th") == [2, 3, 5, 7, 13, 19, 31]


def test_divides():
    assert divides("B", 47) and not divides("B", 41)
    assert divides("Fi24'", 29) and not divides("Fi24'", 31)
    assert not divides("He", 11)


def test_unknown_group():
    with pytest.raises(KeyError):
        group_order("Co1")


def test_str_form():
    assert str(group_order("J1")) == "2^3 * 3 * 5 * 7 * 11 * 19"
