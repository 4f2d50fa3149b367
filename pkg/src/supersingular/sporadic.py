"""Orders of the sporadic groups that show up next to supersingular counts."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod


@dataclass(frozen=True)
class GroupOrder:
    name: str
    order: int
    factorization: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> frozenset[int]:
        return frozenset(q for q, _ in self.factorization)

    def __int__(self):
        return self.order

    def __str__(self):
        return " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in self.factorization)


_TABLE = {
    "Monster": (
        808017424794512875886459904961710757005754368000000000,
        ((2, 46), (3, 20), (5, 9), (7, 6), (11, 2), (13, 3), (17, 1), (19, 1), (23, 1),
         (29, 1), (31, 1), (41, 1), (47, 1), (59, 1), (71, 1)),
    ),
    "BabyMonster": (
        4154781481226426191177580544000000,
        ((2, 41), (3, 13), (5, 6), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1),
         (31, 1), (47, 1)),
    ),
    "Fi24prime": (
        1255205709190661721292800,
        ((2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (17, 1), (23, 1), (29, 1)),
    ),
    "HaradaNorton": (
        273030912000000,
        ((2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)),
    ),
    "Held": (
        4030387200,
        ((2, 10), (3, 3), (5, 2), (7, 3), (17, 1)),
    ),
    "Thompson": (
        90745943887872000,
        ((2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)),
    ),
    "Janko1": (
        175560,
        ((2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)),
    ),
}

ALIASES = {
    "M": "Monster", "B": "BabyMonster", "Fi24'": "Fi24prime", "Fi24": "Fi24prime",
    "HN": "HaradaNorton", "He": "Held", "Th": "Thompson", "J1": "Janko1",
}


def _build() -> dict[str, GroupOrder]:
    out = {}
    for name, (order, fac) in _TABLE.items():
        if prod(q ** e for q, e in fac) != order:
            raise AssertionError(f"factorization of {name} does not multiply back")
        out[name] = GroupOrder(name, order, fac)
    return out


GROUPS = _build()


def group_order(name: str) -> GroupOrder:
    key = ALIASES.get(name, name)
    try:
        return GROUPS[key]
    except KeyError:
        raise KeyError(f"unknown group {name!r}") from None


def divides(name: str, p: int) -> bool:
    """Whether the prime p divides the order of the named group."""
    return p in group_order(name).primes


def prime_divisors(name: str) -> list[int]:
    return sorted(group_order(name).primes)
