"""Brute-force oracles shared across tests.

These deliberately re-derive everything from the definitions with plain
set arithmetic and enumeration, independent of the library's validators,
so construction and verification check each other.
"""

from itertools import combinations

import pytest


def brute_orthogonal(p, q) -> bool:
    """Every block of p meets every block of q in at most one point."""
    return all(len(set(a) & set(b)) <= 1 for a in p for b in q)


def brute_half_set(points, v: int) -> bool:
    pts = set(points)
    return len(pts) == v and 0 not in pts and sorted({abs(x) for x in pts}) == list(range(1, v + 1))


def brute_valid_shiftable(classes, v: int, k: int) -> bool:
    """Definition of a shiftable (v, k; r) Heffter space, checked directly."""
    base = {x for b in classes[0] for x in b}
    if not brute_half_set(base, v):
        return False
    for cls in classes:
        elems = [x for b in cls for x in b]
        if len(elems) != v or set(elems) != base:
            return False
        for b in cls:
            if len(b) != k or sum(b) != 0 or sum(1 for x in b if x > 0) != k // 2:
                return False
    return all(
        brute_orthogonal(classes[i], classes[j])
        for i in range(len(classes))
        for j in range(i + 1, len(classes))
    )


def raw_classes(space):
    """Nested tuples of a HeffterSpace's blocks."""
    return [[b.elements for b in cls.blocks] for cls in space.classes]


def brute_count_single_classes(v: int, k: int, signs: dict[int, int]):
    """All partitions of the signed magnitudes 1..v into zero-sum blocks of
    size k with k/2 positives each, by direct enumeration (v/k <= 2)."""
    assert v // k in (1, 2), "oracle only handles one or two blocks"
    mags = list(range(1, v + 1))
    out = []
    if v == k:
        e = [m * signs[m] for m in mags]
        if sum(e) == 0 and sum(1 for x in e if x > 0) == k // 2:
            out.append((frozenset(e),))
        return out
    for rest in combinations(mags[1:], k - 1):
        b1 = (1,) + rest
        b2 = tuple(m for m in mags if m not in b1)
        e1 = [m * signs[m] for m in b1]
        e2 = [m * signs[m] for m in b2]
        if (
            sum(e1) == 0
            and sum(e2) == 0
            and sum(1 for x in e1 if x > 0) == k // 2
            and sum(1 for x in e2 if x > 0) == k // 2
        ):
            out.append((frozenset(e1), frozenset(e2)))
    return out


@pytest.fixture(scope="session")
def fixture20():
    from heffter import fixtures

    return fixtures.space_20_4_3()


@pytest.fixture(scope="session")
def fixture24():
    from heffter import fixtures

    return fixtures.space_24_4_3()
