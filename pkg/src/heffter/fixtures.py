"""Reference objects shipped as documents under ``heffter/data/``.

The four spaces and four squares here are fixed transcriptions of
published tables (the computer-found (20, 4; 3) and (24, 4; 3) spaces,
the composed (40, 4; 3) and (80, 8; 3) spaces, and the order-4/8 squares
before and after sign flipping).  They are data, independent of the
construction code, so validation tests never hinge on construction
success.  Class and block order follows the source tables; compare via
``canonical()``.
"""

from __future__ import annotations

from functools import cache
from importlib import resources

from .core import HeffterSpace, PlainSpace
from .documents import SpaceDocument, load_document, space_from_document, square_from_document
from .magic import SquareArray

FIXTURE_NAMES = (
    "space-20-4-3",
    "space-24-4-3",
    "space-40-4-3",
    "space-80-8-3",
    "magic-4",
    "magic-8",
    "signed-4",
    "signed-8",
)


@cache
def _fixture_text(name: str) -> str:
    return resources.files("heffter").joinpath(f"data/{name}.json").read_text()


def load_fixture(name: str) -> SpaceDocument:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    return load_document(_fixture_text(name))


def space_20_4_3() -> HeffterSpace:
    return space_from_document(load_fixture("space-20-4-3"))


def space_24_4_3() -> HeffterSpace:
    return space_from_document(load_fixture("space-24-4-3"))


def space_40_4_3() -> HeffterSpace:
    return space_from_document(load_fixture("space-40-4-3"))


def space_80_8_3() -> HeffterSpace:
    return space_from_document(load_fixture("space-80-8-3"))


def magic_square_4() -> SquareArray:
    return square_from_document(load_fixture("magic-4"))


def magic_square_8() -> SquareArray:
    return square_from_document(load_fixture("magic-8"))


def signed_square_4() -> SquareArray:
    return square_from_document(load_fixture("signed-4"))


def signed_square_8() -> SquareArray:
    return square_from_document(load_fixture("signed-8"))


def k4_one_factorization() -> PlainSpace:
    """The one-factorization of the complete graph on four points, read as
    a (4, 2; 3) space: three orthogonal perfect matchings."""
    classes = (
        (("0", "1"), ("2", "3")),
        (("0", "2"), ("1", "3")),
        (("0", "3"), ("1", "2")),
    )
    return PlainSpace(4, 2, 3, ("0", "1", "2", "3"), classes, provenance="fixture:k4-one-factorization")
