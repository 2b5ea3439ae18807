"""Shiftable Heffter nets of degree 3 from magic squares.

The construction: take the order-n Margossian square (n divisible by 4),
pick the sign-flip cell set F for the parity of n/4, subtract n^2 + 1
from the entries in F, and read the result's rows, columns, and one
diagonal family as the three parallel classes of a shiftable (n^2, n; 3)
Heffter space.  Every step re-verifies its output; a failure past
parameter checking is a construction bug.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .core import (
    Block,
    ConstructionFault,
    HeffterSpace,
    HeffterSystem,
    ParameterError,
    is_half_set,
    validate_heffter_space,
)
from .magic import (
    MagicSquare,
    SquareArray,
    conjugate_cell,
    left_diagonal_cells,
    margossian_square,
    right_diagonal_cells,
)


class MaskCase(Enum):
    """Which flip pattern applies: n/4 even or n/4 odd."""

    EVEN_QUARTER = "even_quarter"
    ODD_QUARTER = "odd_quarter"


class DiagonalFamily(Enum):
    RIGHT = "right"
    LEFT = "left"
    GOOD = "good"
    ALL = "all"


@dataclass(frozen=True)
class FlipMask:
    """Positional cell set F of an order-n square (n divisible by 4).

    True cells mark entries whose sign the net construction flips.  The
    defining conditions are positional, so the mask is stored by cell:

    * conjugate closure: (i, j) in F iff its conjugate cell is in F;
    * every row and column holds exactly n/2 cells of F;
    * EVEN_QUARTER: every right and left diagonal holds exactly n/2;
      ODD_QUARTER: every good diagonal holds exactly n/2.

    The constructor checks shape only; :func:`flip_mask` verifies the
    conditions above on everything it returns.
    """

    n: int
    mask: tuple[tuple[bool, ...], ...]
    case_tag: MaskCase

    def __post_init__(self) -> None:
        if self.n % 4 != 0 or self.n < 4:
            raise ParameterError(f"mask order must be a positive multiple of 4, got {self.n}")
        rows = tuple(tuple(bool(x) for x in row) for row in self.mask)
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise ParameterError(f"mask must be an {self.n}x{self.n} boolean array")
        if not isinstance(self.case_tag, MaskCase):
            raise ParameterError(f"case_tag must be a MaskCase, got {self.case_tag!r}")
        object.__setattr__(self, "mask", rows)

    def count(self) -> int:
        return sum(1 for row in self.mask for x in row if x)


def flip_mask(n: int) -> FlipMask:
    """The sign-flip cell pattern for order n (n divisible by 4).

    With rows/columns numbered from 0 and q = n/4:

    * n/4 even: cell (i, j) flips iff j // q is odd on even rows and
      even on odd rows (alternating width-q column bands, offset by row
      parity);
    * n/4 odd: rows split at n/2; a row takes the left half [0, n/2)
      iff it is an odd row of the top half or an even row of the bottom
      half, and the right half otherwise.

    All mask invariants are verified before returning.
    """
    if n % 4 != 0 or n < 4:
        raise ParameterError(f"mask order must be a positive multiple of 4, got {n}")
    q = n // 4
    half = n // 2
    if q % 2 == 0:
        case = MaskCase.EVEN_QUARTER
        rows = [
            [((j // q) % 2 == 1) if i % 2 == 0 else ((j // q) % 2 == 0) for j in range(n)]
            for i in range(n)
        ]
    else:
        case = MaskCase.ODD_QUARTER

        def left_half_row(i: int) -> bool:
            return (i < half and i % 2 == 1) or (i >= half and i % 2 == 0)

        rows = [
            [(j < half) == left_half_row(i) for j in range(n)]
            for i in range(n)
        ]
    mask = FlipMask(n, rows, case)
    _verify_mask(mask)
    return mask


def _verify_mask(f: FlipMask) -> None:
    n, half = f.n, f.n // 2
    for i in range(n):
        for j in range(n):
            ci, cj = conjugate_cell(n, i, j)
            if f.mask[i][j] != f.mask[ci][cj]:
                raise ConstructionFault(f"mask is not conjugate-closed at ({i}, {j})")
    for i, row in enumerate(f.mask):
        if sum(row) != half:
            raise ConstructionFault(f"mask row {i} holds {sum(row)} cells, expected {half}")
    for j in range(n):
        col = sum(f.mask[i][j] for i in range(n))
        if col != half:
            raise ConstructionFault(f"mask column {j} holds {col} cells, expected {half}")
    if f.case_tag is MaskCase.EVEN_QUARTER:
        lines = [right_diagonal_cells(n, j) for j in range(n)]
        lines += [left_diagonal_cells(n, j) for j in range(n)]
    else:
        lines = [right_diagonal_cells(n, j) for j in range(0, n, 2)]
        lines += [left_diagonal_cells(n, j) for j in range(1, n, 2)]
    for cells in lines:
        hit = sum(f.mask[i][j] for i, j in cells)
        if hit != half:
            raise ConstructionFault(f"diagonal through {cells[0]} holds {hit} cells, expected {half}")


def sign_flip(m: MagicSquare, f: FlipMask) -> SquareArray:
    """Subtract n^2 + 1 from every entry of `m` in the flip set.

    Because conjugate entries of the magic square sum to n^2 + 1 and the
    mask is conjugate-closed, flipping replaces each chosen value with
    minus its conjugate's value, so the entry set becomes a half-set of
    [-n^2, n^2].  That is verified before returning.
    """
    n = m.n
    if f.n != n:
        raise ParameterError(f"square has order {n} but mask has order {f.n}")
    shift = n * n + 1
    out = SquareArray(
        n,
        tuple(
            tuple(e - shift if f.mask[i][j] else e for j, e in enumerate(row))
            for i, row in enumerate(m.entries)
        ),
    )
    if not is_half_set(out.entry_set(), n * n):
        raise ConstructionFault(f"flipped order-{n} square is not a half-set of [-{n * n}, {n * n}]")
    return out


_Partition = tuple[tuple[int, ...], ...]


def array_resolutions(a: SquareArray, family: DiagonalFamily) -> tuple[_Partition, ...]:
    """Partitions of a distinct-entry array: rows, columns, and a diagonal
    family, each given as sorted entry tuples.

    RIGHT and LEFT work for any order and give 3 partitions; GOOD needs
    even order (3 partitions); ALL needs odd order and yields 4 (rows,
    columns, right diagonals, left diagonals).  Mutual orthogonality of
    the returned partitions is verified.
    """
    n = a.n
    if family is DiagonalFamily.GOOD and n % 2 != 0:
        raise ParameterError(f"good diagonals need even order, got n={n}")
    if family is DiagonalFamily.ALL and n % 2 == 0:
        raise ParameterError(f"the four-family resolution needs odd order, got n={n}")

    rows = tuple(tuple(sorted(row)) for row in a.entries)
    cols = tuple(tuple(sorted(a.entries[i][j] for i in range(n))) for j in range(n))

    def diag(cells_of, indices) -> _Partition:
        return tuple(tuple(sorted(a.entries[i][j] for i, j in cells_of(n, jj))) for jj in indices)

    if family is DiagonalFamily.RIGHT:
        parts = (rows, cols, diag(right_diagonal_cells, range(n)))
    elif family is DiagonalFamily.LEFT:
        parts = (rows, cols, diag(left_diagonal_cells, range(n)))
    elif family is DiagonalFamily.GOOD:
        good = diag(right_diagonal_cells, range(0, n, 2)) + diag(left_diagonal_cells, range(1, n, 2))
        parts = (rows, cols, good)
    else:
        parts = (rows, cols, diag(right_diagonal_cells, range(n)), diag(left_diagonal_cells, range(n)))

    for x in range(len(parts)):
        for y in range(x + 1, len(parts)):
            _check_partition_pair(parts[x], parts[y], x, y)
    return parts


def _check_partition_pair(p: _Partition, q: _Partition, x: int, y: int) -> None:
    where = {e: bj for bj, block in enumerate(q) for e in block}
    for bi, block in enumerate(p):
        hits = Counter(where[e] for e in block)
        for bj, c in hits.items():
            if c > 1:
                shared = sorted(set(block) & set(q[bj]))
                raise ConstructionFault(
                    f"partitions {x} and {y}: blocks {bi} and {bj} share {shared[:4]}"
                )


def net_square(n: int) -> SquareArray:
    """The signed square the net construction reads off: the Margossian
    square of order n with the flip pattern applied."""
    return sign_flip(margossian_square(n), flip_mask(n))


def heffter_net(n: int) -> HeffterSpace:
    """A shiftable (n^2, n; 3) Heffter space for any n divisible by 4.

    The three classes are the rows, columns, and one diagonal family of
    the signed square: right diagonals when n/4 is even, good diagonals
    when n/4 is odd (the case whose mask balances only the good family).
    The output is fully validated; failure at that point is a bug.
    """
    if n % 4 != 0 or n < 4:
        raise ParameterError(f"net order must be a positive multiple of 4, got {n}")
    mask = flip_mask(n)
    square = sign_flip(margossian_square(n), mask)
    family = DiagonalFamily.RIGHT if mask.case_tag is MaskCase.EVEN_QUARTER else DiagonalFamily.GOOD
    parts = array_resolutions(square, family)
    v = n * n
    classes = tuple(
        HeffterSystem(v, n, tuple(Block(block) for block in part)) for part in parts
    )
    space = HeffterSpace(v, n, 3, classes, shiftable=True, provenance=f"net:{n}")
    report = validate_heffter_space(space, require_shiftable=True)
    if not report.ok:
        raise ConstructionFault(f"net of order {n} failed validation: {report.failures()[0].line()}")
    return space
