"""Pandiagonal magic squares with the conjugate-sum property, and the
diagonal machinery shared by the net construction.

Indexing is 0-based throughout.  The classical formulas below are usually
written 1-based; each operation documents its 0-based image, and the
golden tests pin the translation against the published order-4 and
order-8 squares.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .core import Check, ConstructionFault, ParameterError, ValidationReport, _witness


@dataclass(frozen=True)
class SquareArray:
    """An n x n array of pairwise distinct integers."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"order must be a positive integer, got {self.n!r}")
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(entries) != self.n or any(len(row) != self.n for row in entries):
            raise ParameterError(f"entries must form an {self.n}x{self.n} array")
        flat = [x for row in entries for x in row]
        if len(set(flat)) != len(flat):
            dupe = next(x for x in flat if flat.count(x) > 1)
            raise ParameterError(f"entries must be pairwise distinct ({dupe} repeats)")
        object.__setattr__(self, "entries", entries)

    def entry_set(self) -> frozenset[int]:
        return frozenset(x for row in self.entries for x in row)


@dataclass(frozen=True)
class MagicSquare:
    base: SquareArray
    magic_constant: int

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self.base.entries


class Diagonal(NamedTuple):
    kind: str  # "right" or "left"
    index: int
    entries: tuple[int, ...]


def right_diagonal(a: SquareArray, j: int) -> tuple[int, ...]:
    """Right (down-right broken) diagonal j: entries a[i][(i + j) mod n].

    j = 0 is the main diagonal.
    """
    _check_index(a.n, j)
    return tuple(a.entries[i][(i + j) % a.n] for i in range(a.n))


def left_diagonal(a: SquareArray, j: int) -> tuple[int, ...]:
    """Left (down-left broken) diagonal j: entries a[i][(j - 2 - i) mod n].

    j = 1 is the secondary diagonal.
    """
    _check_index(a.n, j)
    return tuple(a.entries[i][(j - 2 - i) % a.n] for i in range(a.n))


def right_diagonal_cells(n: int, j: int) -> tuple[tuple[int, int], ...]:
    _check_index(n, j)
    return tuple((i, (i + j) % n) for i in range(n))


def left_diagonal_cells(n: int, j: int) -> tuple[tuple[int, int], ...]:
    _check_index(n, j)
    return tuple((i, (j - 2 - i) % n) for i in range(n))


def _check_index(n: int, j: int) -> None:
    if not isinstance(j, int) or not 0 <= j < n:
        raise ParameterError(f"diagonal index must lie in [0, {n - 1}], got {j!r}")


def good_diagonals(a: SquareArray) -> tuple[Diagonal, ...]:
    """The n good diagonals of an even-order square: right diagonals with
    even index, then left diagonals with odd index.  Together they cover
    every cell exactly once.
    """
    if a.n % 2 != 0:
        raise ParameterError(f"good diagonals need even order, got n={a.n}")
    rights = tuple(Diagonal("right", j, right_diagonal(a, j)) for j in range(0, a.n, 2))
    lefts = tuple(Diagonal("left", j, left_diagonal(a, j)) for j in range(1, a.n, 2))
    return rights + lefts


def conjugate_cell(n: int, i: int, j: int) -> tuple[int, int]:
    """The conjugate of cell (i, j): ((i + n/2) mod n, (j + n/2) mod n).

    Defined for even n only; applying it twice returns the original cell.
    """
    if n % 2 != 0:
        raise ParameterError(f"conjugate cells need even order, got n={n}")
    if not (0 <= i < n and 0 <= j < n):
        raise ParameterError(f"cell ({i}, {j}) out of range for order {n}")
    h = n // 2
    return ((i + h) % n, (j + h) % n)


def graeco_latin(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """The Graeco-Latin-style array over Z_n x Z_n whose cell at 1-based
    row i, column j is ((n/2)i + j, i + (n/2)j) mod n.

    The pair map is a bijection exactly when 4 | n (the matrix
    [[n/2, 1], [1, n/2]] has determinant n^2/4 - 1 = -1 mod n); orders
    n = 2 (mod 4) are rejected.
    """
    if n % 4 != 0 or n < 4:
        raise ParameterError(f"order must be divisible by 4, got {n}")
    h = n // 2
    grid = tuple(
        tuple(((h * (i + 1) + (j + 1)) % n, ((i + 1) + h * (j + 1)) % n) for j in range(n))
        for i in range(n)
    )
    pairs = {p for row in grid for p in row}
    if len(pairs) != n * n:
        raise ConstructionFault(f"pair array of order {n} is not a bijection")
    return grid


def margossian_pi(n: int, x: int) -> int:
    """The involution on [0, n-1] fixing [0, n/2-1] and reversing the upper
    half: x maps to 3n/2 - 1 - x for x >= n/2."""
    if n % 2 != 0 or n < 2:
        raise ParameterError(f"the permutation needs even order, got n={n}")
    if not isinstance(x, int) or not 0 <= x < n:
        raise ParameterError(f"x must lie in [0, {n - 1}], got {x!r}")
    return x if x < n // 2 else 3 * n // 2 - 1 - x


def margossian_square(n: int) -> MagicSquare:
    """Margossian's pandiagonal magic square of doubly even order n.

    Each pair (x, y) of the Graeco-Latin array becomes n*pi(x) + pi(y) + 1.
    The result is a normal pandiagonal magic square whose conjugate cell
    pairs each sum to n^2 + 1; this is verified before returning and any
    failure is a construction bug, not a user error.
    """
    if n % 4 != 0 or n < 4:
        raise ParameterError(f"order must be a positive multiple of 4, got {n}")
    pairs = graeco_latin(n)
    pi = [margossian_pi(n, x) for x in range(n)]
    entries = tuple(tuple(n * pi[x] + pi[y] + 1 for (x, y) in row) for row in pairs)
    square = SquareArray(n, entries)
    report = is_margossian(square)
    if not report.ok:
        raise ConstructionFault(f"order-{n} square failed verification: {report.failures()[0].line()}")
    return MagicSquare(square, n * (n * n + 1) // 2)


def square_report(entries: Sequence[Sequence[int]], *, margossian: bool = False) -> ValidationReport:
    """Diagnose a raw square array; with margossian=True also check
    normality, all 4n line sums, and the conjugate pair sums."""
    checks: list[Check] = []

    n = len(entries)
    problems = []
    if n < 1:
        problems.append("array is empty")
    for i, row in enumerate(entries):
        if len(row) != n:
            problems.append(f"row {i} has length {len(row)}, expected {n}")
    checks.append(Check("shape", not problems, _witness(problems)))
    if problems:
        return ValidationReport(tuple(checks))

    flat = [x for row in entries for x in row]
    problems = []
    if len(set(flat)) != len(flat):
        dupes = sorted({x for x in flat if flat.count(x) > 1})
        problems.append(f"repeated entries {dupes[:4]}")
    checks.append(Check("entries_distinct", not problems, _witness(problems)))

    if not margossian:
        return ValidationReport(tuple(checks))

    problems = []
    if sorted(flat) != list(range(1, n * n + 1)):
        low = [x for x in flat if not 1 <= x <= n * n]
        missing = sorted(set(range(1, n * n + 1)) - set(flat))
        if low:
            problems.append(f"entries outside [1, {n * n}]: {sorted(low)[:4]}")
        if missing:
            problems.append(f"missing values {missing[:4]}")
    checks.append(Check("normal", not problems, _witness(problems)))

    d = n * (n * n + 1) // 2

    problems = []
    for i, row in enumerate(entries):
        s = sum(row)
        if s != d:
            problems.append(f"row {i} sums to {s}, expected {d}")
    checks.append(Check("row_sums", not problems, _witness(problems)))

    problems = []
    for j in range(n):
        s = sum(row[j] for row in entries)
        if s != d:
            problems.append(f"column {j} sums to {s}, expected {d}")
    checks.append(Check("column_sums", not problems, _witness(problems)))

    for kind, cells_of in (("right", right_diagonal_cells), ("left", left_diagonal_cells)):
        problems = []
        for j in range(n):
            s = sum(entries[i][c] for i, c in cells_of(n, j))
            if s != d:
                problems.append(f"{kind} diagonal {j} sums to {s}, expected {d}")
        checks.append(Check(f"{kind}_diagonal_sums", not problems, _witness(problems)))

    problems = []
    if n % 2 != 0:
        problems.append(f"order {n} is odd, conjugate cells are undefined")
        checks.append(Check("even_order", False, _witness(problems)))
        checks.append(Check("conjugate_sums", False, "skipped: odd order"))
        return ValidationReport(tuple(checks))
    checks.append(Check("even_order", True))

    problems = []
    target = n * n + 1
    h = n // 2
    for i in range(n):
        for j in range(n):
            ci, cj = (i + h) % n, (j + h) % n
            if (i, j) < (ci, cj):
                s = entries[i][j] + entries[ci][cj]
                if s != target:
                    problems.append(
                        f"cells ({i},{j}) and ({ci},{cj}) sum to {s}, expected {target}"
                    )
    checks.append(Check("conjugate_sums", not problems, _witness(problems)))

    return ValidationReport(tuple(checks))


def is_margossian(square: SquareArray | Sequence[Sequence[int]]) -> ValidationReport:
    """Full diagnostic report: is this a normal pandiagonal magic square
    whose conjugate entry pairs all sum to n^2 + 1?"""
    entries = square.entries if isinstance(square, SquareArray) else square
    return square_report(entries, margossian=True)
