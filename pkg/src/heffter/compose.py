"""Recursive composition of shiftable Heffter spaces.

The star operation shifts a point away from zero by a multiple of v:

    a * b = a + b*v   (a > 0)        a * b = a - b*v   (a < 0)

Lifting every block A of a shiftable (v, k; r) space against every block
B of a (w, n; r) plain space, class by class, yields a shiftable
(vw, kn; r) space.  Combined with the magic-square nets this gives the
(16 l^2 m n, 4 l n; 3) family for every l >= 1 and m >= n >= 1.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, replace

from .core import (
    Block,
    ConstructionFault,
    HeffterSpace,
    HeffterSystem,
    ParameterError,
    PlainSpace,
    validate_heffter_space,
    validate_plain_space,
)
from .netbuild import heffter_net


@dataclass(frozen=True)
class StarContext:
    """Carries the shift unit v of the left operand's half-set."""

    v: int

    def __post_init__(self) -> None:
        if not isinstance(self.v, int) or self.v < 1:
            raise ParameterError(f"shift unit must be a positive integer, got {self.v!r}")


def star_elem(ctx: StarContext, a: int, b: int) -> int:
    """a + b*v for positive a, a - b*v for negative a; a = 0 is rejected."""
    if a == 0:
        raise ParameterError("star is undefined at 0: half-set points are nonzero")
    if b < 0:
        raise ParameterError(f"shift count must be nonnegative, got {b}")
    return a + b * ctx.v if a > 0 else a - b * ctx.v


def star_block(ctx: StarContext, block: Block, shifts: Iterable[int]) -> Block:
    """The block {a * b : a in block, b in shifts}.

    For a block inside a half-set of [-v, v] and distinct shift counts the
    |block| * |shifts| results are pairwise distinct; a collision therefore
    signals corrupted operands and raises ConstructionFault.
    """
    bs = sorted(set(shifts))
    values = {star_elem(ctx, a, b) for a in block for b in bs}
    if len(values) != len(block) * len(bs):
        raise ConstructionFault(
            f"star collision: {block.elements} * {bs} produced {len(values)} values"
        )
    return Block(values)


def star_compose(h: HeffterSpace, s: PlainSpace) -> HeffterSpace:
    """Compose a shiftable (v, k; r) space with a (w, n; r) plain space into
    a shiftable (vw, kn; r) space, pairing class i with class i.

    The plain space's labels are relabeled to [0, w-1] by sorted label
    order before shifting (recorded in the result's provenance).  Both
    operands are validated up front; the output is validated before it is
    returned and a failure there is a bug.
    """
    left = validate_heffter_space(h, require_shiftable=True)
    if not left.ok:
        raise ParameterError(f"left operand is not a shiftable space: {left.failures()[0].line()}")
    right = validate_plain_space(s)
    if not right.ok:
        raise ParameterError(f"right operand is not a plain space: {right.failures()[0].line()}")
    if h.r != s.r:
        raise ParameterError(f"degree mismatch: left has r={h.r}, right has r={s.r}")

    ctx = StarContext(h.v)
    index = s.point_indices()
    classes = []
    for hc, sc in zip(h.classes, s.classes):
        blocks = tuple(
            star_block(ctx, a, (index[label] for label in b)) for a in hc.blocks for b in sc
        )
        classes.append(HeffterSystem(h.v * s.w, h.k * s.n, blocks))
    out = HeffterSpace(
        h.v * s.w,
        h.k * s.n,
        h.r,
        tuple(classes),
        shiftable=True,
        provenance=f"star:{h.provenance or 'heffter'}|{s.provenance or 'plain'}|relabel:sorted",
    )
    report = validate_heffter_space(out, require_shiftable=True)
    if not report.ok:
        raise ConstructionFault(f"composed space failed validation: {report.failures()[0].line()}")
    return out


def _labels(count: int) -> list[str]:
    width = len(str(count - 1)) if count > 1 else 1
    return [str(i).zfill(width) for i in range(count)]


def trivial_space(v: int, r: int) -> PlainSpace:
    """The unique (v, 1; r) space: the singleton partition repeated r times."""
    if not isinstance(v, int) or not isinstance(r, int) or v < 1 or r < 1:
        raise ParameterError(f"v and r must be positive integers, got v={v!r} r={r!r}")
    labels = _labels(v)
    cls = tuple((label,) for label in labels)
    return PlainSpace(v, 1, r, tuple(labels), tuple(cls for _ in range(r)), provenance=f"trivial:{v},{r}")


def plain_space_3(m: int, n: int) -> PlainSpace:
    """A (mn, n; 3) space for any m >= n >= 1, on the cells of an n x m grid.

    For n = m the classes are the rows, the columns, and the symbol
    classes of the cyclic Latin square (c - i) mod m.  For n < m they are
    the columns and the symbol classes of two Latin rectangles
    (c - i) mod m and (c - sigma(i)) mod m, where sigma(i) = 2i mod m for
    odd m and 2i mod (m - 1) for even m.  Both sigma and
    i -> sigma(i) - i are injective on the rows used, which gives
    pairwise orthogonality; the result is validated before returning.
    """
    if not isinstance(m, int) or not isinstance(n, int) or n < 1 or m < n:
        raise ParameterError(f"need m >= n >= 1, got m={m!r} n={n!r}")
    labels = _labels(m * n)

    def cell(i: int, c: int) -> str:
        return labels[i * m + c]

    columns = tuple(tuple(cell(i, c) for i in range(n)) for c in range(m))
    plain = tuple(tuple(cell(i, (s + i) % m) for i in range(n)) for s in range(m))
    if n == m:
        rows = tuple(tuple(cell(i, c) for c in range(m)) for i in range(n))
        classes = (rows, columns, plain)
    else:
        if m % 2 == 1:
            sigma = [2 * i % m for i in range(n)]
        else:
            sigma = [2 * i % (m - 1) for i in range(n)]
        skewed = tuple(tuple(cell(i, (s + sigma[i]) % m) for i in range(n)) for s in range(m))
        classes = (columns, plain, skewed)
    space = PlainSpace(m * n, n, 3, tuple(labels), classes, provenance=f"plain:{m},{n}")
    report = validate_plain_space(space)
    if not report.ok:
        raise ConstructionFault(f"(m, n)=({m}, {n}) space failed validation: {report.failures()[0].line()}")
    return space


def pipeline_space(l: int, m: int, n: int) -> HeffterSpace:
    """The end-to-end construction: a shiftable (16 l^2 m n, 4 l n; 3) space,
    built as the order-4l net composed with the (mn, n; 3) plain space."""
    if not isinstance(l, int) or l < 1:
        raise ParameterError(f"l must be a positive integer, got {l!r}")
    if not isinstance(m, int) or not isinstance(n, int) or n < 1 or m < n:
        raise ParameterError(f"need m >= n >= 1, got m={m!r} n={n!r}")
    out = star_compose(heffter_net(4 * l), plain_space_3(m, n))
    return replace(out, provenance=f"pipeline:{l},{m},{n}")
