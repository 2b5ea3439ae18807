"""Core types and the verification engine for integer Heffter structures.

A half-set of [-v, v] contains exactly one of {x, -x} for every magnitude
in [1, v].  A (v, k; r) Heffter space is a set of r mutually orthogonal
partitions of a half-set into zero-sum blocks of size k; it is shiftable
when k is even and every block holds exactly k/2 positive elements.

All types here are immutable values and all operations are pure, so the
module is safe for unrestricted concurrent use.  Validators return
structured reports with a witness per failure instead of raising, which
lets callers diagnose damaged inputs in full.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace

#: Magnitude bound that keeps every internal sum far inside 64-bit range.
MAX_POINT = 1 << 30


class ParameterError(ValueError):
    """Arguments violate a documented precondition."""


class ConstructionFault(RuntimeError):
    """An internally built object failed its own verification (a bug)."""


# ---------------------------------------------------------------------------
# validation reports


@dataclass(frozen=True)
class Check:
    """One named invariant check with an optional failure witness."""

    name: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        return f"PASS {self.name}" if self.passed else f"FAIL {self.name}: {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        return "\n".join(c.line() for c in self.checks)


def _witness(problems: list[str], cap: int = 4) -> str:
    if len(problems) <= cap:
        return "; ".join(problems)
    return "; ".join(problems[:cap]) + f"; (+{len(problems) - cap} more)"


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True, order=True)
class Block:
    """A set of distinct nonzero integers, stored sorted ascending.

    Zero-sum is deliberately not forced here; it is checked by
    :func:`is_zero_sum` and the validators, so invalid candidates can be
    represented and diagnosed.  What the type does forbid is anything that
    can never sit inside a half-set: zeros, repeats, and an element
    together with its own negation.
    """

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(int(x) for x in self.elements))
        if not elems:
            raise ParameterError("a block needs at least one element")
        if any(x == 0 for x in elems):
            raise ParameterError("block elements must be nonzero")
        if any(abs(x) > MAX_POINT for x in elems):
            raise ParameterError(f"block elements must have magnitude <= {MAX_POINT}")
        if len(set(elems)) != len(elems):
            raise ParameterError(f"repeated element in block {elems}")
        mags = [abs(x) for x in elems]
        if len(set(mags)) != len(mags):
            both = sorted(m for m, c in Counter(mags).items() if c > 1)
            raise ParameterError(f"block contains x and -x for magnitude(s) {both}")
        object.__setattr__(self, "elements", elems)

    @property
    def positives(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements if x > 0)

    @property
    def negatives(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements if x < 0)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements


@dataclass(frozen=True)
class HeffterSystem:
    """One parallel class: a candidate partition of a half-set of [-v, v]
    into zero-sum blocks of size k.  Semantic invariants are checked by
    :func:`validate_heffter_space`, not by the constructor."""

    v: int
    k: int
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        _require_positive(v=self.v, k=self.k)
        if self.v > MAX_POINT:
            raise ParameterError(f"v must be <= {MAX_POINT}")
        blocks = tuple(self.blocks)
        if not blocks or not all(isinstance(b, Block) for b in blocks):
            raise ParameterError("blocks must be a nonempty sequence of Block values")
        object.__setattr__(self, "blocks", blocks)

    def points(self) -> frozenset[int]:
        return frozenset(x for b in self.blocks for x in b)

    def canonical(self) -> "HeffterSystem":
        return replace(self, blocks=tuple(sorted(self.blocks)))


@dataclass(frozen=True)
class HeffterSpace:
    """r parallel classes on one half-set, plus the shiftable flag."""

    v: int
    k: int
    r: int
    classes: tuple[HeffterSystem, ...]
    shiftable: bool = False
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        _require_positive(v=self.v, k=self.k, r=self.r)
        if self.v > MAX_POINT:
            raise ParameterError(f"v must be <= {MAX_POINT}")
        classes = tuple(self.classes)
        if not classes or not all(isinstance(c, HeffterSystem) for c in classes):
            raise ParameterError("classes must be a nonempty sequence of HeffterSystem values")
        object.__setattr__(self, "classes", classes)

    def points(self) -> frozenset[int]:
        return self.classes[0].points()

    def canonical(self) -> "HeffterSpace":
        classes = tuple(
            sorted(
                (c.canonical() for c in self.classes),
                key=lambda c: tuple(b.elements for b in c.blocks),
            )
        )
        return replace(self, classes=classes)


@dataclass(frozen=True)
class PlainSpace:
    """A resolvable configuration on opaque labeled points: r mutually
    orthogonal partitions of w points into blocks of size n.  This is the
    non-Heffter ingredient of the star composition."""

    w: int
    n: int
    r: int
    points: tuple[str, ...]
    classes: tuple[tuple[tuple[str, ...], ...], ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        _require_positive(w=self.w, n=self.n, r=self.r)
        if self.w > MAX_POINT:
            raise ParameterError(f"w must be <= {MAX_POINT}")
        points = tuple(self.points)
        if not all(isinstance(p, str) and p for p in points):
            raise ParameterError("points must be nonempty strings")
        classes = tuple(
            tuple(tuple(sorted(str(x) for x in block)) for block in cls) for cls in self.classes
        )
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "classes", classes)

    def point_indices(self) -> dict[str, int]:
        """Deterministic relabeling of points to [0, w-1] by sorted label order."""
        return {label: i for i, label in enumerate(sorted(self.points))}

    def canonical(self) -> "PlainSpace":
        classes = tuple(sorted(tuple(sorted(cls)) for cls in self.classes))
        return replace(self, points=tuple(sorted(self.points)), classes=classes)


@dataclass(frozen=True)
class HeffterArrayView:
    """Matrix display of two orthogonal systems: cell (i, j) holds the
    unique common element of block i of the first system and block j of
    the second, or None."""

    rows: int
    cols: int
    cells: tuple[tuple[int | None, ...], ...]

    def row_entries(self, i: int) -> tuple[int, ...]:
        return tuple(x for x in self.cells[i] if x is not None)

    def col_entries(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.cells if row[j] is not None)

    def filled(self) -> int:
        return sum(1 for row in self.cells for x in row if x is not None)


@dataclass(frozen=True)
class CyclicPresentation:
    """A Heffter space rewritten over residues mod 2v+1 in [0, 2v]."""

    modulus: int
    v: int
    k: int
    r: int
    classes: tuple[tuple[tuple[int, ...], ...], ...]


def _require_positive(**named: int) -> None:
    for name, value in named.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ParameterError(f"{name} must be a positive integer, got {value!r}")


# ---------------------------------------------------------------------------
# predicates


def is_half_set(points: Iterable[int], v: int) -> bool:
    """True iff `points` holds exactly one of {x, -x} for each magnitude in [1, v]."""
    pts = set(points)
    if len(pts) != v or 0 in pts:
        return False
    return {abs(x) for x in pts} == set(range(1, v + 1)) and len({abs(x) for x in pts}) == len(pts)


def is_zero_sum(block: Block) -> bool:
    return sum(block.elements) == 0


def feasible_r2(n: int, k: int, shiftable: bool) -> bool:
    """Parameter feasibility of an (nk, k; 2) Heffter space (predicate only).

    Plain integer spaces exist iff nk = 0 or 3 (mod 4); shiftable ones iff
    k is even and nk = 0 (mod 4).  No construction is attempted here.
    """
    if not isinstance(n, int) or not isinstance(k, int) or n < 1 or k < 1:
        return False
    nk = n * k
    if shiftable:
        return k % 2 == 0 and nk % 4 == 0
    return nk % 4 in (0, 3)


def partitions_orthogonal(p: Sequence[Block], q: Sequence[Block]) -> bool:
    """True iff every block of p meets every block of q in at most one point.

    Both arguments must be partitions of one common point set; anything
    else raises ParameterError naming an offending point.
    """
    p_points = _partition_points(p, "first")
    q_points = _partition_points(q, "second")
    if p_points != q_points:
        x = next(iter(p_points.symmetric_difference(q_points)))
        raise ParameterError(f"partitions do not cover the same point set: {x} is on one side only")
    where_q = {x: j for j, b in enumerate(q) for x in b}
    for b in p:
        hits = Counter(where_q[x] for x in b)
        if any(c > 1 for c in hits.values()):
            return False
    return True


def _partition_points(blocks: Sequence[Block], side: str) -> set[int]:
    seen: set[int] = set()
    for b in blocks:
        for x in b:
            if x in seen:
                raise ParameterError(f"{side} argument is not a partition: point {x} occurs twice")
            seen.add(x)
    return seen


def negated(space: HeffterSpace) -> HeffterSpace:
    """Flip the sign of every point; maps valid (shiftable) spaces to valid ones."""
    classes = tuple(
        HeffterSystem(c.v, c.k, tuple(Block([-x for x in b]) for b in c.blocks))
        for c in space.classes
    )
    return replace(space, classes=classes)


# ---------------------------------------------------------------------------
# structured validation

RawClasses = Sequence[Sequence[Sequence[int]]]


def heffter_space_report(
    v: int,
    k: int,
    r: int,
    classes: RawClasses,
    *,
    require_shiftable: bool = False,
) -> ValidationReport:
    """Check every defining invariant of a (v, k; r) Heffter space on raw
    nested integer data; one report entry per invariant, with witnesses."""
    checks: list[Check] = []

    problems = []
    if v < 1 or k < 1 or r < 1:
        problems.append(f"parameters must be positive, got v={v} k={k} r={r}")
    if k >= 1 and v >= 1 and v % k != 0:
        problems.append(f"k={k} does not divide v={v}")
    if len(classes) != r:
        problems.append(f"expected r={r} classes, found {len(classes)}")
    if k >= 1 and v % max(k, 1) == 0:
        want = v // k
        for ci, cls in enumerate(classes):
            if len(cls) != want:
                problems.append(f"class {ci} has {len(cls)} blocks, expected v/k={want}")
    checks.append(Check("parameters", not problems, _witness(problems)))

    problems = []
    for ci, cls in enumerate(classes):
        for bi, block in enumerate(cls):
            elems = list(block)
            if len(elems) != k:
                problems.append(f"class {ci} block {bi} has size {len(elems)}, expected {k}")
            if any(x == 0 for x in elems):
                problems.append(f"class {ci} block {bi} contains 0")
            if len(set(elems)) != len(elems):
                problems.append(f"class {ci} block {bi} repeats an element")
            mags = [abs(x) for x in elems]
            if len(set(mags)) != len(set(elems)):
                problems.append(f"class {ci} block {bi} contains some x together with -x")
    checks.append(Check("block_shape", not problems, _witness(problems)))

    problems = []
    base_points = {x for cls in classes[:1] for block in cls for x in block}
    mag_counts = Counter(abs(x) for x in base_points)
    missing = [m for m in range(1, v + 1) if mag_counts.get(m, 0) == 0]
    doubled = sorted(m for m, c in mag_counts.items() if c > 1)
    stray = sorted(m for m in mag_counts if m < 1 or m > v)
    if missing:
        problems.append(f"magnitudes missing from the point set: {missing[:6]}")
    if doubled:
        problems.append(f"both signs present for magnitude(s) {doubled[:6]}")
    if stray:
        problems.append(f"magnitudes outside [1, {v}]: {stray[:6]}")
    checks.append(Check("half_set", not problems, _witness(problems)))

    problems = []
    for ci, cls in enumerate(classes[1:], start=1):
        pts = {x for block in cls for x in block}
        if pts != base_points:
            diff = sorted(pts.symmetric_difference(base_points))
            problems.append(f"class {ci} point set differs from class 0 at {diff[:6]}")
    checks.append(Check("common_point_set", not problems, _witness(problems)))

    problems = []
    for ci, cls in enumerate(classes):
        counts = Counter(x for block in cls for x in block)
        repeated = sorted(x for x, c in counts.items() if c > 1)
        if repeated:
            problems.append(f"class {ci} covers point(s) {repeated[:6]} more than once")
        if len(counts) != v:
            problems.append(f"class {ci} covers {len(counts)} points, expected {v}")
    checks.append(Check("partition", not problems, _witness(problems)))

    problems = []
    for ci, cls in enumerate(classes):
        for bi, block in enumerate(cls):
            s = sum(block)
            if s != 0:
                problems.append(f"class {ci} block {bi} {sorted(block)} sums to {s}")
    checks.append(Check("zero_sum", not problems, _witness(problems)))

    problems = []
    if k >= 2:
        seen: dict[frozenset[int], tuple[int, int]] = {}
        for ci, cls in enumerate(classes):
            for bi, block in enumerate(cls):
                key = frozenset(block)
                if key in seen:
                    problems.append(
                        f"block {sorted(block)} repeats at class {ci} block {bi} "
                        f"and class {seen[key][0]} block {seen[key][1]}"
                    )
                else:
                    seen[key] = (ci, bi)
    checks.append(Check("distinct_blocks", not problems, _witness(problems)))

    problems = []
    for ci in range(len(classes)):
        for cj in range(ci + 1, len(classes)):
            where = {x: bj for bj, block in enumerate(classes[cj]) for x in block}
            for bi, block in enumerate(classes[ci]):
                hits = Counter(where.get(x) for x in block if x in where)
                for bj, c in hits.items():
                    if c > 1:
                        shared = sorted(set(block) & set(classes[cj][bj]))
                        problems.append(
                            f"classes {ci} and {cj}: blocks {bi} and {bj} share {shared[:4]}"
                        )
    checks.append(Check("orthogonality", not problems, _witness(problems)))

    if require_shiftable:
        problems = []
        if k % 2 != 0:
            problems.append(f"k={k} must be even for a shiftable space")
        else:
            half = k // 2
            for ci, cls in enumerate(classes):
                for bi, block in enumerate(cls):
                    pos = sum(1 for x in block if x > 0)
                    if pos != half:
                        problems.append(
                            f"class {ci} block {bi} {sorted(block)} has {pos} positives, expected {half}"
                        )
        checks.append(Check("shiftable", not problems, _witness(problems)))

    return ValidationReport(tuple(checks))


def validate_heffter_space(space: HeffterSpace, require_shiftable: bool = False) -> ValidationReport:
    """Report on every invariant of `space`; shiftable checks run when asked
    for or when the space itself claims to be shiftable."""
    raw = [[b.elements for b in cls.blocks] for cls in space.classes]
    return heffter_space_report(
        space.v,
        space.k,
        space.r,
        raw,
        require_shiftable=require_shiftable or space.shiftable,
    )


RawLabelClasses = Sequence[Sequence[Sequence[str]]]


def plain_space_report(w: int, n: int, r: int, points: Sequence[str], classes: RawLabelClasses) -> ValidationReport:
    """Check the resolvable-configuration invariants of a (w, n; r) space.

    Repeated blocks are permitted only in the degenerate n = 1 case, where
    the singleton partition is necessarily repeated r times.
    """
    checks: list[Check] = []

    problems = []
    if w < 1 or n < 1 or r < 1:
        problems.append(f"parameters must be positive, got w={w} n={n} r={r}")
    if n >= 1 and w >= 1 and w % n != 0:
        problems.append(f"n={n} does not divide w={w}")
    if len(points) != w:
        problems.append(f"expected {w} points, found {len(points)}")
    if len(classes) != r:
        problems.append(f"expected r={r} classes, found {len(classes)}")
    if n >= 1 and w % max(n, 1) == 0:
        for ci, cls in enumerate(classes):
            if len(cls) != w // n:
                problems.append(f"class {ci} has {len(cls)} blocks, expected w/n={w // n}")
    checks.append(Check("parameters", not problems, _witness(problems)))

    problems = []
    dupes = sorted(p for p, c in Counter(points).items() if c > 1)
    if dupes:
        problems.append(f"repeated point label(s) {dupes[:6]}")
    checks.append(Check("points_distinct", not problems, _witness(problems)))

    point_set = set(points)
    problems = []
    for ci, cls in enumerate(classes):
        for bi, block in enumerate(cls):
            if len(block) != n:
                problems.append(f"class {ci} block {bi} has size {len(block)}, expected {n}")
            strangers = sorted(set(block) - point_set)
            if strangers:
                problems.append(f"class {ci} block {bi} uses unknown point(s) {strangers[:4]}")
    checks.append(Check("block_shape", not problems, _witness(problems)))

    problems = []
    for ci, cls in enumerate(classes):
        counts = Counter(x for block in cls for x in block)
        repeated = sorted(x for x, c in counts.items() if c > 1)
        if repeated:
            problems.append(f"class {ci} covers point(s) {repeated[:6]} more than once")
        if set(counts) != point_set:
            left_out = sorted(point_set - set(counts))
            problems.append(f"class {ci} misses point(s) {left_out[:6]}")
    checks.append(Check("partition", not problems, _witness(problems)))

    problems = []
    if n >= 2:
        seen: dict[frozenset[str], tuple[int, int]] = {}
        for ci, cls in enumerate(classes):
            for bi, block in enumerate(cls):
                key = frozenset(block)
                if key in seen:
                    problems.append(
                        f"block {sorted(block)} repeats at class {ci} block {bi} "
                        f"and class {seen[key][0]} block {seen[key][1]}"
                    )
                else:
                    seen[key] = (ci, bi)
    checks.append(Check("distinct_blocks", not problems, _witness(problems)))

    problems = []
    for ci in range(len(classes)):
        for cj in range(ci + 1, len(classes)):
            where = {x: bj for bj, block in enumerate(classes[cj]) for x in block}
            for bi, block in enumerate(classes[ci]):
                hits = Counter(where.get(x) for x in block if x in where)
                for bj, c in hits.items():
                    if c > 1:
                        shared = sorted(set(block) & set(classes[cj][bj]))
                        problems.append(
                            f"classes {ci} and {cj}: blocks {bi} and {bj} share {shared[:4]}"
                        )
    checks.append(Check("orthogonality", not problems, _witness(problems)))

    return ValidationReport(tuple(checks))


def validate_plain_space(space: PlainSpace) -> ValidationReport:
    return plain_space_report(space.w, space.n, space.r, space.points, space.classes)


# ---------------------------------------------------------------------------
# derived presentations


def extract_heffter_array(a: HeffterSystem, b: HeffterSystem) -> HeffterArrayView:
    """Display two orthogonal systems as a matrix: cell (i, j) is the unique
    element shared by block i of `a` and block j of `b`, if any.

    Raises ParameterError when the systems do not live on the same point
    set or are not orthogonal (naming the offending block pair).
    """
    a_points = a.points()
    b_points = b.points()
    if a_points != b_points:
        x = next(iter(a_points.symmetric_difference(b_points)))
        raise ParameterError(f"systems do not share a point set: {x} is on one side only")
    col_of: dict[int, int] = {}
    for j, block in enumerate(b.blocks):
        for x in block:
            if x in col_of:
                raise ParameterError(f"second system is not a partition: point {x} occurs twice")
            col_of[x] = j
    rows, cols = len(a.blocks), len(b.blocks)
    cells: list[list[int | None]] = [[None] * cols for _ in range(rows)]
    seen_in_row: set[int] = set()
    for i, block in enumerate(a.blocks):
        for x in block:
            if x in seen_in_row:
                raise ParameterError(f"first system is not a partition: point {x} occurs twice")
            seen_in_row.add(x)
            j = col_of[x]
            if cells[i][j] is not None:
                raise ParameterError(
                    f"systems are not orthogonal: blocks {i} and {j} share "
                    f"{{{cells[i][j]}, {x}}}"
                )
            cells[i][j] = x
    return HeffterArrayView(rows, cols, tuple(tuple(row) for row in cells))


def to_cyclic(space: HeffterSpace) -> CyclicPresentation:
    """Rewrite a valid integer Heffter space over residues mod 2v+1.

    Every point x maps to x mod (2v+1) in [0, 2v]; the map is a bijective
    relabeling, so partitions and orthogonality carry over exactly and
    every block sums to 0 mod 2v+1.
    """
    report = validate_heffter_space(space)
    if not report.ok:
        raise ParameterError(f"space does not validate: {report.failures()[0].line()}")
    modulus = 2 * space.v + 1
    classes = tuple(
        tuple(tuple(sorted(x % modulus for x in block)) for block in cls.blocks)
        for cls in space.classes
    )
    return CyclicPresentation(modulus, space.v, space.k, space.r, classes)
