"""Shiftable Heffter spaces: construction, composition, verification, search."""

from .core import (
    MAX_POINT,
    Block,
    Check,
    ConstructionFault,
    CyclicPresentation,
    HeffterArrayView,
    HeffterSpace,
    HeffterSystem,
    ParameterError,
    PlainSpace,
    ValidationReport,
    extract_heffter_array,
    feasible_r2,
    heffter_space_report,
    is_half_set,
    is_zero_sum,
    negated,
    partitions_orthogonal,
    plain_space_report,
    to_cyclic,
    validate_heffter_space,
    validate_plain_space,
)
from .magic import (
    Diagonal,
    MagicSquare,
    SquareArray,
    conjugate_cell,
    good_diagonals,
    graeco_latin,
    is_margossian,
    left_diagonal,
    margossian_pi,
    margossian_square,
    right_diagonal,
    square_report,
)
from .netbuild import (
    DiagonalFamily,
    FlipMask,
    MaskCase,
    array_resolutions,
    flip_mask,
    heffter_net,
    net_square,
    sign_flip,
)
from .compose import (
    StarContext,
    pipeline_space,
    plain_space_3,
    star_block,
    star_compose,
    star_elem,
    trivial_space,
)
from .search import (
    SearchMode,
    SearchOutcome,
    SearchProblem,
    SearchStatus,
    search_heffter_space,
)
from .documents import (
    DocumentError,
    SpaceDocument,
    canonical_document,
    document_for_plain,
    document_for_space,
    document_for_square,
    document_report,
    load_document,
    plain_from_document,
    save_document,
    space_from_document,
    square_from_document,
)

__version__ = "0.1.0"
