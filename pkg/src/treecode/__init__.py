"""Line-breaking codes for labeled trees, uniform samplers and growth procedures."""

from .bijection import (
    decode_degree,
    decode_forest,
    decode_marked,
    decode_rooted,
    decode_unrooted,
    encode_degree,
    encode_forest,
    encode_marked,
    encode_rooted,
    encode_unrooted,
)
from .growth import (
    decode_modified,
    encode_modified,
    grow_dary_chain,
    grow_step,
    multiset_from_indices,
    unlabel_internal,
)
from .rng import make_rng
from .trees import (
    DegreeSequence,
    DegreeTree,
    Leaf,
    MarkedTree,
    RootedForest,
    RootedTree,
    TreeValidationError,
    TypeVector,
    UnrootedTree,
    depth,
    discovery_order,
    height,
    leaves,
    path_from_set,
    type_of,
    validate,
)

__version__ = "0.1.0"
