"""Biclosed sets in the type A_n root system and quasitrivial semigroups on n+1 points."""

__version__ = "0.1.0"

from .bijection import (  # noqa: E402
    CanonicalBiclosed, PositionVector, associative_via_biclosed, biclosed_to_semigroup,
    classify, deinterleave, interleave, op_to_pairs, pairs_to_op, semigroup_to_biclosed,
)
from .permutation import Permutation  # noqa: E402
from .root_system import (  # noqa: E402
    Root, RootSet, act_set, build_psi, is_biclosed, is_closed, standard_positive_system,
)
from .semigroup import (  # noqa: E402
    PreorderDecomposition, QuasitrivialOp, act_op, from_preorder, is_associative, to_preorder,
)
