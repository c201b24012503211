"""Flag varieties, bundle expressions and their normal form."""

from .bundles import (
    BlockRef,
    BundleExpr,
    Decomposition,
    DirectSum,
    Dual,
    Plethysm,
    Schur,
    Tensor,
    Twist,
    direct_sum,
    dual,
    line_bundle_to_expr,
    normalize,
    rank,
    structure_sheaf,
    tensor,
    tensor_irreducibles,
    twist_irreducible,
)
from .flags import (
    FlagVariety,
    IrreducibleBundle,
    LineBundleClass,
    ProductVariety,
    canonical_bundle,
    grassmannian,
    k0_rank,
    line_bundle_class_of,
    line_bundle_weights,
    parse_variety,
    projective_space,
)
from .parser import BundleSyntaxError, TwistArityError, UnknownBlockError, parse_bundle

__all__ = [
    "BlockRef", "BundleExpr", "Decomposition", "DirectSum", "Dual", "Plethysm", "Schur",
    "Tensor", "Twist", "direct_sum", "dual", "line_bundle_to_expr", "normalize", "rank",
    "structure_sheaf", "tensor", "tensor_irreducibles", "twist_irreducible",
    "FlagVariety", "IrreducibleBundle", "LineBundleClass", "ProductVariety", "canonical_bundle",
    "grassmannian", "k0_rank", "line_bundle_class_of", "line_bundle_weights", "parse_variety",
    "projective_space", "BundleSyntaxError", "TwistArityError", "UnknownBlockError", "parse_bundle",
]
