"""Exact calculus of constructible functions on finite simplicial complexes.

The package computes Euler-characteristic weighted integrals, the
combinatorial duality, pushforward and pullback along simplicial maps,
and the costalk restriction to a closed subcomplex, all with exact
integer arithmetic.  On top of that sit local index and dimension
calculations driven by characteristic-cycle data on a complexification
pair, scene files describing such scenarios, and a registry of built-in
models.
"""

from .calculus import (
    ConstructibleFunction,
    Mod2Function,
    constructible_function,
    dual,
    euler_integral,
    indicator,
    mod2_euler_integral,
    mod2_function,
    mod2_pushforward,
    mod2_reduce,
    open_extend,
    open_pushforward,
    orbit_pushforward,
    pullback,
    pushforward,
    restrict,
    restrict_open,
    shriek_restrict,
    triangle_decompose,
    zero_function,
)
from .complexes import (
    Involution,
    OpenSubset,
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    Subcomplex,
    build_complex,
    complement_open,
    compose,
    cone,
    constant_map,
    fixed_point_set,
    full_subcomplex,
    identity_map,
    inclusion_map,
    involution,
    is_connected,
    is_strongly_free,
    point_complex,
    product,
    quotient_by_involution,
    simplex,
    simplicial_map,
    star,
    subcomplex,
)
from .errors import (
    MissingSimplexError,
    ModelError,
    SceneError,
    SceneSemanticError,
    SceneSyntaxError,
)
from .indices import (
    KNOWN_CHECKS,
    CharacteristicCycle,
    CheckResult,
    Expectations,
    RealComplexPair,
    Stratum,
    VerificationReport,
    hyperfunction_dimension,
    hyperfunction_index,
    parity_index,
    smooth_stratum,
    solution_index,
    verify_scene,
)
from .scenes import (
    ModelInfo,
    ModelParam,
    Scene,
    build_model,
    emit_scene,
    list_models,
    parse_scene,
)

__version__ = "0.1.0"

__all__ = [
    "CharacteristicCycle",
    "CheckResult",
    "ConstructibleFunction",
    "Expectations",
    "Involution",
    "KNOWN_CHECKS",
    "MissingSimplexError",
    "Mod2Function",
    "ModelError",
    "ModelInfo",
    "ModelParam",
    "OpenSubset",
    "RealComplexPair",
    "Scene",
    "SceneError",
    "SceneSemanticError",
    "SceneSyntaxError",
    "Simplex",
    "SimplicialComplex",
    "SimplicialMap",
    "Stratum",
    "Subcomplex",
    "VerificationReport",
    "build_complex",
    "build_model",
    "complement_open",
    "compose",
    "cone",
    "constant_map",
    "constructible_function",
    "dual",
    "emit_scene",
    "euler_integral",
    "fixed_point_set",
    "full_subcomplex",
    "hyperfunction_dimension",
    "hyperfunction_index",
    "identity_map",
    "inclusion_map",
    "indicator",
    "involution",
    "is_connected",
    "is_strongly_free",
    "list_models",
    "mod2_euler_integral",
    "mod2_function",
    "mod2_pushforward",
    "mod2_reduce",
    "open_extend",
    "open_pushforward",
    "orbit_pushforward",
    "parity_index",
    "parse_scene",
    "point_complex",
    "product",
    "pullback",
    "pushforward",
    "quotient_by_involution",
    "restrict",
    "restrict_open",
    "shriek_restrict",
    "simplex",
    "simplicial_map",
    "smooth_stratum",
    "solution_index",
    "star",
    "subcomplex",
    "triangle_decompose",
    "verify_scene",
    "zero_function",
]
