"""Combinatorics of gentle algebras: normal forms, constructions, words and surfaces."""
from gentle_kit.core import (
    Arrow,
    BoundQuiver,
    Path,
    Quiver,
    ValidationReport,
    VertexMap,
    connected_components,
    from_json,
    isomorphic,
    nonzero_paths,
    parse_bound_quiver,
    serialize,
    to_json,
    validate,
)
from gentle_kit.errors import (
    ConstructionError,
    GentleKitError,
    InfiniteDimensionalError,
    NotGentleError,
    ParseError,
)

__version__ = "0.1.0"
