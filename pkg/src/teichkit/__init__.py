"""teichkit: exact-arithmetic toolkit for hyperbolic surfaces.

Subpackages by theme:

- halfplane: upper half-plane model, Mobius maps, geodesics, horocycles
- fatgraph: ribbon graphs with shear weights, holonomy words, trace coordinates
- confluence: controlled edge-collapse limits as exact Laurent series
- flags: complete flag configurations, line pencils, projective invariants
- snakes: elementary matrix words and triangle transport
- surface: glued triangulations, amalgamation, surface holonomy
- scene: half-plane picture descriptions and SVG rendering
- laurent, linalg: the exact-arithmetic substrate

Scalars are polymorphic throughout: Fraction for exact work, float when
speed beats exactness, LaurentPoly for symbolic identities.  No operation
introduces floats unless an input is float.
"""

__version__ = "0.1.0"

from .errors import DomainError, SchemaError  # noqa: F401
