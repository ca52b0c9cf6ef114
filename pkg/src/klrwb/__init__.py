"""Quiver Hecke algebras, their graded simple modules, and the crystal B(infinity).

The layers are independent enough to be used on their own: ``root_datum``
and ``laurent`` for the combinatorics, ``klr_core`` for the algebra,
``modcat`` for modules, ``crystal`` for B(infinity) and Saito reflections,
and ``verify`` for checks that tie them together.
"""

__version__ = "0.1.0"

from .root_datum import Quiver, load_quiver, new_quiver, resolve_quiver, standard_quiver  # noqa: E402
from .laurent import LaurentPoly, TruncatedSeries  # noqa: E402
from .klr_core import IdempotentSpec, KLRAlgebra  # noqa: E402
from .crystal import Crystal  # noqa: E402

__all__ = [
    "Crystal",
    "IdempotentSpec",
    "KLRAlgebra",
    "LaurentPoly",
    "Quiver",
    "TruncatedSeries",
    "load_quiver",
    "new_quiver",
    "resolve_quiver",
    "standard_quiver",
]
