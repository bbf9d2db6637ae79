"""Central simple algebras over F_q(t) and skew constacyclic convolutional codes."""

from .errors import CsaError, DecodingFailure, InvalidInput, InvariantBreach, SamplingFailure
from .fields import Field, ff_make
from .ratfunc import INFINITY, Place, RatFunc
from .local import InvariantProfile, SymbolAlgebra, invariant_profile, quaternion_ramification
from .forge import InvariantSpec, build_quaternion, build_symbol, symbol_structure_constants
from .ore import AlgElem, CyclicAlgebra, FieldAut, SkewPoly
from .codes import (ConstaCode, constacyclic_rs_code, decode_constacyclic, encode,
                    min_distance_exact, norm_case_code)

__version__ = "0.1.0"
