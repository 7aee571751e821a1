"""Syzygy orders of equivariant cohomology modules of big chain spaces over F_2."""

from .ring import Polynomial, RingCtx
from .modules import (FreeModule, FreeResolution, ModuleElem, ModuleMap, Presentation,
                      free_resolution, generic_rank, graded_dim, groebner, kernel,
                      minimize, normal_form)
from .homological import FREE, SyzygyOrder, homological_dimension, is_free, syzygy_order
from .chainspace import (ChainSpaceParams, NonGenericError, build_iota, classify_maximal,
                         cohomology, dims, extend_by_zero, full_report)

__version__ = "0.1.0"

__all__ = [
    "Polynomial", "RingCtx",
    "FreeModule", "FreeResolution", "ModuleElem", "ModuleMap", "Presentation",
    "free_resolution", "generic_rank", "graded_dim", "groebner", "kernel", "minimize",
    "normal_form",
    "FREE", "SyzygyOrder", "homological_dimension", "is_free", "syzygy_order",
    "ChainSpaceParams", "NonGenericError", "build_iota", "classify_maximal", "cohomology",
    "dims", "extend_by_zero", "full_report",
]
