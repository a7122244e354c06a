"""Exact log canonical models of weighted elliptic surface pairs."""
from .classifier import delta_coefficient, relative_model_form, singularity_table, threshold_a0
from .fibers import FiberGraph, FiberType, Kind, build_fiber_graph, catalog, log_resolution_graph, mmp_start_graph
from .lattice import DivisorClass, IntersectionForm, is_negative_definite
from .mmp import InternalError, MmpError, ModelForm, RelativeModel, log_degrees, log_discrepancies, run_relative_mmp
from .polynomial import Polynomial
from .surface import GlobalKind, GlobalModel, SurfaceConfig, canonical_class, global_model, lc_square_and_t, section_contracted, section_pairing
from .walls import ChamberReport, cube_chambers, parametric_walls

__version__ = "0.1.0"

__all__ = [
    "ChamberReport", "DivisorClass", "FiberGraph", "FiberType", "GlobalKind", "GlobalModel", "IntersectionForm",
    "InternalError", "Kind", "MmpError", "ModelForm", "Polynomial", "RelativeModel", "SurfaceConfig",
    "build_fiber_graph", "canonical_class", "catalog", "cube_chambers", "delta_coefficient", "global_model",
    "is_negative_definite", "lc_square_and_t", "log_degrees", "log_discrepancies", "log_resolution_graph",
    "mmp_start_graph", "parametric_walls", "relative_model_form", "run_relative_mmp", "section_contracted",
    "section_pairing", "singularity_table", "threshold_a0",
]
