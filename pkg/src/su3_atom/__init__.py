"""
su3-atom

Dynamics of three-level lambda, vee and cascade atoms written with the SU(3)
shift operators. Closed-form populations for classical, number-state and
coherent-state fields, dressed states, and independent numerical oracles,
plus a pipeline that writes plot-ready population traces.
"""

from .builder.algebra import gell_mann, shift_operators, structure_constants, verify_closed_algebra
from .builder.model_builder import ModelBuilder, ModelSpec
from .builder.models import (
    AveragedTrace,
    CavityParams,
    Configuration,
    DriveParams,
    FieldKind,
    InitialLevel,
    Method,
    OutputFormat,
    SymmetryKind,
    Trace,
    Weighting,
)
from .dynamics.analytic import dressed_basis, quantized_probabilities, semiclassical_probabilities
from .dynamics.coherent import averaged_probabilities, coherent_spec, envelope_metrics
from .dynamics.verification import bohr_correspondence, run_suite, symmetry_report
from .errors import Su3AtomError

_CORE = [
    "gell_mann",
    "shift_operators",
    "structure_constants",
    "verify_closed_algebra",
    "ModelBuilder",
    "ModelSpec",
    "AveragedTrace",
    "CavityParams",
    "Configuration",
    "DriveParams",
    "FieldKind",
    "InitialLevel",
    "Method",
    "OutputFormat",
    "SymmetryKind",
    "Trace",
    "Weighting",
    "dressed_basis",
    "quantized_probabilities",
    "semiclassical_probabilities",
    "averaged_probabilities",
    "coherent_spec",
    "envelope_metrics",
    "bohr_correspondence",
    "run_suite",
    "symmetry_report",
    "Su3AtomError",
]

# Trace files and the DuckDB store
try:
    from .data_bindings import (
        CsvDestination,
        DuckDBDestination,
        JsonDestination,
        RunConfig,
        TracePipeline,
        TraceStore,
        read_trace,
    )

    __all__ = _CORE + [
        "RunConfig",
        "TracePipeline",
        "CsvDestination",
        "JsonDestination",
        "DuckDBDestination",
        "TraceStore",
        "read_trace",
    ]

except ImportError as e:
    __all__ = _CORE

    import warnings
    warnings.warn(
        f"Trace pipeline not available due to missing dependencies: {e}. "
        "Install the package dependencies to write trace files.",
        ImportWarning
    )

__version__ = "0.1.0"
