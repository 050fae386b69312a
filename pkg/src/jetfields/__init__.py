"""Momentum, energy and pressure fields of a Gaussian-interaction gas jet.

A uniform gas in a box of edge L interacts through the pair potential
g*exp(-a r^2) and starts as a one-dimensional momentum jet (p0, 0, 0).
This package evaluates the resulting time-evolved moment fields in closed
form (up to deterministic 1-D quadrature over time), checks the velocity
field's divergence, and cross-checks the pressure gradient against the
incompressible momentum-balance prescription.
"""

from .config import (
    AxisSpec,
    GridSpec,
    ParseError,
    RunConfig,
    ToroidAngles,
    ToroidGridSpec,
    ValidationError,
    default_config,
    parse_config,
    render_config,
    toroid_map,
)
from .fields import (
    EnergyField,
    FieldSample,
    Momentum3,
    PressureField,
    UnsupportedMass,
    energy_field,
    field_sample,
    momentum_field,
    pressure_field,
    shifted_point,
)
from .gridrun import FormatError, GridRun, export_table, sample_grid
from .nse import (
    NSEReport,
    compare_te_nse,
    divergence,
    nse_pressure_gradient_x,
    te_pressure_gradient_x,
    velocity,
)
from .potential import (
    HPartials,
    PhysParams,
    Point3,
    axial_factor,
    h_partials,
    pair_potential,
    transverse_factor,
)
from .quadrature import (
    DEFAULT_SPEC,
    NoConvergence,
    QuadratureSpec,
    integrate_1d,
    triangular_double_integral,
)

__version__ = "0.1.0"
