"""Delay-differential model of a dividing cell population.

Thin bindings over the C++ library: equilibria and their stability, the Hopf
boundary r_H, method-of-steps simulation of y, the driven x equation, and the
orbit/zone analyses built on them.
"""

from ._core import (
    ConvergenceReport,
    CriticalityReport,
    CycleEstimate,
    DomainError,
    Equilibrium,
    IoError,
    ModelParams,
    NoHopf,
    NotFound,
    NumericalError,
    OrbitClass,
    PreconditionError,
    History,
    ScanReport,
    StabilityVerdict,
    Trajectory,
    ZoneReport,
    b1_coefficient,
    bistability_scan,
    classify_orbit,
    classify_positive,
    classify_trivial,
    constant_history,
    convergence_check,
    criticality_probe,
    cycle_estimate,
    eigenmode_history,
    embedded_tables,
    equilibria,
    hopf_delay,
    hopf_omega,
    integrate_x,
    integrate_y,
    leading_roots,
    omega0,
    periodic_x0,
    surface_grid,
    verify_table,
    zone_classify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
