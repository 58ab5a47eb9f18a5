from nilkit.dynamics.base import DynSystem
from nilkit.dynamics.observables import Observable
from nilkit.dynamics.systems import make_system
from nilkit.dynamics.averages import (
    lambda_average, cesaro_observable, inner, l2_norm_squared, norm_estimate,
)
from nilkit.dynamics.oracle import character_oracle
from nilkit.dynamics.report import AverageReport, convergence_report

__all__ = [
    'DynSystem', 'Observable', 'make_system', 'lambda_average',
    'cesaro_observable', 'inner', 'l2_norm_squared', 'norm_estimate',
    'character_oracle', 'AverageReport', 'convergence_report',
]
