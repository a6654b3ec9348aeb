"""Data models for the stochastic Euler lab."""

from stochastic_euler.models.common import (
    ValidDimension,
    ValidExponent,
    ValidGridSize,
    ValidSplineOrder,
)
from stochastic_euler.models.config import (
    EllipticConfig,
    QWienerSpec,
    RunConfig,
    TransportConfig,
)
from stochastic_euler.models.reports import (
    BoundsReport,
    CompareReport,
    ConvergenceReport,
    DivergenceReport,
    FieldDifference,
    GradientBoundReport,
    IterationRecord,
    MaxPrincipleReport,
    NodeNorms,
    NoiseNorms,
    PressureStats,
    ResidualReport,
    RunReport,
    SolveReport,
    StoppingTimeResult,
    StratonovichConvergenceReport,
    StratonovichReport,
    UniquenessReport,
    VerifyReport,
)

__all__ = [
    "BoundsReport",
    "CompareReport",
    "ConvergenceReport",
    "DivergenceReport",
    "EllipticConfig",
    "FieldDifference",
    "GradientBoundReport",
    "IterationRecord",
    "MaxPrincipleReport",
    "NodeNorms",
    "NoiseNorms",
    "PressureStats",
    "QWienerSpec",
    "ResidualReport",
    "RunConfig",
    "RunReport",
    "SolveReport",
    "StoppingTimeResult",
    "StratonovichConvergenceReport",
    "StratonovichReport",
    "TransportConfig",
    "UniquenessReport",
    "ValidDimension",
    "ValidExponent",
    "ValidGridSize",
    "ValidSplineOrder",
    "VerifyReport",
]
