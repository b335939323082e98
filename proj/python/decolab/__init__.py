"""Spin-bath decoherence models, real-clock damping and dense cross-checks."""

from ._decolab import (  # noqa: F401
    Bath,
    BathSpin,
    CapacityError,
    DegenerateBranchError,
    LogComplex,
    ParameterError,
    PhysicalConstants,
    PhysicalScenario,
    QubitAmplitudes,
    RegimeError,
    cavity,
    despagnat,
    feasibility,
    log_product,
    oracle,
    partial_trace,
    realclock,
    sample_bath,
    trace_distance,
    undecidability,
    zurek,
)

__all__ = [name for name in dir() if not name.startswith("_")]
