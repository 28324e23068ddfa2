"""Python view of the qgrav core library."""

from ._qgrav import (
    FisherMatrix2,
    QgravError,
    correlation,
    crlb_variance,
    experiments,
    freefall,
    kc,
    kernel,
    optomech,
    regularized_effective,
    retention,
    schur_effective,
    verify,
)

__version__ = "0.1.0"
