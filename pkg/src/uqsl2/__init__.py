"""Exact graphical calculus for quantum sl2."""
from .laurent import (
    LaurentPoly,
    LaurentSeries,
    RationalQ,
    bar,
    q,
    qbinom,
    qbinom_renorm,
    qfact,
    qfact_renorm,
    qint,
    qint_renorm,
    qmultinom,
    series_from_ratfun,
)
from .networks import AdmissibilityError
from .tensor_rep import ModuleShape, TensorVector

__version__ = "0.1.0"
