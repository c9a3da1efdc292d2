"""Exact closed forms for power-weighted sums of multiple harmonic sums.

The package reduces sums of the shape

    sum_{m=1}^{n} m^p * H_{m-1}(k_1, ..., k_r)

to polynomial-coefficient combinations of multiple harmonic sums at n, and
builds on that to evaluate sums like sum F(m) * H_{m-1}^t for polynomial
weights F.  All arithmetic is exact (``fractions.Fraction``).
"""

from .bernoulli import BernoulliTable, bernoulli, check_twoBs, umbral_eval
from .closedform import ClosedForm
from .oracle import harmonic, is_proper, mhs_eval, mhs_values
from .polynomial import Polynomial, discrete_sum
from .reducer import c_poly, d_umbral, faulhaber, reduce, reduce_direct
from .stuffle import composition_key, expand_power, product_combinations, stuffle
from .sums import (
    StructuredForm,
    StructureReport,
    structure_check,
    structured_form,
    structured_to_closed,
    sum_power,
    sum_power_shifted,
    sum_product,
)
from .verify import run_table, run_verify

__version__ = "0.1.0"

__all__ = [
    "BernoulliTable",
    "ClosedForm",
    "Polynomial",
    "StructureReport",
    "StructuredForm",
    "bernoulli",
    "c_poly",
    "check_twoBs",
    "composition_key",
    "d_umbral",
    "discrete_sum",
    "expand_power",
    "faulhaber",
    "harmonic",
    "is_proper",
    "mhs_eval",
    "mhs_values",
    "product_combinations",
    "reduce",
    "reduce_direct",
    "run_table",
    "run_verify",
    "structure_check",
    "structured_form",
    "structured_to_closed",
    "stuffle",
    "sum_power",
    "sum_power_shifted",
    "sum_product",
    "umbral_eval",
]
