"""Exact q-series coefficients, Turan inequalities and Wright circle-method asymptotics."""
from .series import (
    CoeffSeries,
    ProductSpec,
    coloured_partition_series,
    dilate_extract,
    expand_product,
    log_coeff,
    read_cache,
    series_for,
    shifted_pochhammer_series,
    write_cache,
)
from .polynomial import IntPolynomial
from .jensen import hermite_distance, hermite_polynomial, jensen_polynomial, normalized_jensen_eval
from .hyperbolicity import (
    HankelReport,
    hankel_minors,
    is_hyperbolic,
    log_concavity_check,
    power_sums,
    turan_scan,
)
from .wright import (
    AsymptoticEstimate,
    GrowthModel,
    PrecisionError,
    WrightProfile,
    bessel_asymp_coeff,
    bessel_I,
    growth_model,
    profile_coloured_partitions,
    profile_shifted_pochhammer,
    wright_estimate,
)

__version__ = "0.1.0"
