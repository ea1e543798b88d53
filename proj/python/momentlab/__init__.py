"""Python bindings for the momentlab C++ core."""

from fractions import Fraction

from . import _core
from ._core import (
    Instance,
    Relation,
    best_delta,
    big_G,
    big_gamma,
    bounds,
    bounds_json,
    characteristic_set,
    empirical_threshold,
    g,
    g_prime,
    gamma,
    generate_instance,
    h,
    make_instance,
    rhat,
    solve,
    sweep_csv,
    t,
    verify,
    verify_groups,
    wilson_interval,
)

__all__ = [
    "Instance",
    "Relation",
    "best_delta",
    "big_G",
    "big_gamma",
    "bounds",
    "bounds_json",
    "characteristic_set",
    "empirical_threshold",
    "exact_first_moment",
    "exact_second_moment",
    "g",
    "g_prime",
    "gamma",
    "generate_instance",
    "h",
    "make_instance",
    "moment_ratio",
    "rhat",
    "solve",
    "sweep_csv",
    "t",
    "verify",
    "verify_groups",
    "wilson_interval",
]


def _fraction(pair):
    num, den = pair
    return Fraction(int(num), int(den))


def exact_first_moment(n, p, m, rel, method="formula"):
    """E[X_p] over instances with n variables and m constraints, as a Fraction."""
    return _fraction(_core.exact_first_moment(n, p, m, rel, method))


def exact_second_moment(n, p, m, rel, method="formula"):
    return _fraction(_core.exact_second_moment(n, p, m, rel, method))


def moment_ratio(n, p, m, rel):
    """E[X_p]^2 / E[X_p^2]; zero when no p-solution can exist."""
    return _fraction(_core.moment_ratio(n, p, m, rel))
