"""Scalar special functions: Gamma, Beta and the factorial family.

Everything works in binary64. Arguments above ``LOG_THRESHOLD`` go through
log-space so the large-index bounds stay representable as logarithms.
"""

import math

__all__ = [
    "LOG_THRESHOLD",
    "log_gamma",
    "gamma_fn",
    "beta_fn",
    "log_beta",
    "factorial",
    "log_factorial",
    "double_factorial",
    "log_double_factorial",
    "binomial",
    "double_factorial_ratio",
]

#: Arguments beyond this value are evaluated in log-space.
LOG_THRESHOLD = 170


def _check_positive(x, name="x"):
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"{name} must be finite and > 0, got {x!r}")
    return x


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    x = _check_positive(x)
    return math.lgamma(x)


def gamma_fn(x):
    x = _check_positive(x)
    if x > LOG_THRESHOLD:
        return math.exp(math.lgamma(x)) if x < 171.6 else math.inf
    return math.gamma(x)


def log_beta(a, b):
    a = _check_positive(a, "a")
    b = _check_positive(b, "b")
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_fn(a, b):
    """Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    a = _check_positive(a, "a")
    b = _check_positive(b, "b")
    if a + b < LOG_THRESHOLD:
        # direct ratio keeps full relative accuracy where nothing overflows
        return math.gamma(a) * math.gamma(b) / math.gamma(a + b)
    return math.exp(log_beta(a, b))


def _check_int(k, lo, name="k"):
    if isinstance(k, bool) or int(k) != k:
        raise ValueError(f"{name} must be an integer, got {k!r}")
    k = int(k)
    if k < lo:
        raise ValueError(f"{name} must be >= {lo}, got {k}")
    return k


def log_factorial(n):
    n = _check_int(n, 0, "n")
    return math.lgamma(n + 1.0)


def factorial(n):
    """n! as a float; +inf once the value leaves binary64 range."""
    n = _check_int(n, 0, "n")
    if n > LOG_THRESHOLD:
        return math.inf
    return float(math.factorial(n))


def log_double_factorial(k):
    """ln(k!!) with (-1)!! = 0!! = 1."""
    k = _check_int(k, -1)
    if k <= 0:
        return 0.0
    if k <= 2 * LOG_THRESHOLD:
        return math.log(math.prod(range(k, 0, -2)))
    if k % 2 == 0:
        h = k // 2
        return h * math.log(2.0) + math.lgamma(h + 1.0)
    # (2h+1)!! = (2h+1)! / (2^h h!)
    h = (k - 1) // 2
    return math.lgamma(k + 1.0) - h * math.log(2.0) - math.lgamma(h + 1.0)


def double_factorial(k):
    """k!! as a float, exact while the integer fits in binary64."""
    k = _check_int(k, -1)
    if k <= 0:
        return 1.0
    if k <= 2 * LOG_THRESHOLD:
        exact = math.prod(range(k, 0, -2))
        if exact.bit_length() <= 1023:
            return float(exact)
        return math.inf
    return math.inf


def double_factorial_ratio(m):
    """(2m-1)!! / (2m)!!, i.e. C(2m, m) / 4^m, stable for every m >= 0."""
    m = _check_int(m, 0, "m")
    if m <= LOG_THRESHOLD:
        return math.comb(2 * m, m) / 4.0**m
    return math.exp(log_double_factorial(2 * m - 1) - log_double_factorial(2 * m))


def binomial(n, k):
    n = _check_int(n, 0, "n")
    k = int(k)
    if k < 0 or k > n:
        return 0.0
    return float(math.comb(n, k))
