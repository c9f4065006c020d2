import numpy as np
from scipy.integrate import quad
from scipy.special import erfc
from scipy.stats import norm

#: half-width of the integration window, in standard deviations
WINDOW = 10.0


def q_function(x):
    """Tail probability of the standard normal distribution,
    ``Q(x) = 0.5 * erfc(x / sqrt(2))``.

    >>> float(q_function(0.0))
    0.5
    """
    out = 0.5 * erfc(np.asarray(x, dtype=float) / np.sqrt(2))
    return float(out) if out.ndim == 0 else out


def _moments(means, variances):
    mu = np.asarray(means, dtype=float).ravel()
    var = np.asarray(variances, dtype=float).ravel()
    if mu.shape != var.shape or mu.size == 0:
        raise ValueError("Need one variance per mean.")
    if var.min() < 0:
        raise ValueError("Variances must be non-negative.")
    return mu, var


def _below_point(c, mu, sd, degenerate, others):
    """P(every competitor in ``others`` stays below the point ``c``), with
    point-mass competitors equal to ``c`` counted as ties."""
    prob = 1.0
    ties = 0
    for t in others:
        if degenerate[t]:
            if mu[t] > c:
                return 0.0, 0
            ties += mu[t] == c
        else:
            prob *= norm.cdf(c, mu[t], sd[t])
    return prob, ties


def _integrand(r, j, mu, sd, rivals):
    log_rest = norm.logcdf(r, mu[rivals], sd[rivals]).sum()
    return norm.pdf(r, mu[j], sd[j]) * np.exp(log_rest)


def p_max_antenna(means, variances, j):
    """Probability that the ``j``-th of a set of independent Gaussian counts
    is the largest.

    The density of count ``j`` is integrated against the probability that all
    other counts fall below it, over the window spanning every mean
    ``+/- 10`` standard deviations, by adaptive quadrature. Zero-variance
    entries are point masses; ties between point masses share their
    probability equally.

    >>> round(p_max_antenna([5.0, 5.0], [4.0, 4.0], 0), 6)
    0.5

    Args:
        means (array-like): means of the counts.
        variances (array-like): variances of the counts.
        j (int): index of interest.

    Returns:
        float
    """
    mu, var = _moments(means, variances)
    sd = np.sqrt(var)
    degenerate = var == 0
    others = [t for t in range(mu.size) if t != j]

    if degenerate[j]:
        prob, ties = _below_point(mu[j], mu, sd, degenerate, others)
        return prob / (1 + ties)

    lo = np.min(mu - WINDOW * sd)
    hi = np.max(mu + WINDOW * sd)
    if degenerate.any():
        # count j must clear every point mass
        lo = max(lo, mu[degenerate].max())
    lo = max(lo, mu[j] - WINDOW * sd[j])
    hi = min(hi, mu[j] + WINDOW * sd[j])
    if lo >= hi:
        return 0.0
    rivals = np.array([t for t in np.flatnonzero(~degenerate) if t != j], dtype=int)
    points = [mu[j]] if lo < mu[j] < hi else None
    value, _ = quad(
        _integrand, lo, hi, args=(j, mu, sd, rivals), points=points,
        epsabs=1e-10, epsrel=1e-6, limit=200,
    )
    return float(min(max(value, 0.0), 1.0))


def p_max_vector(means, variances):
    """:func:`p_max_antenna` for every index.

    Returns:
        numpy.ndarray
    """
    mu, var = _moments(means, variances)
    return np.array([p_max_antenna(mu, var, j) for j in range(mu.size)])
