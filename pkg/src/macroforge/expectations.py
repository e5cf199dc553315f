# -----------------------------------------------------------------------------
# Name:        expectations.py
# Purpose:     AR(1) fit and one-step-ahead forecast
#
# Created:     05/02/2026
# -----------------------------------------------------------------------------

from dataclasses import dataclass

import numpy as np

from .utils.status_exception import ModelValidationError


@dataclass(frozen=True)
class AR1Estimate:
    alpha: float
    beta: float
    sigma: float
    n_obs: int


def ar1_fit(series):
    """
    ar1_fit - OLS of x_t on x_{t-1}.

    A lagged regressor without variance gives beta = 0 and alpha = mean(series).
    sigma is the residual standard deviation (divided by the number of pairs).
    """
    x = np.asarray(series, dtype=float).ravel()
    if x.size < 3:
        raise ModelValidationError(f'AR(1) fit needs at least 3 observations, got {x.size}')
    if not np.all(np.isfinite(x)):
        raise ModelValidationError('AR(1) fit on a series with non-finite values')

    lagged, current = x[:-1], x[1:]
    lag_mean = lagged.mean()
    dev = lagged - lag_mean
    sxx = float(np.dot(dev, dev))

    if sxx <= 0.0:
        beta = 0.0
        alpha = float(x.mean())
    else:
        beta = float(np.dot(dev, current - current.mean()) / sxx)
        alpha = float(current.mean() - beta * lag_mean)

    residuals = current - (alpha + beta * lagged)
    sigma = float(np.sqrt(np.mean(residuals ** 2)))
    return AR1Estimate(alpha=alpha, beta=beta, sigma=sigma, n_obs=int(current.size))


def ar1_forecast(est, last):
    """
    ar1_forecast - point forecast alpha + beta * last (noise is the caller's business)
    """
    return est.alpha + est.beta * last
