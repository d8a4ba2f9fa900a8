"""Chain diagnostics."""

import numpy as np

from hymcmc.errors import HymcmcValidationError

MIN_SERIES_LENGTH = 10


def autocorrelation(series: np.ndarray) -> np.ndarray:
    """Normalized autocorrelation at every lag, via a zero-padded FFT."""
    x = np.asarray(series, dtype=float)
    n = x.size
    centered = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centered, n=size)
    acov = np.fft.irfft(spectrum * np.conj(spectrum), n=size)[:n] / n
    if acov[0] <= 0.0:
        return np.zeros(n)
    return acov / acov[0]


def effective_sample_size(series: np.ndarray) -> float:
    """ESS with Geyer's initial positive sequence.

    Autocorrelations are summed in consecutive pairs until the first
    non-positive pair; ESS = n / tau with tau = -1 + 2 * (sum of the kept
    pairs), clamped to [1, n]. A constant series, or a tau that is not
    positive, gives ESS = n.

    Raises:
        HymcmcValidationError: If the series has fewer than 10 values
    """
    x = np.asarray(series, dtype=float).ravel()
    n = x.size
    if n < MIN_SERIES_LENGTH:
        raise HymcmcValidationError(
            f"ESS needs at least {MIN_SERIES_LENGTH} values",
            details={"length": n}
        )
    if np.all(x == x[0]):
        return float(n)
    rho = autocorrelation(x)
    pairs = rho[: n - n % 2].reshape(-1, 2).sum(axis=1)
    positive = pairs > 0.0
    cut = int(np.argmin(positive)) if not positive.all() else pairs.size
    tau = -1.0 + 2.0 * float(pairs[:cut].sum())
    if tau <= 0.0:
        return float(n)
    return float(min(max(n / tau, 1.0), n))


def ess_per_component(values: np.ndarray) -> np.ndarray:
    """ESS of every column of a (m, d) array."""
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    return np.array([effective_sample_size(values[:, j]) for j in range(values.shape[1])])


__all__ = ['MIN_SERIES_LENGTH', 'autocorrelation', 'effective_sample_size', 'ess_per_component']
