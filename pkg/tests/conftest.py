"""Shared helpers for the test suite."""

import numpy as np
import pytest

from tsvote import LabeledDataset, TimeSeries


def dyadic_values(rng, size, denom=16, span=128):
    """Random values on a dyadic grid: every sum of squared differences is an
    exact float, so independently-coded oracles must match bitwise."""
    return rng.integers(-span, span + 1, size=size) / denom


def dyadic_series(rng, start, length, id=""):
    return TimeSeries(start, dyadic_values(rng, length), id=id)


def random_instance(rng, n_pos, n_neg, T, delta_max, scale=1.0, dyadic=False):
    """A random (dataset, test series) pair with the supports classifiers need."""
    length = T + 2 * delta_max

    def make(tag, i):
        if dyadic:
            vals = dyadic_values(rng, length)
        else:
            vals = scale * rng.standard_normal(length)
        return TimeSeries(1 - delta_max, vals, id=f"{tag}-{i}")

    data = LabeledDataset(
        tuple(make("pos", i) for i in range(n_pos)),
        tuple(make("neg", i) for i in range(n_neg)),
    )
    s_vals = dyadic_values(rng, T) if dyadic else scale * rng.standard_normal(T)
    return data, TimeSeries(1, s_vals, id="s")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
