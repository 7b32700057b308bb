"""Voting and nearest-neighbor classifiers over shift-minimized distances.

All vote aggregation happens in log space with max-subtraction: gamma times a
squared distance routinely reaches the thousands, where naive exponentiation
underflows to a 0/0 ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import Label, LabeledDataset, TimeSeries, VotingParams, stacked_windows
from .errors import ParamError
from .synth import LatentSourceModel

NEG_INF = float("-inf")


def _logsumexp(a: np.ndarray) -> float:
    m = float(np.max(a))
    if m == NEG_INF:
        return NEG_INF
    return m + float(np.log(np.sum(np.exp(a - m))))


def _log_votes_from_dists(dists: np.ndarray, gamma: float, shift_mode: str) -> float:
    """log sum of exp(-gamma * d) votes from a (n_examples, n_shifts) distance grid."""
    if shift_mode == "min":
        exponents = -gamma * dists.min(axis=1)
    else:  # every (example, shift) pair votes
        exponents = (-gamma * dists).ravel()
    return _logsumexp(exponents)


class VotingKernel:
    """Precomputed alignment windows for classifying many series against one dataset.

    Rows follow dataset insertion order (positives then negatives); shift j of
    row i covers time steps [1 + j - delta_max, T + j - delta_max].
    """

    def __init__(self, data: LabeledDataset, params: VotingParams):
        data.require_both_classes()
        self.data = data
        self.params = params
        T, dmax = params.T, params.delta_max
        self._W = stacked_windows(data.examples(), 1 - dmax, T + dmax)
        self._views = sliding_window_view(self._W, T, axis=1)  # (n, 2*dmax+1, T)
        self.n_pos = data.n_pos
        self.n = data.n

    def shift_sq_dists(self, s: TimeSeries) -> np.ndarray:
        """(n, 2*delta_max+1) squared distances of s to every shifted window."""
        sw = s.window(1, self.params.T)
        return ((self._views - sw) ** 2).sum(axis=-1)

    def min_dists(self, s: TimeSeries) -> tuple[np.ndarray, np.ndarray]:
        """Per-example minimum distance and its first minimizing shift."""
        d = self.shift_sq_dists(s)
        j = d.argmin(axis=1)  # argmin returns the first minimum: ascending shifts
        return d[np.arange(self.n), j], j - self.params.delta_max

    def _gwmv_from_dists(self, dists: np.ndarray) -> "ClassificationOutcome":
        g, mode = self.params.gamma, self.params.shift_mode
        pos = _log_votes_from_dists(dists[: self.n_pos], g, mode)
        neg = _log_votes_from_dists(dists[self.n_pos :], g, mode)
        log_lambda = pos - neg
        label = Label.POSITIVE if log_lambda >= math.log(self.params.theta) else Label.NEGATIVE
        return ClassificationOutcome(label, log_lambda, (pos, neg))

    def _knn_from_dists(self, dists: np.ndarray, k: int) -> "ClassificationOutcome":
        k = int(k)
        if k < 1:
            raise ParamError(f"k must be >= 1, got {k}")
        if k > self.n:
            raise ParamError(f"k={k} exceeds the dataset size n={self.n}")
        dmin = dists[np.arange(self.n), dists.argmin(axis=1)]
        # tie order: distance, then class +1 before -1, then insertion order
        class_rank = np.concatenate(
            [np.zeros(self.n_pos, dtype=np.int64), np.ones(self.n - self.n_pos, dtype=np.int64)]
        )
        order = np.lexsort((np.arange(self.n), class_rank, dmin))
        selected = np.sort(order[:k])  # back to insertion order for stable accumulation
        g = self.params.gamma
        pos_sel = selected[selected < self.n_pos]
        neg_sel = selected[selected >= self.n_pos]
        pos = _logsumexp(-g * dmin[pos_sel]) if pos_sel.size else NEG_INF
        neg = _logsumexp(-g * dmin[neg_sel]) if neg_sel.size else NEG_INF
        log_lambda = pos - neg  # one side is always finite since k >= 1
        label = Label.POSITIVE if log_lambda >= math.log(self.params.theta) else Label.NEGATIVE
        return ClassificationOutcome(label, log_lambda, (pos, neg))

    def class_log_votes(self, s: TimeSeries) -> tuple[float, float]:
        d = self.shift_sq_dists(s)
        g, mode = self.params.gamma, self.params.shift_mode
        return (
            _log_votes_from_dists(d[: self.n_pos], g, mode),
            _log_votes_from_dists(d[self.n_pos :], g, mode),
        )

    def log_lambda(self, s: TimeSeries) -> float:
        pos, neg = self.class_log_votes(s)
        return pos - neg

    def gwmv(self, s: TimeSeries) -> "ClassificationOutcome":
        return self._gwmv_from_dists(self.shift_sq_dists(s))

    def knn(self, s: TimeSeries, k: int) -> "ClassificationOutcome":
        return self._knn_from_dists(self.shift_sq_dists(s), k)

    def nearest(self, s: TimeSeries) -> tuple[int, float, int]:
        """Index (insertion order), distance, and shift of the nearest example."""
        dmin, shifts = self.min_dists(s)
        class_rank = np.concatenate(
            [np.zeros(self.n_pos, dtype=np.int64), np.ones(self.n - self.n_pos, dtype=np.int64)]
        )
        idx = int(np.lexsort((np.arange(self.n), class_rank, dmin))[0])
        return idx, float(dmin[idx]), int(shifts[idx])

    def log_lambda_many(self, observations: np.ndarray) -> np.ndarray:
        """log vote ratio for each row of a (P, T) observation matrix.

        Uses the inner-product expansion of the squared distance, so values can
        differ from the direct path at floating-point level only.
        """
        obs = np.asarray(observations, dtype=np.float64)
        if obs.ndim != 2 or obs.shape[1] != self.params.T:
            raise ParamError(f"observations must have shape (P, {self.params.T})")
        flat = self._views.reshape(-1, self.params.T)  # (n * n_shifts, T)
        sq = np.einsum("ij,ij->i", flat, flat)
        cross = flat @ obs.T  # (n * n_shifts, P)
        d = np.maximum(sq[:, None] - 2.0 * cross + np.einsum("ij,ij->i", obs, obs)[None, :], 0.0)
        n_shifts = self._views.shape[1]
        d = d.reshape(self.n, n_shifts, -1)
        g, mode = self.params.gamma, self.params.shift_mode
        if mode == "min":
            e = -g * d.min(axis=1)  # (n, P)
        else:
            e = (-g * d).reshape(self.n * n_shifts, -1)
        split = self.n_pos if mode == "min" else self.n_pos * n_shifts
        m_pos = e[:split].max(axis=0)
        m_neg = e[split:].max(axis=0)
        pos = m_pos + np.log(np.exp(e[:split] - m_pos).sum(axis=0))
        neg = m_neg + np.log(np.exp(e[split:] - m_neg).sum(axis=0))
        return pos - neg


@dataclass(frozen=True)
class ClassificationOutcome:
    """Decision plus the log vote ratio and the per-class log votes behind it."""

    label: Label
    log_lambda: float
    per_class_log_votes: tuple[float, float]


def log_vote_sum(examples: Sequence[TimeSeries], s: TimeSeries, params: VotingParams) -> float:
    """log of the summed exp(-gamma * d) votes cast by one class of examples."""
    if not examples:
        raise ParamError("examples must be non-empty")
    T, dmax = params.T, params.delta_max
    W = stacked_windows(examples, 1 - dmax, T + dmax)
    views = sliding_window_view(W, T, axis=1)
    dists = ((views - s.window(1, T)) ** 2).sum(axis=-1)
    return _log_votes_from_dists(dists, params.gamma, params.shift_mode)


def lambda_ratio(s: TimeSeries, data: LabeledDataset, params: VotingParams) -> float:
    """log of the positive-to-negative vote ratio."""
    data.require_both_classes()
    return log_vote_sum(data.positives, s, params) - log_vote_sum(data.negatives, s, params)


def classify_gwmv(
    s: TimeSeries, data: LabeledDataset, params: VotingParams
) -> ClassificationOutcome:
    """Generalized weighted majority voting: +1 iff the vote ratio is >= theta."""
    return VotingKernel(data, params).gwmv(s)


def classify_knn(
    s: TimeSeries, data: LabeledDataset, params: VotingParams, k: int
) -> ClassificationOutcome:
    """Weighted voting restricted to the k nearest examples; k=1 is plain nearest-neighbor."""
    return VotingKernel(data, params).knn(s, k)


class MapKernel:
    """Posterior-ratio classifier with oracle access to the true sources.

    Sums votes over sources and over the one-sided shift range {0..delta_max};
    with non-uniform source weights the weights enter as log-prior terms.
    """

    def __init__(self, model: LatentSourceModel, params: VotingParams):
        pos = [src for src, lab in model.sources if lab == Label.POSITIVE]
        neg = [src for src, lab in model.sources if lab == Label.NEGATIVE]
        if not pos or not neg:
            raise ParamError("the model must contain sources of both labels")
        self.params = params
        T, dmax = params.T, params.delta_max
        self._W_pos = stacked_windows(pos, 1, T + dmax)
        self._W_neg = stacked_windows(neg, 1, T + dmax)
        self._views_pos = sliding_window_view(self._W_pos, T, axis=1)
        self._views_neg = sliding_window_view(self._W_neg, T, axis=1)
        if model.weights is not None:
            w = np.asarray(model.weights, dtype=np.float64)
            labels = np.array([int(lab) for _, lab in model.sources])
            with np.errstate(divide="ignore"):  # zero weight: a source that never votes
                self._logw_pos = np.log(w[labels == 1])[:, None]
                self._logw_neg = np.log(w[labels == -1])[:, None]
        else:
            self._logw_pos = self._logw_neg = 0.0

    def _class_votes(self, s: TimeSeries) -> tuple[float, float]:
        sw = s.window(1, self.params.T)
        g = self.params.gamma
        e_pos = -g * ((self._views_pos - sw) ** 2).sum(axis=-1) + self._logw_pos
        e_neg = -g * ((self._views_neg - sw) ** 2).sum(axis=-1) + self._logw_neg
        return _logsumexp(e_pos.ravel()), _logsumexp(e_neg.ravel())

    def log_lambda(self, s: TimeSeries) -> float:
        pos, neg = self._class_votes(s)
        return pos - neg

    def classify(self, s: TimeSeries) -> ClassificationOutcome:
        pos, neg = self._class_votes(s)
        log_lambda = pos - neg
        # decision threshold fixed at a ratio of 1; theta plays no role here
        label = Label.POSITIVE if log_lambda >= 0.0 else Label.NEGATIVE
        return ClassificationOutcome(label, log_lambda, (pos, neg))


def classify_map(
    s: TimeSeries, sources: LatentSourceModel, params: VotingParams
) -> ClassificationOutcome:
    """Oracle posterior-ratio classifier; +1 iff the ratio is >= 1."""
    return MapKernel(sources, params).classify(s)


def nearest_neighbor(
    s: TimeSeries, data: LabeledDataset, params: VotingParams
) -> tuple[TimeSeries, float, int, Label]:
    """Nearest training example, its distance, minimizing shift, and label."""
    kernel = VotingKernel(data, params)
    idx, dist, shift = kernel.nearest(s)
    example = data.examples()[idx]
    label = Label.POSITIVE if idx < data.n_pos else Label.NEGATIVE
    return example, dist, shift, label
