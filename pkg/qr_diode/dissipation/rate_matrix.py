"""Population rate equations dp/dt = M p of the global master equation"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class RateMatrix:
    """
    M[i, j] (i != j) is the rate from level j to level i, the diagonal holds
    minus the total out rate so every column sums to zero.

    :param np.ndarray entries: dim x dim real matrix
    :param basis: EigenSystem the levels refer to
    """
    entries: np.ndarray
    basis: object = None

    @property
    def dim(self):
        return self.entries.shape[0]

    def column_sum_error(self):
        """max |sum_i M[i, j]|"""
        return float(np.max(np.abs(self.entries.sum(axis=0))))


def transition_weights(channel):
    """Emission and absorption rates per member, Gamma_pm |s|^2"""
    weights = channel.weights
    return channel.gamma_plus * weights, channel.gamma_minus * weights


def build_rate_matrix(channels, levels, basis=None):
    """
    Assemble the rate matrix from all channels of all baths

    For each member (i, j, s): W[i, j] += Gamma_+ |s|^2 (decay j -> i) and
    W[j, i] += Gamma_- |s|^2 (excitation i -> j). M = W - diag(colsum(W)).

    :param list channels: TransitionChannel objects from one EigenSystem
    :param int levels: number of energy levels
    :param basis: EigenSystem, defaults to the channels' basis
    :return RateMatrix
    """
    rates = np.zeros((levels, levels))
    for channel in channels:
        down, up = transition_weights(channel)
        np.add.at(rates, (channel.rows, channel.cols), down)
        np.add.at(rates, (channel.cols, channel.rows), up)
    entries = rates - np.diag(rates.sum(axis=0))
    if basis is None and len(channels) > 0:
        basis = channels[0].basis
    return RateMatrix(entries=entries, basis=basis)
