"""Per-transition decomposition of the steady state heat currents"""
from dataclasses import asdict, dataclass

import pandas as pd

from qr_diode.observables.heat_currents import check_basis, member_net_rates

LEDGER_COLUMNS = [
    'bath',
    'i',
    'j',
    'omega',
    'net_rate',
    'energy_flux_contribution',
]


@dataclass(frozen=True)
class TransitionLedgerEntry:
    """
    One channel member: net_rate is the net decay rate E_j -> E_i driven by
    the bath, energy_flux_contribution = -net_rate * omega its share of the
    bath heat current
    """
    bath: str
    i: int
    j: int
    omega: float
    net_rate: float
    energy_flux_contribution: float


def transition_ledger(steady, channels):
    """
    :param SteadyState steady: steady state
    :param list channels: channels of both baths
    :return list of TransitionLedgerEntry, in channel then member order
    """
    check_basis(steady, channels)
    energies = steady.basis.energies
    entries = []
    for channel in channels:
        net_rates = member_net_rates(steady, channel)
        for i, j, net in zip(channel.rows, channel.cols, net_rates):
            omega = float(energies[j] - energies[i])
            entries.append(TransitionLedgerEntry(
                bath=channel.bath,
                i=int(i),
                j=int(j),
                omega=omega,
                net_rate=float(net),
                energy_flux_contribution=float(-net * omega),
            ))
    return entries


def ledger_to_frame(entries):
    """Ledger as a DataFrame with LEDGER_COLUMNS"""
    return pd.DataFrame([asdict(entry) for entry in entries],
                        columns=LEDGER_COLUMNS)
