"""Steady-state heat rectification and photon detection for dissipative
two-photon Rabi systems"""

__version__ = '0.1.0'
