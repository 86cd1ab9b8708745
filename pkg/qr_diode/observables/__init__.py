"""Module for heat currents, photon rates and rectification"""
