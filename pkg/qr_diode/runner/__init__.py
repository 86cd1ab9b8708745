"""Parameter sweeps, figure plot data and truncation convergence"""
