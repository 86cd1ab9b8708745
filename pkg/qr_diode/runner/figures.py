"""
Plot data for the figure set. Each figure is a list of panel rows; the
panels of one row share their records and differ in the quantity they
show, so every panel CSV carries the full sweep columns plus a curve label.
"""
from dataclasses import dataclass, field
import logging
import os

import numpy as np

from qr_diode.models.rabi import photon_parity
from qr_diode.models.two_qubit import ISING_ZZ, KINDS
from qr_diode.observables.rectification import (
    PointSolver,
    build_model,
    forward_reverse,
)
from qr_diode.observables.transition_ledger import (
    LEDGER_COLUMNS,
    ledger_to_frame,
    transition_ledger,
)
from qr_diode.runner.run_config import RABI
import qr_diode.runner.sweep as sweep
import qr_diode.utils.aux_utils as aux_utils
from qr_diode.utils.errors import ConfigError, DiodeError, describe_error

logger = logging.getLogger(__name__)

FIGURE_IDS = ('fig2', 'fig3', 'fig4', 'fig5', 'fig6', 'fig7', 'fig8',
              'fig9', 'fig10', 'fig11')
HEAT_QUANTITIES = ('q_f', 'q_r', 'R')
PHOTON_QUANTITIES = ('D_f', 'D_r', 'R_n')
PANEL_COLUMNS = sweep.CSV_COLUMNS + ['curve']
TRANSITION_COLUMNS = ['bath', 'i', 'j', 'E_i', 'E_j', 'omega', 'amplitude']
LEVEL_COLUMNS = ['level', 'energy', 'parity']
LEDGER_PANEL_COLUMNS = ['swept_param'] + LEDGER_COLUMNS + ['error']

OMEGA_R_CURVES = (0.05, 0.1, 0.5, 1., 2., 5.)
G_CURVES = (0.015, 0.05, 0.15, 0.3, 0.45)
N_FOCK_CURVES = (2, 5, 10, 20)
WEAK_G = 0.015
STRONG_G = 0.45
# Two-qubit comparison models are resonant at omega_R = omega_L
QUBIT_RESONANT_OMEGA_R = 1.
# Forward temperatures of the coupling strength comparison
COMPARISON_T_L = 0.1
COMPARISON_T_R = 0.5


@dataclass(frozen=True)
class Curve:
    """One labelled sweep of a panel row"""
    label: str
    grid: object


@dataclass(frozen=True)
class PanelRow:
    """
    :param tuple panels: panel ids, e.g. ('fig2a', 'fig2b', 'fig2c')
    :param tuple quantities: column each panel shows
    :param list curves: Curve objects shared by the panels
    """
    panels: tuple
    quantities: tuple
    curves: list


@dataclass
class FigureResult:
    """Files written by run_figure and how many points failed"""
    fig_id: str
    files: list = field(default_factory=list)
    panels: dict = field(default_factory=dict)
    n_failed: int = 0


def panel_ids(fig_id, letters):
    return tuple('{}{}'.format(fig_id, letter) for letter in letters)


def rabi_model(**changes):
    """Model overrides selecting the Rabi model by omega_R and theta"""
    model = {'kind': RABI, 'epsilon': None, 'q': None}
    model.update(changes)
    return model


def temperature_curve(config, label, model):
    """
    Curve sweeping the left (cold) temperature over sweep.t_range with the
    right bath fixed at sweep.t_fixed

    :param RunConfig config: base config
    :param str label: curve label
    :param dict model: model overrides
    :return Curve
    """
    start, stop, count = config.sweep['t_range']
    base = config.updated(model=model,
                          baths={'T_R': config.sweep['t_fixed']})
    return Curve(label, sweep.SweepGrid.from_range(
        'T_L', start, stop, count, base))


def curve_label(name, value):
    return '{}={}'.format(name, aux_utils.format_csv_value(value))


def theta_rows(config, fig_id, g, quantities, first_row=0):
    """Rows of theta curves, one row per omega_R in {0.1, 2}"""
    letters = 'abcdefghijkl'
    rows = []
    for k, omega_R in enumerate((0.1, 2.), start=first_row):
        curves = [
            temperature_curve(config, curve_label('theta', theta),
                              rabi_model(g=g, omega_R=omega_R, theta=theta))
            for theta in config.sweep['thetas']
        ]
        panels = panel_ids(fig_id, letters[3 * k:3 * k + 3])
        rows.append(PanelRow(panels, quantities, curves))
    return rows


def omega_r_rows(config, fig_id, quantities, g_values, omega_r_groups):
    """One row per (g, omega_R group), omega_R curves, theta = 0"""
    letters = 'abcdef'
    rows = []
    for k, (g, omega_rs) in enumerate(zip(g_values, omega_r_groups)):
        curves = [
            temperature_curve(config, curve_label('omega_R', omega_R),
                              rabi_model(g=g, omega_R=omega_R, theta=0.))
            for omega_R in omega_rs
        ]
        panels = panel_ids(fig_id, letters[3 * k:3 * k + 3])
        rows.append(PanelRow(panels, quantities, curves))
    return rows


def g_rows(config, fig_id, quantities):
    """One row per omega_R in {0.1, 2}, g curves, theta = 0"""
    letters = 'abcdef'
    rows = []
    for k, omega_R in enumerate((0.1, 2.)):
        curves = [
            temperature_curve(config, curve_label('g', g),
                              rabi_model(g=g, omega_R=omega_R, theta=0.))
            for g in G_CURVES
        ]
        panels = panel_ids(fig_id, letters[3 * k:3 * k + 3])
        rows.append(PanelRow(panels, quantities, curves))
    return rows


def fig2_rows(config):
    return theta_rows(config, 'fig2', WEAK_G, HEAT_QUANTITIES)


def fig3_rows(config):
    return theta_rows(config, 'fig3', STRONG_G, HEAT_QUANTITIES)


def fig4_rows(config):
    return omega_r_rows(config, 'fig4', HEAT_QUANTITIES,
                        (WEAK_G, STRONG_G), (OMEGA_R_CURVES, OMEGA_R_CURVES))


def fig5_rows(config):
    return g_rows(config, 'fig5', HEAT_QUANTITIES)


def fig6_rows(config):
    return (theta_rows(config, 'fig6', WEAK_G, PHOTON_QUANTITIES)
            + theta_rows(config, 'fig6', STRONG_G, PHOTON_QUANTITIES,
                         first_row=2))


def fig7_rows(config):
    return g_rows(config, 'fig7', PHOTON_QUANTITIES)


def fig8_rows(config):
    return omega_r_rows(config, 'fig8', PHOTON_QUANTITIES,
                        (STRONG_G, STRONG_G), (OMEGA_R_CURVES[:3],
                                               OMEGA_R_CURVES[3:]))


def fig9_rows(config):
    rows = []
    for letter, omega_R in zip('ab', (0.1, 2.)):
        curves = [
            temperature_curve(
                config,
                curve_label('N', n_fock),
                rabi_model(g=WEAK_G, omega_R=omega_R, theta=0.,
                           n_fock=n_fock),
            )
            for n_fock in N_FOCK_CURVES
        ]
        rows.append(PanelRow(panel_ids('fig9', letter), (('q_f', 'q_r'),),
                             curves))
    return rows


def fig10_rows(config):
    start, stop, count = config.sweep['g_range']
    baths = {'T_L': COMPARISON_T_L, 'T_R': COMPARISON_T_R}
    rows = []
    for letter, resonant in zip('ab', (False, True)):
        curves = []
        for kind in (RABI,) + KINDS:
            if kind == RABI:
                model = rabi_model(omega_R=2. if resonant else 0.1, theta=0.)
            else:
                model = {
                    'kind': kind,
                    'omega_R': QUBIT_RESONANT_OMEGA_R if resonant else 0.1,
                    'epsilon': None,
                    'q': None,
                }
            base = config.updated(model=model, baths=baths)
            curves.append(Curve(kind, sweep.SweepGrid.from_range(
                'g', start, stop, count, base)))
        rows.append(PanelRow(panel_ids('fig10', letter), ('R',), curves))
    return rows


def fig11_rows(config):
    return []


FIGURE_ROWS = {
    'fig2': fig2_rows,
    'fig3': fig3_rows,
    'fig4': fig4_rows,
    'fig5': fig5_rows,
    'fig6': fig6_rows,
    'fig7': fig7_rows,
    'fig8': fig8_rows,
    'fig9': fig9_rows,
    'fig10': fig10_rows,
    'fig11': fig11_rows,
}


def level_parities(solver):
    """Photon parity <E_i|P|E_i> of every level of a Rabi model"""
    vectors = solver.eigensystem.vectors
    parity_op = photon_parity(solver.model.params.n_fock)
    return np.real(np.einsum('ki,kl,li->i', vectors.conj(), parity_op,
                             vectors))


def allowed_transitions(solver, baths, n_levels=None):
    """
    Channel members of both baths as table rows

    :param PointSolver solver: solved model
    :param tuple baths: (BathSpec L, BathSpec R)
    :param int/None n_levels: keep transitions among the lowest levels only
    :return list of dicts: rows with TRANSITION_COLUMNS, sorted by bath, i, j
    """
    energies = solver.eigensystem.energies
    rows = []
    for channel in solver.channels(*baths):
        for i, j, amp in zip(channel.rows, channel.cols, channel.amplitudes):
            if n_levels is not None and j >= n_levels:
                continue
            rows.append({
                'bath': channel.bath,
                'i': int(i),
                'j': int(j),
                'E_i': float(energies[i]),
                'E_j': float(energies[j]),
                'omega': float(energies[j] - energies[i]),
                'amplitude': float(abs(amp)),
            })
    return sorted(rows, key=lambda row: (row['bath'], row['i'], row['j']))


def rabi_solver(config, **changes):
    """PointSolver of the config's Rabi model with some values replaced"""
    point = config.updated(model=rabi_model(**changes))
    return point, PointSolver(build_model(point.model_params()),
                              point.numerics_options())


def write_transition_tables(config, out_dir, result):
    """Allowed transitions of the N = 2 truncation"""
    precision = config.output['precision']
    for letter, omega_R in zip('cd', (0.1, 2.)):
        point, solver = rabi_solver(
            config, g=WEAK_G, omega_R=omega_R, theta=0., n_fock=2)
        fname = os.path.join(out_dir, 'fig9{}_transitions.csv'.format(letter))
        aux_utils.write_csv(
            allowed_transitions(solver, point.bath_specs()),
            TRANSITION_COLUMNS,
            fname,
            precision=precision,
        )
        result.files.append(fname)
        result.panels['fig9' + letter] = ('transitions',)


def write_ledger_panels(config, out_dir, result):
    """Per-transition heat flux versus the cold temperature"""
    precision = config.output['precision']
    start, stop, count = config.sweep['t_range']
    t_fixed = config.sweep['t_fixed']
    gamma = config.baths['gamma']
    letters = iter('abcd')
    for omega_R in (0.1, 2.):
        _, solver = rabi_solver(
            config, g=WEAK_G, omega_R=omega_R, theta=0., n_fock=2)
        rows = {'forward': [], 'reverse': []}
        for t_cold in np.linspace(start, stop, count):
            try:
                _, forward, reverse = forward_reverse(
                    solver, t_cold, t_fixed, gamma)
            except DiodeError as e:
                result.n_failed += 1
                logger.warning('Ledger at T_L=%s failed: %s', t_cold, e)
                for direction in rows:
                    rows[direction].append({'swept_param': t_cold,
                                            'error': describe_error(e)})
                continue
            for direction, res in (('forward', forward),
                                   ('reverse', reverse)):
                frame = ledger_to_frame(
                    transition_ledger(res.steady, res.channels))
                frame.insert(0, 'swept_param', t_cold)
                rows[direction].extend(frame.to_dict('records'))
        for direction in ('forward', 'reverse'):
            panel = 'fig11' + next(letters)
            fname = os.path.join(out_dir, panel + '.csv')
            aux_utils.write_csv(rows[direction], LEDGER_PANEL_COLUMNS, fname,
                                precision=precision)
            result.files.append(fname)
            result.panels[panel] = ('energy_flux_contribution', direction)


def write_lowest_levels(config, out_dir, result, n_levels=4):
    """Lowest levels and their transitions in the ultrastrong regime"""
    precision = config.output['precision']
    for letter, omega_R in zip('ef', (0.1, 2.)):
        point, solver = rabi_solver(
            config, g=STRONG_G, omega_R=omega_R, theta=0.)
        parities = level_parities(solver)
        energies = solver.eigensystem.energies
        levels = [{'level': k, 'energy': float(energies[k]),
                   'parity': float(parities[k])} for k in range(n_levels)]
        panel = 'fig11' + letter
        level_fname = os.path.join(out_dir, panel + '_levels.csv')
        aux_utils.write_csv(levels, LEVEL_COLUMNS, level_fname,
                            precision=precision)
        fname = os.path.join(out_dir, panel + '.csv')
        aux_utils.write_csv(
            allowed_transitions(solver, point.bath_specs(), n_levels),
            TRANSITION_COLUMNS,
            fname,
            precision=precision,
        )
        result.files.extend([level_fname, fname])
        result.panels[panel] = ('transitions', 'levels')


EXTRA_TABLES = {
    'fig9': [write_transition_tables],
    'fig11': [write_ledger_panels, write_lowest_levels],
}


def write_panel_rows(rows, out_dir, precision, workers=None, desc=None):
    """
    Evaluate every curve of every row in one pool and write the panels

    :param list rows: PanelRow objects
    :param str out_dir: output directory
    :param int precision: significant digits
    :param int/None workers: worker processes
    :param str/None desc: progress bar label
    :return list files, dict panels, int n_failed
    """
    configs = []
    for row in rows:
        for curve in row.curves:
            configs.extend(curve.grid.point_configs())
    records = sweep.run_configs(configs, desc=desc, workers=workers)
    files = []
    panels = {}
    n_failed = 0
    pos = 0
    for row in rows:
        table = []
        for curve in row.curves:
            n_points = len(curve.grid.values)
            curve_records = records[pos:pos + n_points]
            pos += n_points
            n_failed += sum(record.failed for record in curve_records)
            table.extend(sweep.records_to_rows(
                curve_records, curve.grid.values, extra={'curve': curve.label}))
        for panel, quantity in zip(row.panels, row.quantities):
            fname = os.path.join(out_dir, panel + '.csv')
            aux_utils.write_csv(table, PANEL_COLUMNS, fname,
                                precision=precision)
            files.append(fname)
            panels[panel] = (quantity if isinstance(quantity, tuple)
                             else (quantity,))
    return files, panels, n_failed


def run_figure(fig_id, config, out_dir, workers=None):
    """
    Write the plot data of one figure

    :param str fig_id: one of FIGURE_IDS
    :param RunConfig config: base config, its omega_L, gamma, numerics,
     n_fock and sweep section apply to every panel
    :param str out_dir: output directory, created if missing
    :param int/None workers: worker processes, None for the config setting
    :return FigureResult
    :raise ConfigError: for an unknown figure id
    """
    if fig_id not in FIGURE_IDS:
        raise ConfigError(
            'Unknown figure {}, choose from {}'.format(fig_id, FIGURE_IDS))
    os.makedirs(out_dir, exist_ok=True)
    logger.info('Writing %s to %s', fig_id, out_dir)
    rows = FIGURE_ROWS[fig_id](config)
    files, panels, n_failed = write_panel_rows(
        rows,
        out_dir,
        config.output['precision'],
        workers=workers,
        desc=fig_id,
    )
    result = FigureResult(fig_id, files, panels, n_failed)
    for writer in EXTRA_TABLES.get(fig_id, []):
        writer(config, out_dir, result)
    if result.n_failed:
        logger.warning('%s: %d points failed', fig_id, result.n_failed)
    return result


def run_compare_models(config, out_dir, workers=None):
    """
    Coupling strength comparison of all mechanisms plus the symmetric
    resonant Ising check omega_L = omega_R

    :param RunConfig config: base config
    :param str out_dir: output directory
    :param int/None workers: worker processes
    :return FigureResult
    """
    result = run_figure('fig10', config, out_dir, workers=workers)
    start, stop, count = config.sweep['g_range']
    omega_L = config.model['omega_L']
    base = config.updated(
        model={'kind': ISING_ZZ, 'omega_R': omega_L, 'epsilon': None,
               'q': None},
        baths={'T_L': COMPARISON_T_L, 'T_R': COMPARISON_T_R},
    )
    grid = sweep.SweepGrid.from_range('g', start, stop, count, base)
    records = sweep.run_sweep(grid, workers=workers)
    fname = os.path.join(out_dir, 'ising_resonant.csv')
    sweep.write_sweep_csv(records, grid.values, fname,
                          precision=config.output['precision'])
    result.files.append(fname)
    result.panels['ising_resonant'] = ('R',)
    result.n_failed += sum(record.failed for record in records)
    return result
