"""Run configuration: schema, defaults and validation"""
import copy
from dataclasses import dataclass, field
import numbers

from qr_diode.dissipation.channels import AMPLITUDE_TOL, BathSpec
from qr_diode.models.rabi import RabiParams
from qr_diode.models.two_qubit import KINDS, TwoQubitParams
from qr_diode.numerics.linalg import NULLSPACE_TOL
from qr_diode.observables.rectification import NumericsOptions
import qr_diode.utils.aux_utils as aux_utils
from qr_diode.utils.errors import ConfigError

RABI = 'rabi'
MODEL_KINDS = (RABI,) + KINDS
AUTO = 'auto'

DEFAULT_CONFIG = {
    'verbose': 20,
    'num_workers': None,
    'model': {
        'kind': RABI,
        'omega_L': 1.,
        'omega_R': 0.1,
        'g': 0.015,
        'theta': 0.,
        'n_fock': AUTO,
        'epsilon': None,
        'q': None,
    },
    'baths': {
        'gamma': 1e-4,
        'T_L': 0.1,
        'T_R': 0.5,
    },
    'numerics': {
        'deg_tol': None,
        'amp_tol': AMPLITUDE_TOL,
        'nullspace_tol': NULLSPACE_TOL,
        'oracle': False,
        'rk4_dt': None,
        't_final': None,
    },
    'output': {
        'directory': './qr_diode_out',
        'precision': 12,
    },
    'sweep': {
        'thetas': [0., 0.39269908169872414, 0.7853981633974483],
        't_range': [0.05, 1., 20],
        't_fixed': 0.5,
        'g_range': [0.005, 0.45, 20],
    },
}
SECTIONS = ('model', 'baths', 'numerics', 'output', 'sweep')


def _is_number(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _check_number(section, key, value, positive=False, optional=False):
    if value is None and optional:
        return
    if not _is_number(value):
        raise ConfigError(
            '{}.{} must be a number, got {!r}'.format(section, key, value))
    if positive and not value > 0:
        raise ConfigError(
            '{}.{} must be positive, got {}'.format(section, key, value))


def _check_range(section, key, value):
    """[start, stop, count] with count >= 2"""
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ConfigError(
            '{}.{} must be [start, stop, count], got {!r}'.format(
                section, key, value))
    start, stop, count = value
    _check_number(section, key, start, positive=True)
    _check_number(section, key, stop, positive=True)
    if not isinstance(count, int) or isinstance(count, bool) or count < 2:
        raise ConfigError(
            '{}.{} count must be an integer >= 2, got {!r}'.format(
                section, key, count))
    if not stop > start:
        raise ConfigError(
            '{}.{} must be increasing, got {!r}'.format(section, key, value))


def merge_section(name, defaults, given):
    """
    Overlay a config section on its defaults

    :param str name: section name, for error messages
    :param dict defaults: default values, its keys are the allowed keys
    :param dict/None given: section from the config file
    :return dict section: merged copy
    :raise ConfigError: for unknown keys or a section that isn't a mapping
    """
    section = copy.deepcopy(defaults)
    if given is None:
        return section
    if not isinstance(given, dict):
        raise ConfigError(
            'Config section {} must be a mapping, got {!r}'.format(
                name, given))
    unknown = sorted(set(given) - set(defaults))
    if unknown:
        raise ConfigError(
            'Unknown keys in config section {}: {}. Allowed: {}'.format(
                name, unknown, sorted(defaults)))
    section.update(copy.deepcopy(given))
    return section


@dataclass(frozen=True)
class RunConfig:
    """
    Resolved run configuration. Build it with RunConfig.from_dict, which
    fills defaults and validates every section.
    """
    verbose: int = 20
    num_workers: int = None
    model: dict = field(default_factory=dict)
    baths: dict = field(default_factory=dict)
    numerics: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    sweep: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, config_dict=None):
        """
        :param dict/None config_dict: parsed config file, None for defaults
        :return RunConfig config: validated config
        :raise ConfigError: for unknown keys or malformed values
        :raise DomainError, SpectralCollapse, TruncationTooSmall: if the
         model or baths fail their own validation
        """
        if config_dict is None:
            config_dict = {}
        if not isinstance(config_dict, dict):
            raise ConfigError('Config must be a mapping')
        unknown = sorted(set(config_dict) - set(DEFAULT_CONFIG))
        if unknown:
            raise ConfigError(
                'Unknown config keys {}. Allowed: {}'.format(
                    unknown, sorted(DEFAULT_CONFIG)))
        sections = {
            name: merge_section(name, DEFAULT_CONFIG[name],
                                config_dict.get(name))
            for name in SECTIONS
        }
        config = cls(
            verbose=config_dict.get('verbose', DEFAULT_CONFIG['verbose']),
            num_workers=config_dict.get('num_workers'),
            **sections,
        )
        config.validate()
        return config

    @classmethod
    def from_file(cls, config_fname):
        """Read a yaml config and validate it"""
        return cls.from_dict(aux_utils.read_config(config_fname))

    def to_dict(self):
        """Plain nested dict, from_dict(to_dict()) gives an equal config"""
        return {
            'verbose': self.verbose,
            'num_workers': self.num_workers,
            'model': copy.deepcopy(self.model),
            'baths': copy.deepcopy(self.baths),
            'numerics': copy.deepcopy(self.numerics),
            'output': copy.deepcopy(self.output),
            'sweep': copy.deepcopy(self.sweep),
        }

    def validate(self):
        """
        Type checks on every section, then build the model parameters and
        bath specs so their own validation runs too
        """
        if not isinstance(self.verbose, int) or isinstance(self.verbose, bool):
            raise ConfigError(
                'verbose must be a logging level, got {!r}'.format(
                    self.verbose))
        if self.num_workers is not None and (
                not isinstance(self.num_workers, int)
                or isinstance(self.num_workers, bool)
                or self.num_workers < 1):
            raise ConfigError(
                'num_workers must be a positive integer, got {!r}'.format(
                    self.num_workers))
        self._validate_model()
        for key in ('gamma', 'T_L', 'T_R'):
            _check_number('baths', key, self.baths[key], positive=True)
        numerics = self.numerics
        for key in ('deg_tol', 'rk4_dt', 't_final'):
            _check_number('numerics', key, numerics[key], positive=True,
                          optional=True)
        for key in ('amp_tol', 'nullspace_tol'):
            _check_number('numerics', key, numerics[key], positive=True)
        if not isinstance(numerics['oracle'], bool):
            raise ConfigError(
                'numerics.oracle must be true or false, got {!r}'.format(
                    numerics['oracle']))
        if not isinstance(self.output['directory'], str):
            raise ConfigError('output.directory must be a path')
        precision = self.output['precision']
        if not isinstance(precision, int) or not 1 <= precision <= 17:
            raise ConfigError(
                'output.precision must be an integer in [1, 17], '
                'got {!r}'.format(precision))
        self._validate_sweep()
        self.model_params()
        self.bath_specs()

    def _validate_model(self):
        model = self.model
        if model['kind'] not in MODEL_KINDS:
            raise ConfigError(
                'model.kind must be one of {}, got {!r}'.format(
                    MODEL_KINDS, model['kind']))
        for key in ('omega_L', 'g'):
            _check_number('model', key, model[key])
        uses_flux = model['epsilon'] is not None or model['q'] is not None
        if uses_flux:
            if model['kind'] != RABI:
                raise ConfigError(
                    'model.epsilon and model.q apply to kind rabi only')
            if model['epsilon'] is None or model['q'] is None:
                raise ConfigError(
                    'model.epsilon and model.q must be given together')
            _check_number('model', 'epsilon', model['epsilon'])
            _check_number('model', 'q', model['q'])
        else:
            _check_number('model', 'omega_R', model['omega_R'])
            _check_number('model', 'theta', model['theta'])
        n_fock = model['n_fock']
        if n_fock != AUTO and (not isinstance(n_fock, int)
                               or isinstance(n_fock, bool)):
            raise ConfigError(
                "model.n_fock must be an integer or 'auto', got {!r}".format(
                    n_fock))

    def _validate_sweep(self):
        sweep = self.sweep
        thetas = sweep['thetas']
        if not isinstance(thetas, (list, tuple)) or len(thetas) == 0:
            raise ConfigError('sweep.thetas must be a non-empty list')
        for theta in thetas:
            _check_number('sweep', 'thetas', theta)
        _check_range('sweep', 't_range', sweep['t_range'])
        _check_range('sweep', 'g_range', sweep['g_range'])
        _check_number('sweep', 't_fixed', sweep['t_fixed'], positive=True)

    @property
    def uses_flux(self):
        return self.model['epsilon'] is not None

    def model_params(self):
        """
        :return RabiParams/TwoQubitParams params: validated model parameters
        """
        model = self.model
        if model['kind'] != RABI:
            return TwoQubitParams(
                omega_L=model['omega_L'],
                omega_R=model['omega_R'],
                g=model['g'],
                kind=model['kind'],
            )
        n_fock = None if model['n_fock'] == AUTO else model['n_fock']
        if self.uses_flux:
            return RabiParams.from_flux(
                omega_L=model['omega_L'],
                epsilon=model['epsilon'],
                q=model['q'],
                g=model['g'],
                n_fock=n_fock,
            )
        return RabiParams(
            omega_L=model['omega_L'],
            omega_R=model['omega_R'],
            g=model['g'],
            theta=model['theta'],
            n_fock=n_fock,
        )

    def bath_specs(self):
        """:return tuple (BathSpec L, BathSpec R)"""
        gamma = self.baths['gamma']
        return (BathSpec('L', self.baths['T_L'], gamma),
                BathSpec('R', self.baths['T_R'], gamma))

    def numerics_options(self):
        """:return NumericsOptions"""
        return NumericsOptions(**self.numerics)

    def updated(self, model=None, baths=None):
        """
        Copy with some model or bath values replaced, validated again

        :param dict/None model: model keys to replace
        :param dict/None baths: bath keys to replace
        :return RunConfig
        """
        config_dict = self.to_dict()
        for name, changes in (('model', model), ('baths', baths)):
            if changes:
                unknown = sorted(set(changes) - set(DEFAULT_CONFIG[name]))
                if unknown:
                    raise ConfigError(
                        'Unknown {} keys {}'.format(name, unknown))
                config_dict[name].update(changes)
        return RunConfig.from_dict(config_dict)

    def worker_count(self):
        """Workers after the QRDIODE_THREADS cap"""
        return aux_utils.get_num_workers(self.num_workers)
