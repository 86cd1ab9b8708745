"""Auxiliary utility functions"""
import json
import logging
import math
import os
import platform

import numpy as np
import pandas as pd
import scipy
import yaml

import qr_diode
from qr_diode.utils.errors import ConfigError

THREADS_ENV_VAR = 'QRDIODE_THREADS'


def read_config(config_fname):
    """Read the config file in yml format

    :param str config_fname: fname of config yaml with its full path
    :return: dict config: Configuration parameters
    :raise ConfigError: if the file can't be read or isn't a mapping
    """
    try:
        with open(config_fname, 'r') as f:
            config = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError('cannot read config {}: {}'.format(config_fname, e))
    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise ConfigError(
            'Config {} must be a mapping, got {}'.format(
                config_fname,
                type(config).__name__,
            )
        )
    return config


def init_logger(logger_name, log_fname=None, log_level=logging.INFO):
    """Creates a logger instance

    :param str logger_name: name of the logger instance
    :param str/None log_fname: fname with full path of the log file, no file
     handler if None
    :param int log_level: specifies the logging level: NOTSET:0, DEBUG:10,
    INFO:20, WARNING:30, ERROR:40, CRITICAL:50
    """
    logger = logging.getLogger(logger_name)
    logger.setLevel(log_level)
    logger.propagate = False
    # Repeated CLI invocations in one interpreter (tests) reuse the logger
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(log_level)
    logger.addHandler(stream_handler)

    if log_fname is not None:
        file_handler = logging.FileHandler(log_fname)
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(log_level)
        logger.addHandler(file_handler)
    return logger


def read_json(json_filename):
    """
    Read JSON file

    :param str json_filename: json file name
    :return: dict json_object: JSON object
    :raise FileNotFoundError: if file can't be read
    :raise JSONDecodeError: if file is not in json format
    """
    with open(json_filename, "r") as read_file:
        json_object = json.load(read_file)
    return json_object


def write_json(json_dict, json_filename):
    """
    Writes dict as json file. Keys are sorted so repeated runs produce
    identical files.

    :param dict json_dict: Dictionary to be written
    :param str json_filename: Full path file name of json
    """
    json_dump = json.dumps(json_dict, indent=4, sort_keys=True)
    with open(json_filename, "w", encoding='utf-8') as write_file:
        write_file.write(json_dump)


def get_num_workers(requested=None):
    """
    Number of worker processes. QRDIODE_THREADS caps the requested number;
    if the config requests none, the env variable alone sets it.

    :param int/None requested: Workers requested by the config
    :return int num_workers: at least 1
    :raise ConfigError: if the env variable isn't a positive integer
    """
    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value is None or env_value.strip() == '':
        return 1 if requested is None else max(int(requested), 1)
    try:
        cap = int(env_value)
    except ValueError:
        raise ConfigError(
            '{} must be a positive integer, got {!r}'.format(
                THREADS_ENV_VAR, env_value))
    if cap < 1:
        raise ConfigError(
            '{} must be a positive integer, got {}'.format(
                THREADS_ENV_VAR, cap))
    if requested is None:
        return cap
    return min(max(int(requested), 1), cap)


def format_csv_value(value, precision=12):
    """
    Format one CSV cell. Floats get `precision` significant digits, NaN is
    written as the literal 'nan', None as an empty field.

    :param value: float, int, str or None
    :param int precision: Significant digits for floats
    :return str: formatted cell
    """
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return 'nan'
        formatted = '{:.{}g}'.format(float(value), precision)
        # Avoid '-0' for values that round to zero
        if formatted in ('-0', '-0.0'):
            formatted = '0'
        return formatted
    return str(value)


def write_csv(records, columns, csv_fname, precision=12):
    """
    Write a list of row dicts as a UTF-8 CSV with fixed column order

    :param list of dicts records: Rows, missing keys become empty fields
    :param list of strs columns: Column order
    :param str csv_fname: Output path
    :param int precision: Significant digits for floats
    :return pd.DataFrame frame: The formatted (string) table that was written
    """
    rows = [[format_csv_value(rec.get(col), precision) for col in columns]
            for rec in records]
    frame = pd.DataFrame(rows, columns=columns, dtype=str)
    frame.to_csv(csv_fname, index=False, encoding='utf-8')
    return frame


def get_versions():
    """
    Versions of the package and its numerical stack, for run manifests

    :return dict versions
    """
    return {
        'qr_diode': qr_diode.__version__,
        'python': platform.python_version(),
        'numpy': np.__version__,
        'scipy': scipy.__version__,
        'pandas': pd.__version__,
        'pyyaml': yaml.__version__,
    }
