"""Reads the user configuration.

The configuration is an INI file (default: ~/.nlrc, overridden by
the NL_CONFIG environment variable) with the sections [chaos] and
[experiment]. A missing file means the built-in defaults.

Example:
    [chaos]
    map_kind = skew_tent
    max_iterations = 100000

    [experiment]
    seed = 0
    jobs = 4
    normalization = whole
    constant_attributes = drop
    k = 3

"""

import os
import logging
from configparser import ConfigParser, Error as ConfigParserError

from neurochaos.experiment import Settings
from neurochaos.gls import MAP_KINDS


__all__ = ['ConfigError', 'config_filename', 'load_config', 'settings']

CONFIG_ENV = 'NL_CONFIG'
DEFAULT_CONFIG = '~/.nlrc'

# option name -> (section, type)
_OPTIONS = {
    'map_kind': ('chaos', str),
    'max_iterations': ('chaos', int),
    'seed': ('experiment', int),
    'jobs': ('experiment', int),
    'normalization': ('experiment', str),
    'constant_attributes': ('experiment', str),
    'k': ('experiment', int),
}


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


class ConfigError(ValueError):
    """Raised if the config file contains an invalid value."""

    def __init__(self, filename, msg):
        super(ConfigError, self).__init__(filename, msg)
        self.filename = filename
        self.msg = msg

    def __str__(self):
        return "%s: %s" % (self.filename, self.msg)


def config_filename():
    """Returns the (expanded) name of the config file."""
    return os.path.expanduser(os.environ.get(CONFIG_ENV, DEFAULT_CONFIG))


def load_config(filename=None):
    """Returns a dict with the option values found in the config file.

    Options which are not set in the file are not part of the dict.

    Keyword arguments:
    filename -- the config file (default: None, that is
                config_filename())

    """
    if filename is None:
        filename = config_filename()
    cp = ConfigParser()
    try:
        read = cp.read(filename, encoding='utf-8')
    except ConfigParserError as e:
        raise ConfigError(filename, str(e))
    if not read:
        logger().debug("no config file %s, using defaults", filename)
        return {}
    ret = {}
    for name, (section, conv) in sorted(_OPTIONS.items()):
        if not cp.has_option(section, name):
            continue
        raw = cp.get(section, name, raw=True).strip()
        try:
            ret[name] = conv(raw)
        except ValueError:
            raise ConfigError(filename, "[%s] %s: invalid value %r"
                              % (section, name, raw))
    if 'map_kind' in ret and ret['map_kind'] not in MAP_KINDS:
        raise ConfigError(filename, "[chaos] map_kind must be one of %s"
                          % ', '.join(MAP_KINDS))
    return ret


def settings(filename=None, **overrides):
    """Returns the Settings built from defaults, config file and overrides.

    Overrides (usually command line values) win over the config
    file, which wins over the built-in defaults. An override of
    None is ignored.

    """
    values = load_config(filename)
    values.update((k, v) for k, v in overrides.items() if v is not None)
    try:
        return Settings(**values)
    except ValueError as e:
        raise ConfigError(filename or config_filename(), str(e))
