"""Main entry point for the cli module."""

import os
import inspect
import logging

from neurochaos import config
from neurochaos.data import DataError
from neurochaos.gls import NonConvergence
from neurochaos.cli.description import CommandDescription, Option
from neurochaos.cli import render
from neurochaos.cli import parse


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_NONCONVERGENCE = 2
EXIT_DATA_ERROR = 3


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


# base class for all nl toplevel commands
class NlCommand(CommandDescription):
    """neurochaos learning experiment tool"""


class CommonOptions(object):
    """Options every command understands."""
    opt_verbose = Option('v', 'verbose',
                         'more output (-v: progress, -vv: debug)',
                         action='count', default=0)


def _extract_info(f, *f_args, **f_kwargs):
    """Extracts the info object from *f_args or **f_kwargs.

    If f's signature does not define an "info" parameter, None is
    returned.

    """
    params = list(inspect.signature(f).parameters)
    if 'info' not in params:
        return None
    if 'info' in f_kwargs:
        return f_kwargs['info']
    return f_args[params.index('info')]


def illegal_options(*args, **kwargs):
    """Decorator which checks that certain options are not specified.

    *args is a tuple of illegal options. Each of them is checked
    whether "not opt" evaluates to True (if not an invalid option
    was specified).
    **kwargs is option name, value mapping. If opt != value
    evaluates to True an illegal option was specified.
    If an illegal option was specified a ValueError is raised. The
    message is taken from the "illegal options:" paragraph of the
    decorated function's docstring.

    """
    def decorate(f):
        def parse_illegal_options_doc(doc):
            doc = (doc or '').splitlines()
            res = []
            while doc:
                cur = doc.pop(0).strip()
                if cur.startswith('illegal options:'):
                    res.append(cur)
                    while doc:
                        cur = doc.pop(0).strip()
                        if not cur:
                            break
                        res.append(cur)
                    break
            return '\n'.join(res)

        def checker(*f_args, **f_kwargs):
            info = _extract_info(f, *f_args, **f_kwargs)
            if info is None:
                return f(*f_args, **f_kwargs)
            for opt in args:
                if info.get(opt):
                    msg = parse_illegal_options_doc(f.__doc__) % {'opt': opt}
                    raise ValueError(msg)
            for opt, value in kwargs.items():
                if info.get(opt) != value:
                    msg = parse_illegal_options_doc(f.__doc__) % {'opt': opt}
                    raise ValueError(msg)
            return f(*f_args, **f_kwargs)
        checker.__name__ = f.__name__
        checker.__doc__ = f.__doc__
        checker.__wrapped__ = f
        return checker
    return decorate


def import_ui():
    """Imports the commands"""
    import neurochaos.cli.run.ui
    import neurochaos.cli.tune.ui
    import neurochaos.cli.compare.ui
    import neurochaos.cli.summary.ui
    import neurochaos.cli.presets.ui


def call(func):
    """Calls function func.

    The actual parameters from info are bound to func's formal
    parameters. The parameters "info" and "renderer" are bound to
    the info object and to the Renderer.

    """
    def call_func(info):
        kwargs = {}
        sig = inspect.signature(func)
        for name, param in sig.parameters.items():
            if name == 'info':
                kwargs['info'] = info
            elif name == 'renderer':
                kwargs['renderer'] = renderer()
            elif name in info:
                kwargs[name] = info.get(name)
            elif param.default is inspect.Parameter.empty:
                msg = ("cannot call \"%s\": cannot bind \"%s\" parameter"
                       % (func.__name__, name))
                raise ValueError(msg)
        return func(**kwargs)
    call_func.__doc__ = func.__doc__
    return staticmethod(call_func)


def renderer():
    """Sets up and returns a Renderer object."""
    if not hasattr(renderer, 'renderer'):
        path = os.path.dirname(render.__file__)
        renderer.renderer = render.Renderer(path)
    return renderer.renderer


def _setup_logging(verbose):
    """Attaches a stderr handler to the package logger."""
    levels = {0: logging.WARNING, 1: logging.INFO}
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    pkg_logger = logging.getLogger('neurochaos')
    for h in list(pkg_logger.handlers):
        if getattr(h, '_nl_cli', False):
            pkg_logger.removeHandler(h)
    handler._nl_cli = True
    pkg_logger.addHandler(handler)
    pkg_logger.setLevel(levels.get(verbose, logging.DEBUG))


def execute(args=None):
    """Executes a command specified by args.

    Keyword arguments:
    args -- represents the command to be executed (default: None
            that is the command is read from sys.argv)

    """
    info = parse.parse(NlCommand, args)
    _setup_logging(info.get('verbose') or 0)
    overrides = dict((k, info.get(k)) for k in ('seed', 'jobs', 'k',
                                                'map_kind', 'max_iterations'))
    if info.get('no_leak'):
        overrides['normalization'] = 'train'
    overrides['holdout_test'] = info.get('holdout_test')
    overrides['timing'] = info.get('timing')
    info.set('settings', config.settings(**overrides))
    return info.func(info)


def main(args=None):
    """Main entry point for CLI.

    Returns the exit code: 0 on success, 2 if a neuron did not
    converge, 3 on data errors and 1 on any other (user) error.

    """
    import_ui()
    try:
        execute(args)
    except NonConvergence as e:
        logger().error("%s", e)
        return EXIT_NONCONVERGENCE
    except DataError as e:
        logger().error("%s", e)
        return EXIT_DATA_ERROR
    except (ValueError, OSError) as e:
        logger().error("%s", e)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == '__main__':
    import sys
    sys.exit(main())
