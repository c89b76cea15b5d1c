"""Provides methods and classes for parsing the commandline options."""

import argparse


class Info(object):
    """Encapsulates the parsed arguments and options."""

    def __init__(self):
        """Constructs a new Info object."""
        super(Info, self).__init__()
        self._data = {}

    def add(self, name, value):
        """Adds component name unless it is already present."""
        self._data.setdefault(name, value)

    def set(self, name, value):
        """Sets component name.

        name is the name of the (new) attribute and value its new
        value (existing values are overwritten).

        """
        self._data[name] = value

    def get(self, name, default=None):
        return self._data.get(name, default)

    def __getattr__(self, name):
        if name.startswith('_'):
            raise AttributeError(name)
        try:
            return self._data[name]
        except KeyError:
            raise AttributeError(name)

    def __contains__(self, name):
        return name in self._data

    def __iter__(self):
        return iter(self._data)

    def __str__(self):
        return str(self._data)


class _NlNamespace(argparse.Namespace):
    """Collects the parsed items into an Info object."""

    def resolve(self):
        """Returns an Info object."""
        info = Info()
        for k, v in vars(self).items():
            info.add(k, v)
        return info


def _parser(root_cmd_cls):
    """Sets up and returns a new ArgumentParser object.

    root_cmd_cls specifies the root command class which is used to
    initialize the parser.

    """
    parser = argparse.ArgumentParser(prog='nl',
                                     description=root_cmd_cls.__doc__)
    root_cmd_cls.add_arguments(parser)
    return parser


def parse(root_cmd_cls, args):
    """Parses arguments specified by args.

    If args is None sys.argv is used. root_cmd_cls specifies the root
    command class which is used for setting up the argparse parser.
    An Info object is returned.

    """
    parser = _parser(root_cmd_cls)
    ns = _NlNamespace()
    parser.parse_args(args=args, namespace=ns)
    return ns.resolve()
