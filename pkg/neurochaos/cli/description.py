"""Declarative description of the nl commands.

A command is a class which inherits from CommandDescription and from its
parent command. Options are class attributes whose name starts with
"opt_"; mixin classes (which are no CommandDescription) may contribute
options shared by several commands. Positional arguments are given as a
whitespace separated str in the "args" attribute, "(name)N" attaches the
argparse nargs modifier N.

Example:
    class Presets(CommandDescription, NlCommand, CommonOptions):
        \"\"\"List the built-in dataset presets.\"\"\"
        cmd = 'presets'
        args = '(dataset_id)?'
        func = call(presets.presets)

Note: command class names must be unique.

"""

import re
import inspect
import logging
import textwrap
import argparse


__all__ = ['CommandDescription', 'Option']

_NARGS_RE = re.compile(r'^\(([^\)]+)\)([?+*]|\d+)$')


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


class _CommandMeta(type):
    """Registers a command class as subcommand of its parent commands.

    A parent command is a direct base class which is a proper
    CommandDescription subclass. It is removed from the bases, so a
    subcommand does not inherit from its parent.

    """

    root = None

    def __new__(mcs, name, bases, attrs):
        if mcs.root is None:
            cls = super().__new__(mcs, name, bases, attrs)
            cls.subcommands_of = {}
            mcs.root = cls
            return cls
        if mcs.root not in bases:
            raise ValueError("%s has to be a direct base class of %s"
                             % (mcs.root.__name__, name))
        parents = [b for b in bases
                   if b is not mcs.root and issubclass(b, mcs.root)]
        real_bases = tuple(b for b in bases if b not in parents)
        cls = super().__new__(mcs, name, real_bases, attrs)
        for parent in parents:
            subcmds = mcs.root.subcommands_of.setdefault(parent.__name__, [])
            if cls.__name__ not in [s.__name__ for s in subcmds]:
                subcmds.append(cls)
        return cls


class CommandDescription(metaclass=_CommandMeta):
    # no docstr: it would become the description of every command

    cmd = None
    args = None
    help_str = None
    func = None  # callable which executes the command

    @classmethod
    def add_arguments(cls, parser):
        """Adds arguments, options and subcommands to the parser.

        parser is an argparse.ArgumentParser (or subparser) instance.

        """
        if cls.args is not None or cls.func is not None:
            parser.set_defaults(func=cls.func)
        for name, nargs in cls._positional_args():
            kwargs = {}
            if nargs is not None:
                kwargs['nargs'] = nargs
            parser.add_argument(name, **kwargs)
        for opt in cls._options():
            parser.add_argument(*opt.options(), **opt.kwargs)
        cls._add_subcommands(parser)

    @classmethod
    def _positional_args(cls):
        """Yields a 2 tuple (name, nargs) for each positional argument."""
        for arg in (cls.args or '').split():
            m = _NARGS_RE.match(arg)
            if m is None:
                yield arg, None
                continue
            nargs = m.group(2)
            yield m.group(1), int(nargs) if nargs.isdigit() else nargs

    @classmethod
    def _options(cls):
        """Yields the Option instances (an option set to None is skipped)."""
        for key, value in inspect.getmembers(cls):
            if key.startswith('opt_') and value is not None:
                yield value

    @classmethod
    def subcommands(cls):
        """Returns the list of subcommand classes of this command."""
        return CommandDescription.subcommands_of.get(cls.__name__, [])

    @classmethod
    def _add_subcommands(cls, parser):
        subcmds = cls.subcommands()
        if not subcmds:
            return
        subparsers = parser.add_subparsers(dest='command', metavar='command')
        subparsers.required = True
        seen = {}
        for sub_cls in subcmds:
            if sub_cls.cmd in seen:
                logger().warning("\"%s\" already defined in %s (ignoring "
                                 "definition in %s)", sub_cls.cmd,
                                 inspect.getfile(seen[sub_cls.cmd]),
                                 inspect.getfile(sub_cls))
                continue
            seen[sub_cls.cmd] = sub_cls
            # the raw formatter keeps the examples in the docstr readable
            kw = {'description': sub_cls.description(),
                  'formatter_class': argparse.RawDescriptionHelpFormatter}
            if sub_cls.help() is not None:
                kw['help'] = sub_cls.help()
            sub_cls.add_arguments(subparsers.add_parser(sub_cls.cmd, **kw))

    @classmethod
    def description(cls):
        """Returns the dedented docstr or None."""
        if cls.__doc__ is None:
            return None
        return textwrap.dedent(cls.__doc__)

    @classmethod
    def help(cls):
        """Returns help_str or the first line of the description."""
        if cls.help_str is not None:
            return cls.help_str
        lines = (cls.description() or '').strip().splitlines()
        return lines[0] if lines else None


class Option(object):
    """Encapsulates data for an option."""

    def __init__(self, shortname, fullname, help='', **kwargs):
        """Constructs a new Option object.

        shortname is the shortname and fullname the fullname of an
        option. The leading dash has to be omitted.

        Keyword arguments:
        help -- an optional description for the option (default: '')
        **kwargs -- optional arguments for argparse's add_argument

        """
        self.name = fullname.replace('-', '_')
        self.shortname = '-' + shortname if shortname else ''
        self.fullname = '--' + fullname
        kwargs['help'] = help
        kwargs.setdefault('dest', self.name)
        self.kwargs = kwargs

    def options(self):
        """Returns the tuple of option strings."""
        if self.shortname:
            return (self.shortname, self.fullname)
        return (self.fullname, )
