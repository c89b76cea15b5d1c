"""Defines the presets command."""

from neurochaos.cli.cli import NlCommand, CommonOptions, call
from neurochaos.cli.description import CommandDescription
from neurochaos.cli.presets import presets


class Presets(CommandDescription, NlCommand, CommonOptions):
    """List the built-in dataset presets.

    Examples:
    nl presets
    nl presets haberman

    """
    cmd = 'presets'
    args = '(dataset_id)?'
    func = call(presets.presets)
