"""Defines the summary command."""

from neurochaos.cli.cli import NlCommand, CommonOptions, call
from neurochaos.cli.description import CommandDescription
from neurochaos.cli.summary import summary


class Summary(CommandDescription, NlCommand, CommonOptions):
    """Show the consistency of each algorithm across datasets.

    For every algorithm the minimum and maximum high regime macro F1
    over all datasets in the given result files is shown.

    Example:
    nl summary iris.json wine.json haberman.json

    """
    cmd = 'summary'
    args = '(result_files)+'
    func = call(summary.summary)
