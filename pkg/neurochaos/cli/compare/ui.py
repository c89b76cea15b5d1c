"""Defines the compare command."""

from neurochaos.cli.cli import NlCommand, CommonOptions, call
from neurochaos.cli.description import CommandDescription, Option
from neurochaos.cli.compare import compare


class Compare(CommandDescription, NlCommand, CommonOptions):
    """Compute the boost of a CFX hybrid over its stand-alone baseline.

    Both files are JSON result documents written by "nl run --out"; they
    may be the same file. Results are paired per dataset and, in the low
    regime, per n. The hybrid algorithm defaults to the only CFX hybrid
    in the first file, the baseline to its stand-alone counterpart.

    Examples:
    nl compare cfx.json raw.json
    nl compare all.json all.json --hybrid CfxGnb --baseline Gnb

    """
    cmd = 'compare'
    args = 'hybrid_file baseline_file'
    opt_hybrid = Option('', 'hybrid', 'the hybrid algorithm')
    opt_baseline = Option('', 'baseline', 'the baseline algorithm')
    func = call(compare.compare)
