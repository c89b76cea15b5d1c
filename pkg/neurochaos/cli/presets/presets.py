"""Provides functions for the "presets" command."""

from neurochaos.presets import PRESETS


PRESETS_TEMPLATE = 'presets/presets.jinja2'
PRESET_TEMPLATE = 'presets/preset.jinja2'


def presets(renderer, dataset_id=None):
    """Lists all presets or shows one preset in detail."""
    if dataset_id is None:
        renderer.render(PRESETS_TEMPLATE,
                        presets=[PRESETS[k] for k in sorted(PRESETS)])
        return
    if dataset_id not in PRESETS:
        raise ValueError("no preset %r (known: %s)"
                         % (dataset_id, ', '.join(sorted(PRESETS))))
    renderer.render(PRESET_TEMPLATE, preset=PRESETS[dataset_id])
