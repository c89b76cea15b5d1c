__all__ = ['gls', 'chaosfex', 'chaosnet', 'classifiers', 'metrics', 'data',
           'tuning', 'pipelines', 'experiment', 'presets', 'config']
