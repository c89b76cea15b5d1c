__all__ = ['test_cli']
