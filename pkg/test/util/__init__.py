__all__ = ['test_io']
