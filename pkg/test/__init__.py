# makes the nltest module importable from subpackages like "cli"
