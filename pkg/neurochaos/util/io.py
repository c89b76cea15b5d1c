"""io utility functions.

Result files are never written in place: the data goes to a temporary
file in the destination directory which is renamed afterwards, so a
reader sees either the old or the complete new file.

"""

import os
from contextlib import contextmanager
from tempfile import NamedTemporaryFile


__all__ = ['write_file', 'atomic_open']


def _check_dest(dest):
    """Raises a ValueError if dest cannot be (re)written."""
    if os.path.exists(dest) and not os.path.isfile(dest):
        raise ValueError("dest \"%s\" exists but is no file" % dest)
    dirname = os.path.dirname(os.path.abspath(dest))
    if os.path.exists(dest) and not os.access(dest, os.W_OK):
        raise ValueError("invalid dest filename: %s is not writable" % dest)
    elif not os.path.exists(dirname):
        raise ValueError("invalid dest filename: dir %s does not exist"
                         % dirname)
    elif not os.access(dirname, os.W_OK):
        raise ValueError("invalid dest filename: dir %s is not writable"
                         % dirname)


@contextmanager
def atomic_open(dest, mode=0o644):
    """Yields a text file object whose content replaces dest on success.

    The file is opened in the directory of dest with utf-8 encoding
    and '\\n' line endings. If the with block raises, dest is left
    untouched and the temporary file is removed.

    Keyword arguments:
    mode -- the mode of file dest (default: 0o644)

    """
    _check_dest(dest)
    dirname = os.path.dirname(os.path.abspath(dest))
    filename = os.path.basename(dest)
    fdest_obj = NamedTemporaryFile('w', dir=dirname, prefix=filename,
                                   encoding='utf-8', newline='\n',
                                   delete=False)
    tmp_filename = fdest_obj.name
    try:
        yield fdest_obj
        fdest_obj.flush()
        os.fsync(fdest_obj.fileno())
        fdest_obj.close()
        os.chmod(tmp_filename, mode)
        os.replace(tmp_filename, dest)
    finally:
        if not fdest_obj.closed:
            fdest_obj.close()
        if os.path.isfile(tmp_filename):
            os.unlink(tmp_filename)


def write_file(dest, text, mode=0o644):
    """Writes the str text to file dest atomically.

    A ValueError is raised if dest is not a (possible) regular file or
    if its directory does not exist or is not writable.

    Keyword arguments:
    mode -- the mode of file dest (default: 0o644)

    """
    with atomic_open(dest, mode=mode) as f:
        f.write(text)
