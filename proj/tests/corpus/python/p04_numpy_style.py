def scale(values, factor):
    """Scale values by a factor.

    Parameters
    ----------
    values : list of float
        Input values.

    Returns
    -------
    list of float
        Scaled values.

    Notes
    -----
    The input is not modified.
    """
    return [v * factor for v in values]
