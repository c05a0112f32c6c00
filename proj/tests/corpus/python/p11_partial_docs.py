def resize(image, width, height, keep_ratio=True):
    """Resize an image.

    :param image: Source image.
    :param height: Target height.
    """
    if width <= 0:
        raise ValueError("width")
    return image


def rename(old, new):
    """Rename a file.

    :param new: New name.
    :param old: Old name.
    :param force: TODO: describe.
    """
    return (old, new)
