class ParseError(Exception):
    pass


def parse(text):
    if not text:
        raise ParseError("empty")
    if text.startswith("#"):
        raise errors.CommentError
    try:
        return int(text)
    except ValueError:
        raise
    finally:
        pass


def reraise(fn):
    try:
        fn()
    except KeyError as exc:
        raise LookupError("missing") from exc
