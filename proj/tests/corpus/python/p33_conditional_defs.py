import sys

if sys.version_info >= (3, 8):
    def compat(x):
        return x
else:
    def compat(x):
        return x + 0

try:
    import json
except ImportError:
    json = None


def uses_json(data):
    return json.dumps(data)
