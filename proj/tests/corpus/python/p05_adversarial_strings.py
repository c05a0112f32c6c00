TEMPLATE = """
def not_a_function(x):
    '''this is text, not code'''
    return x
"""

OTHER = 'def fake(): pass'
ESCAPED = "quote \" inside and \\ backslash"
RAW = r"C:\path\to\def"


def real_function(a, b):
    text = "class Hidden:\n    def method(self): pass"
    more = '''
    def also_hidden(y):
        """nested quotes"""
    '''
    return text + more + TEMPLATE[a:b]


class Visible:
    marker = "\"\"\""

    def method(self, arg):
        return f"{arg!r} def {self.marker}"
