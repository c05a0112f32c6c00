def no_newline_at_end(a):
    return a