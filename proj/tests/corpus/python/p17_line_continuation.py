def long_signature(first_argument,
                   second_argument,
                   third_argument=None):
    total = first_argument + \
        second_argument
    return total


def bracketed(
    alpha,
    beta: int = 3,
    *rest,
):
    return alpha
