class InputError(ValueError):
    """Malformed input: bad shapes, mixed scalar kinds, unparsable data."""


class PreconditionError(ValueError):
    """A hypothesis of the requested construction does not hold.

    Kept distinct from a check that simply evaluates to ``False``: an identity
    failing is a result, a violated hypothesis is a refusal.
    """
