from fractions import Fraction


def as_fraction(x) -> Fraction:
    """Exact rational for a parameter; floats snap to the nearest simple ratio
    so that ``1/6`` typed as a float compares as exactly one sixth."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x).limit_denominator(10**9)
