"""Staggered first-derivative stencils.

Both operators differentiate a function sampled midway between its own
sample points: taps sit at +-h/2 (and +-3h/2 for the 4th-order form)
around the evaluation position.  ``f`` is any callable over the axis
coordinate; out-of-range handling is the sampler's responsibility.
"""

# 4th-order tap weights at +-h/2 and +-3h/2.
C4_NEAR = 9.0 / 8.0
C4_FAR = 1.0 / 24.0


def derivative4(f, x: float, h: float) -> float:
    """Fourth-order staggered first derivative of ``f`` at ``x``.

    Exact for polynomials up to degree 3.
    """
    return (C4_NEAR * (f(x + 0.5 * h) - f(x - 0.5 * h))
            - C4_FAR * (f(x + 1.5 * h) - f(x - 1.5 * h))) / h


def derivative2(f, x: float, h: float) -> float:
    """Second-order staggered first derivative of ``f`` at ``x``.

    Used instead of :func:`derivative4` where the wider footprint would
    straddle the free surface.
    """
    return (f(x + 0.5 * h) - f(x - 0.5 * h)) / h
