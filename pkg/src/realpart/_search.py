"""Grid scan followed by golden-section refinement on a closed interval."""

import math

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, a, b, xtol=1e-10, max_iter=200):
    """Golden-section search for a maximum of a unimodal ``f`` on [a, b]."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while abs(b - a) > xtol and it < max_iter:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        it += 1
    if fc >= fd:
        return c, fc
    return d, fd


def grid_golden_max(f, a, b, points=256, xtol=1e-10, flat_rtol=1e-12, values=None,
                    log_scale=False):
    """Maximise ``f`` on [a, b]; a grid flat within ``flat_rtol`` returns x = a.

    With ``log_scale`` the objective is a logarithm, so differences already
    are relative and the flatness test uses ``flat_rtol`` as an absolute gap.
    Returns ``(x_star, f_star, grid, grid_values)``. ``values`` may carry
    precomputed grid values (evaluation order does not matter).
    """
    grid = np.linspace(a, b, points)
    if values is None:
        values = np.array([f(float(x)) for x in grid])
    else:
        values = np.asarray(values, dtype=float)
    vmax = float(np.max(values))
    tie = flat_rtol if log_scale else flat_rtol * max(1.0, abs(vmax))
    i = int(np.argmax(values))
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, points - 1)])
    xg, fg = golden_max(f, lo, hi, xtol=xtol)
    cands = [(float(grid[i]), float(values[i])), (xg, fg)]
    if i > 0:
        cands.append((lo, float(values[i - 1])))
    if i < points - 1:
        cands.append((hi, float(values[i + 1])))
    vmin = float(np.min(values))
    if vmax - vmin <= tie:
        # flat objective: the smallest abscissa wins
        return float(grid[0]), float(values[0]), grid, values
    best = max(v for _, v in cands)
    x_star, f_star = min((x, v) for x, v in cands if v == best)
    return x_star, f_star, grid, values
