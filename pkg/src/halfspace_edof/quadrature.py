from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss


@lru_cache(maxsize=None)
def gauss_legendre(order):
    """Gauss-Legendre nodes and weights on [-1, 1] (read-only, cached per order)."""
    if order < 1:
        raise ValueError(f"Gauss-Legendre order must be positive, got {order}")
    nodes, weights = leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_rule(a, b, panels, order):
    """
    Composite Gauss-Legendre rule on [a, b].

    :param a: lower limit
    :param b: upper limit
    :param panels: number of equal panels
    :param order: nodes per panel
    :return: (nodes, weights), both of length panels * order
    """
    if panels < 1:
        raise ValueError(f"panel count must be positive, got {panels}")
    x, w = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights
