"""Slow reference forms used to cross-check the fast evaluator.

``blend_form_value`` evaluates the interpolant literally as a blend of
local Lagrange polynomial interpolants with explicit product blending
weights: O(n * d**2) per point, but definitionally direct.

``denominator_sign_scan`` evaluates the common-denominator polynomial of
the blend form (the one whose strict positivity rules out real poles) on a
grid, via products over a node multiset with the endpoint nodes repeated
``e`` extra times each.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .nodes import NodeSet
from .weights import ExtParams


def _lagrange(xs, ys, i, j, x):
    s = 0.0
    for k in range(i, j + 1):
        p = ys[k]
        for l in range(i, j + 1):
            if l != k:
                p *= (x - xs[l]) / (xs[k] - xs[l])
        s += p
    return s


def _chi(xs, i, j, x):
    p = -1.0 if i % 2 else 1.0
    for k in range(i, j + 1):
        p /= x - xs[k]
    return p


def blend_form_value(nodes: NodeSet, ys, params: ExtParams, x):
    """Interpolant value at a scalar off-node ``x``, from the blend form.

    Raises when ``x`` coincides with a node (the blending weights are
    singular there).
    """
    params.validate(nodes)
    xs = nodes.xs
    ys = np.asarray(ys, dtype=float)
    n = nodes.n
    d, e = params.d, params.e
    x = float(x)
    if np.any(x == xs):
        raise ValueError("blend form is singular at a node")
    num = den = 0.0
    for i in range(d - e, d):
        s = -1.0 if (d - i) % 2 else 1.0
        phi = s / (x - xs[0]) ** (d - i) * _chi(xs, 0, i, x)
        num += phi * _lagrange(xs, ys, 0, i, x)
        den += phi
    for i in range(n - d + 1):
        c = _chi(xs, i, i + d, x)
        num += c * _lagrange(xs, ys, i, i + d, x)
        den += c
    for i in range(n - d + 1, n - d + e + 1):
        psi = _chi(xs, i, n, x) / (x - xs[n]) ** (i - n + d)
        num += psi * _lagrange(xs, ys, i, n, x)
        den += psi
    return num / den


def blending_weights(nodes: NodeSet, params: ExtParams, x):
    """The normalized blending functions at an off-node ``x``.

    One weight per local interpolant (lower-end extras, interior, upper-end
    extras, in that order); they sum to one.
    """
    params.validate(nodes)
    xs = nodes.xs
    n = nodes.n
    d, e = params.d, params.e
    x = float(x)
    if np.any(x == xs):
        raise ValueError("blend form is singular at a node")
    vals = []
    for i in range(d - e, d):
        s = -1.0 if (d - i) % 2 else 1.0
        vals.append(s / (x - xs[0]) ** (d - i) * _chi(xs, 0, i, x))
    for i in range(n - d + 1):
        vals.append(_chi(xs, i, i + d, x))
    for i in range(n - d + 1, n - d + e + 1):
        vals.append(_chi(xs, i, n, x) / (x - xs[n]) ** (i - n + d))
    vals = np.array(vals)
    return vals / vals.sum()


@dataclass(frozen=True)
class SignScanReport:
    """Outcome of a denominator positivity scan."""
    min_value: float          # min over the grid of the normalized denominator
    argmin_x: float
    all_positive: bool
    grid_size: int


def denominator_sign_scan(nodes: NodeSet, params: ExtParams, grid) -> SignScanReport:
    """Scan the blend-form common denominator for sign changes.

    Clearing the blend of its ``1/(x - x_j)`` singularities multiplies
    numerator and denominator by a polynomial whose roots are the nodes,
    with the two endpoint nodes taken with multiplicity ``e + 1``. The
    resulting denominator is a sum of products

        mu_i(x) = prod_{j=-e}^{i-1} (x - z_j) * prod_{k=i+d+1}^{n+e} (z_k - x)

    over ``i = -e .. n-d+e``, where ``z`` is the node multiset with the
    repeated endpoints (indices -e..n+e). Each normalized grid value is
    ``sum_i mu_i / sum_i |mu_i|``, computed through log-magnitude prefix
    sums so arbitrary ``n`` cannot overflow. Strictly positive values
    everywhere witness the absence of real poles; a nonpositive value is
    reported, not raised.
    """
    params.validate(nodes)
    d, e = params.d, params.e
    n = nodes.n
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or not np.all(np.isfinite(grid)):
        raise ValueError("grid must be a nonempty 1-D array of finite values")
    z = np.concatenate([np.full(e, nodes.a), nodes.xs, np.full(e, nodes.b)])
    m = z.size                      # n + 2e + 1 values, indices -e .. n+e
    x = grid[:, None]
    diff = x - z[None, :]           # (g, m)
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(diff))
    neg = diff < 0.0
    # prefix[:, t] = sum over the first t factors; suffix[:, t] = sum from
    # factor t on (built directly: -inf entries would make total-minus-
    # prefix produce NaN)
    logs_pre = np.concatenate([np.zeros((grid.size, 1)), np.cumsum(logs, axis=1)], axis=1)
    negs_pre = np.concatenate([np.zeros((grid.size, 1), dtype=int),
                               np.cumsum(neg, axis=1)], axis=1)
    logs_suf = np.concatenate([np.cumsum(logs[:, ::-1], axis=1)[:, ::-1],
                               np.zeros((grid.size, 1))], axis=1)
    negs_suf = np.concatenate([np.cumsum(neg[:, ::-1], axis=1)[:, ::-1],
                               np.zeros((grid.size, 1), dtype=int)], axis=1)
    # mu_i uses factors z_{-e}..z_{i-1} as (x - z) and z_{i+d+1}..z_{n+e}
    # as (z - x); with array offsets: first i+e factors, last m-(i+e+d+1).
    i_vals = np.arange(-e, n - d + e + 1)
    lead = i_vals + e               # factors taken from the front
    tail_start = lead + d + 1       # array index where the suffix begins
    L = logs_pre[:, lead] + logs_suf[:, tail_start]
    flips = negs_pre[:, lead] + (m - tail_start)[None, :] - negs_suf[:, tail_start]
    # (z - x) < 0 exactly where (x - z) > 0, hence the complement count
    sign = np.where(flips % 2 == 0, 1.0, -1.0)
    Lmax = L.max(axis=1, keepdims=True)
    with np.errstate(invalid="ignore"):
        mags = np.exp(L - Lmax)
    mags[np.isnan(mags)] = 0.0      # -inf minus -inf: a vanished term
    s = (sign * mags).sum(axis=1)
    norm = mags.sum(axis=1)
    vals = s / norm
    k = int(np.argmin(vals))
    return SignScanReport(float(vals[k]), float(grid[k]),
                          bool(np.all(vals > 0.0)), grid.size)
