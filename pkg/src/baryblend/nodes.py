"""Interpolation node sets on a real interval."""

from __future__ import annotations

import numpy as np

_EPS = float(np.finfo(float).eps)


class NodeSet:
    """Strictly increasing, finite abscissae spanning an interval [a, b].

    Parameters
    ----------
    xs : array_like
        Strictly increasing finite values; the first and last entries are
        the interval endpoints.
    spacing : float, optional
        Nominal node spacing. Set by :meth:`equispaced`; when absent, the
        mean spacing ``(b - a) / n`` is used wherever a spacing scale is
        needed (weight rescaling, snap tolerance).

    Attributes
    ----------
    xs : ndarray
        The nodes, read-only, shape ``(n + 1,)``.
    a, b : float
        Interval endpoints, ``a == xs[0]`` and ``b == xs[-1]``.
    n : int
        Number of subintervals (one less than the node count).
    """

    def __init__(self, xs, spacing=None):
        xs = np.array(xs, dtype=float)
        if xs.ndim != 1 or xs.size < 2:
            raise ValueError("need at least two nodes in a one-dimensional array")
        if not np.all(np.isfinite(xs)):
            raise ValueError("nodes must be finite")
        if not np.all(np.diff(xs) > 0.0):
            raise ValueError("nodes must be strictly increasing")
        xs.flags.writeable = False
        self.xs = xs
        self.a = float(xs[0])
        self.b = float(xs[-1])
        self.n = int(xs.size - 1)
        self.spacing = float(spacing) if spacing is not None else None
        self._is_equispaced = spacing is not None

    @classmethod
    def equispaced(cls, a, b, n):
        """Build ``n + 1`` equispaced nodes ``a + i*h`` with ``h = (b - a)/n``.

        The construction is deterministic: given the same ``(a, b, n)`` it
        reproduces the same node values bit for bit. The last node is pinned
        to ``b`` exactly (``a + n*h`` may round past the endpoint).
        """
        a = float(a)
        b = float(b)
        n = int(n)
        if n < 1:
            raise ValueError("invalid interval: n must be at least 1")
        if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
            raise ValueError("invalid interval: need finite a < b")
        h = (b - a) / n
        xs = a + h * np.arange(n + 1)
        xs[0] = a
        xs[n] = b
        return cls(xs, spacing=h)

    @property
    def is_equispaced(self):
        return self._is_equispaced

    def reference_spacing(self):
        """Spacing scale: the recorded ``h`` or the mean spacing."""
        if self.spacing is not None:
            return self.spacing
        return (self.b - self.a) / self.n

    def snap_tolerance(self, j):
        """Snap radius around node ``j``: ``4*eps*max(|x_j|, h)``."""
        h = self.reference_spacing()
        return 4.0 * _EPS * max(abs(float(self.xs[j])), h)

    def snap_index(self, x):
        """Index of the node ``x`` coincides with, or ``None``.

        ``x`` counts as coincident when it lies within the snap tolerance
        of the nearest node.
        """
        xs = self.xs
        i = int(np.searchsorted(xs, x))
        best = None
        dist = np.inf
        for k in (i - 1, i):
            if 0 <= k <= self.n and abs(x - xs[k]) < dist:
                dist = abs(x - xs[k])
                best = k
        if best is not None and dist <= self.snap_tolerance(best):
            return best
        return None

    def snap_indices(self, x):
        """Vectorized :meth:`snap_index`: array of node indices, -1 for none."""
        x = np.asarray(x, dtype=float)
        xs = self.xs
        i = np.searchsorted(xs, x)
        lo = np.clip(i - 1, 0, self.n)
        hi = np.clip(i, 0, self.n)
        nearest = np.where(np.abs(x - xs[lo]) <= np.abs(x - xs[hi]), lo, hi)
        h = self.reference_spacing()
        tol = 4.0 * _EPS * np.maximum(np.abs(xs[nearest]), h)
        return np.where(np.abs(x - xs[nearest]) <= tol, nearest, -1)

    def __len__(self):
        return self.n + 1

    def __repr__(self):
        return (f"NodeSet(n={self.n}, a={self.a!r}, b={self.b!r}, "
                f"equispaced={self._is_equispaced})")


def validate_samples(ys, node_count):
    """Check and return samples as a read-only float array."""
    ys = np.array(ys, dtype=float)
    if ys.ndim != 1 or ys.size != node_count:
        raise ValueError(f"samples must be a flat array of length {node_count}")
    if not np.all(np.isfinite(ys)):
        raise ValueError("samples must be finite")
    ys.flags.writeable = False
    return ys
