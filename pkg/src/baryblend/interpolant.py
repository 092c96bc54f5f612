"""Rational interpolants blended from local polynomials, with optional
extra low-degree interpolants at the interval ends.

The evaluator works in a barycentric-like form: every node ``j`` carries a
coefficient ``c_j(x)`` (a constant node weight plus x-dependent end
corrections), and the interpolant is the ratio

    r(x) = sum_j [c_j(x) / (x - x_j)] y_j  /  sum_k [c_k(x) / (x - x_k)].

With ``e = 0`` the corrections vanish and this is the classical
Floater-Hormann form (Floater & Hormann 2007, Numer. Math. 107). The end
corrections are evaluated in O(e) arithmetic each by a nested Horner
recurrence, so one evaluation costs O(n + d*e) after precomputation.

Numerator and denominator are accumulated strictly left to right in node
order; the scalar and vectorized paths therefore produce bit-identical
results. Optional two-term (Kahan) compensation is available behind a flag.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from .nodes import NodeSet, validate_samples
from .weights import ExtParams, PrecomputedWeights

_CHUNK = 4096


class EvalOutcome(NamedTuple):
    """Result of a single-point evaluation.

    ``at_node`` is the node index when the abscissa snapped to a node (the
    value is then the corresponding sample, exactly), else ``None``.
    """
    value: float
    at_node: Optional[int]


class OpCounter:
    """Tally of arithmetic operations performed by the scalar evaluators."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def add(self, k):
        self.count += k


def zeta_eta(weights: PrecomputedWeights, nodes: NodeSet, params: ExtParams, x):
    """End-correction functions at a scalar ``x``.

    Returns ``(zeta, eta)``: ``zeta[j]`` for nodes ``j = 0 .. d-1`` and
    ``eta[k]`` for nodes ``j = n-d+1+k .. n``. Both are zero arrays when
    ``e = 0``. The values carry the same common scale as the stored node
    weights.

    ``x`` must not equal an endpoint (powers of ``x - x_0`` and
    ``x - x_n`` are formed); callers snap node-coincident points first.
    """
    d, e = params.d, params.e
    n = nodes.n
    zeta = np.zeros(d)
    eta = np.zeros(d)
    if e == 0:
        return zeta, eta
    if x == nodes.a or x == nodes.b:
        raise ValueError("evaluation at an endpoint: snap to the node instead")
    xs = nodes.xs
    w0 = 1.0 / (x - nodes.a)
    for j in range(d):
        lo = max(j, d - e)
        acc = 1.0
        for k in range(lo + 1, d):
            acc = 1.0 - (xs[j] - xs[k]) * w0 * acc
        zeta[j] = -weights.lower_lead[j] * w0 * acc
    vn = 1.0 / (x - nodes.b)
    lo = n - d + 1
    sign = -1.0 if lo % 2 else 1.0
    for j in range(lo, n + 1):
        up = min(j, n - d + e)
        acc = 1.0
        for k in range(up - 1, lo - 1, -1):
            acc = 1.0 - (xs[j] - xs[k]) * vn * acc
        eta[j - lo] = sign * weights.upper_lead[j - lo] * vn * acc
    return zeta, eta


def zeta_eta_direct(weights: PrecomputedWeights, nodes: NodeSet,
                    params: ExtParams, x):
    """Same as :func:`zeta_eta` by direct summation of the defining sums.

    O(e) terms per node with explicit powers; kept as an independent check
    on the Horner recurrence.
    """
    d, e = params.d, params.e
    n = nodes.n
    zeta = np.zeros(d)
    eta = np.zeros(d)
    if e == 0:
        return zeta, eta
    if x == nodes.a or x == nodes.b:
        raise ValueError("evaluation at an endpoint: snap to the node instead")
    for j in range(d):
        s = 0.0
        for idx, i in enumerate(range(d - e, d)):
            if i < j:
                continue
            term = weights.lower[idx][j] / (x - nodes.a) ** (d - i)
            s += -term if (d - i) % 2 else term
        zeta[j] = s
    for j in range(n - d + 1, n + 1):
        s = 0.0
        for idx, i in enumerate(range(n - d + 1, n - d + e + 1)):
            if i > j:
                continue
            term = weights.upper[idx][j - i] / (x - nodes.b) ** (i - n + d)
            s += -term if i % 2 else term
        eta[j - (n - d + 1)] = s
    return zeta, eta


def _coef_block(weights, nodes, params, x):
    """Coefficient matrix ``C[m, j] = c_j(x_m)`` for a 1-D chunk ``x``.

    Vector analogue of the scalar coefficient assembly; same operation
    order elementwise.
    """
    d, e = params.d, params.e
    n = nodes.n
    xs = nodes.xs
    C = np.broadcast_to(weights.fh, (x.size, n + 1)).copy()
    if e == 0:
        return C
    w0 = 1.0 / (x - nodes.a)
    for j in range(d):
        lo = max(j, d - e)
        acc = np.ones_like(x)
        for k in range(lo + 1, d):
            acc = 1.0 - (xs[j] - xs[k]) * w0 * acc
        C[:, j] += -weights.lower_lead[j] * w0 * acc
    vn = 1.0 / (x - nodes.b)
    lo = n - d + 1
    sign = -1.0 if lo % 2 else 1.0
    for j in range(lo, n + 1):
        up = min(j, n - d + e)
        acc = np.ones_like(x)
        for k in range(up - 1, lo - 1, -1):
            acc = 1.0 - (xs[j] - xs[k]) * vn * acc
        C[:, j] += sign * weights.upper_lead[j - lo] * vn * acc
    return C


class Interpolant:
    """Evaluable rational interpolant through ``(x_j, y_j)``.

    Parameters
    ----------
    nodes : NodeSet
    ys : array_like
        Samples, one per node.
    d : int
        Local polynomial degree, ``0 <= d <= n``.
    e : int, optional
        Number of extra reduced-degree local interpolants blended in at
        each end of the interval, ``0 <= e <= d``. ``e = 0`` gives the
        classical Floater-Hormann interpolant of degree ``d``.
    compensated : bool, optional
        Accumulate numerator and denominator with two-term (Kahan)
        compensation. Off by default.

    Notes
    -----
    The interpolant has no poles on the real line and no unattainable
    points; it reproduces polynomials of degree up to ``d - e``.
    Evaluation at a point within rounding distance of a node returns the
    sample value exactly. Instances are immutable after construction and
    safe to evaluate concurrently.
    """

    def __init__(self, nodes: NodeSet, ys, d, e=0, compensated=False):
        if not isinstance(nodes, NodeSet):
            nodes = NodeSet(nodes)
        self.nodes = nodes
        self.ys = validate_samples(ys, nodes.n + 1)
        self.params = ExtParams(d, e).validate(nodes)
        self.weights = PrecomputedWeights(nodes, self.params)
        self.compensated = bool(compensated)

    @classmethod
    def from_function(cls, nodes, f, d, e=0, **kw):
        """Interpolant through ``f`` sampled at the nodes."""
        if not isinstance(nodes, NodeSet):
            nodes = NodeSet(nodes)
        return cls(nodes, f(nodes.xs), d, e, **kw)

    @property
    def d(self):
        return self.params.d

    @property
    def e(self):
        return self.params.e

    # -- scalar paths ---------------------------------------------------

    def eval(self, x, ops: OpCounter | None = None,
             weights: PrecomputedWeights | None = None) -> EvalOutcome:
        """Evaluate at a scalar ``x``.

        Snaps to the nearest node within the rounding tolerance; otherwise
        computes the barycentric-like ratio in O(n + d*e) arithmetic.
        ``weights`` substitutes an alternative weight set (any common
        rescale of the stored one leaves the value unchanged; see
        :meth:`PrecomputedWeights.rescaled`).
        """
        return self._eval_scalar(x, weights if weights is not None else self.weights, ops)

    def _eval_scalar(self, x, weights, ops=None):
        x = float(x)
        if not np.isfinite(x):
            raise ValueError("non-finite input")
        j = self.nodes.snap_index(x)
        if j is not None:
            return EvalOutcome(float(self.ys[j]), j)
        d, e = self.params.d, self.params.e
        n = self.nodes.n
        xs = self.nodes.xs
        ys = self.ys
        if e > 0:
            zeta, eta = zeta_eta(weights, self.nodes, self.params, x)
            if ops is not None:
                # setup of the two inverse distances, then per node: lead
                # multiply chain (3) plus 4 per Horner step
                nsteps = sum(d - 1 - max(j_, d - e) for j_ in range(d))
                nsteps += sum(min(j_, n - d + e) - (n - d + 1)
                              for j_ in range(n - d + 1, n + 1))
                ops.add(2 + 3 * 2 * d + 4 * nsteps)
        lo_up = n - d + 1
        num = den = cn = cd = 0.0
        comp = self.compensated
        for k in range(n + 1):
            c = weights.fh[k]
            if e > 0:
                if k < d:
                    c = c + zeta[k]
                if k >= lo_up:
                    c = c + eta[k - lo_up]
            t = c / (x - xs[k])
            v = t * ys[k]
            if comp:
                y_ = v - cn
                s = num + y_
                cn = (s - num) - y_
                num = s
                y_ = t - cd
                s = den + y_
                cd = (s - den) - y_
                den = s
            else:
                num += v
                den += t
        if ops is not None:
            ops.add(5 * (n + 1) + 1)
        return EvalOutcome(float(num / den), None)

    def eval_fh(self, x, ops: OpCounter | None = None) -> EvalOutcome:
        """Classical degree-``d`` evaluation; requires ``e = 0``.

        An independent code path from :meth:`eval` (no end-correction
        machinery is touched), kept separate so the two can be compared.
        """
        if self.params.e != 0:
            raise ValueError("eval_fh requires e = 0")
        x = float(x)
        if not np.isfinite(x):
            raise ValueError("non-finite input")
        j = self.nodes.snap_index(x)
        if j is not None:
            return EvalOutcome(float(self.ys[j]), j)
        xs = self.nodes.xs
        ys = self.ys
        fh = self.weights.fh
        num = den = cn = cd = 0.0
        comp = self.compensated
        for k in range(self.nodes.n + 1):
            t = fh[k] / (x - xs[k])
            v = t * ys[k]
            if comp:
                y_ = v - cn
                s = num + y_
                cn = (s - num) - y_
                num = s
                y_ = t - cd
                s = den + y_
                cd = (s - den) - y_
                den = s
            else:
                num += v
                den += t
        if ops is not None:
            ops.add(5 * (self.nodes.n + 1) + 1)
        return EvalOutcome(float(num / den), None)

    # -- vectorized path --------------------------------------------------

    def __call__(self, x):
        """Evaluate at a scalar or array of points."""
        scalar = np.isscalar(x) or np.ndim(x) == 0
        xv = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
        if not np.all(np.isfinite(xv)):
            raise ValueError("non-finite input")
        out = np.empty(xv.size)
        for s in range(0, xv.size, _CHUNK):
            block = xv[s:s + _CHUNK]
            out[s:s + _CHUNK] = self._eval_chunk(block)
        if scalar:
            return float(out[0])
        return out.reshape(np.shape(x))

    def _eval_chunk(self, x):
        nodes = self.nodes
        snap = nodes.snap_indices(x)
        off = snap < 0
        out = np.empty(x.size)
        out[~off] = self.ys[snap[~off]]
        xo = x[off]
        if xo.size:
            C = _coef_block(self.weights, nodes, self.params, xo)
            num = np.zeros(xo.size)
            den = np.zeros(xo.size)
            cn = np.zeros(xo.size)
            cd = np.zeros(xo.size)
            comp = self.compensated
            xs = nodes.xs
            for k in range(nodes.n + 1):
                t = C[:, k] / (xo - xs[k])
                v = t * self.ys[k]
                if comp:
                    y_ = v - cn
                    s = num + y_
                    cn = (s - num) - y_
                    num = s
                    y_ = t - cd
                    s = den + y_
                    cd = (s - den) - y_
                    den = s
                else:
                    num += v
                    den += t
            out[off] = num / den
        return out

    # -- basis functions --------------------------------------------------

    def basis(self, j, x):
        """The ``j``-th basis function: the interpolant of the unit sample
        at node ``j``. Scalar or array ``x``."""
        n = self.nodes.n
        if not 0 <= int(j) <= n:
            raise IndexError(f"node index out of range: {j}")
        j = int(j)
        scalar = np.isscalar(x) or np.ndim(x) == 0
        xv = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
        if not np.all(np.isfinite(xv)):
            raise ValueError("non-finite input")
        out = np.empty(xv.size)
        for s in range(0, xv.size, _CHUNK):
            block = xv[s:s + _CHUNK]
            T, offmask, snap = term_rows(self.nodes, self.params,
                                         self.weights, block)
            res = np.empty(block.size)
            res[~offmask] = (snap[~offmask] == j).astype(float)
            if T is not None:
                den = np.zeros(offmask.sum())
                for k in range(self.nodes.n + 1):
                    den += T[:, k]
                res[offmask] = T[:, j] / den
            out[s:s + block.size] = res
        if scalar:
            return float(out[0])
        return out.reshape(np.shape(x))


def term_rows(nodes: NodeSet, params: ExtParams, weights: PrecomputedWeights, x):
    """Term rows ``T[m, k] = c_k(x_m)/(x_m - x_k)`` for off-node points.

    Returns ``(T, offmask, snap)``; ``T`` covers only the rows where
    ``offmask`` is true (``None`` if every point snapped to a node). The
    interpolant is ``(T @ ys) / T.sum(axis=1)`` and the basis functions are
    the rows of ``T`` over their sum.
    """
    x = np.asarray(x, dtype=float)
    snap = nodes.snap_indices(x)
    off = snap < 0
    xo = x[off]
    if not xo.size:
        return None, off, snap
    C = _coef_block(weights, nodes, params, xo)
    T = C / (xo[:, None] - nodes.xs[None, :])
    return T, off, snap


# -- serialization --------------------------------------------------------

def dump_interpolant(interp: Interpolant) -> str:
    """Serialize nodes, samples and parameters to text, one value per line.

    Floats are written in shortest round-trip decimal form, so
    :func:`load_interpolant` reconstructs them bit for bit.
    """
    lines = [str(interp.nodes.n + 1), str(interp.params.d), str(interp.params.e)]
    lines += [repr(float(v)) for v in interp.nodes.xs]
    lines += [repr(float(v)) for v in interp.ys]
    return "\n".join(lines) + "\n"


def load_interpolant(text: str) -> Interpolant:
    """Inverse of :func:`dump_interpolant`."""
    vals = text.split()
    if len(vals) < 3:
        raise ValueError("truncated interpolant record")
    count, d, e = int(vals[0]), int(vals[1]), int(vals[2])
    if len(vals) != 3 + 2 * count:
        raise ValueError("truncated interpolant record")
    xs = np.array([float(v) for v in vals[3:3 + count]])
    ys = np.array([float(v) for v in vals[3 + count:]])
    return Interpolant(NodeSet(xs), ys, d, e)
