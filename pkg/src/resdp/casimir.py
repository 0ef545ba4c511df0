"""Implicit Casimir functions of the Kummer shape families.

The bounded family is the zero set of

    x^2 + y^2 - ((r + z)/n)^m ((r - z)/m)^n,   |z| < r,

solved for r on (|z|, inf); the unbounded family is the zero set of

    x^2 + y^2 - ((z + r)/n)^m ((z - r)/m)^n,   r < |z|,

solved for r on (0, |z|), which requires the point to satisfy the open
condition n^m m^n (x^2 + y^2) < z^(n+m).  In both cases the defining
polynomial has a single simple root in the bracket, so bisection is always
correct and Newton steps only accelerate the endgame.

The solver is deterministic: identical inputs produce bit-identical output.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, OffDomain
from .phase_space import PLUS, int_pow

_MAX_ITER = 200
_WIDTH_TOL = 1e-14


@dataclass(frozen=True)
class CasimirEval:
    """Casimir value at a point with its gradient and solver diagnostics."""

    value: float
    gradient: np.ndarray
    iterations: int
    residual: float


def bounded_shape_equation(x, y, z, r, n, m):
    """Defining polynomial of the bounded shapes at level r (broadcasts)."""
    return x * x + y * y - int_pow((np.asarray(r, dtype=float) + z) / n, m) \
        * int_pow((np.asarray(r, dtype=float) - z) / m, n)


def unbounded_shape_equation(x, y, z, r, n, m):
    """Defining polynomial of the unbounded shapes at level r (broadcasts)."""
    return x * x + y * y - int_pow((z + np.asarray(r, dtype=float)) / n, m) \
        * int_pow((z - np.asarray(r, dtype=float)) / m, n)


def in_leaf_domain(res, p):
    """Whether the Casimir of the given resonance is defined at p."""
    p = np.asarray(p, dtype=float)
    rho2 = p[..., 0] ** 2 + p[..., 1] ** 2
    off_axis = rho2 > 0.0
    if res.sign == PLUS:
        return off_axis if off_axis.shape else bool(off_axis)
    bound = int_pow(np.asarray(p[..., 2], dtype=float), res.n + res.m)
    scale = float(int_pow(float(res.n), res.m) * int_pow(float(res.m), res.n))
    ok = off_axis & (scale * rho2 < bound)
    return ok if ok.shape else bool(ok)


def _powi(x, k):
    out = 1.0
    while k:
        if k & 1:
            out *= x
        x *= x
        k >>= 1
    return out


def _eval_plus(n, m, rho2, z, r):
    """Value and derivative of ((r+z)/n)^m ((r-z)/m)^n - rho2."""
    fa = (r + z) / n
    fb = (r - z) / m
    fa1 = _powi(fa, m - 1)
    fb1 = _powi(fb, n - 1)
    val = fa1 * fa * fb1 * fb - rho2
    dval = fa1 * fb1 * (m * fb / n + n * fa / m)
    return val, dval


def _eval_minus(n, m, rho2, z, r):
    """Value and derivative of ((z+r)/n)^m ((z-r)/m)^n - rho2."""
    fa = (z + r) / n
    fb = (z - r) / m
    fa1 = _powi(fa, m - 1)
    fb1 = _powi(fb, n - 1)
    val = fa1 * fa * fb1 * fb - rho2
    dval = fa1 * fb1 * (m * fb / n - n * fa / m)
    return val, dval


def _newton_bisect(evaluate, lo, hi, increasing):
    """Bracketed Newton with bisection fallback on a single simple root.

    The bracket is maintained from the sign of the residual; a Newton
    candidate is taken only when it lands strictly inside the bracket.
    Stops when the bracket width passes tolerance or the Newton step falls
    below float resolution (the iterate cannot improve further).
    """
    r = 0.5 * (lo + hi)
    iterations = 0
    for _ in range(_MAX_ITER):
        iterations += 1
        val, dval = evaluate(r)
        if val == 0.0:
            return r, iterations
        below = (val < 0.0) if increasing else (val > 0.0)
        if below:
            lo = r
        else:
            hi = r
        if hi - lo < _WIDTH_TOL * (1.0 + r):
            return r, iterations
        if dval != 0.0:
            candidate = r - val / dval
            if candidate == r:
                return r, iterations
            if lo < candidate < hi:
                r = candidate
                continue
        r = 0.5 * (lo + hi)
    raise NoConvergence(f"no root to width tolerance after {_MAX_ITER} iterations")


def _solve_plus(n, m, rho2, z):
    az = abs(z)
    lo = az * (1.0 + 1e-12) + 1e-300
    val, _ = _eval_plus(n, m, rho2, z, lo)
    if val >= 0.0:
        # Root pinched between |z| and lo; tighten the left endpoint.
        hi = lo
        for _ in range(64):
            lo = az + (lo - az) / 16.0
            val, _ = _eval_plus(n, m, rho2, z, lo)
            if val < 0.0:
                break
            hi = lo
        else:
            return hi, 1
    else:
        hi = max(az + 1.0, 2.0 * lo)
        doublings = 0
        while _eval_plus(n, m, rho2, z, hi)[0] <= 0.0:
            hi *= 2.0
            doublings += 1
            if doublings > 300:
                raise NoConvergence("upper bracket search failed")
    return _newton_bisect(lambda r: _eval_plus(n, m, rho2, z, r), lo, hi, True)


def _solve_minus(n, m, rho2, z):
    return _newton_bisect(lambda r: _eval_minus(n, m, rho2, z, r), 0.0, abs(z), False)


def _solve_value(res, rho2, z):
    """Root only, no diagnostics; caller guarantees domain membership."""
    if res.sign == PLUS:
        return _solve_plus(res.n, res.m, rho2, z)[0]
    return _solve_minus(res.n, res.m, rho2, z)[0]


def solve_casimir(res, p):
    """Casimir value, gradient, and diagnostics at a leaf point.

    Raises OffDomain when p is on the z axis (either family) or outside the
    open set of the unbounded family.
    """
    p = np.asarray(p, dtype=float)
    x, y, z = (float(c) for c in p)
    rho2 = x * x + y * y
    if not in_leaf_domain(res, p):
        raise OffDomain(f"point {tuple(p)} outside the {res.sign} Casimir domain")
    if res.sign == PLUS:
        value, iterations = _solve_plus(res.n, res.m, rho2, z)
        residual = abs(_eval_plus(res.n, res.m, rho2, z, value)[0])
    else:
        value, iterations = _solve_minus(res.n, res.m, rho2, z)
        residual = abs(_eval_minus(res.n, res.m, rho2, z, value)[0])
    gradient = _gradient_from_value(res, x, y, z, rho2, value)
    return CasimirEval(value=value, gradient=gradient,
                       iterations=iterations, residual=residual)


def _field_third_component(res, rho2, z, c):
    return -rho2 * (res.m / (c + z) - res.n / (c - z))


def _scale_from_value(res, rho2, z, c):
    return rho2 * (res.m / (c + z) + res.n / (c - z))


def _gradient_from_value(res, x, y, z, rho2, c):
    scale = _scale_from_value(res, rho2, z, c)
    return np.array([2.0 * x, 2.0 * y, _field_third_component(res, rho2, z, c)]) / scale


def casimir_gradient(res, p):
    """Gradient of the Casimir by implicit differentiation of the level set."""
    return solve_casimir(res, p).gradient


def leaf_field(res, p):
    """The structure-defining field (2x, 2y, -(x^2+y^2)(m/(C+z) - n/(C-z))).

    Equals the spatial gradient of the defining polynomial on the level set,
    so it is collinear with casimir_gradient.
    """
    p = np.asarray(p, dtype=float)
    x, y, z = (float(c) for c in p)
    rho2 = x * x + y * y
    c = solve_casimir(res, p).value
    return np.array([2.0 * x, 2.0 * y, _field_third_component(res, rho2, z, c)])


def scaling_factor(res, p):
    """Factor relating field and gradient: leaf_field = factor * gradient.

    Always (x^2+y^2)(m/(C+z) + n/(C-z)) at the solved level.  Strictly
    positive for the bounded family (C > |z| makes both terms positive);
    nonvanishing but of either sign for the unbounded one.
    """
    p = np.asarray(p, dtype=float)
    x, y, z = (float(c) for c in p)
    c = solve_casimir(res, p).value
    return _scale_from_value(res, x * x + y * y, z, c)
