"""Hamiltonian flows on C^2 and on the reduced space, with bracket oracles.

The canonical bracket convention is pinned per complex plane by
{|a1|^2, a1} = 2i a1; the second plane enters with the same sign for "plus"
and the opposite sign for "minus".  The Hamiltonian vector field is the one
with d/dt F = {H, F}, under which the circle momentum generates exactly the
resonant circle action (e^{i n t} a1, e^{i m t} a2) for both signatures.

Both integrators are the classical one-step 4th-order scheme; conservation
is always measured, never assumed.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import casimir, phase_space as ps, resonance_maps as rm
from .errors import DomainExit, OffDomain, StepRejected
from .phase_space import PLUS

_BLOWUP_NORM = 1e6
_AXIS_MARGIN = 1e-9


@dataclass(frozen=True)
class Trajectory:
    """Time grid, states, and a log of conserved quantities per step."""

    times: np.ndarray
    states: np.ndarray
    conserved: dict

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have equal length")
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("times must be strictly increasing")


@dataclass(frozen=True)
class PhaseField:
    """Scalar function on phase space with optional analytic gradient."""

    fn: Callable
    grad: Optional[Callable] = None
    name: str = ""

    def __call__(self, a):
        return float(self.fn(np.asarray(a, dtype=float)))

    def gradient(self, a, step_scale=1e-6):
        a = np.asarray(a, dtype=float)
        if self.grad is not None:
            return np.asarray(self.grad(a), dtype=float)
        h = step_scale * (1.0 + np.linalg.norm(a))
        out = np.zeros(4)
        for i in range(4):
            e = np.zeros(4)
            e[i] = h
            out[i] = (self.fn(a + e) - self.fn(a - e)) / (2.0 * h)
        return out


def field_R(res):
    return PhaseField(lambda a: float(rm.circle_momentum(res, a)),
                      lambda a: rm.circle_momentum_gradient(res, a), "R")


def _leaf_component(res, idx, name):
    return PhaseField(lambda a: float(rm.leaf_map(res, a)[idx]),
                      lambda a: rm.leaf_map_jacobian(res, a)[idx], name)


def field_X(res):
    return _leaf_component(res, 0, "X")


def field_Y(res):
    return _leaf_component(res, 1, "Y")


def field_Z(res):
    return _leaf_component(res, 2, "Z")


@dataclass(frozen=True)
class DownstairsHamiltonian:
    """Linear Hamiltonian alpha*x + beta*y + gamma*z, optionally + h(Casimir)."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    casimir_fn: Optional[Callable] = None
    casimir_dfn: Optional[Callable] = None

    def value(self, res, p):
        p = np.asarray(p, dtype=float)
        out = self.alpha * p[0] + self.beta * p[1] + self.gamma * p[2]
        if self.casimir_fn is not None:
            out += self.casimir_fn(casimir.solve_casimir(res, p).value)
        return float(out)

    def gradient(self, res, p):
        p = np.asarray(p, dtype=float)
        out = np.array([self.alpha, self.beta, self.gamma])
        if self.casimir_fn is not None:
            ev = casimir.solve_casimir(res, p)
            out = out + self._dh(ev.value) * ev.gradient
        return out

    def _dh(self, c, step=1e-6):
        if self.casimir_dfn is not None:
            return self.casimir_dfn(c)
        return (self.casimir_fn(c + step) - self.casimir_fn(c - step)) / (2.0 * step)


def pullback(res, ham):
    """The downstairs Hamiltonian composed with the leaf map, with chain-rule gradient."""

    def fn(a):
        return ham.value(res, rm.leaf_map(res, a))

    def grad(a):
        p = rm.leaf_map(res, a)
        return rm.leaf_map_jacobian(res, a).T @ ham.gradient(res, p)

    return PhaseField(fn, grad, "pullback")


def circle_flow(res, a, t):
    """Exact resonant circle action: (e^{i n t} a1, e^{i m t} a2)."""
    a1, a2 = ps.to_complex(a)
    return ps.from_complex(np.exp(1j * res.n * t) * a1, np.exp(1j * res.m * t) * a2)


def poisson_tensor(sign):
    """Matrix P of the canonical bracket: {F, G} = grad F @ P @ grad G."""
    return -ps.omega_matrix(sign)


def canonical_bracket(sign, f, g, a):
    """Canonical bracket of two phase-space fields at the point a."""
    if not isinstance(f, PhaseField):
        f = PhaseField(f)
    if not isinstance(g, PhaseField):
        g = PhaseField(g)
    a = np.asarray(a, dtype=float)
    return float(f.gradient(a) @ poisson_tensor(sign) @ g.gradient(a))


def _rk4(rhs, y0, dt, steps):
    """Classical 4th-order one-step integration with a norm blowup guard."""
    out = np.empty((steps + 1, len(y0)))
    out[0] = y0
    y = np.asarray(y0, dtype=float)
    for k in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if np.linalg.norm(y) > _BLOWUP_NORM:
            raise StepRejected(f"state norm exceeded {_BLOWUP_NORM:g} at step {k + 1}")
        out[k + 1] = y
    return out


def _step_count(dt, total):
    if dt <= 0.0 or total < dt:
        raise ValueError("need dt > 0 and T >= dt")
    return int(round(total / dt))


def flow_upstairs(sign, hamiltonian, a0, dt, total_time):
    """Flow of the Hamiltonian vector field defined by the symplectic form."""
    ps.check_sign(sign)
    omega = ps.omega_matrix(sign)
    rhs = lambda a: omega @ hamiltonian.gradient(a)
    steps = _step_count(dt, total_time)
    states = _rk4(rhs, np.asarray(a0, dtype=float), dt, steps)
    times = dt * np.arange(steps + 1)
    log = np.array([hamiltonian(a) for a in states])
    return Trajectory(times=times, states=states, conserved={"H": log})


def _downstairs_domain_ok(res, p):
    x, y, z = float(p[0]), float(p[1]), float(p[2])
    rho2 = x * x + y * y
    margin = _AXIS_MARGIN * (1.0 + abs(x) + abs(y) + abs(z))
    if rho2 <= margin * margin:
        return False
    if res.sign == PLUS:
        return True
    bound = float(ps.int_pow(z, res.n + res.m))
    return float(res.n) ** res.m * float(res.m) ** res.n * rho2 < bound


def flow_downstairs(res, hamiltonian, p0, dt, total_time):
    """Flow of v x grad H for the resonance structure (field m*n*leaf_field).

    The Casimir is re-solved at every stage; leaving the structure domain
    raises DomainExit with the exit time rather than extrapolating.
    """
    p0 = np.asarray(p0, dtype=float)
    if not _downstairs_domain_ok(res, p0):
        raise OffDomain("initial point outside the structure domain")
    mn = float(res.mn)
    n, m = res.n, res.m
    linear_grad = None
    if hamiltonian.casimir_fn is None:
        linear_grad = (hamiltonian.alpha, hamiltonian.beta, hamiltonian.gamma)
    clock = {"t": 0.0}

    def rhs(p):
        if not _downstairs_domain_ok(res, p):
            raise DomainExit(clock["t"])
        x, y, z = float(p[0]), float(p[1]), float(p[2])
        rho2 = x * x + y * y
        c = casimir._solve_value(res, rho2, z)
        vx = 2.0 * mn * x
        vy = 2.0 * mn * y
        vz = -mn * rho2 * (m / (c + z) - n / (c - z))
        if linear_grad is not None:
            hx, hy, hz = linear_grad
        else:
            hx, hy, hz = hamiltonian.gradient(res, p)
        return np.array([vy * hz - vz * hy, vz * hx - vx * hz, vx * hy - vy * hx])

    steps = _step_count(dt, total_time)
    out = np.empty((steps + 1, 3))
    out[0] = p0
    p = p0
    for k in range(steps):
        clock["t"] = k * dt
        k1 = rhs(p)
        k2 = rhs(p + 0.5 * dt * k1)
        k3 = rhs(p + 0.5 * dt * k2)
        k4 = rhs(p + dt * k3)
        p = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if abs(p[0]) + abs(p[1]) + abs(p[2]) > _BLOWUP_NORM:
            raise StepRejected(f"state norm exceeded {_BLOWUP_NORM:g} at step {k + 1}")
        if not _downstairs_domain_ok(res, p):
            raise DomainExit((k + 1) * dt)
        out[k + 1] = p
    times = dt * np.arange(steps + 1)
    cvals = np.array([casimir.solve_casimir(res, q).value for q in out])
    hvals = np.array([hamiltonian.value(res, q) for q in out])
    return Trajectory(times=times, states=out, conserved={"C": cvals, "H": hvals})


def pushforward_defect(res, hamiltonian, a0, dt, total_time):
    """Worst gap between reduced upstairs flow and the downstairs flow.

    Integrates the pulled-back Hamiltonian upstairs, pushes every state
    through the leaf map, and compares with the downstairs trajectory from
    the projected initial point.
    """
    a0 = np.asarray(a0, dtype=float)
    up = flow_upstairs(res.sign, pullback(res, hamiltonian), a0, dt, total_time)
    p0 = rm.leaf_map(res, a0)
    down = flow_downstairs(res, hamiltonian, p0, dt, total_time)
    worst = 0.0
    for t, a, p in zip(up.times, up.states, down.states):
        q = rm.leaf_map(res, a)
        if not _downstairs_domain_ok(res, q):
            raise DomainExit(t)
        worst = max(worst, float(np.max(np.abs(q - p))))
    return worst


def conservation_report(res, a0, t_grid):
    """Max drift of (X, Y, Z, R) along the exact circle flow over a time grid."""
    a0 = np.asarray(a0, dtype=float)
    base = np.append(rm.leaf_map(res, a0), rm.circle_momentum(res, a0))
    worst = np.zeros(4)
    for t in t_grid:
        a = circle_flow(res, a0, t)
        now = np.append(rm.leaf_map(res, a), rm.circle_momentum(res, a))
        worst = np.maximum(worst, np.abs(now - base))
    return {"dX": worst[0], "dY": worst[1], "dZ": worst[2], "dR": worst[3],
            "max": float(np.max(worst))}
