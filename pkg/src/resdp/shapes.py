"""Generating curves and surfaces of revolution for the Kummer shape families.

Bounded shapes (n:m) live in |z| < c and close up at two poles on the z
axis; the generating curve is sampled with cosine spacing so the cusp-like
poles are well resolved, and the mesh is capped with small fans whose apex
sits exactly at (0, 0, +/-c), where the defining polynomial vanishes
identically.  Unbounded shapes (n:-m) live in |z| > c; the lower sheet
exists exactly when n and m have equal parity, and meshes are truncated at
a configurable |z| = z_max window.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadParams
from .phase_space import PLUS, int_pow

DEFAULT_DELTA = 1e-6

# Relative clearance every emitted vertex keeps from the Oz axis (pole-cap
# apexes excepted); the pole insets are widened until the cusp radius beats
# this with a factor-10 safety margin.
AXIS_MARGIN = 1e-9


@dataclass(frozen=True)
class Polyline:
    """Ordered (y, z) samples of a generating curve."""

    points: np.ndarray
    label: str = ""


@dataclass(frozen=True)
class TriangleMesh:
    """Vertex array (V, 3) plus 0-based triangle index array (T, 3)."""

    vertices: np.ndarray
    triangles: np.ndarray
    label: str = ""


def _radius_squared_bounded(res, c, z):
    return int_pow((c + z) / res.n, res.m) * int_pow((c - z) / res.m, res.n)


def _radius_squared_unbounded(res, c, z):
    return int_pow((z + c) / res.n, res.m) * int_pow((z - c) / res.m, res.n)


def has_lower_sheet(res):
    """Unbounded shapes have a z < -c component iff n and m share parity."""
    return (res.n + res.m) % 2 == 0


def _check_geometry_params(c, samples):
    if c <= 0.0:
        raise BadParams(f"need c > 0, got {c}")
    if samples < 2:
        raise BadParams(f"need at least 2 samples, got {samples}")


def generating_curve(res, c, samples, delta=DEFAULT_DELTA, z_max=None):
    """Sample the generating curve(s) of the shape at level c.

    Returns a list of Polylines: one for the bounded family, one or two
    (upper sheet, then lower sheet when present) for the unbounded family.
    """
    _check_geometry_params(c, samples)
    if res.sign == PLUS:
        # The curve has a cusp of order max(n, m)/2 at each pole, so the
        # inset is widened until the end radius clears the axis margin.
        tau = 10.0 * AXIS_MARGIN * (1.0 + c)
        g_top = max(c * delta,
                    res.m * (tau * tau * (res.n / (2.0 * c)) ** res.m) ** (1.0 / res.n))
        g_bot = max(c * delta,
                    res.n * (tau * tau * (res.m / (2.0 * c)) ** res.n) ** (1.0 / res.m))
        mid = 0.5 * ((c - g_top) + (-c + g_bot))
        half = 0.5 * ((c - g_top) - (-c + g_bot))
        z = mid - half * np.cos(np.pi * np.arange(samples) / (samples - 1))
        y = np.sqrt(_radius_squared_bounded(res, c, z))
        return [Polyline(np.column_stack([y, z]), label="bounded")]
    if z_max is None:
        z_max = 3.0 * c
    lo = c * (1.0 + delta)
    if z_max <= lo:
        raise BadParams(f"need z_max > c(1+delta), got {z_max}")
    z = np.linspace(lo, z_max, samples)
    curves = [Polyline(np.column_stack([np.sqrt(_radius_squared_unbounded(res, c, z)), z]),
                       label="upper")]
    if has_lower_sheet(res):
        zl = np.linspace(-z_max, -lo, samples)
        curves.append(Polyline(
            np.column_stack([np.sqrt(_radius_squared_unbounded(res, c, zl)), zl]),
            label="lower"))
    return curves


def _revolve(profile, slices, close_bottom=None, close_top=None, label=""):
    """Revolve a (radius, z) profile around the z axis into a triangle mesh.

    Optional cap apexes (x, y, z) close the tube with triangle fans.
    """
    radii = profile[:, 0]
    zs = profile[:, 1]
    rings = len(profile)
    theta = 2.0 * np.pi * np.arange(slices) / slices
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    verts = []
    for rho, z in zip(radii, zs):
        ring = np.column_stack([rho * cos_t, rho * sin_t, np.full(slices, z)])
        verts.append(ring)
    vertices = np.vstack(verts)
    tris = []
    for i in range(rings - 1):
        base, nxt = i * slices, (i + 1) * slices
        for j in range(slices):
            k = (j + 1) % slices
            tris.append([base + j, base + k, nxt + k])
            tris.append([base + j, nxt + k, nxt + j])
    if close_bottom is not None:
        apex = len(vertices)
        vertices = np.vstack([vertices, close_bottom])
        for j in range(slices):
            k = (j + 1) % slices
            tris.append([apex, k, j])
    if close_top is not None:
        apex = len(vertices)
        vertices = np.vstack([vertices, close_top])
        top = (rings - 1) * slices
        for j in range(slices):
            k = (j + 1) % slices
            tris.append([apex, top + j, top + k])
    return TriangleMesh(vertices=vertices, triangles=np.array(tris, dtype=int),
                        label=label)


def surface_mesh(res, c, slices, rings, z_max=None, delta=DEFAULT_DELTA):
    """Mesh the shape at level c by revolving its generating curve.

    Returns a list of TriangleMeshes (one per connected component).  Bounded
    meshes are closed with polar fans; unbounded ones are open tubes.
    """
    _check_geometry_params(c, 2)
    if slices < 3:
        raise BadParams(f"need at least 3 slices, got {slices}")
    if rings < 2:
        raise BadParams(f"need at least 2 rings, got {rings}")
    curves = generating_curve(res, c, rings, delta=delta, z_max=z_max)
    if res.sign == PLUS:
        profile = curves[0].points
        return [_revolve(profile, slices,
                         close_bottom=np.array([0.0, 0.0, -c]),
                         close_top=np.array([0.0, 0.0, c]),
                         label="bounded")]
    return [_revolve(curve.points, slices, label=curve.label) for curve in curves]


def merge_meshes(meshes):
    """Concatenate mesh components into one mesh with offset indices."""
    if not meshes:
        return TriangleMesh(vertices=np.zeros((0, 3)), triangles=np.zeros((0, 3), dtype=int))
    verts, tris, offset = [], [], 0
    for mesh in meshes:
        verts.append(mesh.vertices)
        if len(mesh.triangles):
            tris.append(mesh.triangles + offset)
        offset += len(mesh.vertices)
    triangles = np.vstack(tris) if tris else np.zeros((0, 3), dtype=int)
    return TriangleMesh(vertices=np.vstack(verts), triangles=triangles,
                        label="+".join(m.label for m in meshes if m.label))


def mesh_residual(res, c, mesh):
    """Max |defining polynomial| over the mesh vertices at level c."""
    v = mesh.vertices
    if res.sign == PLUS:
        vals = v[:, 0] ** 2 + v[:, 1] ** 2 - _radius_squared_bounded(res, c, v[:, 2])
    else:
        vals = v[:, 0] ** 2 + v[:, 1] ** 2 - _radius_squared_unbounded(res, c, v[:, 2])
    return float(np.max(np.abs(vals))) if len(vals) else 0.0


def _fmt(x):
    return format(float(x), ".17g")


def export(geometry, fmt, path):
    """Write a Polyline or TriangleMesh as CSV or OBJ.

    CSV: comma separated, header line, floats at 17 significant digits, LF
    endings.  OBJ: "v x y z" records then 1-based "f i j k" faces (meshes)
    or an "l" polyline record (curves); no normals.
    """
    if fmt not in ("csv", "obj"):
        raise BadParams(f"format must be 'csv' or 'obj', got {fmt!r}")
    with open(path, "w", newline="\n") as fh:
        if isinstance(geometry, Polyline):
            if fmt == "csv":
                fh.write("y,z\n")
                for y, z in geometry.points:
                    fh.write(f"{_fmt(y)},{_fmt(z)}\n")
            else:
                for y, z in geometry.points:
                    fh.write(f"v 0 {_fmt(y)} {_fmt(z)}\n")
                if len(geometry.points) > 1:
                    fh.write("l " + " ".join(str(i + 1) for i in range(len(geometry.points))) + "\n")
        elif isinstance(geometry, TriangleMesh):
            if fmt == "csv":
                fh.write("x,y,z\n")
                for x, y, z in geometry.vertices:
                    fh.write(f"{_fmt(x)},{_fmt(y)},{_fmt(z)}\n")
            else:
                for x, y, z in geometry.vertices:
                    fh.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
                for i, j, k in geometry.triangles:
                    fh.write(f"f {i + 1} {j + 1} {k + 1}\n")
        else:
            raise BadParams(f"cannot export {type(geometry).__name__}")
