"""Linear algebra of C^2 with both Hermitian signatures.

Points and tangent vectors of C^2 are stored as real 4-vectors in the fixed
coordinate order (x1, y1, x2, y2), so a1 = x1 + i*y1 and a2 = x2 + i*y2.
The ``sign`` argument selects the signature: "plus" pairs the definite
Hermitian product a1*conj(b1) + a2*conj(b2) with the symplectic form
-dx1^dy1 - dx2^dy2, while "minus" pairs a1*conj(b1) - a2*conj(b2) with
-dx1^dy1 + dx2^dy2.  In both cases form = Im and metric = Re of the
Hermitian product.
"""

import numpy as np

from .errors import DegenerateBasis, NotSkewHermitian

PLUS = "plus"
MINUS = "minus"

# Relative singular-value threshold for all rank decisions.
RANK_TOL = 1e-10

_SKEW_TOL = 1e-12


def check_sign(sign):
    if sign not in (PLUS, MINUS):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    return sign


def to_complex(a):
    """Split real 4-vectors of shape (..., 4) into complex pairs (a1, a2)."""
    a = np.asarray(a, dtype=float)
    return a[..., 0] + 1j * a[..., 1], a[..., 2] + 1j * a[..., 3]


def from_complex(a1, a2):
    """Assemble real 4-vectors from complex components (broadcasts)."""
    a1 = np.asarray(a1, dtype=complex)
    a2 = np.asarray(a2, dtype=complex)
    return np.stack([a1.real, a1.imag, a2.real, a2.imag], axis=-1)


def int_pow(z, k):
    """z**k for integer k >= 0 by square-and-multiply.

    Keeps complex powers exact in the exponent (no log/exp branch cuts) and
    works elementwise on arrays.
    """
    if k != int(k) or k < 0:
        raise ValueError("int_pow needs a nonnegative integer exponent")
    k = int(k)
    base = np.asarray(z)
    if base.dtype.kind in "iub":
        base = base.astype(float)
    result = np.ones_like(base)
    base = base.copy()
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def hermitian(sign, alpha, beta):
    """Hermitian product of the selected signature, linear in the first slot."""
    check_sign(sign)
    a1, a2 = to_complex(alpha)
    b1, b2 = to_complex(beta)
    if sign == PLUS:
        return a1 * np.conj(b1) + a2 * np.conj(b2)
    return a1 * np.conj(b1) - a2 * np.conj(b2)


def metric(u, v):
    """Euclidean inner product on R^4 (broadcasts over leading axes)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(u * v, axis=-1)


def omega_matrix(sign):
    """Matrix W of the symplectic form: form(u, v) = u @ W @ v."""
    check_sign(sign)
    s = 1.0 if sign == PLUS else -1.0
    return np.array([
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -s],
        [0.0, 0.0, s, 0.0],
    ])


def symplectic_form(sign, u, v):
    """Evaluate the selected symplectic form on two tangent 4-vectors."""
    check_sign(sign)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    first = -(u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0])
    second = u[..., 2] * v[..., 3] - u[..., 3] * v[..., 2]
    return first - second if sign == PLUS else first + second


def _numerical_rank(rows):
    s = np.linalg.svd(rows, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > RANK_TOL * s[0]))


def orthonormalize(vectors):
    """Return an orthonormal (Euclidean) basis spanning the given vectors."""
    rows = np.atleast_2d(np.asarray(vectors, dtype=float))
    u, s, vt = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((0, rows.shape[1]))
    rank = int(np.sum(s > RANK_TOL * s[0]))
    return vt[:rank]


def projector(vectors):
    """Orthogonal projector onto the span of the given vectors."""
    basis = orthonormalize(vectors)
    if basis.shape[0] == 0:
        return np.zeros((np.atleast_2d(vectors).shape[1],) * 2)
    return basis.T @ basis


def subspace_distance(vectors_a, vectors_b):
    """Max-norm distance between the orthogonal projectors of two spans."""
    return float(np.max(np.abs(projector(vectors_a) - projector(vectors_b))))


def symplectic_orthogonal(sign, basis):
    """Orthonormal basis of {u : form(u, b) = 0 for every b in basis}.

    The input vectors must be linearly independent; rank is decided by
    singular values with relative threshold 1e-10.
    """
    rows = np.atleast_2d(np.asarray(basis, dtype=float))
    if _numerical_rank(rows) < rows.shape[0]:
        raise DegenerateBasis(f"basis of {rows.shape[0]} vectors is rank deficient")
    # form(u, b) = u @ W @ b, so the constraints are rows of (W @ b_i)^T.
    w = omega_matrix(sign)
    constraints = rows @ w.T
    u, s, vt = np.linalg.svd(constraints)
    rank = int(np.sum(s > RANK_TOL * s[0])) if s.size and s[0] > 0 else 0
    return [vt[i] for i in range(rank, 4)]


def skew_defect(sign, xi):
    """Max-norm violation of <xi a, b> + <a, xi b> = 0 for the selected form."""
    check_sign(sign)
    xi = np.asarray(xi, dtype=complex)
    g = np.diag([1.0, 1.0]) if sign == PLUS else np.diag([1.0, -1.0])
    return float(np.max(np.abs(xi.conj().T @ g + g @ xi)))


def momentum_pairing_diagnostic(sign, a, xi):
    """Pairing (i/2)<a, xi(a)> with the imaginary residual as diagnostic.

    Returns (value, imag_residual).  Raises NotSkewHermitian when xi fails
    the skew condition of the selected form.
    """
    if skew_defect(sign, xi) > _SKEW_TOL:
        raise NotSkewHermitian(
            f"matrix is not skew for the {sign} form (defect {skew_defect(sign, xi):.3e})"
        )
    a1, a2 = to_complex(a)
    xi = np.asarray(xi, dtype=complex)
    b1 = xi[0, 0] * a1 + xi[0, 1] * a2
    b2 = xi[1, 0] * a1 + xi[1, 1] * a2
    if sign == PLUS:
        inner = a1 * np.conj(b1) + a2 * np.conj(b2)
    else:
        inner = a1 * np.conj(b1) - a2 * np.conj(b2)
    value = 0.5j * inner
    return float(value.real), float(abs(value.imag))


def momentum_pairing(sign, a, xi):
    """Real pairing of the point a with a skew matrix xi: (i/2)<a, xi(a)>."""
    value, _ = momentum_pairing_diagnostic(sign, a, xi)
    return value
