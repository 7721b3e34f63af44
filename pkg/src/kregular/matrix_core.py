"""Dense complex linear algebra with explicit tolerances.

All matrices are plain ``numpy`` arrays of dtype ``complex128``.  Zero-sized
dimensions are allowed everywhere: an ``(m, 0)`` array is the (empty)
orthonormal basis of the zero subspace of C^m, and products with it keep
the bookkeeping of ambient dimensions consistent.
"""

from dataclasses import asdict, dataclass, replace

import numpy as np

from .errors import InvalidMatrix, NotHermitian, NotPSD

__all__ = [
    "ToleranceProfile",
    "DEFAULT_TOL",
    "as_matrix",
    "operator_norm",
    "hermitian_psd_eig",
    "psd_sqrt",
    "orthonormal_range_basis",
    "unitarity_defect",
    "subspace_cosines",
    "intersection_dim",
    "block_diag",
]


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical knobs used for every rank, unitarity and contraction decision.

    ``rank_tol`` is relative: a singular value ``s`` counts when
    ``s > rank_tol * s_max``.  For defect operators the cutoff is applied to
    the eigenvalues of ``I - T*T`` (whose largest possible value is 1).
    """

    rank_tol: float = 1e-10
    unitary_tol: float = 1e-8
    contraction_tol: float = 1e-8
    commute_tol: float = 1e-10

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name} must lie in (0, 1), got {value!r}")

    def with_overrides(self, **kwargs):
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs)

    def to_dict(self):
        return asdict(self)


DEFAULT_TOL = ToleranceProfile()


def as_matrix(M, name="matrix"):
    """Coerce ``M`` to a finite 2D complex array.

    Scalars become 1x1 matrices.  Zero-sized dimensions are accepted.
    """
    try:
        A = np.asarray(M, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"{name}: cannot convert to a complex array ({exc})") from None
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2:
        raise InvalidMatrix(f"{name}: expected a 2D array, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidMatrix(f"{name}: contains NaN or Inf entries")
    return A


def operator_norm(M):
    """Largest singular value (spectral norm); 0 for zero-sized matrices."""
    A = M if isinstance(M, np.ndarray) and M.ndim == 2 else as_matrix(M)
    if A.size == 0:
        return 0.0
    return float(np.linalg.svd(A, compute_uv=False)[0])


def _check_hermitian(H, tol):
    if H.shape[0] != H.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {H.shape}")
    if H.size == 0:
        return
    scale = max(1.0, float(np.linalg.norm(H, 2)))
    skew = float(np.linalg.norm(H - H.conj().T))
    if skew > tol.unitary_tol * scale:
        raise NotHermitian(f"||H - H*|| = {skew:.3e} exceeds {tol.unitary_tol:.1e}")


def hermitian_psd_eig(H, tol=DEFAULT_TOL, neg_tol=None, check=True):
    """Eigenpairs of a Hermitian PSD matrix, ascending, negatives clipped to 0.

    ``neg_tol`` is the absolute amount of negativity tolerated before
    :class:`NotPSD` is raised; it defaults to ``rank_tol * ||H||``.
    ``check=False`` skips the Hermitian test for matrices that are
    Hermitian by construction.
    """
    if not (isinstance(H, np.ndarray) and H.ndim == 2 and not check):
        H = as_matrix(H)
    if check:
        _check_hermitian(H, tol)
    n = H.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128)
    Hs = 0.5 * (H + H.conj().T)
    w, V = np.linalg.eigh(Hs)
    if neg_tol is None:
        neg_tol = tol.rank_tol * float(np.max(np.abs(w)))
    if w[0] < -neg_tol:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} below -{neg_tol:.1e}")
    return np.clip(w, 0.0, None), V


def psd_sqrt(H, tol=DEFAULT_TOL):
    """Hermitian PSD square root via the eigendecomposition of ``H``.

    Eigenvalues at or below ``rank_tol * ||H||`` are treated as zero, so
    rounding noise of order 1e-16 does not turn into 1e-8 noise in the root.
    """
    w, V = hermitian_psd_eig(H, tol)
    if w.size:
        w = np.where(w > tol.rank_tol * w.max(), w, 0.0)
    return (V * np.sqrt(w)) @ V.conj().T


def orthonormal_range_basis(M, tol=DEFAULT_TOL):
    """Orthonormal basis of the numerical range of ``M`` and its rank.

    Left singular vectors with ``s > rank_tol * s_max`` are kept.  A rank 0
    result is an ``(m, 0)`` array.
    """
    A = as_matrix(M)
    m = A.shape[0]
    if A.size == 0:
        return np.zeros((m, 0), dtype=np.complex128), 0
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    if s[0] == 0.0:
        return np.zeros((m, 0), dtype=np.complex128), 0
    r = int(np.count_nonzero(s > tol.rank_tol * s[0]))
    return U[:, :r].copy(), r


def unitarity_defect(M):
    """Return ``(||M*M - I||, ||MM* - I||)``.

    The first number measures failure to be an isometry, the second
    failure to be a co-isometry.  Both vanish for unitaries, including the
    0x0 matrix.
    """
    A = as_matrix(M)
    m, n = A.shape
    left = operator_norm(A.conj().T @ A - np.eye(n)) if n else 0.0
    right = operator_norm(A @ A.conj().T - np.eye(m)) if m else 0.0
    return left, right


def subspace_cosines(U, V):
    """Cosines of the principal angles between ``ran U`` and ``ran V``.

    ``U`` and ``V`` must have orthonormal columns.
    """
    if U.shape[1] == 0 or V.shape[1] == 0:
        return np.zeros(0)
    return np.linalg.svd(U.conj().T @ V, compute_uv=False)


def intersection_dim(U, V, tol=DEFAULT_TOL):
    """Number of principal angles with cosine above ``1 - rank_tol``."""
    return int(np.count_nonzero(subspace_cosines(U, V) > 1.0 - tol.rank_tol))


def block_diag(blocks):
    """Block diagonal matrix that tolerates zero-sized blocks."""
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
