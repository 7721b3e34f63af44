"""Contractions, defect operators and defect spaces.

For a contraction ``T: C^n -> C^m`` the domain-side defect operator is
``D_T = (I - T*T)^{1/2}`` on C^n and the codomain-side one is
``D_{T*} = (I - TT*)^{1/2}`` on C^m.  The defect space is the range of the
defect operator.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NotContraction
from .matrix_core import DEFAULT_TOL, as_matrix, hermitian_psd_eig, operator_norm

__all__ = [
    "Contraction",
    "DefectSpace",
    "as_contraction",
    "defect_gram",
    "defect_operator",
    "defect_space",
]

DOMAIN = "domain"
CODOMAIN = "codomain"


@dataclass(frozen=True, eq=False)
class Contraction:
    matrix: np.ndarray
    norm: float

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def H(self):
        return Contraction(self.matrix.conj().T, self.norm)


def as_contraction(M, tol=DEFAULT_TOL, index=None):
    """Validate ``M`` as a contraction (``||M|| <= 1 + contraction_tol``)."""
    if isinstance(M, Contraction):
        return M
    A = as_matrix(M, name="factor" if index is None else f"factor {index}")
    nrm = operator_norm(A)
    if nrm > 1.0 + tol.contraction_tol:
        where = "" if index is None else f" (factor {index})"
        raise NotContraction(f"operator norm {nrm:.12g} exceeds 1{where}", index=index, norm=nrm)
    A.setflags(write=False)
    return Contraction(A, nrm)


def _side(side):
    if side not in (DOMAIN, CODOMAIN):
        raise ValueError(f"side must be 'domain' or 'codomain', got {side!r}")
    return side


def defect_gram(T, side=DOMAIN):
    """``I - T*T`` (domain side) or ``I - TT*`` (codomain side)."""
    A = T.matrix if isinstance(T, Contraction) else as_matrix(T)
    if _side(side) == DOMAIN:
        return np.eye(A.shape[1]) - A.conj().T @ A
    return np.eye(A.shape[0]) - A @ A.conj().T


def _neg_tol(tol):
    # ||T|| <= 1 + c  =>  I - T*T >= -(2c + c^2)
    c = tol.contraction_tol
    return max(tol.rank_tol, 2.0 * c + c * c)


def defect_operator(T, side=DOMAIN, tol=DEFAULT_TOL):
    """The defect operator ``D_T`` or ``D_{T*}`` as a dense Hermitian matrix.

    Eigenvalues of ``I - T*T`` not exceeding ``rank_tol`` are set to zero, so
    the range is exactly the span of :func:`defect_space`.
    """
    w, V = hermitian_psd_eig(defect_gram(T, side), tol, neg_tol=_neg_tol(tol), check=False)
    w = np.where(w > tol.rank_tol, w, 0.0)
    return (V * np.sqrt(w)) @ V.conj().T


@dataclass(frozen=True, eq=False)
class DefectSpace:
    """Orthonormal eigenbasis of a defect space.

    ``basis[:, j]`` is an eigenvector of the defect operator with eigenvalue
    ``mu[j] > 0``.  ``preimage[:, j] = basis[:, j] / mu[j]`` is mapped onto
    ``basis[:, j]`` by the defect operator, which lets isometries defined on
    the range of a defect operator be tabulated column by column.
    """

    ambient_dim: int
    basis: np.ndarray
    mu: np.ndarray
    preimage: np.ndarray = field(repr=False)

    @property
    def dim(self):
        return self.basis.shape[1]

    def coords(self, x):
        """Coordinates of ``D x`` in ``basis`` (x a vector or a matrix of columns)."""
        return self.mu[:, None] * (self.basis.conj().T @ x) if np.ndim(x) == 2 \
            else self.mu * (self.basis.conj().T @ x)

    def projector(self):
        return self.basis @ self.basis.conj().T


def defect_space(T, side=DOMAIN, tol=DEFAULT_TOL):
    """Defect space of ``T`` on the requested side.

    The basis is read off the eigendecomposition of ``I - T*T`` (or
    ``I - TT*``): eigenvectors whose eigenvalue exceeds ``rank_tol``.
    """
    G = defect_gram(T, side)
    n = G.shape[0]
    w, V = hermitian_psd_eig(G, tol, neg_tol=_neg_tol(tol), check=False)
    keep = w > tol.rank_tol
    B = V[:, keep]
    mu = np.sqrt(w[keep])
    B.setflags(write=False)
    return DefectSpace(ambient_dim=n, basis=B, mu=mu, preimage=B / mu)
