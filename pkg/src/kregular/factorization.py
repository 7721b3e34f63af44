"""Factorization chains ``A = A_k ... A_1`` and their k-regularity.

A chain is k-regular when the canonical isometry

    Z_k (D_A h) = D_{A_k} A_{k-1}...A_1 h  (+)  ...  (+)  D_{A_2} A_1 h  (+)  D_{A_1} h

from the defect space of the product onto the direct sum of the factor
defect spaces is unitary.  Four independent decision routes are computed
and compared:

* ``unitary``      -- tabulate Z_k and test both unitarity defects;
* ``dimension``    -- ``dim D_A == sum dim D_{A_i}`` (finite dimensions);
* ``cascade``      -- every split ``(A_k...A_{j+1})(A_j...A_1)`` is 2-regular;
* ``intersection`` -- ``ran D_{A_{j+1}} ∩ ran D_{(A_j...A_1)*} = {0}`` for all j.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .defect import CODOMAIN, DOMAIN, Contraction, DefectSpace, as_contraction, defect_space
from .errors import DimensionMismatch, InvalidPartition, KRegularError, NotContraction, NumericalBreakdown
from .matrix_core import (
    DEFAULT_TOL,
    ToleranceProfile,
    block_diag,
    intersection_dim,
    operator_norm,
    unitarity_defect,
)

__all__ = [
    "InvalidChain",
    "FactorizationChain",
    "Partition",
    "RegularityReport",
    "build_chain",
    "z_matrix",
    "check_k_regular",
    "cascade_criterion",
    "intersection_criterion",
    "aggregate",
    "block_chains",
    "verify_partition_identity",
    "adjoint_chain",
    "all_partitions",
]


class InvalidChain(KRegularError, ValueError):
    """Raised for chains with fewer than two factors."""


@dataclass(frozen=True, eq=False)
class FactorizationChain:
    """Ordered factors ``A_1, ..., A_k`` (``A_1`` acts first).

    ``partials[i]`` is ``A_i ... A_1`` (``partials[0]`` is the identity on
    the input space) and ``defects[i]`` the domain defect space of
    ``A_{i+1}``.
    """

    factors: tuple
    product: Contraction
    partials: tuple
    defects: tuple
    product_defect: DefectSpace
    tol: ToleranceProfile

    @property
    def k(self):
        return len(self.factors)

    @property
    def matrices(self):
        return [f.matrix for f in self.factors]

    @property
    def factor_dims(self):
        return tuple(d.dim for d in self.defects)


def _product(mats, n_in):
    P = np.eye(n_in, dtype=np.complex128)
    partials = [P]
    for A in mats:
        P = A @ P
        partials.append(P)
    return partials


def build_chain(factors: Sequence, tol: ToleranceProfile = DEFAULT_TOL) -> FactorizationChain:
    """Validate factors ``[A_1, ..., A_k]`` and cache products and defect spaces."""
    if len(factors) < 2:
        raise InvalidChain(f"a factorization chain needs k >= 2 factors, got {len(factors)}")
    cs = [as_contraction(A, tol, index=i + 1) for i, A in enumerate(factors)]
    for i in range(1, len(cs)):
        if cs[i].shape[1] != cs[i - 1].shape[0]:
            raise DimensionMismatch(
                f"factor {i + 1} has {cs[i].shape[1]} columns but factor {i} has {cs[i - 1].shape[0]} rows"
            )
    partials = _product([c.matrix for c in cs], cs[0].shape[1])
    P = partials[-1]
    pnorm = operator_norm(P)
    if pnorm > (1.0 + tol.contraction_tol) ** len(cs):
        raise NotContraction(f"product norm {pnorm:.12g} exceeds 1", norm=pnorm)
    product = Contraction(P, pnorm)
    return FactorizationChain(
        factors=tuple(cs),
        product=product,
        partials=tuple(partials),
        defects=tuple(defect_space(c, DOMAIN, tol) for c in cs),
        product_defect=defect_space(product, DOMAIN, tol),
        tol=tol,
    )


def _tabulate(partials, defects, domain: DefectSpace):
    # rows ordered D_{A_k} first, D_{A_1} last
    H = domain.preimage
    blocks = [defects[i].coords(partials[i] @ H) for i in reversed(range(len(defects)))]
    if not blocks:
        return np.zeros((0, domain.dim), dtype=np.complex128)
    return np.vstack(blocks)


def z_matrix(chain: FactorizationChain, check=True) -> np.ndarray:
    """Matrix of Z_k in the orthonormal defect bases.

    Column ``j`` is ``Z_k`` applied to the ``j``-th basis vector of ``D_A``;
    rows are stacked as ``D_{A_k}, ..., D_{A_1}``.
    """
    Z = _tabulate(chain.partials, chain.defects, chain.product_defect)
    if check:
        left, _ = unitarity_defect(Z)
        if left > chain.tol.unitary_tol:
            raise NumericalBreakdown(f"Z_k fails to be isometric: ||Z*Z - I|| = {left:.3e}")
    return Z


@dataclass(frozen=True, eq=False)
class RegularityReport:
    z_matrix: np.ndarray
    isometry_defect: float
    coisometry_defect: float
    dim_product: int
    dim_sum: int
    factor_dims: tuple
    verdict_unitary: bool
    verdict_dimension: bool
    verdict_cascade: Optional[bool]
    verdict_intersection: Optional[bool]

    @property
    def verdicts(self):
        out = {"unitary": self.verdict_unitary, "dimension": self.verdict_dimension}
        if self.verdict_cascade is not None:
            out["cascade"] = self.verdict_cascade
        if self.verdict_intersection is not None:
            out["intersection"] = self.verdict_intersection
        return out

    @property
    def consistent(self):
        return len(set(self.verdicts.values())) == 1

    @property
    def regular(self):
        return self.verdict_unitary


def _basic_report(chain):
    Z = z_matrix(chain, check=False)
    left, right = unitarity_defect(Z)
    if left > chain.tol.unitary_tol:
        raise NumericalBreakdown(f"Z_k fails to be isometric: ||Z*Z - I|| = {left:.3e}")
    d = chain.product_defect.dim
    ds = sum(chain.factor_dims)
    same = d == ds
    unitary = same and max(left, right) <= chain.tol.unitary_tol
    return Z, left, right, d, ds, unitary, same


def check_k_regular(chain: FactorizationChain, cross_check=True) -> RegularityReport:
    """Decide k-regularity; with ``cross_check`` all four routes are evaluated."""
    Z, left, right, d, ds, unitary, same = _basic_report(chain)
    cascade = cascade_criterion(chain) if cross_check else None
    inter = intersection_criterion(chain) if cross_check else None
    return RegularityReport(
        z_matrix=Z,
        isometry_defect=left,
        coisometry_defect=right,
        dim_product=d,
        dim_sum=ds,
        factor_dims=chain.factor_dims,
        verdict_unitary=unitary,
        verdict_dimension=same,
        verdict_cascade=cascade,
        verdict_intersection=inter,
    )


def _uppers(chain):
    """``uppers[j] = A_k ... A_{j+1}`` for ``j = 1..k-1`` (index 0 unused)."""
    mats = chain.matrices
    out = [None] * chain.k
    P = mats[-1]
    out[chain.k - 1] = P
    for j in range(chain.k - 2, 0, -1):
        P = P @ mats[j]
        out[j] = P
    return out


def _two_regular(lower, d_lower, d_upper, d_product, tol):
    Z = np.vstack([d_upper.coords(lower @ d_product.preimage), d_lower.coords(d_product.preimage)])
    if d_product.dim != d_lower.dim + d_upper.dim:
        return False
    return max(unitarity_defect(Z)) <= tol.unitary_tol


def cascade_criterion(chain: FactorizationChain) -> bool:
    """All splits ``(A_k...A_{j+1})(A_j...A_1)``, ``j = 1..k-1``, are 2-regular."""
    uppers = _uppers(chain)
    ok = True
    for j in range(1, chain.k):
        lower = chain.partials[j]
        d_lower = chain.defects[0] if j == 1 else defect_space(lower, DOMAIN, chain.tol)
        d_upper = chain.defects[-1] if j == chain.k - 1 else defect_space(uppers[j], DOMAIN, chain.tol)
        if not _two_regular(lower, d_lower, d_upper, chain.product_defect, chain.tol):
            ok = False
    return ok


def intersection_criterion(chain: FactorizationChain) -> bool:
    """Range intersections ``D_{A_{j+1}} H ∩ D_{(A_j...A_1)*} H`` are all trivial."""
    for j in range(1, chain.k):
        U = chain.defects[j].basis
        V = defect_space(chain.partials[j], CODOMAIN, chain.tol).basis
        if intersection_dim(U, V, chain.tol) > 0:
            return False
    return True


@dataclass(frozen=True)
class Partition:
    """Consecutive blocks of ``{1..k}`` given by their last indices.

    ``cut_points = (j_1, ..., j_r)`` with ``j_r = k`` produces the blocks
    ``J_1 = {1..j_1}``, ``J_2 = {j_1+1..j_2}``, ...
    """

    cut_points: tuple

    def blocks(self):
        out, start = [], 1
        for j in self.cut_points:
            out.append(tuple(range(start, j + 1)))
            start = j + 1
        return out

    def validate(self, k):
        cuts = tuple(self.cut_points)
        if not cuts or cuts[-1] != k:
            raise InvalidPartition(f"last cut point must equal k={k}, got {cuts}")
        if any(b <= a for a, b in zip(cuts, cuts[1:])) or cuts[0] < 1:
            raise InvalidPartition(f"cut points must be strictly increasing in [1, k], got {cuts}")
        if len(cuts) < 2:
            raise InvalidPartition("a partition into a single block does not define a chain (r >= 2 required)")


def all_partitions(k):
    """Every partition of ``{1..k}`` into ``r >= 2`` consecutive blocks."""
    out = []
    for r in range(1, k):
        for cuts in combinations(range(1, k), r):
            out.append(Partition(tuple(cuts) + (k,)))
    return out


def _block_product(chain, block):
    P = chain.factors[block[0] - 1].matrix
    for i in block[1:]:
        P = chain.factors[i - 1].matrix @ P
    return P


def aggregate(chain: FactorizationChain, p: Partition) -> FactorizationChain:
    """The r-chain ``A_{J_r} ... A_{J_1}`` of block products."""
    p.validate(chain.k)
    agg = build_chain([_block_product(chain, b) for b in p.blocks()], chain.tol)
    drift = operator_norm(agg.product.matrix - chain.product.matrix)
    if drift > 1e-12:
        raise NumericalBreakdown(f"aggregated product drifted by {drift:.3e}")
    return agg


def block_chains(chain: FactorizationChain, p: Partition):
    """Sub-chains ``A_{j_i} ... A_{j_{i-1}+1}`` for every block with two or more factors."""
    p.validate(chain.k)
    return [
        build_chain([chain.factors[i - 1].matrix for i in b], chain.tol)
        for b in p.blocks()
        if len(b) >= 2
    ]


def verify_partition_identity(chain: FactorizationChain, p: Partition, tol=None) -> float:
    """Residual ``||Z_k - (⊕_i Z_{|J_i|}) Z_r||`` for the partition ``p``.

    Block isometries are tabulated from the aggregated factor's defect basis
    into the original factors' defect bases, and ``Z_r`` starts from the
    original product's defect basis, so no separate basis alignment is
    needed (degenerate eigenvalues make independently computed bases
    differ by a rotation).  Singleton blocks reduce to the identity on
    ``D_{A_j}``.
    """
    p.validate(chain.k)
    agg = aggregate(chain, p)
    Zk = z_matrix(chain)
    Zr = _tabulate(agg.partials, agg.defects, chain.product_defect)
    blocks = []
    for i, b in reversed(list(enumerate(p.blocks()))):
        mats = [chain.factors[j - 1].matrix for j in b]
        partials = _product(mats, mats[0].shape[1])[:-1]
        defects = [chain.defects[j - 1] for j in b]
        blocks.append(_tabulate(partials, defects, agg.defects[i]))
    return operator_norm(Zk - block_diag(blocks) @ Zr)


def adjoint_chain(chain: FactorizationChain) -> FactorizationChain:
    """The chain ``A* = A_1* ... A_k*`` (new first factor is ``A_k*``)."""
    return build_chain([f.matrix.conj().T for f in reversed(chain.factors)], chain.tol)
