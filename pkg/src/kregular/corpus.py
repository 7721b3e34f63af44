"""Ground-truth fixtures: the classical finite-dimensional examples.

Three commuting triples that fail to admit commuting isometric dilations
(Kaijser-Varopoulos, Crabb-Davie, Parrott) and two analytic factorizations
(``z^k = z ... z`` realised by the compressed shift on
``H^2 ⊖ z^k H^2``, and ``diag(z^3, c)``).  Expected values are stored
with the case; :func:`run_case` recomputes everything with the generic
engines and compares.

Realisation of the compressed shift: ``H^2 ⊖ z^k H^2`` is identified with
C^k through the basis ``1, z, ..., z^{k-1}`` and multiplication by ``z``
followed by projection maps ``e_j -> e_{j+1}`` (``e_k -> 0``).  The
invariant subspaces ``z^{k-i} H^2 ⊖ z^k H^2`` become the coordinate spans
``span{e_{k-i+1}, ..., e_k}``.
"""

import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .analytic import (
    BoundaryGrid,
    MatrixPolynomial,
    align_coincidence,
    boundary_defect,
    build_analytic_chain,
    char_fn,
    purely_contractive_check,
    sampled_regularity,
)
from .commuting import chain_for_permutation, symmetric_k_regular, validate_tuple
from .defect import defect_operator
from .errors import NotProperContraction, NotUnitary
from .matrix_core import DEFAULT_TOL, as_matrix, operator_norm, unitarity_defect

__all__ = [
    "CorpusCase",
    "CheckRow",
    "kaijser_varopoulos",
    "crabb_davie",
    "parrott",
    "shift_compression",
    "diag_z3c",
    "all_cases",
    "CASES",
    "run_case",
    "invariant_chain_residuals",
    "triangular_blocks",
]


@dataclass
class CorpusCase:
    """A named example plus the values it is known to produce.

    ``expected`` maps a check name to its value; ``sources`` maps the same
    keys to a short note on where the value comes from.
    """

    name: str
    kind: str
    obj: Any
    expected: dict
    sources: dict
    extras: dict = field(default_factory=dict)


@dataclass
class CheckRow:
    case: str
    key: str
    expected: Any
    computed: Any
    passed: bool
    source: str = ""


def kaijser_varopoulos(tol=DEFAULT_TOL):
    a = 1.0 / np.sqrt(3.0)
    T1 = np.zeros((5, 5))
    T2 = np.zeros((5, 5))
    T3 = np.zeros((5, 5))
    T1[1, 0] = T2[2, 0] = T3[3, 0] = 1.0
    T1[4, 1:4] = [a, -a, -a]
    T2[4, 1:4] = [-a, a, -a]
    T3[4, 1:4] = [-a, -a, a]
    t = validate_tuple([T1, T2, T3], tol)
    src = "Kaijser-Varopoulos triple on C^5"
    return CorpusCase(
        name="kaijser_varopoulos",
        kind="commuting_tuple",
        obj=t,
        expected={
            "product_norm": 0.0,
            "dim_product": 5,
            "factor_dims": (3, 3, 3),
            "dim_sum": 9,
            "regular": False,
            "symmetric": False,
        },
        sources={
            "product_norm": f"{src}: T1 T2 T3 = 0",
            "dim_product": f"{src}: D_T = I_5",
            "factor_dims": f"{src}: each D_Ti is a rank 3 projection",
            "dim_sum": f"{src}: 3 + 3 + 3",
            "regular": f"{src}: 5 < 9 so Z is not onto",
            "symmetric": f"{src}: identity ordering already fails",
        },
    )


_CD_INDEX = {"e": 0, "f1": 1, "f2": 2, "f3": 3, "g1": 4, "g2": 5, "g3": 6, "h": 7}


def crabb_davie(tol=DEFAULT_TOL):
    """The 8-dimensional Crabb-Davie triple, built from its basis action."""
    ix = _CD_INDEX
    ops = []
    for i in (1, 2, 3):
        T = np.zeros((8, 8))
        T[ix[f"f{i}"], ix["e"]] = 1.0
        T[ix[f"g{i}"], ix[f"f{i}"]] = -1.0
        for j in (1, 2, 3):
            if j != i:
                (m,) = {1, 2, 3} - {i, j}
                T[ix[f"g{m}"], ix[f"f{j}"]] = 1.0
        T[ix["h"], ix[f"g{i}"]] = 1.0
        ops.append(T)
    t = validate_tuple(ops, tol)
    src = "Crabb-Davie triple on span{e, f1, f2, f3, g1, g2, g3, h}"
    product = np.zeros((8, 8))
    product[ix["h"], ix["e"]] = 1.0
    return CorpusCase(
        name="crabb_davie",
        kind="commuting_tuple",
        obj=t,
        expected={
            "product": product,
            "D_product": np.diag([0, 1, 1, 1, 1, 1, 1, 1.0]),
            "D_T1": np.diag([0, 0, 0, 0, 0, 1, 1, 1.0]),
            "D_T2": np.diag([0, 0, 0, 0, 1, 0, 1, 1.0]),
            "D_T3": np.diag([0, 0, 0, 0, 1, 1, 0, 1.0]),
            "dim_product": 7,
            "factor_dims": (3, 3, 3),
            "dim_sum": 9,
            "regular": False,
            "symmetric": False,
        },
        sources={
            "product": f"{src}: T e = h, all other basis vectors to 0",
            "D_product": f"{src}: T*T = diag(1, 0, ..., 0)",
            "D_T1": f"{src}: defect of T1",
            "D_T2": f"{src}: defect of T2",
            "D_T3": f"{src}: defect of T3",
            "dim_product": f"{src}: dim D_T = 7",
            "factor_dims": f"{src}: three defect projections of rank 3",
            "dim_sum": f"{src}: 3 + 3 + 3",
            "regular": f"{src}: 7 < 9 so Z is not onto",
            "symmetric": f"{src}: identity ordering already fails",
        },
    )


SWAP = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PHASE = np.diag([1, 1j])


def parrott(U=None, V=None, tol=DEFAULT_TOL):
    """Parrott's triple ``[[0, 0], [X, 0]]`` for ``X = I, U, V`` on ``C^n ⊕ C^n``."""
    U = SWAP if U is None else as_matrix(U, "U")
    V = PHASE if V is None else as_matrix(V, "V")
    n = U.shape[0]
    for name, X in (("U", U), ("V", V)):
        if X.shape != (n, n) or max(unitarity_defect(X)) > tol.unitary_tol:
            raise NotUnitary(f"{name} must be an {n}x{n} unitary")
    if operator_norm(U @ V - V @ U) <= tol.commute_tol:
        warnings.warn("U and V commute; the triple is valid but no longer Parrott's example")
    Z = np.zeros((n, n))
    I = np.eye(n)
    ops = [np.block([[Z, Z], [X, Z]]) for X in (I, U, V)]
    t = validate_tuple(ops, tol)
    src = f"Parrott triple with n = {n}"
    return CorpusCase(
        name="parrott",
        kind="commuting_tuple",
        obj=t,
        expected={
            "product_norm": 0.0,
            "dim_product": 2 * n,
            "factor_dims": (n, n, n),
            "dim_sum": 3 * n,
            "regular": False,
            "symmetric": False,
        },
        sources={
            "product_norm": f"{src}: T2 T1 = 0 so T = 0",
            "dim_product": f"{src}: D_T = I on K ⊕ K",
            "factor_dims": f"{src}: each D_Ti is the projection onto the second copy of K",
            "dim_sum": f"{src}: 3n",
            "regular": f"{src}: 2n < 3n",
            "symmetric": f"{src}: identity ordering already fails",
        },
        extras={"n": n},
    )


def shift_compression(k=3, tol=DEFAULT_TOL):
    """Compressed forward shift on ``H^2 ⊖ z^k H^2`` and the chain ``z^k = z ... z``."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    T = np.diag(np.ones(k - 1), -1).astype(np.complex128)
    eye = np.eye(k, dtype=np.complex128)
    subspaces = [eye[:, k - i:] for i in range(1, k)]
    chain = build_analytic_chain([MatrixPolynomial.monomial(1)] * k, MatrixPolynomial.monomial(k), tol)
    src = f"z^{k} factored as {k} copies of z"
    return CorpusCase(
        name="shift_compression",
        kind="analytic_chain",
        obj=chain,
        expected={
            "nilpotent_order": k,
            "invariant_residual": 0.0,
            "chain_dims": tuple(range(1, k)),
            "char_fn_misfit": 0.0,
            "sampled_regular": True,
            "block_char_fns": ("z",) * k,
            "purely_contractive": True,
        },
        sources={
            "nilpotent_order": f"{src}: compressed shift on span{{1, ..., z^{k - 1}}}",
            "invariant_residual": f"{src}: M_i = span{{z^(k-i), ..., z^(k-1)}} invariant",
            "chain_dims": f"{src}: M_1 ⊆ ... ⊆ M_(k-1) strictly",
            "char_fn_misfit": f"{src}: characteristic function coincides with z^{k}",
            "sampled_regular": f"{src}: all factors inner, every defect vanishes",
            "block_char_fns": f"{src}: diagonal blocks are the model operators of Theta_i(z) = z",
            "purely_contractive": f"{src}: Theta(0) = 0",
        },
        extras={"T": T, "subspaces": subspaces, "k": k},
    )


def diag_z3c(c=0.5, tol=DEFAULT_TOL):
    """``diag(z^3, c) = diag(1, c) diag(z, 1)^3`` as a 4-factor analytic chain."""
    c = complex(c)
    if abs(c) >= 1.0:
        raise NotProperContraction(f"|c| = {abs(c):.6g} must be < 1")
    inner = MatrixPolynomial([np.diag([0, 1.0]), np.diag([1.0, 0])])
    outer = MatrixPolynomial.constant(np.diag([1.0, c]))
    theta = MatrixPolynomial([np.diag([0, c]), np.zeros((2, 2)), np.zeros((2, 2)), np.diag([1.0, 0])])
    chain = build_analytic_chain([inner, inner, inner, outer], theta, tol)
    dc = np.sqrt(1.0 - abs(c) ** 2)
    src = f"diag(z^3, c) with c = {c:g}"
    return CorpusCase(
        name="diag_z3c",
        kind="analytic_chain",
        obj=chain,
        expected={
            "Delta_theta": np.diag([0.0, dc]),
            "Delta_factors": (np.zeros((2, 2)),) * 3 + (np.diag([0.0, dc]),),
            "sampled_regular": True,
            "purely_contractive": True,
        },
        sources={
            "Delta_theta": f"{src}: boundary defect diag(0, sqrt(1 - |c|^2))",
            "Delta_factors": f"{src}: first three factors inner, fourth has the same defect as Theta",
            "sampled_regular": f"{src}: 4-regular factorization",
            "purely_contractive": f"{src}: ||Theta(0)|| = |c| < 1",
        },
        extras={"c": c},
    )


CASES = {
    "kaijser_varopoulos": kaijser_varopoulos,
    "crabb_davie": crabb_davie,
    "parrott": parrott,
    "shift_compression": shift_compression,
    "diag_z3c": diag_z3c,
}


def all_cases(tol=DEFAULT_TOL):
    return [make(tol=tol) for make in CASES.values()]


def invariant_chain_residuals(T, subspaces):
    """``||(I - P_M) T B_M||`` for each orthonormal basis ``B_M`` in ``subspaces``."""
    out = []
    for B in subspaces:
        P = B @ B.conj().T
        out.append(operator_norm((np.eye(T.shape[0]) - P) @ T @ B))
    return out


def triangular_blocks(T, subspaces):
    """Diagonal blocks of ``T`` relative to the flag ``M_1 ⊂ ... ⊂ M_{k-1} ⊂ C^n``.

    Block ``i`` is the compression of ``T`` to ``M_i ⊖ M_{i-1}``.
    """
    n = T.shape[0]
    flag = list(subspaces) + [np.eye(n, dtype=np.complex128)]
    blocks, prev = [], np.zeros((n, 0), dtype=np.complex128)
    for B in flag:
        P_prev = prev @ prev.conj().T
        Q, R = np.linalg.qr((np.eye(n) - P_prev) @ B)
        keep = np.abs(np.diagonal(R)) > 1e-12
        W = Q[:, keep]
        blocks.append(W.conj().T @ T @ W)
        prev = np.hstack([prev, W])
    return blocks


def _dims_eq(a, b):
    return tuple(a) == tuple(b) if isinstance(b, tuple) else a == b


def _tuple_rows(case, tol):
    t = case.obj
    rep = symmetric_k_regular(t, use_shortcut=False)
    ident = rep.per_permutation[tuple(range(1, t.k + 1))]
    computed = {
        "product_norm": operator_norm(t.product),
        "product": t.product,
        "D_product": defect_operator(t.product, tol=tol),
        "dim_product": rep.product_defect_dim,
        "factor_dims": rep.per_factor_defect_dims,
        "dim_sum": ident.dim_sum,
        "regular": ident.regular if ident.consistent else None,
        "symmetric": rep.verdict if rep.consistent else None,
    }
    for i, c in enumerate(t.operators, start=1):
        computed[f"D_T{i}"] = defect_operator(c, tol=tol)
    return computed


def _shift_rows(case, tol, rng):
    T = case.extras["T"]
    k = case.extras["k"]
    subs = case.extras["subspaces"]
    order = next(p for p in range(1, k + 2)
                 if operator_norm(np.linalg.matrix_power(T, p)) < 1e-14)
    resid = max(invariant_chain_residuals(T, subs))
    # strict inclusions: rank grows by one and M_i ⊆ M_{i+1}
    dims = tuple(B.shape[1] for B in subs)
    nested = all(
        operator_norm(B - subs[i + 1] @ (subs[i + 1].conj().T @ B)) < 1e-12
        for i, B in enumerate(subs[:-1])
    )
    zs = 0.95 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
    F = [char_fn(T, z, tol) for z in zs]
    G = [np.array([[z ** k]]) for z in zs]
    _, _, misfit = align_coincidence(F, G)
    blocks = triangular_blocks(T, subs)
    block_fns = []
    for B in blocks:
        vals = [char_fn(B, z, tol) for z in zs[:5]]
        _, _, m = align_coincidence(vals, [np.array([[z]]) for z in zs[:5]])
        block_fns.append("z" if B.shape == (1, 1) and m < 1e-8 else "other")
    sampled = sampled_regularity(case.obj, BoundaryGrid(128), tol)
    return {
        "nilpotent_order": order,
        "invariant_residual": resid,
        "chain_dims": dims if nested else None,
        "char_fn_misfit": misfit,
        "sampled_regular": sampled.verdict,
        "block_char_fns": tuple(block_fns),
        "purely_contractive": purely_contractive_check(case.obj.product, tol),
    }


def _diag_rows(case, tol):
    ac = case.obj
    grid = BoundaryGrid(64)
    d_theta = max(operator_norm(boundary_defect(ac, t, tol=tol) - case.expected["Delta_theta"])
                  for t in grid.points)
    d_fac = max(
        operator_norm(boundary_defect(f, t, tol=tol) - e)
        for t in grid.points
        for f, e in zip(ac.factors, case.expected["Delta_factors"])
    )
    return {
        "Delta_theta": d_theta,
        "Delta_factors": d_fac,
        "sampled_regular": sampled_regularity(ac, grid, tol).verdict,
        "purely_contractive": purely_contractive_check(ac.product, tol),
    }


_MATRIX_TOL = 1e-10
_RESIDUAL_TOL = {"invariant_residual": 1e-12, "char_fn_misfit": 1e-8}


def run_case(case: CorpusCase, tol=DEFAULT_TOL, seed=0):
    """Recompute every expected value of ``case``; one :class:`CheckRow` per key."""
    rng = np.random.default_rng(seed)
    if case.kind == "commuting_tuple":
        computed = _tuple_rows(case, tol)
    elif case.name == "shift_compression":
        computed = _shift_rows(case, tol, rng)
    else:
        computed = _diag_rows(case, tol)
    rows = []
    for key, exp in case.expected.items():
        got = computed[key]
        if key in ("Delta_theta", "Delta_factors"):
            ok = got <= _MATRIX_TOL
        elif key in _RESIDUAL_TOL:
            ok = got <= _RESIDUAL_TOL[key]
        elif isinstance(exp, np.ndarray):
            ok = operator_norm(np.asarray(got) - exp) <= _MATRIX_TOL
        elif isinstance(exp, float):
            ok = abs(got - exp) <= _MATRIX_TOL
        else:
            ok = _dims_eq(got, exp)
        rows.append(CheckRow(case.name, key, exp, got, bool(ok), case.sources.get(key, "")))
    return rows


def identity_chain(case: CorpusCase):
    """Operator chain of a tuple case in the identity ordering (``A_1 = T_k``)."""
    t = case.obj
    return chain_for_permutation(t, tuple(range(1, t.k + 1)))
