import numpy as np
import pytest

from kregular.corpus import (
    CASES,
    all_cases,
    crabb_davie,
    diag_z3c,
    invariant_chain_residuals,
    kaijser_varopoulos,
    parrott,
    run_case,
    shift_compression,
    triangular_blocks,
)
from kregular.defect import defect_operator, defect_space
from kregular.errors import NotProperContraction, NotUnitary
from kregular.matrix_core import operator_norm
from kregular.sampling import random_unitary


@pytest.mark.parametrize("case", all_cases(), ids=lambda c: c.name)
def test_every_expected_value_is_reproduced(case):
    rows = run_case(case)
    assert rows
    bad = [(r.key, r.expected, r.computed) for r in rows if not r.passed]
    assert not bad
    assert all(r.source for r in rows)


def test_kaijser_varopoulos_values():
    t = kaijser_varopoulos().obj
    assert operator_norm(t.product) == 0.0
    assert [defect_space(c).dim for c in t.operators] == [3, 3, 3]


def test_crabb_davie_second_defect():
    T2 = crabb_davie().obj.operators[1].matrix
    np.testing.assert_allclose(defect_operator(T2), np.diag([0, 0, 0, 0, 1, 0, 1, 1]), atol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_parrott_dims(n):
    rng = np.random.default_rng(n)
    U, V = (None, None) if n == 2 else (random_unitary(rng, n), random_unitary(rng, n))
    case = parrott(U, V)
    assert [defect_space(c).dim for c in case.obj.operators] == [n] * 3
    assert defect_space(case.obj.product).dim == 2 * n
    assert all(r.passed for r in run_case(case))


def test_parrott_argument_checks():
    with pytest.raises(NotUnitary):
        parrott(np.eye(2) * 0.5, np.eye(2))
    with pytest.warns(UserWarning):
        parrott(np.eye(2), np.eye(2))


def test_shift_compression_structure():
    case = shift_compression(3)
    T = case.extras["T"]
    subs = case.extras["subspaces"]
    np.testing.assert_array_equal(subs[0], np.eye(3)[:, 2:])
    assert max(invariant_chain_residuals(T, subs)) == 0.0
    assert operator_norm(np.linalg.matrix_power(T, 3)) == 0.0
    assert operator_norm(np.linalg.matrix_power(T, 2)) > 0.5
    blocks = triangular_blocks(T, subs)
    assert [b.shape for b in blocks] == [(1, 1)] * 3
    assert all(b[0, 0] == 0 for b in blocks)


@pytest.mark.parametrize("k", range(2, 7))
def test_shift_compression_all_k(k):
    assert all(r.passed for r in run_case(shift_compression(k)))


@pytest.mark.parametrize("c", [0.5, 0.9, 0.3 + 0.4j])
def test_diag_z3c(c):
    assert all(r.passed for r in run_case(diag_z3c(c)))


def test_diag_z3c_rejects_unimodular_constant():
    with pytest.raises(NotProperContraction):
        diag_z3c(1.0)


def test_registry():
    assert set(CASES) == {"kaijser_varopoulos", "crabb_davie", "parrott", "shift_compression", "diag_z3c"}
