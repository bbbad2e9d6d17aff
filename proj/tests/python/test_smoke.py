import math

import numpy as np
import pytest

import waring


def test_perfectness_and_counts():
    assert waring.is_perfect(2, [3, 3, 4]) == 7
    assert waring.is_perfect(2, [3, 4]) is None
    assert waring.veronese_count(6, 2) == math.comb(36, 26)
    assert [waring.pair_lower_bound(t) for t in (1, 2, 3)] == [1, 3, 8]


def test_monomial_order_and_forward_construction():
    mons = waring.monomials(2, 3)
    assert mons[0] == [2, 0, 0] and mons[-1] == [0, 0, 2] and len(mons) == 6
    f, truth = waring.forward_construct(2, [2, 3], seed=4)
    assert f["degrees"] == [2, 3]
    # f_1 evaluated at a point equals sum_i lambda_i^1 l_i(x)^2
    x = np.array([0.3 + 0.1j, -1.2, 0.7j])
    value = sum(c * np.prod(x ** np.array(m)) for c, m in zip(f["parts"][0], mons))
    expected = sum(lam * (form @ x) ** 2 for form, lam in zip(truth["forms"], truth["lambdas"][:, 0]))
    assert abs(value - expected) < 1e-10 * abs(expected)


def test_defect():
    assert waring.secant_defect(2, [2, 2, 6])["defect"] == 4
    assert waring.secant_defect(2, [3, 3, 4], seed=2)["defect"] == 0


def test_decompose_334():
    f, truth = waring.forward_construct(2, [3, 3, 4], seed=11)
    a = waring.nonabelian_matrix(f["num_vars"], f["degrees"], f["parts"])
    assert a.shape == (15, 14)
    assert np.linalg.matrix_rank(a, tol=1e-10 * np.linalg.norm(a, 2)) == 14
    dec = waring.decompose(f["num_vars"], f["degrees"], f["parts"], seed=11)
    assert dec["residual"] < 1e-8
    assert np.abs(dec["forms"] - truth["forms"]).max() < 1e-8
    r = waring.reconstruction_residual(f["num_vars"], f["degrees"], f["parts"], dec["forms"], dec["lambdas"])
    assert r < 1e-8


def test_count_small_case():
    res = waring.count_decompositions(2, [2, 3], seed=3, stall=4)
    assert res["count"] == 1 and res["status"] == "stabilized"


def test_errors():
    with pytest.raises(ValueError):
        waring.count_decompositions(2, [3, 4])
    with pytest.raises(waring.WaringError):
        waring.count_decompositions(2, [2, 2, 6])
