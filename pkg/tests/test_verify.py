from fractions import Fraction

import pytest
import sympy

from epslab import verify
from epslab.errors import DomainError, PrecisionError
from epslab.localdata import TameExtensionDescriptor as D, UnramifiedCharacterData as U


def _as_sympy(poly):
    A, F = sympy.symbols("A F")
    return sum((c * A**i * F**j for (i, j), c in poly.items()), sympy.Integer(0))


@pytest.mark.parametrize("f_K", [1, 2, 3, 4, 5, 6])
def test_le81_determinant_against_sympy(f_K):
    A, F = sympy.symbols("A F")
    m = sympy.Matrix(f_K, f_K, lambda i, j: sympy.Integer(int(i == j)))
    for i in range(1, f_K):
        m[i, i - 1] -= A
    m[0, f_K - 1] -= A * F
    det = verify.leibniz_det(verify.le81_matrix(f_K))
    assert sympy.expand(m.det() - _as_sympy(det)) == 0
    assert sympy.expand(_as_sympy(det) - (1 - A**f_K * F)) == 0


def test_le81_runner():
    rep = verify.run_le81_determinant(3)
    assert rep["pass"] and rep["determinant"] == "1 - A^3*F"
    with pytest.raises(DomainError):
        verify.run_le81_determinant(0)
    rep = verify.run_le81_determinant(2, u=4)
    assert rep["pass"] and rep["part2"]["norm_valuation"] == 1


@pytest.mark.parametrize(
    "d,u",
    [
        (D(5, f=2), 2),
        (D(5, e=2), 4),
        (D(5, e=3, f=2), 6),
        (D(5, e_K=2, e=3, f=2), 2),
        (D(7, f_K=2, e=2), 3),
    ],
)
def test_lemma80_cases(d, u):
    rep = verify.run_lemma80(d, U(d.p, Fraction(u)))
    assert rep["pass"], rep


def test_snf_runner():
    assert verify.run_snf(5, 4, 2)["profile"]["divisor_exponents"] == [0, 1]
    with pytest.raises(PrecisionError):
        verify.run_snf(5, -1, 2)


def test_small_runners():
    assert verify.run_gamma({-1: 1})["pass"]
    assert verify.run_hasse_davenport(3, 2)["pass"]
    assert verify.run_gauss_sum(9)["pass"]
    assert verify.run_epsilon_anchor(7, 2, 1)["pass"]
    assert verify.run_taylor_unit(7, 3)["pass"]
    assert verify.run_nr_diagram(3, 2, 2, trials=5)["pass"]
    assert verify.run_conductor_induction({"p": 5, "e": 4})["pass"]
    assert verify.run_class_number()["pass"]
    rep = verify.run_lfun_fe(s_values=("0.5",), moduli=[5, 8])
    assert rep["pass"]


def test_jsonable():
    out = verify.jsonable({"a": Fraction(1, 3), "b": (1, 2), 3: {"c": None}})
    assert out == {"a": "1/3", "b": [1, 2], "3": {"c": None}}
