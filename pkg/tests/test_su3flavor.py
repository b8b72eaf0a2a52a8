import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liesym import su3flavor as f
from liesym.liecore import GeneratorBasis
from liesym.numkernel import commutator, max_abs


def _f_trace(a, b, c):
    x = [m / 2 for m in (f.gell_mann(a + 1), f.gell_mann(b + 1), f.gell_mann(c + 1))]
    return (-2j * np.trace(commutator(x[0], x[1]) @ x[2])).real


def test_structure_constants_vs_trace_oracle():
    sc = f.su3_structure_constants()
    oracle = np.array([[[_f_trace(a, b, c) for c in range(8)] for b in range(8)] for a in range(8)])
    assert max_abs(sc.f - oracle) < 1e-12
    assert f.total_antisymmetry_residual(sc.f) < 1e-12


@pytest.mark.parametrize("idx,val", [((1, 2, 3), 1.0), ((1, 4, 7), 0.5), ((1, 5, 6), -0.5),
                                     ((2, 4, 6), 0.5), ((3, 4, 5), 0.5), ((4, 5, 8), math.sqrt(3) / 2),
                                     ((6, 7, 8), math.sqrt(3) / 2)])
def test_standard_structure_constants(idx, val):
    sc = f.su3_structure_constants()
    a, b, c = (i - 1 for i in idx)
    assert abs(sc.f[a, b, c] - val) < 1e-12


def test_gell_mann_properties():
    lams = [f.gell_mann(a) for a in range(1, 9)]
    for i, a in enumerate(lams):
        assert np.array_equal(a, a.conj().T)
        for j, b in enumerate(lams):
            assert abs(np.trace(a @ b) - 2 * (i == j)) < 1e-15
    with pytest.raises(ValueError):
        f.gell_mann(9)


def test_lambda8_prefactor():
    assert np.allclose(np.linalg.eigvalsh(f.gell_mann(8)), np.array([-2, 1, 1]) / math.sqrt(3))
    assert abs(np.trace(f.lambda8_one_third_variant() @ f.lambda8_one_third_variant()) - 2) > 0.5


def test_weights():
    ws = f.fundamental_weights()
    want = [(0.5, math.sqrt(3) / 6), (-0.5, math.sqrt(3) / 6), (0.0, -math.sqrt(3) / 3)]
    for w, (i3, x8) in zip(ws, want):
        assert abs(w.i3 - i3) <= 1e-12 and abs(w.x8 - x8) <= 1e-12
        assert f.weight_eigen_residual(w) == 0.0
    assert abs(sum(w.i3 for w in ws)) < 1e-15 and abs(sum(w.x8 for w in ws)) < 1e-15
    assert [round(w.hypercharge * 3) for w in ws] == [1, 1, -2]


def test_weights_csv():
    rows = f.weights_csv().strip().split("\n")
    assert rows[0] == "label,i3,x8" and len(rows) == 4
    assert f.weights_csv(with_hypercharge=True).split("\n")[0] == "label,i3,x8,y"


def test_hypercharge_exact():
    assert f.hypercharge("1/3", -1).hypercharge == Fraction(-2, 3)
    assert f.QUARKS["u"].hypercharge == Fraction(1, 3)
    with pytest.raises(TypeError):
        f.hypercharge(0.333, 0)


@given(st.lists(st.floats(-10, 10), min_size=8, max_size=8))
def test_real_combinations_hermitian_traceless(c):
    assert f.is_hermitian_traceless_combo(c, 1e-12)


def test_determinant_identity():
    rep = f.verify_traceless_determinant_identity(f.su3_basis(), 10, 0)
    assert rep["pass"] and rep["max_deviation"] < 1e-12
    bad = f.verify_traceless_determinant_identity(GeneratorBasis("t", (np.diag([1.0, 0, 0]),)), 10, 0)
    assert bad["non_special"] == [0] and not bad["pass"]
