from __future__ import annotations

import pytest

from normcurve import FieldSpec, ParamCurve

Q = FieldSpec.rationals()
P = FieldSpec.prime()

TWISTED_CUBIC = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
NORMAL_QUARTIC = [[int(i == j) for j in range(5)] for i in range(5)]
PLANE_QUARTIC = [[1, 0, 0, 0, 1], [0, 1, 0, 0, 0], [0, 0, 0, 1, 0]]
LINE_P3 = [[1, 0], [0, 1], [0, 0], [0, 0]]
CUSPIDAL_CUBIC = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]

# name -> (coefficients, expected a-values)
GOLDEN = {
    "twisted_cubic": (TWISTED_CUBIC, [2, 2]),
    "normal_quartic": (NORMAL_QUARTIC, [2, 2, 2]),
    "plane_quartic": (PLANE_QUARTIC, [6]),
    "line_p3": (LINE_P3, [0, 0]),
}


@pytest.fixture
def twisted_cubic():
    return ParamCurve.from_coeffs(TWISTED_CUBIC, Q)


@pytest.fixture
def cuspidal_cubic():
    return ParamCurve.from_coeffs(CUSPIDAL_CUBIC, Q)
