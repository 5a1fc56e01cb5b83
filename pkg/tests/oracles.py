"""Independent reference computations used to check the library.

Nothing here imports the elimination code or the Toeplitz/Jacobian
builders: ranks come from naive Fraction row reduction and section counts
from evaluating the Jacobian relations at points.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def naive_rank(rows, p=None):
    """Row reduction with division; over F_p when ``p`` is given."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    if p is None:
        m = [[Fraction(x) for x in r] for r in m]
    else:
        m = [[int(x) % p for x in r] for r in m]
    nrows, ncols = len(m), len(m[0])
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][c] if p is None else pow(m[rk][c], -1, p)
        for i in range(nrows):
            if i != rk and m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
                if p is not None:
                    m[i] = [x % p for x in m[i]]
        rk += 1
    return rk


def _eval_partial(coeffs, i, u0, u1):
    """Value of d s / d U^i at (u0, u1) straight from the coefficient list."""
    d = len(coeffs) - 1
    total = Fraction(0)
    for j, c in enumerate(coeffs):
        e0, e1 = d - j, j
        if i == 0 and e0 > 0:
            total += c * e0 * Fraction(u0) ** (e0 - 1) * Fraction(u1) ** e1
        elif i == 1 and e1 > 0:
            total += c * e1 * Fraction(u0) ** e0 * Fraction(u1) ** (e1 - 1)
    return total


def h0_by_evaluation(form_coeffs, a):
    """h^0(N^v(a)) by evaluation-interpolation over Q.

    Unknowns: coefficients of alpha_j of degree a-d.  A form of degree a-1
    vanishes iff it vanishes at a distinct points; 2a+1 points are used.
    """
    n1 = len(form_coeffs)
    d = len(form_coeffs[0]) - 1
    k = a - d
    if k < 0:
        return 0
    points = [(1, x) for x in range(2 * a + 1)]
    rows = []
    for (u0, u1) in points:
        for i in (0, 1):
            row = []
            for j in range(n1):
                dv = _eval_partial(form_coeffs[j], i, u0, u1)
                for m in range(k + 1):
                    row.append(dv * Fraction(u0) ** (k - m) * Fraction(u1) ** m)
            rows.append(row)
    ncols = n1 * (k + 1)
    return ncols - naive_rank(rows)


def splitting_by_evaluation(form_coeffs):
    n = len(form_coeffs) - 1
    d = len(form_coeffs[0]) - 1
    prof = {a: h0_by_evaluation(form_coeffs, a) for a in range(d - 1, 4 * d)}
    prof[d - 2] = 0
    delta = {a: prof[a] - prof[a - 1] for a in range(d - 1, 4 * d)}
    delta[d - 2] = 0
    out = []
    for v in range(d - 1, 4 * d):
        out += [v - d] * (delta[v] - delta[v - 1])
    assert len(out) == n - 1
    return sorted(out)


def truncated_kernel_by_enumeration(c, a, d, p=7):
    """Count p in F_q[z]_{<=a-d} with p * n(z) = 0 mod z^(3d-a-2); return log_q."""
    dom = a - d + 1
    cut = 3 * d - a - 2
    n = [0] + list(c)
    count = 0
    for coeffs in itertools.product(range(p), repeat=dom):
        prod = [0] * (dom + len(n))
        for i, x in enumerate(coeffs):
            for j, y in enumerate(n):
                prod[i + j] += x * y
        if all(v % p == 0 for v in prod[:cut]):
            count += 1
    dim = 0
    while p ** dim < count:
        dim += 1
    assert p ** dim == count
    return dim
