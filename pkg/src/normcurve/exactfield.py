"""Exact scalars and dense fraction-free linear algebra.

Two fields are supported: the rationals (elements are ``Fraction``) and a
prime field F_p (elements are ints in ``[0, p)``).  Elimination over the
rationals clears denominators row by row and then runs Bareiss elimination
on Python ints; over F_p it runs ordinary Gaussian elimination, vectorised
with numpy int64 when ``p`` is small enough that products cannot overflow.

Pivot rule everywhere: scan columns left to right, and within a column take
the first nonzero entry at or below the current pivot row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

RATIONALS = "rationals"
PRIME = "prime"

DEFAULT_PRIME = 1000003

# p*p must fit in int64 for the vectorised path.
_NUMPY_PRIME_LIMIT = 3_037_000_499


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in small:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == RATIONALS:
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == PRIME:
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> FieldSpec:
        return cls(PRIME, p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME

    def check_degree(self, d: int) -> None:
        """Reject prime fields too small for degree-``d`` computations."""
        if self.is_prime_field and self.p <= 40 * d:
            raise ValueError(f"prime {self.p} is not admissible for degree {d} (need p > {40 * d})")

    def __call__(self, x) -> Fraction | int:
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == RATIONALS:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == RATIONALS:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def div(self, x, y):
        return self(x * self.inv(y))

    def random(self, rng) -> Fraction | int:
        """Uniform draw: integers in [-20, 20] over Q, residues over F_p."""
        if self.kind == RATIONALS:
            return Fraction(rng.randint(-20, 20))
        return rng.randrange(self.p)

    def to_json(self):
        return "rational" if self.kind == RATIONALS else {"prime": self.p}

    def __str__(self) -> str:
        return "Q" if self.kind == RATIONALS else f"GF({self.p})"


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple
    field: FieldSpec

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec, cols: int | None = None) -> ExactMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(field(x) for r in rows for x in r), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> ExactMatrix:
        return cls(rows, cols, (field.zero(),) * (rows * cols), field)

    @classmethod
    def identity(cls, size: int, field: FieldSpec) -> ExactMatrix:
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], field, size)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.cols, self.rows,
                           tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
                           self.field)

    def hstack(self, other: ExactMatrix) -> ExactMatrix:
        if self.rows != other.rows:
            raise ValueError(f"row counts differ: {self.rows} vs {other.rows}")
        rows = [a + b for a, b in zip(self.row_lists(), other.row_lists())]
        return ExactMatrix(self.rows, self.cols + other.cols, tuple(x for r in rows for x in r), self.field)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        f = self.field
        return [f(sum(a * b for a, b in zip(r, v))) for r in self.row_lists()]

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        cols = [other.column(j) for j in range(other.cols)]
        rows = [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.row_lists()]
        return ExactMatrix.from_rows(rows, self.field, other.cols)


def hstack(blocks: Iterable[ExactMatrix], rows: int, field: FieldSpec) -> ExactMatrix:
    out = ExactMatrix.zeros(rows, 0, field)
    for b in blocks:
        out = out.hstack(b)
    return out


# -- rational path -------------------------------------------------------

def _integer_rows(m: ExactMatrix) -> list[list[int]]:
    out = []
    for r in m.row_lists():
        den = math.lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def _bareiss_echelon(rows: list[list[int]], ncols: int, stages: Sequence[int]) -> tuple[list[int], list[int]]:
    """Fraction-free forward elimination in place.

    Returns the pivot columns and the rank reached at the end of each stage
    boundary in ``stages`` (column counts).
    """
    m = len(rows)
    pivots: list[int] = []
    ranks: list[int] = []
    stage_iter = iter(sorted(stages))
    next_stage = next(stage_iter, None)
    r = 0
    prev = 1
    for c in range(ncols):
        while next_stage is not None and c == next_stage:
            ranks.append(r)
            next_stage = next(stage_iter, None)
        if r == m:
            continue
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        pv = pr[c]
        for i in range(r + 1, m):
            row = rows[i]
            lead = row[c]
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - lead * pr[j]) // prev
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    while next_stage is not None:
        ranks.append(r)
        next_stage = next(stage_iter, None)
    return pivots, ranks


# -- prime path ------------------------------------------------------------

def _modp_echelon(m: ExactMatrix, stages: Sequence[int], reduced: bool = False):
    p = m.field.p
    if p < _NUMPY_PRIME_LIMIT:
        a = np.array(m.entries, dtype=np.int64).reshape(m.rows, m.cols)
    else:
        a = np.array(m.entries, dtype=object).reshape(m.rows, m.cols)
    nrows, ncols = a.shape
    pivots: list[int] = []
    ranks: list[int] = []
    stage_iter = iter(sorted(stages))
    next_stage = next(stage_iter, None)
    r = 0
    for c in range(ncols):
        while next_stage is not None and c == next_stage:
            ranks.append(r)
            next_stage = next(stage_iter, None)
        if r == nrows:
            continue
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        targets = range(nrows) if reduced else range(r + 1, nrows)
        idx = [i for i in targets if i != r and a[i, c] != 0]
        if idx:
            a[idx] = (a[idx] - np.outer(a[idx, c], a[r]) % p) % p
        pivots.append(c)
        r += 1
    while next_stage is not None:
        ranks.append(r)
        next_stage = next(stage_iter, None)
    return a, pivots, ranks


# -- public operations -----------------------------------------------------

def _staged_ranks(m: ExactMatrix, stages: Sequence[int]) -> list[int]:
    if m.field.is_prime_field:
        _, _, ranks = _modp_echelon(m, stages)
    else:
        _, ranks = _bareiss_echelon(_integer_rows(m), m.cols, stages)
    return ranks


def rank(m: ExactMatrix) -> int:
    """Rank of ``m`` over its field."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _staged_ranks(m, [m.cols])[0]


def rank_rel(m_base: ExactMatrix, m_ext: ExactMatrix) -> tuple[int, int]:
    """Return ``(rank(base), rank(base | ext))`` from one staged elimination.

    ``rank(base|ext) - rank(base)`` is the rank of ``ext`` composed with the
    projection onto the cokernel of ``base``.
    """
    if m_base.rows != m_ext.rows:
        raise ValueError(f"row counts differ: {m_base.rows} vs {m_ext.rows}")
    if m_base.rows == 0:
        return 0, 0
    both = m_base.hstack(m_ext)
    r_base, r_all = _staged_ranks(both, [m_base.cols, both.cols])
    return r_base, r_all


def kernel_basis(m: ExactMatrix) -> list[list]:
    """Basis of the right kernel, one vector per free column.

    Each vector has a 1 in its free column and 0 in the other free columns.
    """
    f = m.field
    if m.rows == 0:
        return [[f(int(i == j)) for i in range(m.cols)] for j in range(m.cols)]
    if f.is_prime_field:
        a, pivots, _ = _modp_echelon(m, [], reduced=True)
        ech = [[int(x) for x in row] for row in a[:len(pivots)]]
    else:
        rows = _integer_rows(m)
        pivots, _ = _bareiss_echelon(rows, m.cols, [])
        ech = rows[:len(pivots)]
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for fc in free:
        x = [f.zero()] * m.cols
        x[fc] = f.one()
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            row = ech[k]
            s = sum(row[j] * x[j] for j in range(pc + 1, m.cols) if row[j] != 0)
            x[pc] = f.div(-s, row[pc])
        basis.append(x)
    return basis


def left_kernel_basis(m: ExactMatrix) -> list[list]:
    return kernel_basis(m.transpose())
