"""Shared oracles and corpus builders for the test suite.

Everything here is deliberately independent of the implementation paths it
checks: orbit enumeration is re-done by label assignment over plain
partitions, graded dimensions by counting matrix units, brackets by explicit
matrix commutators, and generic ranks by sympy's own symbolic elimination.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
import sympy

from thetagib import ThetaRep, check_rep
from thetagib.centralizer import GradedCentralizer
from thetagib.cli import SweepSpec, sweep_reps
from thetagib.exact_linalg import LinearFormMatrix


def rep_of(*r: int) -> ThetaRep:
    return ThetaRep.of(*r)


@lru_cache(maxsize=None)
def cached_check_rep(r: tuple, trials: int = 3, seed: int = 0,
                     certify_all: bool = False):
    return check_rep(ThetaRep.of(*r), trials=trials, seed=seed,
                     certify_all=certify_all)


def positive_rank_reps(n_max: int, m_max: int, n_min: int = 2, m_min: int = 2):
    """Cyclically normalized vectors with min(r) >= 1 in the given box."""
    return sweep_reps(SweepSpec(n_min=n_min, n_max=n_max,
                                m_min=m_min, m_max=m_max, min_rank=1))


def all_reps(n_max: int, m_max: int, n_min: int = 1, m_min: int = 2):
    """Cyclically normalized vectors including rank zero."""
    return sweep_reps(SweepSpec(n_min=n_min, n_max=n_max,
                                m_min=m_min, m_max=m_max, min_rank=0))


# ---------------------------------------------------------------------------
# Orbit enumeration oracle: plain partitions x label assignments, dedup.


def _partitions(n, maxp=None):
    if maxp is None:
        maxp = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, maxp), 0, -1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def brute_force_orbit_keys(rep: ThetaRep, include_zero: bool = False):
    """Canonical block multisets for ``rep`` by exhaustive label assignment."""
    found = set()
    for part in _partitions(rep.n):
        if not include_zero and part[0] == 1:
            continue
        for labels in product(range(rep.m), repeat=len(part)):
            counts = [0] * rep.m
            for length, label in zip(part, labels):
                for j in range(length):
                    counts[(label + j) % rep.m] += 1
            if counts == list(rep.r):
                found.add(tuple(sorted(zip(part, labels),
                                       key=lambda b: (-b[0], b[1]))))
    return found


# ---------------------------------------------------------------------------
# Graded dimension oracle: count matrix units by eigen-exponent difference.


def brute_force_graded_dims(rep: ThetaRep):
    exponents = []
    for t, count in enumerate(rep.r):
        exponents.extend([t] * count)
    dims = [0] * rep.m
    for ex in exponents:
        for ey in exponents:
            dims[(ex - ey) % rep.m] += 1
    return dims[0], dims[1 % rep.m], dims[(-1) % rep.m]


# ---------------------------------------------------------------------------
# Explicit matrix model of the centralizer basis.


def ambient_cells(cent: GradedCentralizer):
    """Flat index for cell (block i, power u); row-major over blocks."""
    cells = {}
    pos = 0
    for i, length in enumerate(cent.lengths, start=1):
        for u in range(length):
            cells[(i, u)] = pos
            pos += 1
    return cells, pos


def xi_matrix(cent: GradedCentralizer, x) -> np.ndarray:
    """The n x n integer matrix of a basis element (columns act on cells)."""
    cells, n = ambient_cells(cent)
    mat = np.zeros((n, n), dtype=np.int64)
    d_target = cent.lengths[x.j - 1] - 1
    d_source = cent.lengths[x.i - 1] - 1
    for u in range(d_source + 1):
        if x.s + u <= d_target:
            mat[cells[(x.j, x.s + u)], cells[(x.i, u)]] = 1
    return mat


def cell_exponents(cent: GradedCentralizer):
    """Eigen-exponent of each ambient cell: label of its block plus power."""
    cells, n = ambient_cells(cent)
    exps = [0] * n
    for (i, u), pos in cells.items():
        exps[pos] = (cent.labels[i - 1] + u) % cent.m
    return exps


# ---------------------------------------------------------------------------
# Symbolic rank oracle (sympy's elimination, independent of the Bareiss path).


def sympy_generic_rank(matrix: LinearFormMatrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    s = matrix.num_indeterminates
    syms = sympy.symbols(f"a0:{max(s, 1)}")

    def entry(i, j):
        total = sympy.Integer(0)
        for k, c in matrix.entries[i][j].coeffs.items():
            total += sympy.Rational(c.numerator, c.denominator) * syms[k]
        return total

    return sympy.Matrix(matrix.rows, matrix.cols, entry).rank()


def minor_expansion_rank(matrix: LinearFormMatrix) -> int:
    """Largest k with a non-vanishing k x k minor (sympy determinants)."""
    from itertools import combinations

    s = matrix.num_indeterminates
    syms = sympy.symbols(f"a0:{max(s, 1)}")
    rows = [
        [sum((sympy.Rational(c.numerator, c.denominator) * syms[k]
              for k, c in e.coeffs.items()), sympy.Integer(0))
         for e in row]
        for row in matrix.entries
    ]
    best = 0
    for k in range(1, min(matrix.rows, matrix.cols) + 1):
        found = False
        for ri in combinations(range(matrix.rows), k):
            for ci in combinations(range(matrix.cols), k):
                sub = sympy.Matrix([[rows[i][j] for j in ci] for i in ri])
                if sympy.expand(sub.det()) != 0:
                    found = True
                    break
            if found:
                break
        if found:
            best = k
        else:
            break
    return best


# ---------------------------------------------------------------------------
# Random linear-form matrices for property sweeps.


def random_matrix(rng, max_rows=6, max_cols=6, max_vars=4) -> LinearFormMatrix:
    from thetagib.exact_linalg import LinearForm

    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    s = rng.randint(1, max_vars)
    grid = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            coeffs = {}
            for k in range(s):
                if rng.random() < 0.4:
                    num = rng.randint(-3, 3)
                    den = rng.choice((1, 1, 1, 2, 3))
                    if num:
                        coeffs[k] = Fraction(num, den)
            row.append(LinearForm(coeffs))
        grid.append(row)
    return LinearFormMatrix(grid, s)
