"""Exact linear algebra over Q and over the rational function field Q(a_1..a_s).

The central object is a matrix whose entries are homogeneous linear forms in
indeterminates a_1, ..., a_s.  Its *generic rank* (the rank over the function
field) is what index computations consume, and three routines bracket it:

* ``probabilistic_rank``: evaluate at random points of a large prime field.
  The result is a lower bound for the generic rank and equals it with
  overwhelming probability (Schwartz-Zippel: a nonzero minor of degree d
  vanishes at a uniform point with probability at most d/p).
* ``ground_field_reduce``: shrink the matrix without changing its generic
  rank by replacing rows (then columns) with a Q-basis of their span, the
  rows being read as vectors of coefficient tuples over Q.
* ``certified_rank``: exact generic rank via fraction-free (Bareiss)
  elimination over Q[a_1..a_s], run after ``ground_field_reduce``.

All values are immutable after construction; every routine here is pure, so
independent rank computations can run in parallel without shared state.
"""

from __future__ import annotations

import random
from array import array
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

try:
    from ._modrank import rank_mod_p as _rank_mod_p

    USING_COMPILED_KERNEL = True
except ImportError:  # pragma: no cover - depends on the build environment
    from ._modrank_py import rank_mod_p as _rank_mod_p

    USING_COMPILED_KERNEL = False

# Exact rational scalars.  Fraction already maintains gcd-reduced numerator
# and positive denominator, which is all the arithmetic here needs.
Rational = Fraction

#: Evaluation field for randomized rank: 2**31 - 1 (prime), so products of
#: reduced entries stay below 2**62 and fit machine words in the kernel.
EVAL_PRIME = 2147483647

DEFAULT_TRIALS = 3

#: Abort certified elimination once any intermediate polynomial carries more
#: terms than this; the caller then reports "undecided" instead of guessing.
DEFAULT_TERM_LIMIT = 10**6


class ResourceLimitExceeded(Exception):
    """Certified rank exceeded its polynomial-size budget."""


def _as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class LinearForm:
    """Homogeneous linear form sum_k c_k * a_k with rational coefficients.

    Indeterminates are indexed from 0; display names are 1-based (``a1``).
    Zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                c = _as_rational(c)
                if c:
                    clean[int(k)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls) -> "LinearForm":
        return cls()

    @classmethod
    def term(cls, k: int, c=1) -> "LinearForm":
        return cls({k: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        res = LinearForm.__new__(LinearForm)
        res.coeffs = out
        return res

    def __neg__(self) -> "LinearForm":
        res = LinearForm.__new__(LinearForm)
        res.coeffs = {k: -c for k, c in self.coeffs.items()}
        return res

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scaled(self, c) -> "LinearForm":
        c = _as_rational(c)
        if not c:
            return LinearForm()
        res = LinearForm.__new__(LinearForm)
        res.coeffs = {k: v * c for k, v in self.coeffs.items()}
        return res

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for k, c in self.coeffs.items():
            total += c * _as_rational(point[k])
        return total

    def max_index(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            name = f"a{k + 1}"
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


class LinearFormMatrix:
    """rows x cols matrix of ``LinearForm`` entries in s indeterminates."""

    __slots__ = ("rows", "cols", "num_indeterminates", "entries")

    def __init__(self, entries: Sequence[Sequence[LinearForm]], num_indeterminates: int,
                 cols: int | None = None):
        rows = len(entries)
        if rows:
            cols = len(entries[0])
        elif cols is None:
            cols = 0
        grid = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
            for e in row:
                if e.max_index() >= num_indeterminates:
                    raise ValueError(
                        f"indeterminate index {e.max_index()} out of range "
                        f"(s={num_indeterminates})"
                    )
            grid.append(tuple(row))
        self.rows = rows
        self.cols = cols
        self.num_indeterminates = num_indeterminates
        self.entries = tuple(grid)

    def entry(self, i: int, j: int) -> LinearForm:
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def evaluate(self, point: Sequence) -> list[list[Fraction]]:
        """Substitute a point for (a_1, ..., a_s); exact rational result."""
        if len(point) != self.num_indeterminates:
            raise ValueError(
                f"point has length {len(point)}, expected {self.num_indeterminates}"
            )
        pt = [_as_rational(x) for x in point]
        return [[e.evaluate(pt) for e in row] for row in self.entries]

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "LinearFormMatrix":
        grid = [[self.entries[i][j] for j in col_order] for i in row_order]
        return LinearFormMatrix(grid, self.num_indeterminates)

    def __repr__(self) -> str:
        body = "; ".join(
            "[" + ", ".join(repr(e) for e in row) + "]" for row in self.entries
        )
        return f"LinearFormMatrix({self.rows}x{self.cols}, s={self.num_indeterminates}, {body})"


# ---------------------------------------------------------------------------
# Rank over Q of a scalar matrix (used by the reducers and by evaluation).


def scalar_rank(matrix: Sequence[Sequence]) -> int:
    """Exact rank over Q of a dense matrix of rationals."""
    m = [[_as_rational(x) for x in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        for r in range(row + 1, nrows):
            f = m[r][col]
            if f:
                f *= inv
                for c in range(col, ncols):
                    m[r][c] -= f * m[row][c]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# Probabilistic rank.


def _modular_coefficient_table(M: LinearFormMatrix, p: int):
    """Per-entry list of (index, coefficient mod p), shared across trials."""
    cache: dict[Fraction, int] = {}

    def reduce(c: Fraction) -> int:
        v = cache.get(c)
        if v is None:
            den = c.denominator % p
            if den == 0:
                raise ValueError("denominator divisible by evaluation prime")
            v = c.numerator % p * pow(den, p - 2, p) % p
            cache[c] = v
        return v

    return [
        [[(k, reduce(c)) for k, c in e.coeffs.items()] for e in row]
        for row in M.entries
    ]


def rank_at_point_mod(M: LinearFormMatrix, point: Sequence[int], p: int = EVAL_PRIME,
                      _table=None) -> int:
    """Rank over F_p of M evaluated at an integer point (reduced mod p)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    table = _table if _table is not None else _modular_coefficient_table(M, p)
    flat = array("q", bytes(8 * M.rows * M.cols))
    pos = 0
    for row in table:
        for terms in row:
            v = 0
            for k, c in terms:
                v += c * point[k]
            flat[pos] = v % p
            pos += 1
    return _rank_mod_p(flat, M.rows, M.cols, p)


def probabilistic_rank(M: LinearFormMatrix, trials: int = DEFAULT_TRIALS,
                       seed: int = 0) -> int:
    """Best rank of M over F_p at ``trials`` independent random points.

    Always a lower bound for the generic rank; equal to it unless every
    trial point hits the zero set of a top-size minor.  Deterministic for a
    fixed seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if M.rows == 0 or M.cols == 0:
        return 0
    rng = random.Random(seed)
    table = _modular_coefficient_table(M, EVAL_PRIME)
    s = M.num_indeterminates
    best = 0
    limit = min(M.rows, M.cols)
    for _ in range(trials):
        point = [rng.randrange(EVAL_PRIME) for _ in range(s)]
        best = max(best, rank_at_point_mod(M, point, EVAL_PRIME, _table=table))
        if best == limit:
            break
    return best


# ---------------------------------------------------------------------------
# Ground-field reduction.


def _independent_indices(vectors: list[dict[int, Fraction]]) -> list[int]:
    """Indices of a maximal Q-independent subset (greedy, order-preserving)."""
    basis: list[tuple[int, dict[int, Fraction]]] = []  # (pivot position, reduced vector)
    keep = []
    for idx, vec in enumerate(vectors):
        w = dict(vec)
        for pivot, bvec in basis:
            c = w.get(pivot)
            if c:
                f = c / bvec[pivot]
                for k, v in bvec.items():
                    nv = w.get(k, 0) - f * v
                    if nv:
                        w[k] = nv
                    else:
                        w.pop(k, None)
        if w:
            basis.append((next(iter(w)), w))
            keep.append(idx)
    return keep


def _row_vector(row: Sequence[LinearForm], s: int) -> dict[int, Fraction]:
    vec = {}
    for j, e in enumerate(row):
        for k, c in e.coeffs.items():
            vec[j * s + k] = c
    return vec


def ground_field_reduce(M: LinearFormMatrix) -> LinearFormMatrix:
    """Drop rows and columns until both are Q-bases of their spans.

    Rows are read as coefficient vectors in Q^(cols*s); a maximal linearly
    independent subset spans the same row space over Q, hence over Q(a), so
    the generic rank is unchanged.  The same is then applied to columns.
    """
    s = M.num_indeterminates
    row_keep = _independent_indices([_row_vector(row, s) for row in M.entries])
    kept_rows = [M.entries[i] for i in row_keep]
    if not kept_rows:
        return LinearFormMatrix([], s)
    col_vectors = []
    for j in range(M.cols):
        vec = {}
        for i, row in enumerate(kept_rows):
            for k, c in row[j].coeffs.items():
                vec[i * s + k] = c
        col_vectors.append(vec)
    col_keep = _independent_indices(col_vectors)
    if not col_keep:
        return LinearFormMatrix([], s)
    grid = [[row[j] for j in col_keep] for row in kept_rows]
    return LinearFormMatrix(grid, s)


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials and certified (fraction-free) rank.


class MultiPoly:
    """Sparse polynomial over Q: map from exponent tuple to coefficient.

    Only the carrier for fraction-free elimination; no stored coefficient is
    zero and all exponent tuples have length s.  Integer coefficients are
    kept as plain ints (elimination rows get pre-scaled to clear
    denominators, so the hot arithmetic is integer arithmetic).
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, (int, Fraction)):
                    c = _as_rational(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def from_linear_form(cls, lf: LinearForm, nvars: int) -> "MultiPoly":
        terms = {}
        for k, c in lf.coeffs.items():
            e = [0] * nvars
            e[k] = 1
            terms[tuple(e)] = int(c) if c.denominator == 1 else c
        return cls(nvars, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        res = MultiPoly.__new__(MultiPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __neg__(self) -> "MultiPoly":
        res = MultiPoly.__new__(MultiPoly)
        res.nvars = self.nvars
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        res = MultiPoly.__new__(MultiPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient self / divisor, which must be exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.num_terms == 1:
            (de, dc), = divisor.terms.items()
            if not any(de):
                res = MultiPoly.__new__(MultiPoly)
                res.nvars = self.nvars
                res.terms = {e: _coeff_div(c, dc) for e, c in self.terms.items()}
                return res
        # Lex-ordered long division; the leading term of the remainder drops
        # strictly at every step, and exactness guarantees zero remainder.
        dlead = max(divisor.terms)
        dcoef = divisor.terms[dlead]
        rem = dict(self.terms)
        quot: dict[tuple, object] = {}
        while rem:
            rlead = max(rem)
            qexp = tuple(a - b for a, b in zip(rlead, dlead))
            if any(e < 0 for e in qexp):
                raise ArithmeticError("inexact polynomial division")
            qc = _coeff_div(rem[rlead], dcoef)
            quot[qexp] = qc
            for de, dc in divisor.terms.items():
                e = tuple(a + b for a, b in zip(qexp, de))
                v = rem.get(e, 0) - qc * dc
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        res = MultiPoly.__new__(MultiPoly)
        res.nvars = self.nvars
        res.terms = quot
        return res

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"a{k + 1}" + (f"^{d}" if d > 1 else "")
                for k, d in enumerate(e) if d
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def _coeff_div(a, b):
    """a / b without drifting through floats; stays int when it can."""
    if isinstance(a, int) and isinstance(b, int):
        q, rem = divmod(a, b)
        if rem == 0:
            return q
        return Fraction(a, b)
    return _as_rational(a) / _as_rational(b)


def _mul_capped(a: MultiPoly, b: MultiPoly, cap: int) -> MultiPoly:
    """a * b, aborting as soon as the accumulating product passes ``cap``."""
    if a.num_terms * b.num_terms <= cap:
        return a * b
    out: dict[tuple, object] = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        if len(out) > cap:
            raise ResourceLimitExceeded(
                f"intermediate polynomial passed {cap} terms during a product"
            )
    res = MultiPoly.__new__(MultiPoly)
    res.nvars = a.nvars
    res.terms = out
    return res


def _bareiss_rank(grid: list[list[MultiPoly]], nvars: int, max_terms: int) -> int:
    """Fraction-free elimination with sparsest-pivot selection."""
    nrows = len(grid)
    ncols = len(grid[0]) if nrows else 0
    prev: MultiPoly | None = None  # divisor for the current step; None = 1
    r = 0
    while r < nrows and r < ncols:
        best = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                e = grid[i][j]
                if e:
                    key = (e.num_terms, i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != r:
            grid[r], grid[pi] = grid[pi], grid[r]
        if pj != r:
            for row in grid:
                row[r], row[pj] = row[pj], row[r]
        piv = grid[r][r]
        for i in range(r + 1, nrows):
            left = grid[i][r]
            for j in range(r + 1, ncols):
                num = _mul_capped(grid[i][j], piv, max_terms)
                if left:
                    num = num - _mul_capped(left, grid[r][j], max_terms)
                cell = num.exact_div(prev) if prev is not None else num
                if cell.num_terms > max_terms:
                    raise ResourceLimitExceeded(
                        f"intermediate polynomial has {cell.num_terms} terms "
                        f"(limit {max_terms})"
                    )
                grid[i][j] = cell
            grid[i][r] = MultiPoly(nvars)
        prev = piv
        r += 1
    return r


def certified_rank(M: LinearFormMatrix, max_terms: int = DEFAULT_TERM_LIMIT) -> int:
    """Exact generic rank of M over Q(a_1..a_s).

    Applies ``ground_field_reduce`` first, then Bareiss elimination over the
    polynomial ring.  Rows are pre-scaled to integer coefficients (a rank
    -preserving row operation), so the elimination runs over Z whenever the
    input allows.  Raises ``ResourceLimitExceeded`` when an intermediate
    polynomial outgrows ``max_terms``; the caller decides what "too
    expensive" means for its verdict.
    """
    reduced = ground_field_reduce(M)
    if reduced.rows == 0 or reduced.cols == 0:
        return 0
    s = reduced.num_indeterminates
    grid = []
    for row in reduced.entries:
        scale = 1
        for e in row:
            for c in e.coeffs.values():
                scale = scale * c.denominator // gcd(scale, c.denominator)
        grid.append([MultiPoly.from_linear_form(e.scaled(scale), s) for e in row])
    return _bareiss_rank(grid, s, max_terms)
