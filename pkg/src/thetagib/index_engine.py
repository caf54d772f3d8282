"""Index of a module action from its structure constants.

For a Lie algebra q with basis x_1..x_n acting on a module V with basis
v_1..v_s, write x_i . v_j = sum_k N[i][j][k] v_k and let a_1..a_s be the
coordinates of a generic functional on V.  The n x s matrix with entries
sum_k N[i][j][k] a_k has generic rank equal to the maximal dimension of a
coadjoint-type orbit, so

    index(q, V) = dim V - generic rank.

The matrix comes either from a graded centralizer (degree-0 basis acting on
the degree-(m-1) basis) or from an externally supplied JSON document with
raw structure constants; both reduce to the same rank machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .centralizer import GradedCentralizer
from .exact_linalg import (
    DEFAULT_TERM_LIMIT,
    DEFAULT_TRIALS,
    LinearForm,
    LinearFormMatrix,
    ResourceLimitExceeded,
    certified_rank,
    probabilistic_rank,
)


@dataclass(frozen=True)
class IndexResult:
    """Outcome of one index computation.

    ``index`` is dim(V) minus the best rank available: the certified rank
    when present, else the probabilistic lower bound (making the index an
    upper bound).  ``certified`` is true exactly when ``cert_rank`` is set.
    """

    dim_module: int
    prob_rank: int
    cert_rank: int | None
    index: int
    certified: bool


def build_action_matrix(cent: GradedCentralizer) -> LinearFormMatrix:
    """Action matrix of the degree-0 part on the degree-(m-1) part.

    Rows follow ``by_degree[0]``, columns ``by_degree[m-1]``; the column
    order also fixes the indeterminate numbering, a_k being dual to the k-th
    module basis element.
    """
    tensor = cent.action_structure_constants()
    nrows = len(cent.by_degree[0])
    ncols = len(cent.by_degree[cent.m - 1])
    grid = [[LinearForm() for _ in range(ncols)] for _ in range(nrows)]
    for (i, j), row in tensor.items():
        grid[i][j] = LinearForm({k: c for k, c in row.items()})
    return LinearFormMatrix(grid, ncols)


def index_of_matrix(matrix: LinearFormMatrix, *, trials: int = DEFAULT_TRIALS,
                    seed: int = 0, force_certify: bool = False,
                    max_terms: int = DEFAULT_TERM_LIMIT) -> IndexResult:
    """Index of the action encoded by ``matrix``.

    With ``force_certify`` the exact rank is attempted; if certification
    exceeds its resource budget the probabilistic value is reported with
    ``certified=False`` rather than failing the computation.
    """
    prob = probabilistic_rank(matrix, trials, seed)
    cert: int | None = None
    if force_certify:
        try:
            cert = certified_rank(matrix, max_terms)
        except ResourceLimitExceeded:
            cert = None
    rank = cert if cert is not None else prob
    return IndexResult(
        dim_module=matrix.cols,
        prob_rank=prob,
        cert_rank=cert,
        index=matrix.cols - rank,
        certified=cert is not None,
    )


def compute_index(cent: GradedCentralizer, *, trials: int = DEFAULT_TRIALS,
                  seed: int = 0, force_certify: bool = False,
                  max_terms: int = DEFAULT_TERM_LIMIT) -> IndexResult:
    """Index of the degree-0 action on the degree-(m-1) part of ``cent``."""
    return index_of_matrix(
        build_action_matrix(cent),
        trials=trials, seed=seed, force_certify=force_certify,
        max_terms=max_terms,
    )


# ---------------------------------------------------------------------------
# Generic structure-constant documents.
#
# Schema (all indices 0-based):
#   {
#     "dim_q": n,                      acting algebra dimension (rows)
#     "dim_v": s,                      module dimension (columns)
#     "brackets": [[i, j, k, num, den], ...],
#                                      x_i . v_j has coefficient num/den on v_k;
#                                      repeated (i, j, k) entries accumulate
#     "rank": r                        optional declared target for the index
#   }


class GenericActionError(ValueError):
    """Malformed or inconsistent structure-constant document."""


def _require_int(doc: dict, key: str) -> int:
    if key not in doc:
        raise GenericActionError(f"missing field {key!r}")
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise GenericActionError(f"field {key!r} must be a non-negative integer")
    return v


def parse_action_document(doc: dict) -> tuple[LinearFormMatrix, int | None]:
    """Validate a structure-constant document; return (matrix, declared rank)."""
    if not isinstance(doc, dict):
        raise GenericActionError("document must be a JSON object")
    dim_q = _require_int(doc, "dim_q")
    dim_v = _require_int(doc, "dim_v")
    brackets = doc.get("brackets", [])
    if not isinstance(brackets, list):
        raise GenericActionError("field 'brackets' must be a list")
    coeffs: dict[tuple[int, int], dict[int, Fraction]] = {}
    for pos, item in enumerate(brackets):
        where = f"brackets[{pos}]"
        if not isinstance(item, list) or len(item) != 5:
            raise GenericActionError(f"{where}: expected [i, j, k, num, den]")
        i, j, k, num, den = item
        for name, v in (("i", i), ("j", j), ("k", k), ("num", num), ("den", den)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise GenericActionError(f"{where}: {name} must be an integer")
        if not 0 <= i < dim_q:
            raise GenericActionError(f"{where}: i={i} out of range (dim_q={dim_q})")
        if not 0 <= j < dim_v:
            raise GenericActionError(f"{where}: j={j} out of range (dim_v={dim_v})")
        if not 0 <= k < dim_v:
            raise GenericActionError(f"{where}: k={k} out of range (dim_v={dim_v})")
        if den == 0:
            raise GenericActionError(f"{where}: zero denominator")
        entry = coeffs.setdefault((i, j), {})
        entry[k] = entry.get(k, Fraction(0)) + Fraction(num, den)
    grid = [[LinearForm(coeffs.get((i, j), {})) for j in range(dim_v)]
            for i in range(dim_q)]
    declared = None
    if "rank" in doc:
        declared = _require_int(doc, "rank")
    return LinearFormMatrix(grid, dim_v, cols=dim_v), declared


def export_action(cent: GradedCentralizer, declared_rank: int | None = None) -> dict:
    """Serialize the degree-0 action of ``cent`` to the document schema."""
    tensor = cent.action_structure_constants()
    brackets = []
    for (i, j) in sorted(tensor):
        for k in sorted(tensor[(i, j)]):
            c = Fraction(tensor[(i, j)][k])
            brackets.append([i, j, k, c.numerator, c.denominator])
    doc = {
        "dim_q": len(cent.by_degree[0]),
        "dim_v": len(cent.by_degree[cent.m - 1]),
        "brackets": brackets,
    }
    if declared_rank is not None:
        doc["rank"] = declared_rank
    return doc
