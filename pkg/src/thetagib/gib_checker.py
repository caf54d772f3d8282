"""Good-index-behaviour verdicts, orbit by orbit.

The target equality for a grading r is
    index(stabilizer of e in degree 0, centralizer of e in degree -1) = min(r)
for every nilpotent orbit representative e; min(r) is always a lower bound
for that index.  The per-orbit procedure:

  1. build the graded centralizer and the action matrix A(a);
  2. evaluate A at random prime-field points; the best rank found, pr, is a
     lower bound for the generic rank, so dim - pr is an upper bound for the
     index;
  3. if dim - pr = min(r) the bounds pinch and the verdict is a proven TRUE
     with no symbolic work;
  4. otherwise reduce A over Q; if pr equals the reduced row or column
     count, the generic rank is pinned to pr exactly and the verdict is a
     proven FALSE;
  5. otherwise certify the rank by fraction-free elimination, which decides
     either way; if that blows the resource budget the orbit is UNDECIDED,
     never silently wrong.

A whole grading has the property iff every orbit does.  The driver delays
the expensive step 5, collecting suspicious orbits from the cheap pass and
certifying them smallest-matrix-first until all are resolved, so a FALSE
report always names every bad orbit with a rank certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .centralizer import build_centralizer
from .exact_linalg import (
    DEFAULT_TERM_LIMIT,
    DEFAULT_TRIALS,
    LinearFormMatrix,
    ResourceLimitExceeded,
    certified_rank,
    ground_field_reduce,
    probabilistic_rank,
)
from .index_engine import IndexResult, build_action_matrix
from .orbits import LabeledPartition, all_nilpotent_orbits
from .theta_gl import ThetaRep

DECIDED_BY_BOUND_MATCH = "probabilistic-bound-match"
DECIDED_BY_REDUCED_SHAPE = "reduced-shape"
DECIDED_BY_CERTIFIED_RANK = "certified-rank"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class OrbitVerdict:
    """One orbit's outcome: dims, index data, and the three-way verdict."""

    orbit: LabeledPartition
    dim_stabilizer: int
    dim_module: int
    index_result: IndexResult
    gib: bool | None
    decided_by: str


@dataclass(frozen=True)
class GibReport:
    """Aggregate verdict for one grading."""

    rep: ThetaRep
    rank: int
    orbit_count: int
    verdicts: tuple[OrbitVerdict, ...]
    rep_gib: bool | None
    bad_orbits: tuple[LabeledPartition, ...]

    @property
    def undecided_orbits(self) -> tuple[LabeledPartition, ...]:
        return tuple(v.orbit for v in self.verdicts if v.gib is None)


class _OrbitJob:
    """Mutable per-orbit state for the deferred-certification schedule."""

    __slots__ = ("orbit", "matrix", "reduced", "prob", "verdict")

    def __init__(self, orbit: LabeledPartition, matrix: LinearFormMatrix, prob: int):
        self.orbit = orbit
        self.matrix = matrix
        self.reduced: LinearFormMatrix | None = None
        self.prob = prob
        self.verdict: OrbitVerdict | None = None


def _verdict(job: _OrbitJob, dim_stab: int, *, cert: int | None,
             gib: bool | None, decided_by: str) -> OrbitVerdict:
    dim = job.matrix.cols
    used = cert if cert is not None else job.prob
    result = IndexResult(
        dim_module=dim,
        prob_rank=job.prob,
        cert_rank=cert,
        index=dim - used,
        certified=cert is not None,
    )
    return OrbitVerdict(
        orbit=job.orbit,
        dim_stabilizer=dim_stab,
        dim_module=dim,
        index_result=result,
        gib=gib,
        decided_by=decided_by,
    )


def check_orbit(rep: ThetaRep, orbit: LabeledPartition, *,
                trials: int = DEFAULT_TRIALS, seed: int = 0,
                force_certify: bool = False,
                max_terms: int = DEFAULT_TERM_LIMIT) -> OrbitVerdict:
    """Run the full per-orbit procedure on a single orbit."""
    if not orbit.valid_for(rep):
        raise ValueError(f"partition {orbit} does not belong to {rep}")
    rank = rep.rank()
    cent = build_centralizer(orbit, rep.m)
    matrix = build_action_matrix(cent)
    dim_stab = len(cent.by_degree[0])
    job = _OrbitJob(orbit, matrix, probabilistic_rank(matrix, trials, seed))
    _resolve(job, rank, dim_stab, force_certify=force_certify, max_terms=max_terms)
    assert job.verdict is not None
    return job.verdict


def _resolve(job: _OrbitJob, rank: int, dim_stab: int, *,
             force_certify: bool, max_terms: int) -> None:
    dim = job.matrix.cols
    if not force_certify and dim - job.prob == rank:
        # Upper bound dim - prob meets the lower bound rank: proven TRUE.
        job.verdict = _verdict(job, dim_stab, cert=None, gib=True,
                               decided_by=DECIDED_BY_BOUND_MATCH)
        return
    if job.reduced is None:
        job.reduced = ground_field_reduce(job.matrix)
    red = job.reduced
    if not force_certify and job.prob in (red.rows, red.cols):
        # prob is a lower bound and min(shape of the reduction) an upper
        # bound, so the generic rank is exactly prob.
        gib = dim - job.prob == rank
        job.verdict = _verdict(job, dim_stab, cert=job.prob, gib=gib,
                               decided_by=DECIDED_BY_REDUCED_SHAPE)
        return
    try:
        cert = certified_rank(red, max_terms)
    except ResourceLimitExceeded:
        # the bound arguments stay valid even when elimination is abandoned
        if dim - job.prob == rank:
            job.verdict = _verdict(job, dim_stab, cert=None, gib=True,
                                   decided_by=DECIDED_BY_BOUND_MATCH)
        elif job.prob in (red.rows, red.cols):
            job.verdict = _verdict(job, dim_stab, cert=job.prob,
                                   gib=dim - job.prob == rank,
                                   decided_by=DECIDED_BY_REDUCED_SHAPE)
        else:
            job.verdict = _verdict(job, dim_stab, cert=None, gib=None,
                                   decided_by=UNDECIDED)
        return
    job.verdict = _verdict(job, dim_stab, cert=cert,
                           gib=dim - cert == rank,
                           decided_by=DECIDED_BY_CERTIFIED_RANK)


def check_rep(rep: ThetaRep, *, trials: int = DEFAULT_TRIALS, seed: int = 0,
              certify_all: bool = False,
              max_terms: int = DEFAULT_TERM_LIMIT,
              max_certifications: int | None = None) -> GibReport:
    """Verdict for a grading: the per-orbit procedure over all its orbits.

    The cheap probabilistic pass runs first over every orbit; orbits it
    cannot prove TRUE are collected and resolved in order of reduced matrix
    size, so the expensive symbolic eliminations happen on the smallest
    matrices first.  All suspicious orbits are resolved (subject to
    ``max_certifications``), which keeps the report seed-independent and
    the bad-orbit list complete.
    """
    rank = rep.rank()
    jobs: list[_OrbitJob] = []
    stab_dims: dict[LabeledPartition, int] = {}
    for orbit in all_nilpotent_orbits(rep):
        cent = build_centralizer(orbit, rep.m)
        matrix = build_action_matrix(cent)
        stab_dims[orbit] = len(cent.by_degree[0])
        jobs.append(_OrbitJob(orbit, matrix, probabilistic_rank(matrix, trials, seed)))

    pending: list[_OrbitJob] = []
    for job in jobs:
        dim = job.matrix.cols
        if not certify_all and dim - job.prob == rank:
            job.verdict = _verdict(job, stab_dims[job.orbit], cert=None,
                                   gib=True, decided_by=DECIDED_BY_BOUND_MATCH)
        else:
            job.reduced = ground_field_reduce(job.matrix)
            pending.append(job)

    pending.sort(key=lambda j: (j.reduced.rows * j.reduced.cols,
                                j.orbit.sort_key()))
    certifications = 0
    for job in pending:
        budget_left = (max_certifications is None
                       or certifications < max_certifications)
        if not budget_left and not certify_all:
            red = job.reduced
            if job.prob in (red.rows, red.cols):
                gib = job.matrix.cols - job.prob == rank
                job.verdict = _verdict(job, stab_dims[job.orbit],
                                       cert=job.prob, gib=gib,
                                       decided_by=DECIDED_BY_REDUCED_SHAPE)
            else:
                job.verdict = _verdict(job, stab_dims[job.orbit],
                                       cert=None, gib=None, decided_by=UNDECIDED)
            continue
        _resolve(job, rank, stab_dims[job.orbit],
                 force_certify=certify_all, max_terms=max_terms)
        if job.verdict.decided_by == DECIDED_BY_CERTIFIED_RANK:
            certifications += 1

    verdicts = tuple(job.verdict for job in jobs)
    bad = tuple(v.orbit for v in verdicts if v.gib is False)
    if any(v.gib is False for v in verdicts):
        rep_gib: bool | None = False
    elif all(v.gib is True for v in verdicts):
        rep_gib = True
    else:
        rep_gib = None
    return GibReport(
        rep=rep,
        rank=rank,
        orbit_count=len(verdicts),
        verdicts=verdicts,
        rep_gib=rep_gib,
        bad_orbits=bad,
    )
