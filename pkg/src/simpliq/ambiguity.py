"""Consistency and ambiguity of simplicity orderings between process pairs.

Two processes are ordered consistently when the classical measure C_mu
and the quantum measure C_q rank them the same way, and ambiguously when
the ranking reverses.  Stronger bound-based verdicts use the excess
entropy: with labels chosen so B is classically simpler, E_A > C_q_B
forces every admissible quantum representation to agree with the
classical order (certainly consistent), while E_B > C_q_A forces every
one to reverse it (certainly ambiguous).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence, TypeVar

from .classical import ComplexityProfile
from .ising import IsingParams, compute_profile, ising_machine

__all__ = [
    "PlainVerdict",
    "CertainVerdict",
    "AmbiguityVerdict",
    "AmbiguityGrid",
    "classify_pair",
    "ambiguity_grid",
    "find_ambiguous_pair",
    "VERDICT_TOL",
    "GRID_MIN_RESOLUTION",
]

VERDICT_TOL = 1e-10
GRID_MIN_RESOLUTION = 16


class PlainVerdict(str, Enum):
    CONSISTENT = "consistent"
    AMBIGUOUS = "ambiguous"
    TIED = "tied"


class CertainVerdict(str, Enum):
    CERTAINLY_CONSISTENT = "certainly_consistent"
    CERTAINLY_AMBIGUOUS = "certainly_ambiguous"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class AmbiguityVerdict:
    plain: PlainVerdict
    certain: CertainVerdict


def classify_pair(
    a: ComplexityProfile, b: ComplexityProfile, tol: float = VERDICT_TOL
) -> AmbiguityVerdict:
    """Classify the ordering of two complete profiles.

    Plain verdict: tied when either measure difference is within ``tol``,
    consistent when the C_mu and C_q differences share a sign, ambiguous
    otherwise.  Certain verdicts require a strict C_mu order, and are
    indeterminate whenever the pair is tied (bound checks use the same
    ``tol`` margin).
    """
    for name, prof in (("first", a), ("second", b)):
        if prof.C_q is None:
            raise ValueError(f"{name} profile is missing C_q")
    d_mu = a.C_mu - b.C_mu
    d_q = a.C_q - b.C_q
    if abs(d_mu) <= tol or abs(d_q) <= tol:
        return AmbiguityVerdict(PlainVerdict.TIED, CertainVerdict.INDETERMINATE)
    plain = PlainVerdict.CONSISTENT if (d_mu > 0) == (d_q > 0) else PlainVerdict.AMBIGUOUS
    hi, lo = (a, b) if d_mu > 0 else (b, a)  # hi is classically more complex
    if hi.E > lo.C_q + tol:
        certain = CertainVerdict.CERTAINLY_CONSISTENT
    elif lo.E > hi.C_q + tol:
        certain = CertainVerdict.CERTAINLY_AMBIGUOUS
    else:
        certain = CertainVerdict.INDETERMINATE
    return AmbiguityVerdict(plain, certain)


@dataclass(frozen=True)
class AmbiguityGrid:
    """Pairwise verdicts over a square temperature grid.

    ``verdicts[i][j]`` classifies the pair (temperatures[i],
    temperatures[j]); the plain relation is symmetric and the diagonal is
    tied.  ``mode`` records which verdict family a rendering should show;
    both are always computed.
    """

    coupling: float
    field: float
    temperatures: tuple[float, ...]
    profiles: tuple[ComplexityProfile, ...]
    verdicts: tuple[tuple[AmbiguityVerdict, ...], ...]
    mode: str

    @property
    def cell_size(self) -> float:
        return self.temperatures[1] - self.temperatures[0]


def ambiguity_grid(
    coupling: float,
    field: float,
    t_max: float,
    resolution: int,
    mode: str = "plain",
    encoding_length: int = 1,
    tol: float = VERDICT_TOL,
) -> AmbiguityGrid:
    """Classify all temperature pairs on a uniform grid over (0, t_max].

    Profiles are computed once per temperature and then paired.  The grid
    points are the upper edges of ``resolution`` equal cells, so T = 0
    itself (where no process is defined) is excluded.
    """
    if resolution < GRID_MIN_RESOLUTION:
        raise ValueError(f"resolution must be at least {GRID_MIN_RESOLUTION}")
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    if mode not in ("plain", "certain"):
        raise ValueError(f"unknown mode {mode!r}")
    temperatures = tuple((i + 1) * t_max / resolution for i in range(resolution))
    profiles = tuple(
        compute_profile(
            ising_machine(IsingParams(coupling=coupling, field=field, temperature=t)),
            encoding_length=encoding_length,
        )
        for t in temperatures
    )
    verdicts = tuple(
        tuple(classify_pair(profiles[i], profiles[j], tol=tol) for j in range(resolution))
        for i in range(resolution)
    )
    return AmbiguityGrid(
        coupling=coupling,
        field=field,
        temperatures=temperatures,
        profiles=profiles,
        verdicts=verdicts,
        mode=mode,
    )


T = TypeVar("T")


def find_ambiguous_pair(
    family: Sequence[T],
    f1: Callable[[T], float],
    f2: Callable[[T], float],
) -> tuple[int, int] | None:
    """Search a family for a witness pair where two measures disagree.

    Returns indices (i, j) with f1(family[i]) > f1(family[j]) and
    f2(family[i]) < f2(family[j]), or None when no pair among the family
    qualifies.  The scan is exhaustive over ordered pairs.
    """
    values1 = [f1(s) for s in family]
    values2 = [f2(s) for s in family]
    for i in range(len(family)):
        for j in range(len(family)):
            if i == j:
                continue
            if values1[i] > values1[j] and values2[i] < values2[j]:
                return i, j
    return None
