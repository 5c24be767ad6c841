"""The 1D nearest-neighbor Ising chain as a two-state process family.

Scanning the equilibrium spin configuration left to right gives a
stationary process whose state is the last spin.  The self-transition
probabilities are

    p = Pr(up|up) = N+ / D,   q = Pr(down|down) = N- / D,
    N+- = exp(beta (J +- b)),
    D = exp(beta J) cosh(beta b)
        + sqrt(exp(-2 beta J) + exp(2 beta J) sinh(beta b)^2),

with beta = 1/T and k_B = 1 (temperatures in units of J/k_B).  The
evaluation below works in the log domain, so both probabilities and both
complements keep full relative accuracy down to very low temperatures
where the naive exponentials overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classical import ComplexityProfile, compute_profile, merge_iid_degenerate
from .machine import EpsilonMachine

__all__ = [
    "UP",
    "DOWN",
    "IsingParams",
    "TransitionPair",
    "TemperatureRangeError",
    "SweepPoint",
    "Extremum",
    "ising_transition_probs",
    "ising_machine",
    "temperature_sweep",
    "find_extremum",
]

UP = "up"
DOWN = "down"


class TemperatureRangeError(ValueError):
    """Temperature so low that an edge probability underflows to zero."""


@dataclass(frozen=True)
class IsingParams:
    """Chain parameters: coupling J, external field b, temperature T > 0."""

    coupling: float
    field: float
    temperature: float

    def __post_init__(self) -> None:
        for name in ("coupling", "field", "temperature"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.temperature <= 0.0:
            raise ValueError("temperature must be strictly positive")

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature


@dataclass(frozen=True)
class TransitionPair:
    """Self-transition probabilities with explicitly stored complements.

    The smaller member of each (probability, complement) pair is computed
    in the log domain and the larger is its exact float complement, so the
    pair sums to exactly 1.0 and tiny transition rates survive down to the
    underflow limit instead of rounding into 0 or 1.
    """

    p: float
    q: float
    p_complement: float
    q_complement: float


def _log_add(x: float, y: float) -> float:
    if x == -math.inf:
        return y
    if y == -math.inf:
        return x
    hi, lo = (x, y) if x >= y else (y, x)
    return hi + math.log1p(math.exp(lo - hi))


def _pair_from_logs(log_p: float, log_c: float) -> tuple[float, float]:
    """(probability, complement) with the smaller taken from its log."""
    if log_c <= log_p:
        small = math.exp(log_c)
        return 1.0 - small, small
    small = math.exp(log_p)
    return small, 1.0 - small


def ising_transition_probs(params: IsingParams) -> TransitionPair:
    """Evaluate (p, q) and complements stably for the given parameters."""
    beta = params.beta
    j = params.coupling
    ab = abs(params.field)
    x_hi = beta * (j + ab)  # log N for the branch aligned with the field
    x_lo = beta * (j - ab)
    delta = x_hi - x_lo  # 2 beta |b|

    # D = (e^x_hi + e^x_lo)/2 + sqrt(e^(-2 beta J) + G^2), G = (e^x_hi - e^x_lo)/2
    log_cosh_term = x_hi + math.log1p(math.exp(-delta)) - math.log(2.0)
    if ab == 0.0:
        log_g = -math.inf
        log_s = -beta * j
    else:
        log_diff = x_hi + math.log(-math.expm1(-delta))
        log_g = log_diff - math.log(2.0)
        log_s = 0.5 * _log_add(-2.0 * beta * j, 2.0 * log_diff - math.log(4.0))
    log_d = _log_add(log_cosh_term, log_s)

    log_p_hi = x_hi - log_d
    log_p_lo = x_lo - log_d
    # D - N_hi = sqrt(G^2 + r) - G = r / (sqrt(G^2 + r) + G), r = e^(-2 beta J)
    log_c_hi = -2.0 * beta * j - _log_add(log_s, log_g) - log_d
    # D - N_lo = G + sqrt(G^2 + r): no cancellation
    log_c_lo = _log_add(log_g, log_s) - log_d

    hi, hi_c = _pair_from_logs(log_p_hi, log_c_hi)
    lo, lo_c = _pair_from_logs(log_p_lo, log_c_lo)
    for value in (hi, hi_c, lo, lo_c):
        if value <= 0.0 or not math.isfinite(value):
            raise TemperatureRangeError(
                f"T = {params.temperature} underflows a transition probability "
                f"at J = {params.coupling}, b = {params.field}"
            )
    if params.field >= 0.0:
        return TransitionPair(p=hi, q=lo, p_complement=hi_c, q_complement=lo_c)
    return TransitionPair(p=lo, q=hi, p_complement=lo_c, q_complement=hi_c)


def ising_machine(params: IsingParams, merge: bool = True) -> EpsilonMachine:
    """Two-state machine of the spin process; degenerate p = 1-q collapses.

    State "up"/"down" is the last observed spin; from "up" the next spin
    is up with probability p, from "down" it is down with probability q.
    """
    pair = ising_transition_probs(params)
    m = EpsilonMachine(
        states=(UP, DOWN),
        alphabet=(UP, DOWN),
        transitions={
            (UP, UP): (UP, pair.p),
            (UP, DOWN): (DOWN, pair.p_complement),
            (DOWN, DOWN): (DOWN, pair.q),
            (DOWN, UP): (UP, pair.q_complement),
        },
    )
    return merge_iid_degenerate(m) if merge else m


@dataclass(frozen=True)
class SweepPoint:
    """One temperature-grid evaluation; ``error`` flags a failed point."""

    temperature: float
    p: float | None
    q: float | None
    profile: ComplexityProfile | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def temperature_sweep(
    coupling: float,
    field: float,
    t_min: float,
    t_max: float,
    steps: int,
    encoding_length: int = 1,
) -> list[SweepPoint]:
    """Profiles on a uniform temperature grid, endpoints included.

    Failed grid points (for instance temperatures below the supported
    range) are flagged and the sweep continues.
    """
    if not (0.0 < t_min < t_max):
        raise ValueError("need 0 < t_min < t_max")
    if steps < 2:
        raise ValueError("need at least 2 steps")
    h = (t_max - t_min) / (steps - 1)
    points: list[SweepPoint] = []
    for i in range(steps):
        t = t_min + i * h
        try:
            params = IsingParams(coupling=coupling, field=field, temperature=t)
            pair = ising_transition_probs(params)
            profile = compute_profile(ising_machine(params), encoding_length=encoding_length)
            points.append(
                SweepPoint(temperature=t, p=pair.p, q=pair.q, profile=profile)
            )
        except (ValueError, ArithmeticError) as exc:
            points.append(
                SweepPoint(temperature=t, p=None, q=None, profile=None, error=str(exc))
            )
    return points


_FIELDS = ("h_mu", "C_mu", "C_q", "E")


def _field_value(point: SweepPoint, selector) -> float:
    if callable(selector):
        return selector(point)
    if selector == "p":
        return point.p
    if selector == "q":
        return point.q
    if selector in _FIELDS:
        return getattr(point.profile, selector)
    raise ValueError(f"unknown field selector {selector!r}")


@dataclass(frozen=True)
class Extremum:
    """Grid argmax refined by a quadratic through the bracketing points."""

    temperature: float
    value: float
    at_boundary: bool


def find_extremum(points: list[SweepPoint], selector) -> Extremum:
    """Locate the maximum of a profile field over a sweep.

    ``selector`` is a field name ("h_mu", "C_mu", "C_q", "E", "p", "q") or
    a callable on sweep points.  An argmax at either end of the grid is
    flagged ``at_boundary`` and returned unrefined.
    """
    usable = [pt for pt in points if pt.ok]
    if len(usable) < 3:
        raise ValueError("need at least 3 valid sweep points")
    values = [_field_value(pt, selector) for pt in usable]
    i = max(range(len(values)), key=values.__getitem__)
    if i == 0 or i == len(values) - 1:
        return Extremum(temperature=usable[i].temperature, value=values[i], at_boundary=True)
    t0, t1, t2 = (usable[k].temperature for k in (i - 1, i, i + 1))
    y0, y1, y2 = values[i - 1], values[i], values[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return Extremum(temperature=t1, value=y1, at_boundary=False)
    h = (t2 - t0) / 2.0
    t_star = t1 + 0.5 * h * (y0 - y2) / denom
    v_star = y1 - (y0 - y2) ** 2 / (8.0 * denom)
    return Extremum(temperature=t_star, value=v_star, at_boundary=False)
