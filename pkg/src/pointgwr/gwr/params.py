"""Hyper-parameters of the growing-when-required network."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict


#: Firing-counter update rules.  "closed-form" advances the counter exactly
#: along its exponential decay curve once per firing; "euler" applies the
#: literal forward-Euler step dh = (kappa*(h0-h) - S)/tau, clamped.  With the
#: default constants kappa/tau exceeds 2, so the Euler step is numerically
#: unstable (it limit-cycles around the floor instead of converging); it is
#: kept only as an explicit opt-in.
HABITUATION_RULES = ("closed-form", "euler")


@dataclass
class GwrParams:
    """Network hyper-parameters.

    Attributes:
        a_t: insertion threshold on the activity a = exp(-distance).
        eta_b, eta_n: learning rates for the best-matching node and its
            topological neighbors.
        h_t: firing-counter threshold; insertion additionally requires the
            best match to be well trained (counter below this value).
        h0: initial firing counter of a fresh node.
        stimulus: stimulus strength S of the habituation law.
        kappa_b, kappa_n: habituation decay constants for the best match
            and for neighbors.
        tau_b, tau_n: habituation time constants for the best match and
            for neighbors.
        h_floor: hard lower clamp on the firing counter.
        age_max: edges older than this are pruned.
        nb_max: maximum number of neighbors per node; adding an edge past
            the cap evicts the affected node's oldest edge.
        noise_t: activation threshold below which an input is dismissed
            as noise at prediction time.
        habituation_rule: one of HABITUATION_RULES.
        adapt_label_sizes: when True the label width/height follow the same
            update rule as the label centroid; when False only the centroid
            moves.
    """

    a_t: float = 0.90
    eta_b: float = 0.1
    eta_n: float = 0.01
    h_t: float = 0.1
    h0: float = 1.0
    stimulus: float = 1.0
    kappa_b: float = 1.05
    kappa_n: float = 1.05
    tau_b: float = 0.3
    tau_n: float = 0.1
    h_floor: float = 0.01
    age_max: int = 200
    nb_max: int = 6
    noise_t: float = 0.5
    habituation_rule: str = "closed-form"
    adapt_label_sizes: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.a_t < 1.0:
            raise ValueError(f"a_t must lie in (0, 1), got {self.a_t}")
        if not 0.0 < self.noise_t < 1.0:
            raise ValueError(f"noise_t must lie in (0, 1), got {self.noise_t}")
        if not 0.0 < self.eta_n < self.eta_b < 1.0:
            raise ValueError(
                f"learning rates must satisfy 0 < eta_n < eta_b < 1, got "
                f"eta_b={self.eta_b}, eta_n={self.eta_n}"
            )
        if not 0.0 < self.h_t < self.h0:
            raise ValueError(f"h_t must lie in (0, h0), got {self.h_t}")
        if self.h0 <= 0 or self.stimulus <= 0:
            raise ValueError("h0 and stimulus must be positive")
        if min(self.kappa_b, self.kappa_n, self.tau_b, self.tau_n) <= 0:
            raise ValueError("habituation constants must be positive")
        if not 0.0 <= self.h_floor < self.h_t:
            raise ValueError(f"h_floor must lie in [0, h_t), got {self.h_floor}")
        if self.age_max < 1:
            raise ValueError(f"age_max must be at least 1, got {self.age_max}")
        if self.nb_max < 2:
            raise ValueError(f"nb_max must be at least 2, got {self.nb_max}")
        if self.habituation_rule not in HABITUATION_RULES:
            raise ValueError(
                f"habituation_rule must be one of {HABITUATION_RULES}, "
                f"got {self.habituation_rule!r}"
            )

    def habituation_asymptote(self, is_bmu: bool = True) -> float:
        """The value the firing counter decays toward: h0 - S/kappa."""
        kappa = self.kappa_b if is_bmu else self.kappa_n
        return self.h0 - self.stimulus / kappa

    def as_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(d: dict) -> "GwrParams":
        return GwrParams(**d)


def habituation_closed_form(t: float, params: GwrParams, is_bmu: bool = True) -> float:
    """Firing counter after t consecutive firings, counted from h0 at t=0.

    h(t) = h0 - (S/kappa) * (1 - exp(-kappa * t / tau))
    """
    kappa = params.kappa_b if is_bmu else params.kappa_n
    tau = params.tau_b if is_bmu else params.tau_n
    return params.h0 - (params.stimulus / kappa) * (1.0 - math.exp(-kappa * t / tau))


def habituate(h: float, params: GwrParams, is_bmu: bool) -> float:
    """One firing-counter update; pure, clamped into [h_floor, h0].

    Under the default "closed-form" rule the counter moves exactly one
    firing further along the exponential decay toward the asymptote
    h0 - S/kappa, so repeated calls reproduce the closed-form curve
    without discretization error.  Under "euler" the literal difference
    step dh = (kappa*(h0 - h) - S)/tau is applied instead.
    """
    kappa = params.kappa_b if is_bmu else params.kappa_n
    tau = params.tau_b if is_bmu else params.tau_n
    if params.habituation_rule == "closed-form":
        h_star = params.h0 - params.stimulus / kappa
        new = h_star + (h - h_star) * math.exp(-kappa / tau)
    else:
        new = h + (kappa * (params.h0 - h) - params.stimulus) / tau
    return min(params.h0, max(params.h_floor, new))
