"""Series lower bounds from cyclic monotonicity.

Iterating the Minty parametrization at a fixed primal point x turns the
single Carlier term into a series: with a_0* = x* and

    a_k  = J_{gamma_k A}(x + gamma_k a_{k-1}*),
    a_k* = (x + gamma_k a_{k-1}* - a_k) / gamma_k,

each partial sum of ||x - a_k||^2 / gamma_k lower-bounds the gap of the
Fitzpatrick function of order n at (x, x*), and for A = df the whole
series is dominated by the Fenchel-Young gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .core import DEFAULT_TOLERANCES, as_vector, inner


@dataclass(frozen=True)
class GammaSchedule:
    """Step sizes for the cyclic recursion: one constant or an explicit list."""

    constant: Optional[float] = None
    values: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if (self.constant is None) == (self.values is None):
            raise ValueError("provide exactly one of constant= or values=")
        if self.constant is not None and not self.constant > 0.0:
            raise ValueError(f"gamma must be positive, got {self.constant!r}")
        if self.values is not None:
            if len(self.values) == 0:
                raise ValueError("values must be non-empty")
            for g in self.values:
                if not g > 0.0:
                    raise ValueError(f"gamma must be positive, got {g!r}")

    @classmethod
    def const(cls, gamma):
        return cls(constant=float(gamma))

    @classmethod
    def from_values(cls, seq):
        return cls(values=tuple(float(g) for g in seq))

    def resolve(self, n):
        if n < 1:
            raise ValueError(f"n_terms must be >= 1, got {n}")
        if self.constant is not None:
            return np.full(n, self.constant)
        if len(self.values) < n:
            raise ValueError(
                f"schedule supplies {len(self.values)} values but {n} terms requested"
            )
        return np.array(self.values[:n])


@dataclass(frozen=True)
class CyclicSequence:
    """The generated chain and its series terms at (x, x*)."""

    x: np.ndarray
    x_star: np.ndarray
    gammas: np.ndarray
    points: tuple
    terms: np.ndarray
    partial_sums: np.ndarray


def generate_cyclic_sequence(A, x, x_star, schedule, n_terms):
    """Run the recursion for n_terms steps and collect terms and sums.

    Term k is ||x - a_k||^2 / gamma_k; term 1 coincides with the Carlier
    bound C_{A,gamma_1}(x, x*) by construction.
    """
    x = as_vector(x, A.dim, "x")
    x_star = as_vector(x_star, A.dim, "x_star")
    gammas = schedule.resolve(n_terms)

    points = []
    terms = np.empty(n_terms)
    a_star = x_star
    for k in range(n_terms):
        gamma = gammas[k]
        z = x + gamma * a_star
        a = A.resolvent(gamma, z)
        d = x - a
        terms[k] = float(np.dot(d, d)) / gamma
        a_star = (z - a) / gamma
        points.append((a, a_star))

    return CyclicSequence(
        x=x,
        x_star=x_star,
        gammas=gammas,
        points=tuple(points),
        terms=terms,
        partial_sums=np.cumsum(terms),
    )


def series_bound(A, x, x_star, schedule, n_terms):
    """The n-term series lower bound.

    Returns (partial_sum, terms) where partial_sum is the sum of the
    first n_terms resolvent-residual terms and terms is that list.  The
    first term always equals carlier_bound(A, gammas[0], x, x_star).
    """
    seq = generate_cyclic_sequence(A, x, x_star, schedule, n_terms)
    return float(seq.partial_sums[-1]), [float(t) for t in seq.terms]


def ncyclic_identity_check(x, x_star, points):
    """Both sides of the chain polarization identity, for arbitrary points.

    With points (a_1, a_1*), ..., (a_m, a_m*):

        lhs = <x - a_m, a_m*> + <a_1 - x, x*>
              + sum_{k=1}^{m-1} <a_{k+1} - a_k, a_k*>
        rhs = <a_1 - x, x* - a_1*>
              + sum_{k=2}^{m} <a_k - x, a_{k-1}* - a_k*>

    Algebraically lhs = rhs with no monotonicity or graph assumption.
    Returns (lhs, rhs).
    """
    x = as_vector(x, None, "x")
    x_star = as_vector(x_star, x.size, "x_star")
    pts = [
        (as_vector(a, x.size, f"a_{i + 1}"), as_vector(a_star, x.size, f"a_star_{i + 1}"))
        for i, (a, a_star) in enumerate(points)
    ]
    if not pts:
        raise ValueError("points must contain at least one pair")

    m = len(pts)
    lhs = inner(x - pts[m - 1][0], pts[m - 1][1]) + inner(pts[0][0] - x, x_star)
    for k in range(m - 1):
        lhs += inner(pts[k + 1][0] - pts[k][0], pts[k][1])

    rhs = inner(pts[0][0] - x, x_star - pts[0][1])
    for k in range(1, m):
        rhs += inner(pts[k][0] - x, pts[k - 1][1] - pts[k][1])

    return lhs, rhs


def fitzpatrick_n_lower(A, x, x_star, points, tol=DEFAULT_TOLERANCES):
    """Evaluate the order-(m+1) Fitzpatrick supremand at a graph chain.

    Every pair must lie in gr A (checked; ValueError names the offender).
    Returns the supremand minus <x, x*>, a lower bound for
    F_{A,m+1}(x, x*) - <x, x*>.
    """
    x = as_vector(x, A.dim, "x")
    x_star = as_vector(x_star, A.dim, "x_star")
    pts = list(points)
    if not pts:
        raise ValueError("points must contain at least one pair")
    for i, (a, a_star) in enumerate(pts):
        if not A.graph_contains(a, a_star):
            raise ValueError(f"point {i + 1} is not in the graph of {A.name}")

    m = len(pts)
    value = inner(x - pts[m - 1][0], pts[m - 1][1]) + inner(pts[0][0] - x, x_star)
    for k in range(m - 1):
        value += inner(pts[k + 1][0] - pts[k][0], pts[k][1])
    return value


SERIES_CSV_HEADER = ("k", "gamma_k", "term_k", "partial_sum_k")


def series_csv_rows(seq):
    rows = []
    for k in range(seq.terms.size):
        rows.append(
            [
                str(k + 1),
                repr(float(seq.gammas[k])),
                repr(float(seq.terms[k])),
                repr(float(seq.partial_sums[k])),
            ]
        )
    return rows
