"""Seeded randomized self-checks behind the ``verify`` CLI command.

Each suite hammers one contract (chain ordering, duality, Minty
identities, the pair inequality, oracle agreement) on reproducible
random inputs.  ``slack`` overrides every per-check tolerance at once;
passing 0.0 is the supported way to prove the suites can fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import bound_report, dual_carlier_check, pair_inequality_check
from .catalog import (
    make_burg,
    make_energy,
    make_rotator,
    make_shannon,
    make_subspace_indicator,
    subdifferential_operator,
)
from .core import INF, inner, norm_sq
from .oracle import numeric_conjugate, numeric_prox

_MAX_REPORTED = 5

GAMMA_SET = (0.01, 0.1, 1.0, 10.0, 100.0)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.failed == 0

    def record(self, ok, message):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < _MAX_REPORTED:
                self.failures.append(message)


def _pick(slack, default):
    return default if slack is None else slack


def function_entries():
    return [
        make_energy(2),
        make_subspace_indicator([[1.0, 0.0]]),
        make_burg(),
        make_shannon(),
    ]


def operator_entries():
    return [subdifferential_operator(f) for f in function_entries()] + [make_rotator()]


def domain_sample(f, rng):
    """A point of dom f (for subspace: of the subspace itself)."""
    if f.name == "energy":
        return rng.normal(size=f.dim)
    if f.name == "subspace":
        return f.prox(1.0, rng.normal(size=f.dim))
    return np.array([abs(rng.normal()) + 0.1])


def run_chain_suite(rng, slack=None):
    result = SuiteResult("chain-inequality")
    s = _pick(slack, 1e-9)
    for f in function_entries():
        for _ in range(50):
            x = domain_sample(f, rng)
            x_star = rng.normal(size=f.dim)
            for gamma in GAMMA_SET:
                rep = bound_report(f, gamma, x, x_star)
                scale = s * (1.0 + abs(rep.carlier))
                upper = rep.gap
                ok = True
                if rep.fitzpatrick is not None:
                    ok = rep.fitzpatrick <= upper + scale
                    upper = min(upper, rep.fitzpatrick)
                ok = ok and rep.carlier <= upper + scale and rep.carlier >= -scale
                result.record(
                    ok,
                    f"{f.name} gamma={gamma} x={x.tolist()} x_star={x_star.tolist()}: "
                    f"gap={rep.gap!r} fitz={rep.fitzpatrick!r} carlier={rep.carlier!r}",
                )
    return result


def run_duality_suite(rng, slack=None):
    result = SuiteResult("duality")
    s = _pick(slack, 1e-10)
    for A in operator_entries():
        for _ in range(40):
            x = rng.normal(size=A.dim)
            x_star = rng.normal(size=A.dim)
            for gamma in GAMMA_SET:
                lhs, rhs = dual_carlier_check(A, gamma, x, x_star)
                ok = abs(lhs - rhs) <= s * (1.0 + abs(lhs))
                result.record(
                    ok,
                    f"{A.name} gamma={gamma} x={x.tolist()} x_star={x_star.tolist()}: "
                    f"lhs={lhs!r} rhs={rhs!r}",
                )
    return result


def run_minty_suite(rng, slack=None):
    result = SuiteResult("minty-identities")
    s_exact = _pick(slack, 1e-12)
    s_rel = _pick(slack, 1e-10)
    for A in operator_entries():
        for _ in range(20):
            x = rng.normal(size=A.dim)
            x_star = rng.normal(size=A.dim)
            for gamma in GAMMA_SET:
                z = x + gamma * x_star
                a = A.resolvent(gamma, z)
                a_star = (z - a) / gamma
                label = f"{A.name} gamma={gamma} x={x.tolist()} x_star={x_star.tolist()}"

                result.record(A.graph_contains(a, a_star), f"{label}: (a, a*) not in graph")

                m3 = float(np.max(np.abs(z - (a + gamma * a_star))))
                result.record(m3 <= s_exact, f"{label}: reassembly error {m3!r}")

                sq = norm_sq(x - a)
                m6_l = sq + norm_sq(x_star - a_star)
                m6_r = (1.0 + 1.0 / gamma**2) * sq
                result.record(
                    abs(m6_l - m6_r) <= s_rel * (1.0 + abs(m6_l) + abs(m6_r)),
                    f"{label}: joint norm {m6_l!r} vs {m6_r!r}",
                )

                m8_l = norm_sq((x - a) - (x_star - a_star))
                m8_r = (1.0 + 1.0 / gamma) ** 2 * sq
                result.record(
                    abs(m8_l - m8_r) <= s_rel * (1.0 + abs(m8_l) + abs(m8_r)),
                    f"{label}: difference norm {m8_l!r} vs {m8_r!r}",
                )

                key_l = inner(a - x, x_star - a_star)
                key_r = sq / gamma
                result.record(
                    abs(key_l - key_r) <= s_rel * (1.0 + abs(key_l) + abs(key_r)),
                    f"{label}: key product {key_l!r} vs {key_r!r}",
                )
    return result


def run_pair_suite(rng, slack=None):
    result = SuiteResult("pair-inequality")
    s = _pick(slack, 1e-9)
    for f in [make_energy(2), make_burg(), make_shannon()]:
        for _ in range(50):
            x = domain_sample(f, rng)
            y = domain_sample(f, rng)
            x_star = rng.normal(size=f.dim)
            y_star = rng.normal(size=f.dim)
            lhs, rhs = pair_inequality_check(f, x, x_star, y, y_star)
            ok = lhs == INF or lhs >= rhs - s * (1.0 + abs(rhs))
            result.record(
                ok,
                f"{f.name} x={x.tolist()} y={y.tolist()}: lhs={lhs!r} rhs={rhs!r}",
            )

    # cross-graph points of the energy: y* = x and x* = y force equality,
    # and equality must certify both graph memberships
    energy = make_energy(2)
    op = subdifferential_operator(energy)
    for _ in range(20):
        x = rng.normal(size=2)
        y = rng.normal(size=2)
        x_star, y_star = y, x
        lhs, rhs = pair_inequality_check(energy, x, x_star, y, y_star)
        equal = abs(lhs - rhs) <= s * (1.0 + abs(rhs))
        result.record(
            equal,
            f"energy equality case x={x.tolist()} y={y.tolist()}: lhs={lhs!r} rhs={rhs!r}",
        )
        if equal:
            result.record(
                op.graph_contains(x, y_star) and op.graph_contains(y, x_star),
                f"energy equality case x={x.tolist()} y={y.tolist()}: membership lost",
            )
    return result


def conjugate_queries(f, rng, count):
    """Query points where the closed-form conjugate is finite and the
    maximizer is interior to the oracle box."""
    out = []
    for _ in range(count):
        if f.name == "energy":
            out.append(rng.uniform(-3.0, 3.0, size=f.dim))
        elif f.name == "subspace":
            q = np.zeros(f.dim)
            q[-1] = rng.uniform(-5.0, 5.0)
            out.append(q)
        elif f.name == "burg":
            out.append(np.array([-math.exp(rng.uniform(-2.0, 1.0))]))
        else:
            out.append(np.array([rng.uniform(-3.0, 3.0)]))
    return out


def prox_queries(f, rng, count):
    out = []
    gammas = (0.1, 1.0, 10.0)
    for i in range(count):
        out.append((gammas[i % len(gammas)], rng.uniform(-5.0, 5.0, size=f.dim)))
    return out


def run_oracle_suite(rng, slack=None, count=5):
    result = SuiteResult("oracle-agreement")
    s_conj = _pick(slack, 1e-4)
    s_prox = _pick(slack, 1e-5)
    for f in function_entries():
        for x_star in conjugate_queries(f, rng, count):
            closed = f.conjugate(x_star)
            est = numeric_conjugate(f, x_star)
            ok = not est.on_boundary and abs(est.value - closed) <= s_conj * (1.0 + abs(closed))
            result.record(
                ok,
                f"{f.name} conjugate at {x_star.tolist()}: closed={closed!r} "
                f"oracle={est.value!r} boundary={est.on_boundary}",
            )
        for gamma, z in prox_queries(f, rng, count):
            closed = f.prox(gamma, z)
            est = numeric_prox(f, gamma, z)
            err = float(np.max(np.abs(est - closed)))
            result.record(
                err <= s_prox,
                f"{f.name} prox gamma={gamma} z={z.tolist()}: closed={closed.tolist()} "
                f"oracle={est.tolist()} err={err!r}",
            )
    return result


def run_all(seed=42, slack=None):
    rng = np.random.default_rng(seed)
    return [
        run_chain_suite(rng, slack),
        run_duality_suite(rng, slack),
        run_minty_suite(rng, slack),
        run_pair_suite(rng, slack),
        run_oracle_suite(rng, slack),
    ]
