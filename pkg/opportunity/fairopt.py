"""
Optimization and decision procedures under equal opportunity.

In pointwise coordinates ``t_i = f_i / p_i`` the most accurate predictor with
``|d(F)| <= eps`` solves the linear program

    minimize    sum_i c_i t_i,          c_i = p_i (1 - 2 q_i)
    subject to  |sum_i g_i t_i| <= eps,  g_i = p_i w_i
                0 <= t_i <= 1

which has a single coupling constraint. :func:`min_error_eo` solves it
exactly with a sweep over the breakpoints of the scalar Lagrange multiplier;
:func:`oracle_min_error_eo` enumerates basic solutions for cross-checking.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .distribution import PredictorVec
from .exceptions import BadParameter, TooLarge
from .metrics import (bayes_accuracy, error, group_denominators, opp_diff,
                      opportunity_weights, tau_star, trivial_accuracy)

logger = logging.getLogger(__name__)

FLOAT_MARGIN = 1e-12
ORACLE_LIMIT = 12
MAX_EPS = 2


class Certificate(str, Enum):
    NONTRIVIAL_EO_WITNESS = "NontrivialEOWitness"
    ALL_EO_TRIVIAL = "AllEOTrivial"
    NO_NONTRIVIAL_EXISTS = "NoNontrivialExists"


@dataclass(frozen=True, eq=False)
class OptimalPredictor:
    """Result of :func:`min_error_eo`; unpacks as ``(predictor, error)``."""

    predictor: PredictorVec
    error: float
    opp_diff: float
    eps: float

    def __iter__(self):
        return iter((self.predictor, self.error))


@dataclass(frozen=True, eq=False)
class Verdict:
    """Answer to "are equal opportunity and non-trivial accuracy compatible?"."""

    trivial_accuracy: float
    tau_star: float
    bayes_accuracy: float
    min_eo_error: float
    compatible: bool
    nontrivial_exists: bool
    certificate: Certificate
    witness: PredictorVec = None

    @property
    def trivial_error(self):
        return 1 - self.trivial_accuracy


def _margin(source):
    return 0 if source.exact else FLOAT_MARGIN


def _program(source):
    """Costs ``c`` and constraint row ``g`` of the pointwise LP."""
    c = source.P * (source.one - 2 * source.Q)
    g = source.P * opportunity_weights(source)
    return c, g


def _better(source, c, cand, best, margin):
    """Lower cost wins; costs within ``margin`` are decided by predicted mass."""
    cost, best_cost = source.total(c * cand), source.total(c * best)
    if abs(cost - best_cost) > margin:
        return cost < best_cost
    return source.total(source.P * cand) < source.total(source.P * best)


# ---------------------------
# Lagrangian breakpoint sweep
# ---------------------------
def _sweep(source, c, g, target):
    """
    Minimize ``c.t`` subject to ``g.t = target`` over the unit box.

    For a multiplier ``lam`` the box minimizer sets ``t_i = 1`` exactly when
    ``c_i + lam * g_i < 0``. Raising ``lam`` past ``-c_i / g_i`` switches row
    ``i`` and lowers ``g.t`` by ``|g_i|``, so walking the sorted breakpoints
    reaches ``target`` with at most one fractional coordinate.

    Equal breakpoints are ordered by ``-p_i / g_i``, the breakpoint of the
    secondary cost ``p.t``, then by row: among the optima the walk stops at
    the one with the least predicted mass.
    """
    one, zero = source.one, source.zero
    t = np.array([zero] * source.n, dtype=source.dtype)
    for i in range(source.n):
        if g[i] > 0 or (g[i] == 0 and c[i] < 0):
            t[i] = one
    level = source.total(g * t)
    if target >= level:
        return t

    P = source.P
    breakpoints = sorted(
        (-c[i] / g[i], -P[i] / g[i], i) for i in range(source.n) if g[i] != 0
    )
    for _, _, i in breakpoints:
        step = abs(g[i])
        if level - step <= target:
            fraction = (level - target) / step
            if not source.exact:
                fraction = min(max(fraction, 0.0), 1.0)
                if fraction < FLOAT_MARGIN:
                    fraction = 0.0
                elif fraction > 1 - FLOAT_MARGIN:
                    fraction = 1.0
            t[i] = one - fraction if g[i] > 0 else fraction
            if 0 < fraction < 1:
                logger.debug("Fractional coordinate %d at %r", i, fraction)
            return t
        t[i] = zero if g[i] > 0 else one
        level -= step
    return t


def min_error_eo(source, eps=0):
    """
    Most accurate predictor with ``|opp_diff| <= eps``.

    Args:
        source (DataSource): the data source (float or exact).
        eps (float): bound on the absolute opportunity-difference, in ``[0, 2]``.

    Returns:
        OptimalPredictor: the predictor, its error and opportunity-difference.
        Among several optima the one with the smallest ``<F, 1>`` is
        returned, ties going to ``F = 0``.

    Raises:
        UndefinedEO: a group has no positive-label mass.
        BadParameter: ``eps`` outside ``[0, 2]``.
    """
    if not 0 <= eps <= MAX_EPS:
        raise BadParameter(f"eps={eps} outside [0, {MAX_EPS}]")
    group_denominators(source).require()
    c, g = _program(source)
    margin = _margin(source)

    unconstrained = np.where((c < 0).astype(bool), source.one, source.zero)
    if abs(source.total(g * unconstrained)) <= eps:
        t = unconstrained
    else:
        targets = [eps] if eps == 0 else [eps, -eps]
        candidates = [_sweep(source, c, g, target) for target in targets]
        t = candidates[0]
        for cand in candidates[1:]:
            if _better(source, c, cand, t, margin):
                t = cand
    if source.total(c * t) >= -margin and any(ti != 0 for ti in t):
        # F = 0 attains the optimum as well
        t = np.array([source.zero] * source.n, dtype=source.dtype)

    predictor = PredictorVec(t * source.P)
    result = OptimalPredictor(
        predictor=predictor,
        error=error(source, predictor),
        opp_diff=opp_diff(source, predictor),
        eps=eps,
    )
    logger.debug("min_error_eo(eps=%s) = %r", eps, result.error)
    return result


# ---------------------------
# Exhaustive oracle
# ---------------------------
def _oracle_for_row(i, c, g, tol):
    others = [j for j in range(len(c)) if j != i]
    masks = np.arange(1 << len(others), dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(len(others))) & 1).astype(float)
    rest_g = bits @ g[others]
    rest_c = bits @ c[others]
    if abs(g[i]) > tol:
        ti = -rest_g / g[i]
        feasible = (ti >= -tol) & (ti <= 1 + tol)
        cost = rest_c + c[i] * np.clip(ti, 0.0, 1.0)
    else:
        feasible = np.abs(rest_g) <= tol
        cost = rest_c + min(0.0, c[i])
    if not feasible.any():
        return np.inf
    return float(cost[feasible].min())


def oracle_min_error_eo(source, threads=1):
    """
    Exact minimum error under equal opportunity by enumeration.

    An optimum of a box LP with one equality has at most one coordinate off
    its bounds: for every row ``i`` and every 0/1 pattern of the others, solve
    ``g.t = 0`` for ``t_i`` and keep the feasible minima.

    Raises:
        TooLarge: more than 12 rows.
        UndefinedEO: a group has no positive-label mass.
    """
    source = source.to_float()
    if source.n > ORACLE_LIMIT:
        raise TooLarge(f"oracle enumerates n * 2^(n-1) patterns (limit n={ORACLE_LIMIT})")
    c, g = (np.asarray(v, dtype=float) for v in _program(source))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        best = min(pool.map(lambda i: _oracle_for_row(i, c, g, FLOAT_MARGIN), range(source.n)))
    return source.dot(source.P, source.Q) + best


# ---------------------------
# Decisions
# ---------------------------
def nontrivial_exists(source):
    """
    Whether some predictor is strictly more accurate than every constant one.

    Holds exactly when ``tau* < 1``; cross-checked against the Bayes accuracy.
    """
    margin = _margin(source)
    exists = tau_star(source) < 1 - margin
    by_bayes = bayes_accuracy(source) > trivial_accuracy(source) + margin
    if exists != by_bayes:
        logger.warning(
            "tau* and Bayes accuracy disagree on non-triviality at the rounding "
            "boundary; using tau*"
        )
    return exists


def compatibility_verdict(source):
    """
    Decide whether equal opportunity and non-trivial accuracy are compatible.

    Compatible when the best equal-opportunity predictor has error strictly
    below that of the best constant classifier, ``1 - tau``.

    Raises:
        UndefinedEO: a group has no positive-label mass.
    """
    tau = trivial_accuracy(source)
    best = min_error_eo(source, 0)
    compatible = best.error < (1 - tau) - _margin(source)
    exists = nontrivial_exists(source)

    if compatible:
        certificate = Certificate.NONTRIVIAL_EO_WITNESS
    elif not exists:
        certificate = Certificate.NO_NONTRIVIAL_EXISTS
    else:
        certificate = Certificate.ALL_EO_TRIVIAL

    verdict = Verdict(
        trivial_accuracy=tau,
        tau_star=tau_star(source),
        bayes_accuracy=bayes_accuracy(source),
        min_eo_error=best.error,
        compatible=compatible,
        nontrivial_exists=exists,
        certificate=certificate,
        witness=best.predictor if compatible else None,
    )
    logger.info("Verdict: %s (min EO error %r)", certificate.value, best.error)
    return verdict
