"""
Constructive results: random impossibility instances, the sufficiency
condition with its fair predictor, and the worked example sources.

An impossibility instance is a pair of 3-vectors ``P, Q`` laid out on the
regions ``R1 = (x1, a=0)``, ``R2 = (x2, a=0)``, ``R3 = (x3, a=1)``. Whenever
constraints C1-C5 hold, no equal-opportunity predictor beats the constant
classifier ``F = P``.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distribution import PredictorVec, make_source, three_region_source
from .exceptions import ConstraintViolation, ConstructionError, SufficiencyNotMet
from .metrics import accuracy, group_denominators, opp_diff, trivial_accuracy

logger = logging.getLogger(__name__)

OPEN_INTERVAL_MARGIN = np.finfo(float).eps
MAX_ATTEMPTS = 64
FLOAT_MARGIN = 1e-12

# Printed (3-decimal) instances; the ex-plane masses sum to 0.999.
EX_PLANE_P = (0.131, 0.096, 0.772)
EX_PLANE_Q = (0.274, 0.858, 0.891)
NON_EXAMPLE_P = (0.267, 0.344, 0.141, 0.248)
NON_EXAMPLE_Q = (0.893, 0.896, 0.126, 0.207)
NON_EXAMPLE_A = (0, 1, 0, 1)
PRINTED_TOLERANCE = 1e-2


@dataclass(frozen=True)
class PlaneInstance:
    """
    Masses ``P`` and label rates ``Q`` of the three regions.

    ``a``, ``b`` and ``c`` record the intermediate bounds of the generator
    that produced the instance (``None`` for hand-written instances).
    """

    P: tuple
    Q: tuple
    seed: int = None
    a: float = None
    b: float = None
    c: float = None

    @property
    def c1(self):
        return all(0 < v < 1 for v in self.P + self.Q)

    @property
    def c2(self):
        return math.fsum(p * (2 * q - 1) for p, q in zip(self.P, self.Q)) > 0

    @property
    def c3(self):
        Q1, Q2, Q3 = self.Q
        return Q1 < 0.5 and Q2 > 0.5 and Q3 > 0.5

    @property
    def c4(self):
        Q1, _, Q3 = self.Q
        return Q3 + Q1 >= 1

    @property
    def c5(self):
        (P1, P2, P3), (Q1, Q2, _) = self.P, self.Q
        return P1 * Q1 + P2 * Q2 < P3 * Q1

    def constraints(self):
        return {
            "C1": self.c1,
            "C2": self.c2,
            "C3": self.c3,
            "C4": self.c4,
            "C5": self.c5,
        }

    @property
    def satisfied(self):
        return all(self.constraints().values())


@dataclass(frozen=True)
class SufficiencyReport:
    """Masses ``P(Q > 1/2, A=a)`` and ``P(Q < 1/2, A=a)`` for both groups."""

    above_0: float
    above_1: float
    below_0: float
    below_1: float

    @property
    def masses(self):
        return {
            "above_0": self.above_0,
            "above_1": self.above_1,
            "below_0": self.below_0,
            "below_1": self.below_1,
        }

    @property
    def holds(self):
        return all(mass > 0 for mass in self.masses.values())


# ---------------------------
# Random impossibility instances
# ---------------------------
def _open_uniform(rng, low, high):
    """Uniform draw strictly inside ``(low, high)``."""
    while True:
        u = OPEN_INTERVAL_MARGIN + (1 - 2 * OPEN_INTERVAL_MARGIN) * rng.random()
        value = low + (high - low) * u
        if low < value < high:
            return value


def random_plane_instance(seed):
    """
    Draw a random instance satisfying C1-C5.

    Steps: ``Q1 ~ (0, 1/2)``, ``Q2 ~ (1/2, 1)``, ``Q3 ~ (1 - Q1, 1)``,
    ``P3 ~ (1/2, 1)``; then ``c`` is drawn between
    ``a = max{(1-P3) Q1, 1/2 - P3 Q3}`` and ``b = min{(1-P3) Q2, P3 Q1}`` and
    ``P2 = (c - Q1 (1-P3)) / (Q2 - Q1)``, ``P1 = 1 - P3 - P2``.

    Draws whose float rounding lands on a constraint boundary are redrawn
    from the same stream.

    Raises:
        ConstructionError: ``a < b`` failed, or no valid draw was found.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    for attempt in range(MAX_ATTEMPTS):
        Q1 = _open_uniform(rng, 0.0, 0.5)
        Q2 = _open_uniform(rng, 0.5, 1.0)
        Q3 = _open_uniform(rng, 1.0 - Q1, 1.0)
        P3 = _open_uniform(rng, 0.5, 1.0)

        base = (1 - P3) * Q1
        a = max(base, 0.5 - P3 * Q3)
        b = min((1 - P3) * Q2, P3 * Q1)
        if not a < b:
            raise ConstructionError(f"seed {seed}: a={a} is not below b={b}")

        c = _open_uniform(rng, a, b)
        P2 = (c - base) / (Q2 - Q1)
        P1 = 1 - P3 - P2
        instance = PlaneInstance((P1, P2, P3), (Q1, Q2, Q3), seed, a, b, c)
        if instance.satisfied:
            return instance
        logger.debug("seed %s attempt %d hit a rounding boundary, redrawing", seed, attempt)
    raise ConstructionError(f"seed {seed}: no valid instance in {MAX_ATTEMPTS} draws")


def plane_certificate(instance):
    """
    ``L(P) > L(Z)`` with ``L(F) = <F, 2Q - 1>`` and ``Z`` the equal-opportunity
    point with ``Z1 = 0`` and ``Z2 = P2``; this is what makes ``F = P`` optimal
    on the equal-opportunity plane.
    """
    (P1, P2, P3), Q = instance.P, instance.Q
    Z = (0.0, P2, P3 * P2 * Q[1] / (P1 * Q[0] + P2 * Q[1]))

    def gain(F):
        return math.fsum(f * (2 * q - 1) for f, q in zip(F, Q))

    return gain(instance.P) > gain(Z)


def impossibility_source(instance):
    """
    The three-region data source of a valid instance.

    Raises:
        ConstraintViolation: some of C1-C5 fails.
    """
    failed = [name for name, ok in instance.constraints().items() if not ok]
    if failed:
        raise ConstraintViolation(f"instance violates {', '.join(failed)}")
    return three_region_source(instance.P, instance.Q)


def ex_plane_instance():
    """The printed ex-plane instance with its masses rescaled to sum to 1."""
    total = math.fsum(EX_PLANE_P)
    return PlaneInstance(tuple(p / total for p in EX_PLANE_P), EX_PLANE_Q)


# ---------------------------
# Sufficiency condition
# ---------------------------
def check_sufficiency(source):
    """
    Masses of the four events ``{Q > 1/2, A=a}`` and ``{Q < 1/2, A=a}``.

    Rows with ``q = 1/2`` count toward neither.
    """
    P, Q, A = source.P, source.Q, source.A
    above = (Q > source.half).astype(bool)
    below = (Q < source.half).astype(bool)
    return SufficiencyReport(
        above_0=source.total(P[above & (A == 0)]),
        above_1=source.total(P[above & (A == 1)]),
        below_0=source.total(P[below & (A == 0)]),
        below_1=source.total(P[below & (A == 1)]),
    )


def _balanced(weights):
    """Scale ``(v0, v1)`` so that ``v0 * w0 == v1 * w1`` with ``max(v) == 1``."""
    w0, w1 = weights
    top = max(w0, w1)
    return w1 / top, w0 / top


def sufficiency_predictor(source):
    """
    Equal-opportunity predictor strictly more accurate than both constants.

    When ``F = 0`` is the better constant, predict 0 on ``{Q <= 1/2}`` and a
    group constant on ``{Q > 1/2}``; otherwise predict 1 on ``{Q >= 1/2}`` and
    a group constant on ``{Q < 1/2}``. The group constants equalise the
    true-positive rates; they are max-normalised into ``(0, 1]``.

    Raises:
        SufficiencyNotMet: one of the four masses is zero.
    """
    report = check_sufficiency(source)
    if not report.holds:
        raise SufficiencyNotMet(f"sufficiency masses {report.masses} are not all positive")

    P, Q, A = source.P, source.Q, source.A
    den = group_denominators(source).require()
    one, half = source.one, source.half
    positive = source.dot(P, Q)

    def share(region):
        return [
            source.dot(P[region & (A == group)], Q[region & (A == group)]) / den[group]
            for group in (0, 1)
        ]

    if positive <= one - positive:
        region = (Q > half).astype(bool)
        q0, q1 = _balanced(share(region))
        qhat = np.where(region, np.where(A == 1, q1, q0), source.zero)
        logger.debug("Sufficiency predictor, F=0 side: q0=%s q1=%s", q0, q1)
    else:
        region = (Q < half).astype(bool)
        miss0, miss1 = share(region)
        if miss1 == 0:
            q0, q1 = one, half
            logger.debug("Sufficiency predictor: no positives below 1/2 in group 1")
        elif miss0 == 0:
            q0, q1 = half, one
            logger.debug("Sufficiency predictor: no positives below 1/2 in group 0")
        else:
            r0, r1 = _balanced((miss0, miss1))
            q0, q1 = one - r0, one - r1
        qhat = np.where(region, np.where(A == 1, q1, q0), one)
        logger.debug("Sufficiency predictor, F=P side: q0=%s q1=%s", q0, q1)

    predictor = PredictorVec.from_pointwise(source, qhat)
    margin = 0 if source.exact else FLOAT_MARGIN
    if abs(opp_diff(source, predictor)) > margin:
        raise ConstructionError("sufficiency predictor violates equal opportunity")
    if not accuracy(source, predictor) > trivial_accuracy(source):
        raise ConstructionError("sufficiency predictor is not more accurate than tau")
    return predictor


# ---------------------------
# Worked examples
# ---------------------------
def worked_examples():
    """
    The three worked examples, keyed ``cloud``, ``non-example`` and ``ex-plane``.

    ``cloud`` is exact (Fractions). ``ex-plane`` keeps the printed values,
    rescaled because the printed masses only sum to 0.999.
    """
    cloud = make_source(
        [
            ("0", 0, Fraction(3, 8), Fraction(9, 20)),
            ("0", 1, Fraction(2, 8), Fraction(15, 20)),
            ("1", 0, Fraction(1, 8), Fraction(15, 20)),
            ("1", 1, Fraction(2, 8), Fraction(16, 20)),
        ]
    )
    non_example = make_source(
        (f"x{i + 1}", a, p, q)
        for i, (a, p, q) in enumerate(zip(NON_EXAMPLE_A, NON_EXAMPLE_P, NON_EXAMPLE_Q))
    )
    ex_plane = make_source(
        (
            (f"x{j + 1}", a, p, q)
            for j, (a, p, q) in enumerate(zip((0, 0, 1), EX_PLANE_P, EX_PLANE_Q))
        ),
        renormalize_tolerance=PRINTED_TOLERANCE,
    )
    return {"cloud": cloud, "non-example": non_example, "ex-plane": ex_plane}
