"""
Seeded generators of data sources for the property tests.
"""

from fractions import Fraction

import numpy as np

from ..distribution import SourceRow, make_source


def random_source(rng, n, exact=False):
    """
    Random valid source with ``n`` rows (n >= 2) and both groups observed.

    Rows alternate between the groups so that each has positive-label mass;
    rates are kept inside ``[0.05, 0.95]``.
    """
    weights = rng.random(n) + 0.05
    rates = 0.05 + 0.9 * rng.random(n)
    if exact:
        counts = [int(w * 1000) + 1 for w in weights]
        total = sum(counts)
        rows = [
            SourceRow(f"x{i}", i % 2, Fraction(c, total), Fraction(int(r * 100), 100))
            for i, (c, r) in enumerate(zip(counts, rates))
        ]
    else:
        masses = weights / weights.sum()
        masses[-1] = 1.0 - masses[:-1].sum()
        rows = [
            SourceRow(f"x{i}", i % 2, float(p), float(q))
            for i, (p, q) in enumerate(zip(masses, rates))
        ]
    return make_source(rows)


def random_sources(seed, count, low=2, high=12, exact=False):
    """``count`` sources with sizes drawn uniformly from ``[low, high]``."""
    rng = np.random.default_rng(seed)
    return [random_source(rng, int(rng.integers(low, high + 1)), exact) for _ in range(count)]


RATE_GRID = (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1)


def discrete_source(rng, n, exact=True):
    """
    Random source with rates on the grid ``{0, 1/4, 1/2, 3/4, 1}``.

    Ties at ``q = 1/2``, deterministic rows and parallel generators are
    common. Rows 0 and 1 (one per group) get a positive rate so that equal
    opportunity is defined.
    """
    counts = rng.integers(1, 20, size=n)
    total = int(counts.sum())
    picks = rng.integers(0, len(RATE_GRID), size=n)
    picks[:2] = rng.integers(1, len(RATE_GRID), size=2)
    rows = [
        SourceRow(f"x{i}", i % 2, Fraction(int(c), total), Fraction(RATE_GRID[k]))
        for i, (c, k) in enumerate(zip(counts, picks))
    ]
    source = make_source(rows)
    return source if exact else source.to_float()


def discrete_sources(seed, count, low=2, high=10, exact=True):
    """``count`` grid-rate sources with sizes drawn uniformly from ``[low, high]``."""
    rng = np.random.default_rng(seed)
    return [discrete_source(rng, int(rng.integers(low, high + 1)), exact) for _ in range(count)]


def half_source(n=4):
    """Source with ``q = 1/2`` everywhere: its region is a vertical segment."""
    return make_source(
        (f"x{i}", i % 2, Fraction(1, n), Fraction(1, 2)) for i in range(n)
    )


def cloud_samples(rng, count):
    """``(x, a, y)`` draws from the cloud source."""
    rows = [("0", 0, 3 / 8, 9 / 20), ("0", 1, 2 / 8, 15 / 20), ("1", 0, 1 / 8, 15 / 20), ("1", 1, 2 / 8, 16 / 20)]
    picks = rng.choice(len(rows), size=count, p=[r[2] for r in rows])
    labels = rng.random(count)
    return [
        (rows[k][0], rows[k][1], int(u < rows[k][3])) for k, u in zip(picks, labels)
    ]
