"""Shared fixtures and random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import HealthCheck, settings

from parastab import NumTransform, WeightSystem, is_generic, weight_system

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

# Denominators chosen as prime powers so random accumulated sums rarely
# collapse to integers; genericity rejection loops terminate quickly.
_DENS = (64, 81, 125, 243, 128)


def rand_weights(rng: random.Random, r: int, n: int) -> WeightSystem:
    """Uniform-ish full-flag weight rows, strictly increasing in [0, 1)."""
    rows = []
    for _ in range(n):
        den = rng.choice(_DENS)
        nums = sorted(rng.sample(range(den), r))
        rows.append([Fraction(k, den) for k in nums])
    return weight_system(rows)


def rand_generic_weights(rng: random.Random, r: int, n: int) -> WeightSystem:
    while True:
        w = rand_weights(rng, r, n)
        if is_generic(w):
            return w


def rand_concentrated_weights(rng: random.Random, r: int, n: int) -> WeightSystem:
    """Generic weights whose per-point spread stays under 4 / (n * r**2)."""
    bound = Fraction(4, n * r * r)
    while True:
        rows = []
        ok = True
        for _ in range(n):
            den = rng.choice(_DENS)
            offs = sorted(rng.sample(range(1, den), r - 1))
            spread = [Fraction(o, den) * bound for o in offs]
            room = 1 - spread[-1]
            k_max = (room.numerator * 997) // room.denominator
            if k_max <= 0:
                ok = False
                break
            base = Fraction(rng.randrange(k_max), 997)
            rows.append([base] + [base + s for s in spread])
        if not ok:
            continue
        w = weight_system(rows)
        if is_generic(w):
            return w


def rand_transform(rng: random.Random, r: int, n: int) -> NumTransform:
    perm = list(range(n))
    rng.shuffle(perm)
    return NumTransform(
        tuple(perm),
        rng.choice((1, -1)),
        rng.randrange(-4, 5),
        tuple(rng.randrange(r) for _ in range(n)),
    )
