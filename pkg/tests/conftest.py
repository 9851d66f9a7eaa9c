"""Shared helpers for the test suite."""
import random

import pytest

from delpezzo.lattice import Isometry, del_pezzo_lattice
from delpezzo.weyl import reflection, weyl_generators


def canonical_generators(n):
    """The reflections in the norm -2 generator vectors (they all fix K)."""
    return [reflection(v) for v in weyl_generators(n).vectors if v.norm() == -2]


def random_group_element(n, rng: random.Random, length: int = 8) -> Isometry:
    """A pseudo-random product of canonical-class-fixing generators."""
    gens = canonical_generators(n)
    lat = del_pezzo_lattice(n)
    g = Isometry(lat, tuple(tuple(1 if i == j else 0 for j in range(lat.rank))
                            for i in range(lat.rank)))
    for _ in range(rng.randrange(1, length + 1)):
        g = g @ rng.choice(gens)
    return g


def brute_force_root_count(n, coeff_bound: int = 3) -> int:
    """Independent root oracle: vectors of square -2 orthogonal to K.

    Exhaustive over |a_i| <= coeff_bound in the (H, E) basis, with
    branch-and-bound pruning on the two defining equations
    sum a_i^2 = a_0^2 + 2 and sum a_i = -3 a_0.
    """
    count = 0
    for a0 in range(-coeff_bound, coeff_bound + 1):
        norm_budget = a0 * a0 + 2          # remaining sum of squares
        sum_target = -3 * a0               # remaining coordinate sum

        def descend(k, budget, target):
            nonlocal count
            remaining = n - k
            if remaining == 0:
                if budget == 0 and target == 0:
                    count += 1
                return
            if budget < 0 or abs(target) > coeff_bound * remaining:
                return
            if target * target > budget * remaining:
                return
            for a in range(-coeff_bound, coeff_bound + 1):
                descend(k + 1, budget - a * a, target - a)

        descend(0, norm_budget, sum_target)
    return count


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260826)
