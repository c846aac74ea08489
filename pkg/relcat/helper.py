import itertools

import numpy as np

import config


def make_rng(seed=None):
    """
    :param seed: Integer seed, or None for config.DEFAULT_SEED
    :return: numpy Generator; every sampled check draws from one of these
    """

    return np.random.default_rng(config.DEFAULT_SEED if seed is None else seed)


def object_families(bound):
    """
    Every multiset of object sizes with total size <= bound, as non-decreasing tuples.
    Zero-size objects are included, so the family length is capped at bound as well.

    :param bound: Largest total size
    :return: List of tuples, shortest first
    """

    families = []
    for length in range(bound + 1):
        for family in itertools.combinations_with_replacement(range(bound + 1), length):
            if sum(family) <= bound:
                families.append(family)
    return families


def size_pairs(bound, low=0):
    """
    :return: (m, n) for every pair of sizes in [low, bound]
    """

    return list(itertools.product(range(low, bound + 1), repeat=2))


def first_collision(items, key):
    """
    Finds two distinct items with the same key.

    :param items: Iterable of items
    :param key: Function mapping an item to a hashable signature
    :return: (first, second) with key(first) == key(second), or None if key is injective
    """

    seen = {}
    for item in items:
        signature = key(item)
        if signature in seen:
            return seen[signature], item
        seen[signature] = item
    return None


def sample_pairs(items, count, rng):
    """
    Draws count ordered pairs from items with replacement.

    :return: List of (a, b)
    """

    items = list(items)
    if not items:
        return []
    idx = rng.integers(0, len(items), size=(count, 2))
    return [(items[i], items[j]) for i, j in idx]


def sample_triples(items, count, rng):
    """
    :return: count seeded triples drawn with replacement from items
    """

    items = list(items)
    if not items:
        return []
    idx = rng.integers(0, len(items), size=(count, 3))
    return [(items[i], items[j], items[k]) for i, j, k in idx]
