# tests/test_power.py
import unittest

import numpy as np

from src.config import Config
from src.errors import BadParameter, BudgetExceeded
from src.families import cyclic, symmetric
from src.power import PowerChain, direct_power_closure, encode_rows

CONFIG = Config()


def _brute_closure(G, generators):
    """Breadth-first closure of tuples under coordinatewise multiplication."""
    gens = [tuple(int(v) for v in g) for g in generators]
    identity = tuple(0 for _ in gens[0])
    seen = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for t in frontier:
            for g in gens:
                u = tuple(int(G.mul[a, b]) for a, b in zip(t, g))
                if u not in seen:
                    seen.add(u)
                    fresh.append(u)
        frontier = fresh
    return seen


class TestPowerChain(unittest.TestCase):
    def test_diagonal_and_full_square(self):
        G = cyclic(4, CONFIG)
        self.assertEqual(PowerChain(G, [[1, 1]], config=CONFIG).order(), 4)
        chain = PowerChain(G, [[1, 0], [0, 1]], config=CONFIG)
        self.assertEqual(chain.order(), 16)
        self.assertEqual(len(chain.elements()), 16)

    def test_matches_brute_force(self):
        G = symmetric(3, CONFIG)
        r, t = G.index_of("(1 2 3)"), G.index_of("(1 2)")
        cases = [
            [[r, r, t]],
            [[r, t, 0], [t, r, r]],
            [[t, t, t], [r, r, r]],
            [[t, 0, r], [0, t, t], [r, r, 0]],
        ]
        for gens in cases:
            with self.subTest(gens=gens):
                rows = direct_power_closure(G, np.array(gens), CONFIG)
                self.assertEqual({tuple(int(v) for v in row) for row in rows}, _brute_closure(G, gens))
                self.assertEqual(len(rows), len({tuple(row) for row in rows.tolist()}))

    def test_elements_are_sorted(self):
        G = symmetric(3, CONFIG)
        rows = direct_power_closure(G, np.array([[1, 2], [2, 1]]), CONFIG)
        codes = encode_rows(rows, G.order)
        self.assertTrue((np.diff(codes) > 0).all())

    def test_contains(self):
        G = cyclic(4, CONFIG)
        chain = PowerChain(G, [[1, 1]], config=CONFIG)
        self.assertTrue(chain.contains([3, 3]))
        self.assertFalse(chain.contains([1, 0]))

    def test_clean_passengers(self):
        G = cyclic(4, CONFIG)
        # base coordinate a^2 cannot tell apart the powers of a in the first passenger
        chain = PowerChain(G, [[2, 1, 2]], base_width=1, config=CONFIG)
        self.assertEqual(chain.clean_passengers().tolist(), [False, True])
        chain = PowerChain(G, [[1, 1, 2]], base_width=1, config=CONFIG)
        self.assertEqual(chain.clean_passengers().tolist(), [True, True])

    def test_budget(self):
        G = symmetric(3, CONFIG)
        with self.assertRaises(BudgetExceeded):
            PowerChain(G, [[1, 2, 3], [2, 3, 1], [3, 1, 2]], config=Config(budget=5))

    def test_bad_generators(self):
        with self.assertRaises(BadParameter):
            PowerChain(cyclic(2, CONFIG), [1, 0], config=CONFIG)
        with self.assertRaises(BadParameter):
            PowerChain(cyclic(2, CONFIG), [[1, 0]], base_width=3, config=CONFIG)


class TestEncodeRows(unittest.TestCase):
    def test_mixed_radix(self):
        self.assertEqual(encode_rows(np.array([[1, 2], [0, 0]]), 3).tolist(), [5, 0])


if __name__ == "__main__":
    unittest.main()
