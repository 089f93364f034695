# tests/test_utils.py
import unittest

import numpy as np

from src.utils import bits_to_indices, bits_to_mask, indices_to_bits, mask_to_bits, stopwatch


class TestBitsets(unittest.TestCase):
    def test_mask_and_bits(self):
        mask = np.array([True, False, True, False, False, False, False, False, True])
        bits = mask_to_bits(mask)
        self.assertEqual(bits, 0b100000101)
        self.assertTrue((bits_to_mask(bits, mask.size) == mask).all())
        self.assertEqual(bits_to_indices(bits), [0, 2, 8])
        self.assertEqual(indices_to_bits([0, 2, 8]), bits)


class TestStopwatch(unittest.TestCase):
    def test_accumulates(self):
        costs = {}
        with stopwatch(costs):
            pass
        with stopwatch(costs):
            pass
        self.assertGreaterEqual(costs["micros"], 0)


if __name__ == "__main__":
    unittest.main()
