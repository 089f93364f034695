# tests/test_families.py
import unittest

from src.config import Config
from src.errors import BadParameter, OrderCapExceeded
from src.families import (alternating, builtin, cyclic, dicyclic, dihedral, direct_product,
                          elementary_abelian, parse_family_spec, symmetric)
from src.lattice import nilpotency_class, normal_subgroups

CONFIG = Config()


class TestFamilies(unittest.TestCase):
    def test_cyclic(self):
        G = cyclic(6, CONFIG)
        self.assertEqual(G.order, 6)
        self.assertTrue(G.is_abelian)
        self.assertEqual(G.labels[:3], ("e", "a", "a^2"))
        self.assertEqual(G.name, "cyclic:6")

    def test_dihedral(self):
        G = dihedral(6, CONFIG)
        self.assertEqual(G.labels, ("e", "r", "r^2", "s", "rs", "r^2s"))
        self.assertFalse(G.is_abelian)
        self.assertEqual(nilpotency_class(dihedral(8, CONFIG)), 2)

    def test_quaternion(self):
        Q8 = dicyclic(8, CONFIG)
        self.assertEqual(Q8.order, 8)
        minimal = normal_subgroups(Q8, minimal_only=True)
        self.assertEqual([N.order for N in minimal], [2])
        # a single involution
        self.assertEqual(sum(1 for x in Q8.elements() if Q8.element_order(x) == 2), 1)

    def test_symmetric_and_alternating(self):
        self.assertEqual(symmetric(1, CONFIG).order, 1)
        self.assertEqual(symmetric(4, CONFIG).order, 24)
        A5 = alternating(5, CONFIG)
        self.assertEqual(A5.order, 60)
        self.assertEqual(len(normal_subgroups(A5)), 2)

    def test_elementary_abelian(self):
        G = elementary_abelian(2, 2, CONFIG)
        self.assertEqual(G.labels, ("00", "10", "01", "11"))
        self.assertTrue(G.is_abelian)
        self.assertTrue(all(G.element_order(x) <= 2 for x in G.elements()))

    def test_direct_product(self):
        G = direct_product(cyclic(2, CONFIG), symmetric(3, CONFIG), CONFIG)
        self.assertEqual(G.order, 12)
        self.assertEqual(G.name, "cyclic:2*symmetric:3")
        self.assertEqual(G.label(0), "(e,())")
        self.assertEqual(nilpotency_class(direct_product(dihedral(8, CONFIG), cyclic(3, CONFIG), CONFIG)), 2)

    def test_bad_parameters(self):
        for build in (lambda: dihedral(7, CONFIG), lambda: dicyclic(6, CONFIG),
                      lambda: cyclic(0, CONFIG), lambda: elementary_abelian(4, 2, CONFIG)):
            with self.assertRaises(BadParameter):
                build()
        with self.assertRaises(OrderCapExceeded):
            cyclic(200, CONFIG)

    def test_builtin(self):
        self.assertEqual(builtin("cyclic", (5,), CONFIG).order, 5)
        self.assertEqual(builtin("elementary-abelian", (3, 2), CONFIG).order, 9)
        with self.assertRaises(BadParameter):
            builtin("free", (2,), CONFIG)


class TestFamilySpec(unittest.TestCase):
    def test_single_and_product(self):
        self.assertEqual(parse_family_spec("dihedral:8", CONFIG).order, 8)
        self.assertEqual(parse_family_spec("elementary-abelian:2^3", CONFIG).order, 8)
        G = parse_family_spec("cyclic:2*symmetric:3", CONFIG)
        self.assertEqual(G.order, 12)
        self.assertFalse(G.is_abelian)

    def test_malformed(self):
        for spec in ("", "cyclic", "foo:3", "cyclic:2*", "cyclic:2^2", "elementary-abelian:2"):
            with self.subTest(spec=spec):
                with self.assertRaises(BadParameter):
                    parse_family_spec(spec, CONFIG)


if __name__ == "__main__":
    unittest.main()
