# tests/test_words.py
import random
import unittest

import numpy as np

from src.config import Config
from src.errors import BadParameter, ModeMismatch, VariableOutOfRange
from src.families import cyclic, symmetric
from src.words import (Const, EquationSystem, Var, Word, annihilator_system, commutator, constant,
                       empty_word, enumerate_words, evaluate, evaluate_many, format_word,
                       left_commutator, make_word, normalize, variable, word_conjugate,
                       word_inverse, word_power, word_product)

CONFIG = Config()


class TestNormalForm(unittest.TestCase):
    def setUp(self):
        self.S3 = symmetric(3, CONFIG)
        self.a = self.S3.index_of("(1 2 3)")
        self.b = self.S3.index_of("(1 2)")

    def test_cancelling_variables(self):
        w = normalize(Word(self.S3, 1, (Var(1, 2), Var(1, -2))))
        self.assertTrue(w.is_empty)

    def test_cancelling_constants(self):
        w = make_word(self.S3, 1, [Const(self.a), Const(int(self.S3.inv[self.a]))])
        self.assertTrue(w.is_empty)

    def test_constants_fold(self):
        w = make_word(self.S3, 1, [Var(1), Const(self.a), Const(self.b)])
        self.assertEqual(w.letters, (Var(1), Const(int(self.S3.mul[self.a, self.b]))))

    def test_product_and_inverse(self):
        u = make_word(self.S3, 1, [Var(1), Const(self.a)])
        v = make_word(self.S3, 1, [Const(int(self.S3.inv[self.a])), Var(1)])
        self.assertEqual(word_product(u, v).letters, (Var(1, 2),))
        self.assertTrue(word_product(u, word_inverse(u)).is_empty)
        self.assertEqual(word_power(u, -1), word_inverse(u))

    def test_commutators(self):
        x1, x2 = variable(self.S3, 2, 1), variable(self.S3, 2, 2)
        self.assertEqual(left_commutator([x1, x2]).letters,
                         (Var(1, -1), Var(2, -1), Var(1, 1), Var(2, 1)))
        self.assertTrue(commutator(x1, x1).is_empty)
        self.assertEqual(left_commutator([x1, x2, x1]), commutator(commutator(x1, x2), x1))
        with self.assertRaises(BadParameter):
            left_commutator([x1])

    def test_conjugate(self):
        x1 = variable(self.S3, 1, 1)
        c = constant(self.S3, 1, self.b)
        self.assertEqual(word_conjugate(x1, c).letters, (Const(self.b), Var(1), Const(self.b)))

    def test_word_invariants(self):
        with self.assertRaises(VariableOutOfRange):
            Word(self.S3, 2, (Var(3),))
        with self.assertRaises(ModeMismatch):
            Word(self.S3, 1, (Const(self.a),), coefficient_mode=False)
        with self.assertRaises(ModeMismatch):
            word_product(variable(self.S3, 1, 1), variable(self.S3, 1, 1, coefficient_mode=False))


class TestEvaluation(unittest.TestCase):
    def setUp(self):
        self.S3 = symmetric(3, CONFIG)

    def test_empty_word_is_identity(self):
        self.assertEqual(evaluate(empty_word(self.S3, 2), self.S3, (1, 2)), 0)

    def test_square_in_cyclic_two(self):
        Z2 = cyclic(2, CONFIG)
        self.assertEqual(evaluate(variable(Z2, 1, 1, 2), Z2, (1,)), 0)

    def test_commutator_with_constant(self):
        t = self.S3.index_of("(1 2)")
        r = self.S3.index_of("(1 2 3)")
        w = commutator(variable(self.S3, 1, 1), constant(self.S3, 1, r))
        self.assertNotEqual(evaluate(w, self.S3, (t,)), 0)
        self.assertEqual(evaluate(w, self.S3, (r,)), 0)

    def test_evaluation_is_a_homomorphism(self):
        rng = random.Random(7)
        words = list(enumerate_words(self.S3, 2, 2, 2))
        for _ in range(200):
            u, v = rng.choice(words), rng.choice(words)
            point = (rng.randrange(6), rng.randrange(6))
            lhs = evaluate(word_product(u, v), self.S3, point)
            rhs = int(self.S3.mul[evaluate(u, self.S3, point), evaluate(v, self.S3, point)])
            self.assertEqual(lhs, rhs)
            self.assertEqual(evaluate(word_inverse(u), self.S3, point),
                             int(self.S3.inv[evaluate(u, self.S3, point)]))

    def test_evaluate_many(self):
        points = np.array([[x, y] for x in range(6) for y in range(6)])
        for w in enumerate_words(self.S3, 2, 2, 1):
            expected = [evaluate(w, self.S3, p) for p in points]
            self.assertEqual(evaluate_many(w, self.S3, points).tolist(), expected)

    def test_point_length(self):
        with self.assertRaises(BadParameter):
            evaluate(variable(self.S3, 2, 1), self.S3, (1,))


class TestEnumeration(unittest.TestCase):
    def test_single_letters_coefficient_free(self):
        words = list(enumerate_words(cyclic(2, CONFIG), 1, 1, 2, False, min_letters=1))
        self.assertEqual([format_word(w) for w in words], ["x1", "x1^-1", "x1^2", "x1^-2"])

    def test_zero_letters(self):
        words = list(enumerate_words(cyclic(2, CONFIG), 1, 0, 3))
        self.assertEqual(len(words), 1)
        self.assertTrue(words[0].is_empty)

    def test_counts_and_normal_form(self):
        Z2 = cyclic(2, CONFIG)
        words = list(enumerate_words(Z2, 1, 2, 1, True, min_letters=1))
        # x1, x1^-1, a, then x a (2), a x (2)
        self.assertEqual(len(words), 7)
        self.assertEqual(len(set(w.letters for w in words)), 7)
        for w in words:
            self.assertEqual(normalize(w), w)

    def test_negative_caps(self):
        with self.assertRaises(BadParameter):
            list(enumerate_words(cyclic(2, CONFIG), 1, -1, 1))


class TestSystems(unittest.TestCase):
    def test_annihilator(self):
        S3 = symmetric(3, CONFIG)
        system = annihilator_system(S3, (2, 5))
        self.assertEqual(len(system), 2)
        for x in range(6):
            for y in range(6):
                zero = all(evaluate(w, S3, (x, y)) == 0 for w in system)
                self.assertEqual(zero, (x, y) == (2, 5))

    def test_union_and_format(self):
        Z2 = cyclic(2, CONFIG)
        s1 = EquationSystem(Z2, 1, (variable(Z2, 1, 1),))
        s2 = EquationSystem(Z2, 1, (make_word(Z2, 1, [Var(1), Const(1)]),))
        self.assertEqual(s1.union(s2).format(), "x1; x1 'a'")
        with self.assertRaises(ModeMismatch):
            s1.union(EquationSystem(Z2, 1, (variable(Z2, 1, 1, coefficient_mode=False),), False))


if __name__ == "__main__":
    unittest.main()
