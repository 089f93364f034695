# tests/test_parser.py
import unittest

from src.config import Config
from src.errors import BadParameter, ModeMismatch, UnknownLabel, VariableOutOfRange, WordSyntaxError
from src.families import cyclic, symmetric
from src.groups import from_multiplication_table
from src.parser import parse, parse_points, parse_system, parse_word
from src.words import Const, EquationSystem, Var, Word, enumerate_words, format_word

CONFIG = Config()


class TestParseWord(unittest.TestCase):
    def setUp(self):
        self.S3 = symmetric(3, CONFIG)
        self.a = self.S3.index_of("(1 2 3)")
        self.t = self.S3.index_of("(1 2)")

    def test_variables(self):
        w = parse_word("x1 x2^-1", 2, self.S3)
        self.assertEqual(w.letters, (Var(1, 1), Var(2, -1)))

    def test_commutator_with_constant(self):
        w = parse_word("[x1, '(1 2 3)']", 1, self.S3)
        self.assertEqual(w.letters, (Var(1, -1), Const(int(self.S3.inv[self.a])), Var(1, 1), Const(self.a)))

    def test_cancellation(self):
        self.assertTrue(parse_word("x1 x1^-1", 1, self.S3).is_empty)
        self.assertTrue(parse_word("1", 1, self.S3).is_empty)

    def test_equation_sugar(self):
        w = parse_word("x1 = '(1 2)'", 1, self.S3)
        self.assertEqual(w.letters, (Var(1), Const(self.t)))

    def test_parenthesised_power(self):
        w = parse_word("(x1 x2)^2", 2, self.S3)
        self.assertEqual(w.letters, (Var(1), Var(2), Var(1), Var(2)))

    def test_errors(self):
        cases = [
            ("x0", WordSyntaxError),
            ("x3", VariableOutOfRange),
            ("'zz'", UnknownLabel),
            ("x1 ^", WordSyntaxError),
            ("[x1]", WordSyntaxError),
            ("'abc", WordSyntaxError),
            ("(x1", WordSyntaxError),
            ("x1 x2 )", WordSyntaxError),
        ]
        for text, error in cases:
            with self.subTest(text=text):
                with self.assertRaises(error):
                    parse_word(text, 2, self.S3)

    def test_error_position(self):
        with self.assertRaises(WordSyntaxError) as ctx:
            parse_word("x1 $", 1, self.S3)
        self.assertEqual(ctx.exception.position, 3)

    def test_constants_in_coefficient_free_mode(self):
        with self.assertRaises(ModeMismatch):
            parse_word("x1 '(1 2)'", 1, self.S3, coefficient_mode=False)

    def test_round_trip(self):
        for w in enumerate_words(self.S3, 2, 2, 2):
            self.assertEqual(parse_word(format_word(w), 2, self.S3), w)

    def test_escaped_label(self):
        G = from_multiplication_table([[0, 1], [1, 0]], ["e", "it's"], config=CONFIG)
        w = parse_word("x1 'it\\'s'", 1, G)
        self.assertEqual(w.letters, (Var(1), Const(1)))
        self.assertEqual(parse_word(format_word(w), 1, G), w)


class TestParseSystem(unittest.TestCase):
    def setUp(self):
        self.Z4 = cyclic(4, CONFIG)

    def test_separators(self):
        for text in ("x1; x2", "x1\nx2", "x1;\n\n x2;"):
            with self.subTest(text=text):
                system = parse(text, 2, self.Z4)
                self.assertIsInstance(system, EquationSystem)
                self.assertEqual(len(system), 2)

    def test_newline_inside_brackets(self):
        result = parse("[x1,\n x2]", 2, self.Z4)
        self.assertIsInstance(result, Word)
        self.assertFalse(result.is_empty)

    def test_single_word(self):
        self.assertIsInstance(parse("x1^4", 1, self.Z4), Word)
        self.assertEqual(len(parse_system("x1^4", 1, self.Z4)), 1)


class TestParsePoints(unittest.TestCase):
    def setUp(self):
        self.S3 = symmetric(3, CONFIG)

    def test_bare_and_quoted(self):
        expected = [[self.S3.index_of("(1 2)"), 0], [self.S3.index_of("(1 2 3)"), self.S3.index_of("(1 2)")]]
        self.assertEqual(parse_points("(1 2), (); (1 2 3), (1 2)", 2, self.S3).tolist(), expected)
        self.assertEqual(parse_points("'(1 2)', '()'\n'(1 2 3)', '(1 2)'", 2, self.S3).tolist(), expected)

    def test_cyclic_labels(self):
        Z4 = cyclic(4, CONFIG)
        self.assertEqual(parse_points("a; a^2; e", 1, Z4).tolist(), [[1], [2], [0]])

    def test_errors(self):
        with self.assertRaises(WordSyntaxError):
            parse_points("(1 2)", 2, self.S3)
        with self.assertRaises(UnknownLabel):
            parse_points("zz", 1, self.S3)
        with self.assertRaises(BadParameter):
            parse_points("", 1, self.S3)


if __name__ == "__main__":
    unittest.main()
