# tests/test_fileio.py
import io
import tempfile
import unittest
from pathlib import Path

import numpy as np

from src.config import Config
from src.errors import BadParameter, GroupFileError, NotAGroup, OrderCapExceeded
from src.families import dicyclic, dihedral, symmetric
from src.fileio import export_gtab, ingest_group, write_gtab

CONFIG = Config()
DATA = Path(__file__).resolve().parent.parent / "data"


class TestBundledFiles(unittest.TestCase):
    def test_z2(self):
        G = ingest_group(DATA / "z2.gtab", CONFIG)
        self.assertEqual(G.order, 2)
        self.assertEqual(G.labels, ("e", "a"))
        self.assertEqual(G.provenance.kind, "file")
        self.assertEqual(len(G.provenance.digest), 64)
        self.assertEqual(G.name, "z2")

    def test_s3_table_matches_dihedral_family(self):
        G = ingest_group(DATA / "s3.gtab", CONFIG)
        self.assertTrue(np.array_equal(G.mul, dihedral(6, CONFIG).mul))
        self.assertEqual(G.labels, dihedral(6, CONFIG).labels)

    def test_permutation_files(self):
        self.assertEqual(ingest_group(DATA / "s3.gperm", CONFIG).order, 6)
        self.assertEqual(ingest_group(DATA / "a5.gperm", CONFIG).order, 60)

    def test_order_cap(self):
        with self.assertRaises(OrderCapExceeded):
            ingest_group(DATA / "z4.gtab", Config(max_order=2))


class TestMalformedFiles(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, text, name="g.gtab"):
        path = self.dir / name
        path.write_text(text, encoding="utf-8")
        return path

    def test_truncated_table(self):
        with self.assertRaises(GroupFileError) as ctx:
            ingest_group(self._write("gtab 1\norder 3\n0 1 2\n"), CONFIG)
        self.assertEqual(ctx.exception.line, 4)

    def test_non_integer_entry(self):
        with self.assertRaises(GroupFileError) as ctx:
            ingest_group(self._write("gtab 1\norder 2\n0 x\n1 0\n"), CONFIG)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 3))
        self.assertIn(":3:3:", str(ctx.exception))

    def test_short_row(self):
        with self.assertRaises(GroupFileError) as ctx:
            ingest_group(self._write("gtab 1\norder 2\n0 1\n1\n"), CONFIG)
        self.assertEqual(ctx.exception.line, 4)

    def test_identity_must_come_first(self):
        with self.assertRaises(GroupFileError):
            ingest_group(self._write("gtab 1\norder 2\n1 0\n0 1\n"), CONFIG)

    def test_not_a_group(self):
        with self.assertRaises(NotAGroup):
            ingest_group(self._write("gtab 1\norder 2\n0 1\n0 1\n"), CONFIG)

    def test_bad_header(self):
        for text in ("hello\n", "gtab 2\norder 1\n0\n", ""):
            with self.subTest(text=text):
                with self.assertRaises(GroupFileError) as ctx:
                    ingest_group(self._write(text), CONFIG)
                self.assertEqual(ctx.exception.line, 1)

    def test_trailing_content(self):
        with self.assertRaises(GroupFileError) as ctx:
            ingest_group(self._write("gtab 1\norder 1\n0\n0\n"), CONFIG)
        self.assertEqual(ctx.exception.line, 4)

    def test_bad_cycle(self):
        path = self._write("gperm 1\ndegree 3\ngen (1 2)\ngen (1 9)\n", "g.gperm")
        with self.assertRaises(GroupFileError) as ctx:
            ingest_group(path, CONFIG)
        self.assertEqual(ctx.exception.line, 4)

    def test_comments_and_blank_lines(self):
        path = self._write("# cyclic\ngtab 1\n\norder 2\n# table\n0 1\n1 0\n")
        self.assertEqual(ingest_group(path, CONFIG).order, 2)

    def test_unreadable(self):
        with self.assertRaises(BadParameter):
            ingest_group(self.dir / "missing.gtab", CONFIG)
        path = self.dir / "binary.gtab"
        path.write_bytes(b"\xff\xfe\x00")
        with self.assertRaises(GroupFileError):
            ingest_group(path, CONFIG)


class TestExport(unittest.TestCase):
    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            for G in (symmetric(3, CONFIG), dicyclic(12, CONFIG)):
                path = Path(tmp) / f"{G.order}.gtab"
                export_gtab(G, path)
                H = ingest_group(path, CONFIG)
                self.assertTrue(np.array_equal(H.mul, G.mul))
                self.assertEqual(H.labels, G.labels)

    def test_write_gtab_layout(self):
        buffer = io.StringIO()
        write_gtab(symmetric(2, CONFIG), buffer)
        self.assertEqual(buffer.getvalue().splitlines()[:2], ["gtab 1", "order 2"])


if __name__ == "__main__":
    unittest.main()
