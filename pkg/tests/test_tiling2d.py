#!/usr/bin/python
# -*- coding: utf-8 -*-


# Copyright (C) 2026  The tilekt authors
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public
# License along with this library; if not, write to the Free Software
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301  USA


import unittest

import os
import sys
import tempfile
import shutil

DIR = os.path.dirname(__file__)
sys.path.insert(0, os.path.join(DIR, ".."))

import tilekt.exactmat as em  # noqa
from tilekt.tiling2d import BlockSubstitution2D, stable_cells_2d, build_complex_2d  # noqa
from tilekt.chaincx import validate, stable_cohomology, stable_transpose_homology, uct_decomposition_check  # noqa


DATA_DIR = os.path.join(DIR, "..", "tilekt", "data")


def dyadic():
    # every tile splits into four copies of itself
    return BlockSubstitution2D(["a"], 2, {"a": [["a", "a"], ["a", "a"]]}, name="dyadic")


def load(name):
    s = BlockSubstitution2D()
    s.load(os.path.join(DATA_DIR, name))
    return s


class TestBlockSubstitution2D(unittest.TestCase):
    def setUp(self):
        self.maxDiff = None
        self.tmp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp_dir)

    def assertSameFiles(self, path1, path2):
        self.assertEqual(os.path.getsize(path1), os.path.getsize(path2))
        with open(path1, "r") as file1:
            with open(path2, "r") as file2:
                self.assertEqual(file1.read(), file2.read())

    def _test_identity(self, s):
        first = os.path.join(self.tmp_dir, "first")
        second = os.path.join(self.tmp_dir, "second")

        # write original file
        s.dump(first)

        # read file and write it back
        s = BlockSubstitution2D()
        s.load(first)
        s.dump(second)

        # check if first and second files are identical
        self.assertSameFiles(first, second)

    def test_identity(self):
        self._test_identity(dyadic())
        self._test_identity(load("trisquare.json"))
        self._test_identity(load("table.json"))

    def test_lambda_key(self):
        s = load("table.json")
        self.assertEqual(s.lam, 2)
        self.assertIn('"lambda": 2', s.dumps())

    def test_invalid(self):
        self.assertRaises(ValueError, BlockSubstitution2D(["a"], 1, {"a": [["a"]]}).validate)
        self.assertRaises(ValueError, BlockSubstitution2D(["a"], True, {"a": [["a"]]}).validate)
        self.assertRaises(ValueError, BlockSubstitution2D(["a,b"], 2, {"a,b": [["a,b", "a,b"], ["a,b", "a,b"]]}).validate)
        self.assertRaises(ValueError, BlockSubstitution2D(["a"], 2, {"a": [["a", "a"]]}).validate)
        self.assertRaises(ValueError, BlockSubstitution2D(["a"], 2, {"a": [["a", "a"], ["a"]]}).validate)
        self.assertRaises(ValueError, BlockSubstitution2D(["a"], 2, {"a": [["a", "b"], ["a", "a"]]}).validate)
        self.assertRaises(ValueError, BlockSubstitution2D(["a", "b"], 2, {"a": [["a", "b"], ["b", "a"]]}).validate)

    def test_substitution_matrix(self):
        s = load("trisquare.json")
        self.assertEqual(em.to_lists(s.substitution_matrix()), [[0, 2, 2], [2, 2, 0], [2, 0, 2]])

    def test_image(self):
        s = load("trisquare.json")
        self.assertEqual(s.image((("a", ), )), (("c", "b"), ("b", "c")))
        # rows are stacked bottom first
        self.assertEqual(s.image((("a", "b"), )), (("c", "b", "a", "b"), ("b", "c", "b", "a")))
        self.assertEqual(len(s.image((("a", ), ("b", )))), 4)

    def test_not_primitive(self):
        s = BlockSubstitution2D(["a", "b"], 2, {"a": [["a", "a"], ["a", "a"]], "b": [["b", "b"], ["b", "b"]]})
        self.assertRaises(ValueError, stable_cells_2d, s)


class TestDyadic(unittest.TestCase):

    def test_cells(self):
        cells = stable_cells_2d(dyadic())
        self.assertEqual(cells.v_edges, [("a", "a")])
        self.assertEqual(cells.h_edges, [("a", "a")])
        self.assertEqual(cells.vertex_labels, ["a,a,a,a"])
        self.assertEqual(cells.edge_labels, ["v:a,a", "h:a,a"])

    def test_complex(self):
        cx = build_complex_2d(dyadic())
        self.assertEqual(cx.counts, (1, 2, 1))
        self.assertTrue(cx.delta0.is_zero_matrix)
        self.assertTrue(cx.delta1.is_zero_matrix)
        self.assertEqual(em.to_lists(cx.wv), [[4]])
        self.assertEqual(em.to_lists(cx.we), [[2, 0], [0, 2]])
        self.assertEqual(em.to_lists(cx.wf), [[1]])
        diag = validate(cx)
        self.assertTrue(diag.ok, diag.failures)

    def test_homology(self):
        cx = build_complex_2d(dyadic())
        result = stable_cohomology(cx)
        self.assertEqual([str(g) for g in (result.h0, result.h1, result.h2)], ["Z[1/2]", "Z[1/2]^2", "Z"])
        result = stable_transpose_homology(cx)
        self.assertEqual([str(g) for g in (result.h0, result.h1, result.h2)], ["Z[1/2]", "Z[1/2]^2", "Z"])
        self.assertTrue(uct_decomposition_check(cx).ok)


class TestCorpusBlocks(unittest.TestCase):

    def test_validate(self):
        for name in ("trisquare.json", "table.json"):
            cx = build_complex_2d(load(name))
            diag = validate(cx)
            self.assertTrue(diag.ok, "%s: %s" % (name, diag.failures))
            self.assertEqual(cx.dim, 2)
            self.assertEqual(cx.faces, load(name).faces)

    def test_face_substitution(self):
        cx = build_complex_2d(load("table.json"))
        # W_F picks the bottom-left child: a->c, b->b, c->a, d->d
        self.assertEqual(em.to_lists(cx.wf), [[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]])

    def test_top_degrees(self):
        for name in ("trisquare.json", "table.json"):
            cx = build_complex_2d(load(name))
            self.assertEqual(str(stable_cohomology(cx).h2), "Z")
            self.assertEqual(str(stable_transpose_homology(cx).h2), "Z")

    def test_table_torsion(self):
        cx = build_complex_2d(load("table.json"))
        self.assertEqual(str(stable_transpose_homology(cx).h0), "Z^3 + Z/2 + Z[1/2]^5")


class TestTriSquare(unittest.TestCase):
    # cells are numbered from 1 in the order the complex lists them

    def setUp(self):
        self.cx = build_complex_2d(load("trisquare.json"))

    def _column(self, matrix, j):
        return dict((i + 1, int(matrix[i, j - 1])) for i in range(matrix.rows) if matrix[i, j - 1])

    def test_counts(self):
        self.assertEqual(self.cx.counts, (21, 14, 3))

    def test_delta0(self):
        self.assertEqual(self._column(self.cx.delta0, 3), {1: 1, 7: -1, 9: -1, 10: 1})

    def test_delta1(self):
        self.assertEqual(em.to_lists(self.cx.delta1), [
            [0, 1, 1, -1, 0, -1, 0, 0, -1, -1, 1, 0, 1, 0],
            [0, -1, 0, 1, 1, 0, -1, 0, 1, 0, -1, -1, 0, 1],
            [0, 0, -1, 0, -1, 1, 1, 0, 0, 1, 0, 1, -1, -1],
        ])

    def test_vertex_substitution(self):
        self.assertEqual(self._column(self.cx.wv, 2), {15: 1, 16: 1, 21: 2})

    def test_edge_substitution(self):
        self.assertEqual(self._column(self.cx.we, 2), {4: 1, 7: 1})

    def test_face_substitution(self):
        self.assertEqual(em.to_lists(self.cx.wf), [[0, 1, 0], [0, 0, 0], [1, 0, 1]])


if __name__ == "__main__":
    unittest.main()
