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
from tilekt.tiling1d import Substitution1D, substitution_matrix, is_primitive, iterate, legal_factors  # noqa
from tilekt.tiling1d import stable_cells_1d, build_complex_1d, perron_data, collared_complex_1d  # noqa
from tilekt.tiling1d import cech_k0_unstable, forgetful_inclusion_relations, pe_maps_1d, pe_map_relations  # noqa
from tilekt.chaincx import validate  # noqa


DATA_DIR = os.path.join(DIR, "..", "tilekt", "data")

#: Substitutions of the line shipped with the corpus.
LINE_FILES = (
    "fibonacci.json",
    "morse.json",
    "period_doubling.json",
    "rauzy.json",
    "rudin_shapiro.json",
    "nonreducible4.json",
    "onefifth.json",
    "onesixth.json",
    "pathologic.json",
)


def fibonacci():
    return Substitution1D(["a", "b"], {"a": "ab", "b": "a"}, name="Fibonacci")


def load(name):
    s = Substitution1D()
    s.load(os.path.join(DATA_DIR, name))
    return s


class TestSubstitution1D(unittest.TestCase):
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
        s = Substitution1D()
        s.load(first)
        s.dump(second)

        # check if first and second files are identical
        self.assertSameFiles(first, second)

    def test_identity(self):
        self._test_identity(fibonacci())

    def test_corpus_files(self):
        for name in LINE_FILES:
            s = load(name)
            s.validate()
            self._test_identity(s)

    def test_describe(self):
        s = fibonacci()
        self.assertEqual(s.describe(), "a->ab, b->a")
        self.assertEqual(s.apply("ab"), "aba")
        self.assertEqual(iterate(s, "a", 4), "abaababa")

    def test_invalid(self):
        self.assertRaises(ValueError, Substitution1D(["ab"], {"ab": "ab"}).validate)
        self.assertRaises(ValueError, Substitution1D(["a", "a"], {"a": "a"}).validate)
        self.assertRaises(ValueError, Substitution1D(["a", "b"], {"a": "ab"}).validate)
        self.assertRaises(ValueError, Substitution1D(["a", "b"], {"a": "ab", "b": ""}).validate)
        self.assertRaises(ValueError, Substitution1D(["a", "b"], {"a": "ab", "b": "c"}).validate)
        self.assertRaises(ValueError, Substitution1D([], {}).validate)

    def test_unknown_key(self):
        s = Substitution1D()
        self.assertRaises(ValueError, s.loads, '{"type": "substitution_1d", "letters": ["a"], "rules": {"a": "aa"}, "lambda": 2}')


class TestCells(unittest.TestCase):

    def test_matrix(self):
        s = fibonacci()
        self.assertEqual(em.to_lists(substitution_matrix(s)), [[1, 1], [1, 0]])
        self.assertEqual(is_primitive(substitution_matrix(s)), 2)
        self.assertEqual(is_primitive(em.as_matrix([[1, 1], [1, 1]])), 1)
        self.assertEqual(is_primitive(em.identity(2)), None)
        self.assertEqual(is_primitive(em.as_matrix([[1, 0], [1, 1]])), None)

    def test_legal_factors(self):
        s = fibonacci()
        self.assertEqual(legal_factors(s, 1), ["a", "b"])
        self.assertEqual(legal_factors(s, 2), ["aa", "ab", "ba"])
        self.assertEqual(legal_factors(s, 3), ["aab", "aba", "baa", "bab"])
        self.assertEqual(legal_factors(load("morse.json"), 2), ["aa", "ab", "ba", "bb"])
        self.assertRaises(ValueError, legal_factors, s, 0)

    def test_not_primitive(self):
        s = Substitution1D(["a", "b"], {"a": "a", "b": "b"})
        self.assertRaises(ValueError, legal_factors, s, 2)
        self.assertRaises(ValueError, build_complex_1d, s)
        self.assertRaises(ValueError, perron_data, s)

    def test_stable_cells(self):
        cells = stable_cells_1d(fibonacci())
        self.assertEqual(cells.edges, ["a", "b"])
        self.assertEqual(cells.vertex_labels, ["a.a", "a.b", "b.a"])

    def test_fibonacci_complex(self):
        cx = build_complex_1d(fibonacci())
        self.assertEqual(cx.dim, 1)
        self.assertEqual(cx.counts, (3, 2, 0))
        self.assertEqual(em.to_lists(cx.delta0), [[0, 1, -1], [0, -1, 1]])
        self.assertEqual(em.to_lists(cx.we), [[1, 1], [0, 0]])
        self.assertEqual(em.to_lists(cx.wv), [[0, 0, 1], [1, 1, 0], [1, 1, 0]])

    def test_corpus_complexes_validate(self):
        for name in LINE_FILES:
            diag = validate(build_complex_1d(load(name)))
            self.assertTrue(diag.ok, "%s: %s" % (name, diag.failures))

    def test_perron(self):
        inflation, lengths = perron_data(fibonacci())
        self.assertAlmostEqual(inflation, 1.6180339887, places=6)
        self.assertAlmostEqual(lengths[0], 1.6180339887, places=6)
        self.assertAlmostEqual(lengths[1], 1.0, places=6)

    def test_perron_constant_length(self):
        inflation, lengths = perron_data(load("morse.json"))
        self.assertAlmostEqual(inflation, 2.0, places=6)
        self.assertAlmostEqual(lengths[0], 1.0, places=6)
        self.assertAlmostEqual(lengths[1], 1.0, places=6)


class TestCollared(unittest.TestCase):

    def test_collared_complex(self):
        collared = collared_complex_1d(fibonacci())
        self.assertEqual(collared.vertices, ["aa", "ab", "ba"])
        self.assertEqual(collared.edges, ["aab", "aba", "baa", "bab"])
        self.assertEqual(collared.boundary1.shape, (3, 4))
        # every collared edge has exactly one start and one end vertex
        for j in range(4):
            column = [int(collared.boundary1[i, j]) for i in range(3)]
            self.assertEqual(sum(column), 0)
        # omega_E of an edge has one term per letter of w(middle letter)
        self.assertEqual([sum(int(collared.omega_e[i, j]) for i in range(4)) for j in range(4)], [2, 1, 2, 2])

    def test_relations(self):
        for name in LINE_FILES:
            diag = forgetful_inclusion_relations(load(name))
            self.assertTrue(diag.ok, "%s: %s" % (name, diag.failures))
            self.assertEqual(len(diag), 6)

    def test_cech(self):
        self.assertEqual(str(cech_k0_unstable(fibonacci())), "Z^2")
        self.assertEqual(str(cech_k0_unstable(load("morse.json"))), "Z + Z[1/2]")


class TestChainMaps(unittest.TestCase):

    def test_labels(self):
        maps = pe_maps_1d(fibonacci())
        self.assertEqual(maps.edge_labels, ["a'_e0", "a'_e1", "b'_e0"])
        self.assertEqual(maps.vertex_labels, ["a'.a'", "a'.b'", "b'.a'", "a'_v1"])

    def test_shapes(self):
        maps = pe_maps_1d(fibonacci())
        self.assertEqual(maps.r1.shape, (2, 3))
        self.assertEqual(maps.s1.shape, (3, 2))
        self.assertEqual(maps.r0.shape, (3, 4))
        self.assertEqual(maps.s0.shape, (4, 3))

    def test_fibonacci_matrices(self):
        maps = pe_maps_1d(fibonacci())
        self.assertEqual(em.to_lists(maps.r0), [[0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0]])
        self.assertEqual(em.to_lists(maps.r1), [[1, 0, 1], [0, 1, 0]])
        self.assertEqual(em.to_lists(maps.g0), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        self.assertEqual(em.to_lists(maps.g1), [[1, 1, 0], [0, 0, 1]])
        self.assertEqual(em.to_lists(maps.s0), [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]])
        self.assertEqual(em.to_lists(maps.s1), [[1, 0], [0, 0], [0, 1]])

    def test_relations(self):
        for name in LINE_FILES:
            diag = pe_map_relations(load(name))
            self.assertTrue(diag.ok, "%s: %s" % (name, diag.failures))


if __name__ == "__main__":
    unittest.main()
