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

DIR = os.path.dirname(__file__)
sys.path.insert(0, os.path.join(DIR, ".."))

from tilekt.common import split_version, parse_matrix_text, format_matrix_text  # noqa
from tilekt.common import Diagnostics, MetadataBase  # noqa


class TestVersion(unittest.TestCase):

    def test_split_version(self):
        self.assertEqual(split_version("1.0"), [1, 0])
        self.assertEqual(split_version("1.22"), [1, 22])
        self.assertTrue(split_version("1.10") > split_version("1.9"))


class TestMatrixText(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(parse_matrix_text("2 3\n1 2 3\n4 5 6\n"), [[1, 2, 3], [4, 5, 6]])
        # line breaks are not significant
        self.assertEqual(parse_matrix_text("2 2 1 -2\n3 4"), [[1, -2], [3, 4]])

    def test_parse_empty(self):
        self.assertEqual(parse_matrix_text("0 3\n"), [])
        self.assertEqual(parse_matrix_text("2 0\n"), [[], []])

    def test_parse_errors(self):
        self.assertRaises(ValueError, parse_matrix_text, "")
        self.assertRaises(ValueError, parse_matrix_text, "2")
        self.assertRaises(ValueError, parse_matrix_text, "2 2\n1 2 3")
        self.assertRaises(ValueError, parse_matrix_text, "1 2\n1 x")
        self.assertRaises(ValueError, parse_matrix_text, "-1 2\n")

    def test_format(self):
        self.assertEqual(format_matrix_text([[1, 2], [3, -4]]), "2 2\n1 2\n3 -4\n")
        self.assertEqual(format_matrix_text([], 3), "0 3\n")

    def test_format_parse(self):
        rows = [[0, 1, -1], [0, -1, 1]]
        self.assertEqual(parse_matrix_text(format_matrix_text(rows)), rows)


class TestDiagnostics(unittest.TestCase):

    def test_checks(self):
        diag = Diagnostics("demo")
        self.assertTrue(diag.check("passes", True, "not shown"))
        self.assertFalse(diag.check("fails", 0, "zero"))
        diag.note("info", "just a note")
        self.assertEqual(len(diag), 3)
        self.assertFalse(diag.ok)
        self.assertEqual(diag.failures, [("fails", "zero")])
        # messages of passed checks are dropped, notes keep theirs
        self.assertEqual(list(diag)[0], ("passes", True, None))
        self.assertEqual(list(diag)[2], ("info", True, "just a note"))

    def test_extend(self):
        inner = Diagnostics("inner")
        inner.check("x", False, "bad")
        outer = Diagnostics("outer")
        outer.extend(inner, "prefix")
        self.assertEqual(outer.failures, [("prefix: x", "bad")])

    def test_to_list_from_list(self):
        diag = Diagnostics("demo")
        diag.check("a", True)
        diag.check("b", False, "message")
        restored = Diagnostics.from_list(diag.to_list(), "demo")
        self.assertEqual(restored.checks, diag.checks)

    def test_format(self):
        diag = Diagnostics("demo")
        diag.check("a", True)
        diag.check("b", False, "message")
        self.assertEqual(diag.format(), "ok      a\nFAILED  b: message")


class Dummy(MetadataBase):

    def __init__(self):
        self.rows = [[1, 2], [3, 4]]


class TestMetadataBase(unittest.TestCase):

    def test_int_rows(self):
        dummy = Dummy()
        dummy._assert_int_rows("rows")

        dummy.rows = [[1, 2], [3]]
        self.assertRaises(ValueError, dummy._assert_int_rows, "rows")

        dummy.rows = [[1, 2.5]]
        self.assertRaises(TypeError, dummy._assert_int_rows, "rows")

        dummy.rows = [[True]]
        self.assertRaises(TypeError, dummy._assert_int_rows, "rows")

        dummy.rows = "1 2"
        self.assertRaises(TypeError, dummy._assert_int_rows, "rows")

        dummy.rows = []
        dummy._assert_int_rows("rows")
        self.assertRaises(ValueError, dummy._assert_int_rows, "rows", allow_empty=False)

    def test_known_keys(self):
        dummy = Dummy()
        dummy._assert_known_keys({"a": 1}, ["a", "b"])
        self.assertRaises(ValueError, dummy._assert_known_keys, {"a": 1, "c": 2}, ["a", "b"])


if __name__ == "__main__":
    unittest.main()
