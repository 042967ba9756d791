# -*- coding: utf-8 -*-
# pylint: disable=super-on-old-class


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


"""
This module provides base classes and common functions
used in other tilekt modules: the JSON document base class,
the document header, the matrix text format and diagnostic reports.
"""


import re
import json
import contextlib

import six


VERSION = (1, 0)


__all__ = (
    "MetadataBase",
    "Header",
    "Diagnostics",
    "VERSION",
    "DOCUMENT_TYPES",

    "open_file_obj",
    "parse_matrix_text",
    "format_matrix_text",
    "split_version",
)


#: Known values of the top-level "type" field of tilekt documents.
DOCUMENT_TYPES = [
    "substitution_1d",
    "block_2d",
    "complex",
    "direct_limit",
    "report",
    "corpus",
]


#: Validation regex for document versions.
VERSION_RE = re.compile(r"^\d+\.\d+$")


@contextlib.contextmanager
def open_file_obj(f, mode="r"):
    """
    A context manager that provides access to a file.

    :param f: the file to be opened
    :type f: a file-like object or path to file
    :param mode: how to open the file
    :type mode: string
    """
    if isinstance(f, six.string_types):
        with open(f, mode) as file_obj:
            yield file_obj
    else:
        yield f


class MetadataBase(object):
    def _assert_type(self, field, expected_types):
        value = getattr(self, field)
        for atype in expected_types:
            if isinstance(value, atype):
                return
        raise TypeError("%s: Field '%s' has invalid type: %s" % (self.__class__.__name__, field, type(value)))

    def _assert_value(self, field, expected_values):
        value = getattr(self, field)
        if value not in expected_values:
            raise ValueError("%s: Field '%s' has invalid value: %s" % (self.__class__.__name__, field, value))

    def _assert_not_blank(self, field):
        value = getattr(self, field)
        if not value:
            raise ValueError("%s: Field '%s' must not be blank" % (self.__class__.__name__, field))

    def _assert_matches_re(self, field, expected_patterns):
        """
        The list of patterns can contain either strings or compiled regular
        expressions.
        """
        value = getattr(self, field)
        for pattern in expected_patterns:
            try:
                if pattern.match(value):
                    return
            except AttributeError:
                # It's not a compiled regex, treat it as string.
                if re.match(pattern, value):
                    return
        raise ValueError("%s: Field '%s' has invalid value: %s. It does not match any provided REs: %s"
                         % (self.__class__.__name__, field, value, expected_patterns))

    def _assert_int_rows(self, field, allow_empty=True):
        """
        Check that a field holds a rectangular list of integer rows.
        """
        value = getattr(self, field)
        if not isinstance(value, (list, tuple)):
            raise TypeError("%s: Field '%s' has invalid type: %s" % (self.__class__.__name__, field, type(value)))
        if not value and not allow_empty:
            raise ValueError("%s: Field '%s' must not be blank" % (self.__class__.__name__, field))
        widths = set()
        for row in value:
            if not isinstance(row, (list, tuple)):
                raise TypeError("%s: Field '%s' has a row of invalid type: %s" % (self.__class__.__name__, field, type(row)))
            for item in row:
                if isinstance(item, bool) or not isinstance(item, six.integer_types):
                    raise TypeError("%s: Field '%s' has a non-integer entry: %r" % (self.__class__.__name__, field, item))
            widths.add(len(row))
        if len(widths) > 1:
            raise ValueError("%s: Field '%s' is not rectangular: row lengths %s" % (self.__class__.__name__, field, sorted(widths)))

    def _assert_known_keys(self, data, known_keys):
        unknown = sorted(set(data) - set(known_keys))
        if unknown:
            raise ValueError("%s: Unknown fields: %s" % (self.__class__.__name__, ", ".join(unknown)))

    def validate(self):
        """
        Validate attributes by running all self._validate_*() methods.

        :raises TypeError: if an attribute has invalid type
        :raises ValueError: if an attribute contains invalid value
        """
        method_names = sorted([i for i in dir(self) if i.startswith("_validate") and callable(getattr(self, i))])
        for method_name in method_names:
            method = getattr(self, method_name)
            method()

    def _get_parser(self):
        return {}

    def load(self, f):
        """
        Load data from a file.

        :param f: file-like object or path to file
        :type f: file or str
        """
        with open_file_obj(f) as f:
            parser = self.parse_file(f)
            self.deserialize(parser)

    def loads(self, s):
        """
        Load data from a string.

        :param s: input data
        :type s: str
        """
        io = six.StringIO()
        io.write(s)
        io.seek(0)
        self.load(io)
        self.validate()

    def dump(self, f):
        """
        Dump data to a file.

        :param f: file-like object or path to file
        :type f: file or str
        """
        self.validate()
        with open_file_obj(f, "w") as f:
            parser = self._get_parser()
            self.serialize(parser)
            self.build_file(parser, f)

    def dumps(self):
        """
        Dump data to a string.

        :rtype: str
        """
        io = six.StringIO()
        self.dump(io)
        io.seek(0)
        return io.read()

    def parse_file(self, f):
        # parse file, return parser or dict with data
        if hasattr(f, "seekable"):
            if f.seekable():
                f.seek(0)
        elif hasattr(f, "seek"):
            f.seek(0)
        parser = json.load(f)
        if not isinstance(parser, dict):
            raise ValueError("%s: Expected a JSON object, got %s" % (self.__class__.__name__, type(parser).__name__))
        return parser

    def build_file(self, parser, f):
        # build file from parser or dict with data
        json.dump(parser, f, indent=4, sort_keys=True, separators=(",", ": "))
        f.write("\n")

    def deserialize(self, parser):
        # copy data from parser to instance
        raise NotImplementedError

    def serialize(self, parser):
        # copy data from instance to parser
        raise NotImplementedError


class Header(MetadataBase):
    """
    This class represents the top-level "type" and "version" fields
    of a tilekt document.

    The type tells consumers what the document holds without looking
    at its file name. The version is optional on input; documents
    without it are read as the current version.
    """

    def __init__(self, parent, metadata_type):
        self.parent = parent
        self.version = ".".join([str(i) for i in VERSION])
        self.metadata_type = metadata_type

    def _validate_version(self):
        self._assert_type("version", six.string_types)
        self._assert_matches_re("version", [VERSION_RE])

    def _validate_type(self):
        self._assert_value("metadata_type", DOCUMENT_TYPES)

    @property
    def version_tuple(self):
        self.validate()
        return tuple(split_version(self.version))

    def set_current_version(self):
        self.version = ".".join([str(i) for i in VERSION])

    def serialize(self, parser):
        # write *current* version, because format gets converted on save
        self.set_current_version()
        self.validate()
        parser["type"] = self.metadata_type
        parser["version"] = self.version

    def deserialize(self, parser):
        if "type" not in parser:
            raise ValueError("Missing document type, expected '%s'" % self.metadata_type)
        metadata_type = parser["type"]
        if metadata_type != self.metadata_type:
            raise ValueError("Invalid metadata type '%s', expected '%s'" % (metadata_type, self.metadata_type))
        self.version = parser.get("version", self.version)
        self.validate()
        if self.version_tuple > VERSION:
            raise ValueError("Unsupported document version '%s', newest known is '%s'"
                             % (self.version, ".".join([str(i) for i in VERSION])))


def split_version(version):
    """
    Split version to a list of integers
    that can be easily compared.

    :param version: Document version
    :type version: str
    :rtype: [int]
    """
    return [int(i) for i in version.split(".")]


def parse_matrix_text(text):
    """
    Parse the matrix text format: a ``rows cols`` line followed by
    ``rows * cols`` whitespace separated integers in row-major order.

    :param text: matrix in text format
    :type text: str
    :rtype: list of rows
    """
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("Matrix text must start with 'rows cols'")
    try:
        numbers = [int(i) for i in tokens]
    except ValueError as ex:
        raise ValueError("Matrix text contains a non-integer token: %s" % ex)
    rows, cols = numbers[0], numbers[1]
    if rows < 0 or cols < 0:
        raise ValueError("Matrix dimensions must not be negative: %s %s" % (rows, cols))
    entries = numbers[2:]
    if len(entries) != rows * cols:
        raise ValueError("Matrix text has %s entries, expected %s" % (len(entries), rows * cols))
    return [entries[i * cols:(i + 1) * cols] for i in range(rows)]


def format_matrix_text(rows, ncols=None):
    """
    Format a list of integer rows in the matrix text format.

    :param rows: matrix rows
    :param ncols: column count, needed only for matrices without rows
    :rtype: str
    """
    rows = [list(row) for row in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    lines = ["%s %s" % (len(rows), ncols)]
    for row in rows:
        lines.append(" ".join([str(i) for i in row]))
    return "\n".join(lines) + "\n"


class Diagnostics(object):
    """
    Ordered collection of named checks.

    Diagnostic operations record failures here instead of raising,
    so a caller sees every failing check at once.

    Example::

        diag = Diagnostics("complex")
        diag.check("delta1*delta0 == 0", product.is_zero_matrix, "product is %s" % product)
        if not diag.ok:
            print(diag.failures)
    """

    def __init__(self, subject=None):
        self.subject = subject
        self.checks = []

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def __repr__(self):
        return u"<%s:%s:%s/%s>" % (self.__class__.__name__, self.subject, len(self.checks) - len(self.failures), len(self.checks))

    def check(self, name, passed, message=None):
        passed = bool(passed)
        self.checks.append((name, passed, message if not passed else None))
        return passed

    def note(self, name, message):
        # informational entry, never a failure
        self.checks.append((name, True, message))

    def extend(self, other, prefix=None):
        for name, passed, message in other:
            if prefix:
                name = "%s: %s" % (prefix, name)
            self.checks.append((name, passed, message))

    @property
    def ok(self):
        return not self.failures

    @property
    def failures(self):
        return [(name, message) for name, passed, message in self.checks if not passed]

    def to_list(self):
        return [{"check": name, "passed": passed, "message": message} for name, passed, message in self.checks]

    @classmethod
    def from_list(cls, data, subject=None):
        result = cls(subject)
        for item in data:
            result.checks.append((item["check"], bool(item["passed"]), item.get("message")))
        return result

    def format(self):
        lines = []
        for name, passed, message in self.checks:
            status = "ok" if passed else "FAILED"
            line = "%-7s %s" % (status, name)
            if message:
                line += ": %s" % message
            lines.append(line)
        return "\n".join(lines)
