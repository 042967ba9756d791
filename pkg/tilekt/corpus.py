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


"""
The bundled corpus of tilings and direct-limit fixtures with their
expected groups, and a loader that picks the document class from the
"type" field.

The corpus lives in ``tilekt/data``; set ``TILEKT_CORPUS_DIR`` to use
another directory with the same layout (an ``index.json`` of type
"corpus" next to the documents it names).

Example::

    import tilekt.corpus

    rows = tilekt.corpus.run_corpus(jobs=4)
    for row in rows:
        print(row.name, row.status)
"""


import collections
import json
import logging
import os

from concurrent import futures

import six

import tilekt.common
import tilekt.exactmat as em
import tilekt.ktheory
from tilekt.abgroup import DEFAULT_KMAX, is_isomorphic, limit_presented, parse_group
from tilekt.chaincx import StableComplex
from tilekt.common import Header, open_file_obj
from tilekt.tiling1d import Substitution1D
from tilekt.tiling2d import BlockSubstitution2D


__all__ = (
    "DirectLimit",
    "Corpus",
    "CorpusRow",
    "DOCUMENT_CLASSES",

    "corpus_dir",
    "load_document",
    "load_corpus",
    "evaluate_entry",
    "run_corpus",
)


log = logging.getLogger(__name__)


#: Environment variable overriding the corpus directory.
CORPUS_DIR_ENV = "TILEKT_CORPUS_DIR"

#: File name of the corpus index inside the corpus directory.
INDEX_FILE = "index.json"


class DirectLimit(tilekt.common.MetadataBase):
    """
    A square matrix acting on ``Z/t_1 + ... + Z/t_k + Z^(n-k)``, torsion
    coordinates first, and optionally the expected canonical limit.
    """

    def __init__(self, matrix=None, torsion=(), expected=None, name=None):
        super(DirectLimit, self).__init__()
        self.header = Header(self, "direct_limit")
        self.name = name
        self.matrix = [list(row) for row in (matrix or [])]
        self.torsion = list(torsion)
        self.expected = expected

    def __repr__(self):
        return u"<%s:%s>" % (self.__class__.__name__, self.name or "%sx%s" % (len(self.matrix), len(self.matrix)))

    def _validate_matrix(self):
        self._assert_int_rows("matrix")
        if any(len(row) != len(self.matrix) for row in self.matrix):
            raise ValueError("%s: Field 'matrix' must be square" % self.__class__.__name__)

    def _validate_torsion(self):
        self._assert_type("torsion", [list])
        for t in self.torsion:
            if isinstance(t, bool) or not isinstance(t, six.integer_types) or t < 2:
                raise ValueError("%s: Torsion orders must be integers > 1, got %r" % (self.__class__.__name__, t))
        if len(self.torsion) > len(self.matrix):
            raise ValueError("%s: More torsion orders than generators" % self.__class__.__name__)

    def _validate_expected(self):
        if self.expected is not None:
            self._assert_type("expected", six.string_types)
            parse_group(self.expected)

    def serialize(self, parser):
        self.validate()
        self.header.serialize(parser)
        parser["matrix"] = [list(row) for row in self.matrix]
        if self.torsion:
            parser["torsion"] = list(self.torsion)
        if self.expected is not None:
            parser["expected"] = self.expected
        if self.name is not None:
            parser["name"] = self.name

    def deserialize(self, parser):
        self._assert_known_keys(parser, ["type", "version", "name", "matrix", "torsion", "expected"])
        self.header.deserialize(parser)
        self.name = parser.get("name")
        self.matrix = parser["matrix"]
        self.torsion = parser.get("torsion", [])
        self.expected = parser.get("expected")
        self.validate()

    def group(self):
        """
        The presented group the matrix acts on.

        :rtype: PresentedGroup
        """
        n = len(self.matrix)
        k = len(self.torsion)
        relations = em.as_matrix([[self.torsion[i] if i == j and i < k else 0 for j in range(k)] for i in range(n)], (n, k))
        return em.PresentedGroup("cokernel", n - k, tuple(self.torsion), em.identity(n), em.identity(n), relations, None)

    def evaluate(self, kmax=DEFAULT_KMAX, trace=None):
        """
        :rtype: GroupExpression
        """
        self.validate()
        return limit_presented(em.as_matrix(self.matrix, (len(self.matrix), len(self.matrix))), self.group(),
                               kmax=kmax, trace=trace)


#: Document classes by their "type" field.
DOCUMENT_CLASSES = {
    "substitution_1d": Substitution1D,
    "block_2d": BlockSubstitution2D,
    "complex": StableComplex,
    "direct_limit": DirectLimit,
    "report": tilekt.ktheory.KTheoryReport,
}


def load_document(f):
    """
    Load a document of any known type.

    :param f: file-like object or path to file
    :raises ValueError: for malformed JSON or an unknown type
    """
    with open_file_obj(f) as fo:
        text = fo.read()
    try:
        data = json.loads(text)
    except ValueError as ex:
        raise ValueError("Malformed JSON: %s" % ex)
    if not isinstance(data, dict):
        raise ValueError("Expected a JSON object, got %s" % type(data).__name__)
    doc_type = data.get("type")
    if doc_type not in DOCUMENT_CLASSES:
        raise ValueError("Unknown document type '%s', expected one of %s" % (doc_type, ", ".join(sorted(DOCUMENT_CLASSES))))
    document = DOCUMENT_CLASSES[doc_type]()
    document.deserialize(data)
    return document


CorpusEntry = collections.namedtuple("CorpusEntry", "name file expected published")


class Corpus(tilekt.common.MetadataBase):
    """
    Index of bundled documents with the groups expected for each.

    ``expected`` maps report keys (``k0_s``, ``h0_st``, ...) to canonical
    strings, or to None where the group is not computable. Direct-limit
    documents carry their expected value themselves. Report documents
    supply stable and unstable groups and the run assembles their K(A).
    ``published`` lists published values known to disagree with the
    formulas; they are reported, never failed.
    """

    def __init__(self):
        super(Corpus, self).__init__()
        self.header = Header(self, "corpus")
        self.entries = []

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def _validate_entries(self):
        self._assert_type("entries", [list])
        names = [entry.name for entry in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("%s: Duplicate entry names" % self.__class__.__name__)
        for entry in self.entries:
            for key in list(entry.expected) + list(entry.published):
                if key not in tilekt.ktheory.GROUP_NAMES + tilekt.ktheory.HOMOLOGY_NAMES:
                    raise ValueError("%s: Entry '%s' has unknown group '%s'" % (self.__class__.__name__, entry.name, key))

    def add(self, name, file, expected=None, published=None):
        self.entries.append(CorpusEntry(name, file, dict(expected or {}), dict(published or {})))

    def serialize(self, parser):
        self.validate()
        self.header.serialize(parser)
        parser["entries"] = []
        for entry in self.entries:
            item = {"name": entry.name, "file": entry.file}
            if entry.expected:
                item["expected"] = dict(entry.expected)
            if entry.published:
                item["published"] = dict(entry.published)
            parser["entries"].append(item)

    def deserialize(self, parser):
        self._assert_known_keys(parser, ["type", "version", "entries"])
        self.header.deserialize(parser)
        self.entries = []
        for item in parser["entries"]:
            self._assert_known_keys(item, ["name", "file", "expected", "published"])
            self.add(item["name"], item["file"], item.get("expected"), item.get("published"))
        self.validate()


def corpus_dir():
    return os.environ.get(CORPUS_DIR_ENV) or os.path.join(os.path.dirname(__file__), "data")


def load_corpus(path=None):
    """
    :rtype: (Corpus, str)
    """
    path = path or corpus_dir()
    corpus = Corpus()
    corpus.load(os.path.join(path, INDEX_FILE))
    return corpus, path


class CorpusRow(collections.namedtuple("CorpusRow", "name kind computed mismatches flagged error")):
    __slots__ = ()

    @property
    def status(self):
        if self.error:
            return "ERROR"
        return "FAIL" if self.mismatches else "ok"

    @property
    def ok(self):
        return not self.error and not self.mismatches


def _same(expected, computed):
    if expected is None or computed is None:
        return expected is None and computed is None
    return is_isomorphic(parse_group(expected), computed)


def evaluate_entry(entry, path, kmax=DEFAULT_KMAX, route="stable"):
    """
    Evaluate one corpus entry and compare with its expected groups.

    :rtype: CorpusRow
    """
    try:
        document = load_document(os.path.join(path, entry.file))
    except (IOError, OSError, ValueError, TypeError, KeyError) as ex:
        return CorpusRow(entry.name, None, {}, [], [], str(ex))
    kind = document.header.metadata_type
    try:
        return _evaluate(document, kind, entry, kmax, route)
    except (ValueError, RuntimeError) as ex:
        log.warning("%s: %s", entry.name, ex)
        return CorpusRow(entry.name, kind, {}, [], [], str(ex))


def _evaluate(document, kind, entry, kmax, route):
    mismatches = []
    flagged = []
    computed = {}
    if isinstance(document, DirectLimit):
        result = document.evaluate(kmax=kmax)
        computed["limit"] = result
        if document.expected is not None and not _same(document.expected, result):
            mismatches.append("limit: expected %s, got %s" % (document.expected, result.describe()))
        return CorpusRow(entry.name, kind, computed, mismatches, flagged, None)

    if isinstance(document, Substitution1D):
        report = tilekt.ktheory.analyze_substitution_1d(document, kmax=kmax, route=route)
    elif isinstance(document, BlockSubstitution2D):
        report = tilekt.ktheory.analyze_block_2d(document, kmax=kmax)
    elif isinstance(document, StableComplex):
        report = tilekt.ktheory.analyze_complex(document, kmax=kmax, name=entry.name)
    elif isinstance(document, tilekt.ktheory.KTheoryReport):
        report = tilekt.ktheory.assemble_asymptotic(document)
    else:
        return CorpusRow(entry.name, kind, computed, [], [], "Document type '%s' cannot be analyzed" % kind)
    computed.update((k, v) for k, v in report.groups.items() if v is not None)
    computed.update((k, v) for k, v in report.homology.items() if v is not None)
    for name, message in report.diagnostics.failures:
        mismatches.append("%s: %s" % (name, message))
    for key, expected in sorted(entry.expected.items()):
        value = computed.get(key)
        if not _same(expected, value):
            mismatches.append("%s: expected %s, got %s" % (key, expected, value.describe() if value is not None else None))
    for key, published in sorted(entry.published.items()):
        value = computed.get(key)
        if not _same(published, value):
            flagged.append("%s: published %s, computed %s" % (key, published, value))
    return CorpusRow(entry.name, kind, computed, mismatches, flagged, None)


def run_corpus(path=None, kmax=DEFAULT_KMAX, route="stable", jobs=1):
    """
    Evaluate every corpus entry; rows come back in index order.

    :rtype: [CorpusRow]
    """
    corpus, path = load_corpus(path)
    log.info("Running %s corpus entries from %s with %s worker(s)", len(corpus), path, jobs)
    with futures.ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        return list(executor.map(lambda entry: evaluate_entry(entry, path, kmax=kmax, route=route), corpus.entries))
