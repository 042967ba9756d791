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
Command line interface.

Exit codes: 0 on success, 1 for unreadable or invalid input, 2 when a
mathematical check fails or a computed group differs from the expected
one. A computation that fails on parsed input also exits with 2.

Example::

    $ tilekt analyze tilekt/data/fibonacci.json
    $ tilekt limit --format json tilekt/data/chair_k1.json
    $ tilekt corpus --jobs 4 --route both
"""


import argparse
import json
import logging
import sys

import six

import tilekt
import tilekt.chaincx
import tilekt.corpus
import tilekt.exactmat as em
import tilekt.ktheory
import tilekt.tiling1d
import tilekt.tiling2d
from tilekt.abgroup import DEFAULT_KMAX, is_isomorphic, parse_group
from tilekt.common import Diagnostics, format_matrix_text, parse_matrix_text


__all__ = (
    "main",
    "cmd_analyze",
    "cmd_limit",
    "cmd_snf",
    "cmd_validate",
    "cmd_corpus",
)


log = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2

#: Exceptions raised while reading and parsing input files.
INPUT_ERRORS = (ValueError, TypeError, KeyError, IOError, OSError)

#: Exceptions raised by the computation once the input is parsed.
COMPUTE_ERRORS = (ValueError, ArithmeticError, RuntimeError)


class InputError(Exception):
    """
    Unreadable or invalid input; reported with exit code 1.
    """


def _message(ex):
    message = ex.args[0] if isinstance(ex, KeyError) and ex.args else ex
    return message if isinstance(message, six.string_types) else str(message)


def _load(path):
    try:
        document = tilekt.corpus.load_document(path)
    except INPUT_ERRORS as ex:
        raise InputError(_message(ex))
    matrix = None
    if isinstance(document, tilekt.tiling1d.Substitution1D):
        matrix = tilekt.tiling1d.substitution_matrix(document)
    elif isinstance(document, tilekt.tiling2d.BlockSubstitution2D):
        matrix = document.substitution_matrix()
    if matrix is not None and tilekt.tiling1d.is_primitive(matrix) is None:
        raise InputError("Substitution %s is not primitive" % (document.name or path))
    return document


def _write(out, text):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


def _complex_for(document):
    if isinstance(document, tilekt.tiling1d.Substitution1D):
        return tilekt.tiling1d.build_complex_1d(document)
    if isinstance(document, tilekt.tiling2d.BlockSubstitution2D):
        return tilekt.tiling2d.build_complex_2d(document)
    if isinstance(document, tilekt.chaincx.StableComplex):
        return document
    raise InputError("Document of type '%s' does not describe a tiling or complex" % document.header.metadata_type)


def format_report(report, cx=None):
    lines = []
    lines.append("Tiling: %s (dimension %s)" % (report.name or "unnamed", report.dim))
    if report.counts:
        lines.append("Stable cells: sV=%(vertices)s sE=%(edges)s sF=%(faces)s" % report.counts)
    if report.perron:
        lines.append("Inflation: %.6f, lengths %s" % (report.perron["inflation"],
                                                      ", ".join("%.6f" % i for i in report.perron["lengths"])))
    if cx is not None:
        for field, _, _ in tilekt.chaincx.MATRIX_FIELDS:
            matrix = getattr(cx, field)
            lines.append("%s:" % field)
            lines.extend("  " + line for line in format_matrix_text(em.to_lists(matrix), matrix.cols).splitlines())
    if report.finite_level:
        lines.append("Finite level:")
        lines.extend("  %-10s %s" % (key, value) for key, value in sorted(report.finite_level.items()))
    lines.append("Limits:")
    for key in tilekt.ktheory.HOMOLOGY_NAMES:
        value = report.homology.get(key)
        if value is not None:
            lines.append("  %-10s %s" % (key, value.describe()))
    lines.append("K-theory:")
    for key in tilekt.ktheory.GROUP_NAMES:
        value = report.groups.get(key)
        lines.append("  %-10s %s" % (key, value.describe() if value is not None else "-"))
    for note in report.notes:
        lines.append("Note: %s" % note)
    failures = report.diagnostics.failures
    lines.append("Diagnostics: %s checks, %s failed" % (len(report.diagnostics), len(failures)))
    for name, message in failures:
        lines.append("  FAILED %s: %s" % (name, message))
    return "\n".join(lines) + "\n"


def cmd_analyze(args, out):
    if not args.algebras or set(args.algebras.upper()) - set("SUA"):
        raise InputError("Invalid algebra selection '%s', expected letters from 'SUA'" % args.algebras)
    document = _load(args.file)
    if isinstance(document, tilekt.tiling1d.Substitution1D):
        report = tilekt.ktheory.analyze_substitution_1d(document, kmax=args.kmax, algebras=args.algebras, route=args.route)
    elif args.route != "stable":
        raise InputError("Route '%s' is only available for tilings of the line" % args.route)
    elif isinstance(document, tilekt.tiling2d.BlockSubstitution2D):
        report = tilekt.ktheory.analyze_block_2d(document, kmax=args.kmax, algebras=args.algebras)
    else:
        report = tilekt.ktheory.analyze_complex(_complex_for(document), kmax=args.kmax, algebras=args.algebras)
    if args.format == "json":
        _write(out, report.dumps())
    else:
        _write(out, format_report(report, _complex_for(document) if args.matrices else None))
    return EXIT_OK if report.ok else EXIT_CHECK


def cmd_limit(args, out):
    document = _load(args.file)
    if not isinstance(document, tilekt.corpus.DirectLimit):
        raise InputError("Expected a direct_limit document, got '%s'" % document.header.metadata_type)
    trace = []
    result = document.evaluate(kmax=args.kmax, trace=trace)
    matches = None
    if document.expected is not None:
        matches = is_isomorphic(parse_group(document.expected), result)
    if args.format == "json":
        data = {"group": result.to_dict(), "description": result.describe(), "trace": trace,
                "expected": document.expected, "matches": matches}
        _write(out, json.dumps(data, indent=4, sort_keys=True, separators=(",", ": ")))
    else:
        lines = [result.describe()]
        lines.extend("  %s" % step for step in trace)
        if matches is not None:
            lines.append("expected %s: %s" % (document.expected, "ok" if matches else "MISMATCH"))
        _write(out, "\n".join(lines))
    return EXIT_CHECK if matches is False else EXIT_OK


def _read_matrix(path):
    try:
        with open(path) as f:
            text = f.read()
        if text.lstrip().startswith("{"):
            data = json.loads(text)
            if "matrix" not in data:
                raise ValueError("JSON input has no 'matrix' field")
            return em.as_matrix(data["matrix"])
        rows = parse_matrix_text(text)
        nrows, ncols = [int(i) for i in text.split()[:2]]
        return em.as_matrix(rows, (nrows, ncols))
    except INPUT_ERRORS as ex:
        raise InputError(_message(ex))


def cmd_snf(args, out):
    a = _read_matrix(args.file)
    dec = em.snf(a)
    if args.format == "json":
        data = {"invariant_factors": list(dec.invariant_factors), "rank": dec.rank,
                "p": em.to_lists(dec.p), "q": em.to_lists(dec.q), "d": em.to_lists(dec.d)}
        _write(out, json.dumps(data, indent=4, sort_keys=True, separators=(",", ": ")))
    else:
        lines = ["invariant factors: %s" % " ".join(str(i) for i in dec.invariant_factors),
                 "rank: %s" % dec.rank]
        for name in ("p", "d", "q"):
            matrix = getattr(dec, name)
            lines.append("%s:" % name.upper())
            lines.append(format_matrix_text(em.to_lists(matrix), matrix.cols).rstrip("\n"))
        _write(out, "\n".join(lines))
    return EXIT_OK


def cmd_validate(args, out):
    document = _load(args.file)
    diag = Diagnostics(args.file)
    if isinstance(document, (tilekt.corpus.DirectLimit, tilekt.ktheory.KTheoryReport)):
        diag.note("document", "%s document is well formed" % document.header.metadata_type)
    else:
        cx = _complex_for(document)
        diag.extend(tilekt.chaincx.validate(cx), "complex")
        diag.extend(tilekt.chaincx.uct_decomposition_check(cx), "uct")
        if isinstance(document, tilekt.tiling1d.Substitution1D):
            diag.extend(tilekt.tiling1d.forgetful_inclusion_relations(document), "collared")
            diag.extend(tilekt.tiling1d.pe_map_relations(document, cx=cx), "chain maps")
    if args.format == "json":
        _write(out, json.dumps({"ok": diag.ok, "checks": diag.to_list()}, indent=4, sort_keys=True, separators=(",", ": ")))
    else:
        _write(out, diag.format())
    return EXIT_OK if diag.ok else EXIT_CHECK


def cmd_corpus(args, out):
    try:
        tilekt.corpus.load_corpus(args.dir)
    except INPUT_ERRORS as ex:
        raise InputError(_message(ex))
    rows = tilekt.corpus.run_corpus(path=args.dir, kmax=args.kmax, route=args.route, jobs=args.jobs)
    if args.format == "json":
        data = []
        for row in rows:
            data.append({
                "name": row.name,
                "kind": row.kind,
                "status": row.status,
                "computed": dict((key, str(value)) for key, value in row.computed.items()),
                "mismatches": row.mismatches,
                "flagged": row.flagged,
                "error": row.error,
            })
        _write(out, json.dumps(data, indent=4, sort_keys=True, separators=(",", ": ")))
    else:
        width = max([len(row.name) for row in rows] + [4])
        lines = []
        for row in rows:
            summary = row.computed.get("limit") or row.computed.get("k0_s")
            lines.append("%-6s %-*s %s" % (row.status, width, row.name, summary if summary is not None else ""))
            for message in row.mismatches:
                lines.append("       mismatch: %s" % message)
            for message in row.flagged:
                lines.append("       published-value mismatch: %s" % message)
            if row.error:
                lines.append("       error: %s" % row.error)
        passed = len([row for row in rows if row.ok])
        lines.append("%s of %s entries ok" % (passed, len(rows)))
        _write(out, "\n".join(lines))
    return EXIT_OK if all(row.ok for row in rows) else EXIT_CHECK


def _add_common(parser, route=False, algebras=False):
    parser.add_argument("--kmax", type=int, default=DEFAULT_KMAX, help="largest power tried when certifying localizations")
    parser.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    if route:
        parser.add_argument("--route", choices=tilekt.ktheory.ROUTES, default="stable",
                            help="how K_0(U) of a tiling of the line is computed; K(A) always uses the stable-transpose K_0(U)")
    if algebras:
        parser.add_argument("--algebras", default="SUA", help="algebras to report, letters from S, U, A")


def get_parser():
    parser = argparse.ArgumentParser(prog="tilekt", description="K-theory of substitution tilings.")
    parser.add_argument("--version", action="version", version="%(prog)s " + tilekt.__version__)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging, repeat for debug output")
    commands = parser.add_subparsers(dest="command")

    analyze = commands.add_parser("analyze", help="compute the K-theory of a tiling or complex")
    analyze.add_argument("file")
    analyze.add_argument("--matrices", action="store_true", help="print the matrices of the stable complex")
    _add_common(analyze, route=True, algebras=True)
    analyze.set_defaults(func=cmd_analyze)

    limit = commands.add_parser("limit", help="evaluate a direct limit")
    limit.add_argument("file")
    _add_common(limit)
    limit.set_defaults(func=cmd_limit)

    snf = commands.add_parser("snf", help="Smith normal form of a matrix")
    snf.add_argument("file")
    snf.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    snf.set_defaults(func=cmd_snf)

    validate = commands.add_parser("validate", help="check a document and the identities of its complex")
    validate.add_argument("file")
    validate.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    validate.set_defaults(func=cmd_validate)

    corpus = commands.add_parser("corpus", help="run the bundled corpus")
    corpus.add_argument("--dir", default=None, help="corpus directory (default: $TILEKT_CORPUS_DIR or bundled data)")
    corpus.add_argument("--jobs", type=int, default=1, help="number of worker threads")
    _add_common(corpus, route=True)
    corpus.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = get_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if not getattr(args, "func", None):
        parser.print_help(out)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as ex:
        sys.stderr.write("tilekt: error: %s\n" % ex)
        return EXIT_INPUT
    except COMPUTE_ERRORS as ex:
        log.debug("computation failed", exc_info=True)
        sys.stderr.write("tilekt: computation failed: %s\n" % _message(ex))
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
