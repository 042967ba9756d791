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
K-theory of the stable, unstable and asymptotic algebras of a
tiling, assembled from stable cohomology and stable-transpose
homology.

Example::

    import tilekt.ktheory
    import tilekt.tiling1d

    fib = tilekt.tiling1d.Substitution1D(["a", "b"], {"a": "ab", "b": "a"}, name="Fibonacci")
    report = tilekt.ktheory.analyze_substitution_1d(fib)
    print(report.groups["k0_a"])    # Z^5
    report.dump("fibonacci-report.json")
"""


import logging

import six

import tilekt.chaincx
import tilekt.common
import tilekt.tiling1d
import tilekt.tiling2d
from tilekt.abgroup import DEFAULT_KMAX, GroupExpression, direct_sum, free, is_isomorphic, tensor
from tilekt.common import Diagnostics, Header


__all__ = (
    "KTheoryReport",
    "GROUP_NAMES",
    "HOMOLOGY_NAMES",
    "ROUTES",

    "k_stable",
    "k_unstable",
    "k_asymptotic",
    "torsion_placement_check",
    "compare_stable_unstable",
    "assemble_asymptotic",
    "analyze_complex",
    "analyze_substitution_1d",
    "analyze_block_2d",
)


log = logging.getLogger(__name__)


#: K-groups in report order.
GROUP_NAMES = ("k0_s", "k1_s", "k0_u", "k1_u", "k0_a", "k1_a")

#: Limit groups of the two homology pipelines in report order.
HOMOLOGY_NAMES = ("h0_s", "h1_s", "h2_s", "h0_st", "h1_st", "h2_st")

#: Ways to compute K_0(U) of a tiling of the line.
ROUTES = ("stable", "collared", "both")

#: Note attached to K_0(S) when the extension by Z is not known to split.
SPLIT_UNDECIDED = "split-undecided: Z -> K_0(S) -> H^0_S is not known to split"

#: Note attached when K(A) and K_0(U) come from different complexes.
COLLARED_ASYMPTOTIC = "K(A) is assembled from the stable-transpose K_0(U); the collared route replaces K_0(U) only"


class KTheoryReport(tilekt.common.MetadataBase):
    """
    All six K-groups of a tiling together with the limit groups they
    come from and every diagnostic produced on the way. Groups that
    were not requested or could not be computed are None.
    """

    def __init__(self, dim=1, name=None):
        super(KTheoryReport, self).__init__()
        self.header = Header(self, "report")
        self.name = name
        self.dim = dim
        self.counts = {}
        self.groups = dict((key, None) for key in GROUP_NAMES)
        self.homology = dict((key, None) for key in HOMOLOGY_NAMES)
        self.finite_level = {}
        self.perron = None
        self.notes = []
        self.diagnostics = Diagnostics("report")

    def __repr__(self):
        return u"<%s:%s:dim=%s>" % (self.__class__.__name__, self.name, self.dim)

    @property
    def ok(self):
        return self.diagnostics.ok

    def _validate_dim(self):
        self._assert_value("dim", [1, 2])

    def _validate_groups(self):
        for field in ("groups", "homology"):
            for key, value in getattr(self, field).items():
                if value is not None and not isinstance(value, GroupExpression):
                    raise TypeError("%s: Field '%s' has invalid value for '%s': %r" % (self.__class__.__name__, field, key, value))

    def _validate_notes(self):
        self._assert_type("notes", [list])
        for note in self.notes:
            if not isinstance(note, six.string_types):
                raise TypeError("%s: Notes must be strings, got %r" % (self.__class__.__name__, note))

    def note(self, message):
        if message not in self.notes:
            self.notes.append(message)

    def serialize(self, parser):
        self.validate()
        self.header.serialize(parser)
        parser["name"] = self.name
        parser["dim"] = self.dim
        parser["counts"] = dict(self.counts)
        parser["groups"] = dict((key, value.to_dict() if value is not None else None) for key, value in self.groups.items())
        parser["homology"] = dict((key, value.to_dict() if value is not None else None) for key, value in self.homology.items())
        parser["finite_level"] = dict(self.finite_level)
        parser["perron"] = self.perron
        parser["notes"] = list(self.notes)
        parser["diagnostics"] = self.diagnostics.to_list()

    def deserialize(self, parser):
        self._assert_known_keys(parser, ["type", "version", "name", "dim", "counts", "groups", "homology",
                                         "finite_level", "perron", "notes", "diagnostics"])
        self.header.deserialize(parser)
        self.name = parser.get("name")
        self.dim = parser["dim"]
        self.counts = dict(parser.get("counts", {}))
        for field, names in (("groups", GROUP_NAMES), ("homology", HOMOLOGY_NAMES)):
            data = parser.get(field, {})
            unknown = sorted(set(data) - set(names))
            if unknown:
                raise ValueError("%s: Unknown %s: %s" % (self.__class__.__name__, field, ", ".join(unknown)))
            setattr(self, field, dict((key, GroupExpression.from_dict(data[key]) if data.get(key) else None) for key in names))
        self.finite_level = dict(parser.get("finite_level", {}))
        self.perron = parser.get("perron")
        self.notes = list(parser.get("notes", []))
        self.diagnostics = Diagnostics.from_list(parser.get("diagnostics", []), "report")
        self.validate()


def k_stable(h, dim):
    """
    ``(K_0(S), K_1(S))`` from stable cohomology.

    In dimension 2, ``K_0(S)`` is an extension of ``H^0_S`` by ``Z``;
    it is written as a direct sum only when ``H^0_S`` is free.
    """
    if dim == 1:
        return h.h0, free(1)
    if h.h0.is_free:
        k0 = direct_sum(free(1), h.h0)
    else:
        k0 = GroupExpression(extension=(free(1), h.h0), notes=(SPLIT_UNDECIDED, ))
    return k0, h.h1


def k_unstable(h, dim):
    """
    ``(K_0(U), K_1(U))`` from stable-transpose homology.
    """
    if dim == 1:
        return h.h0, free(1)
    return direct_sum(free(1), h.h0), h.h1


def k_asymptotic(ks, ku, dim):
    """
    Kunneth formula for ``A``, Morita equivalent to ``S (x) U``:
    ``K_0(A) = K_0S (x) K_0U + K_1S (x) K_1U`` and
    ``K_1(A) = K_0S (x) K_1U + K_1S (x) K_0U``.

    :raises ValueError: if an operand has torsion in dimension 2 or is
                        not resolved
    """
    if dim == 2:
        torsion = [str(g) for g in tuple(ks) + tuple(ku) if not g.is_torsion_free]
        if torsion:
            raise ValueError("Kunneth formula precondition violated: torsion in %s" % ", ".join(torsion))
    k0s, k1s = ks
    k0u, k1u = ku
    k0 = direct_sum(tensor(k0s, k0u), tensor(k1s, k1u))
    k1 = direct_sum(tensor(k0s, k1u), tensor(k1s, k0u))
    return k0, k1


def torsion_placement_check(report):
    """
    Tilings of the line have torsion-free K-theory; in the plane torsion
    may only appear in ``K_1(S)`` and ``K_0(U)``, coming from ``H^1_S``
    and ``H_0^ST``.

    :rtype: Diagnostics
    """
    diag = Diagnostics("torsion placement")
    if report.dim == 1:
        allowed = ()
    else:
        allowed = ("k1_s", "k0_u", "h1_s", "h0_st")
    for field in ("groups", "homology"):
        for key, value in sorted(getattr(report, field).items()):
            if value is None or key in allowed:
                continue
            diag.check("%s torsion-free" % key, value.is_torsion_free, "%s = %s" % (key, value))
    return diag


def compare_stable_unstable(report):
    """
    Compare ``K_0(S)`` with ``K_0(U)``. A difference is recorded as a
    note and never fails the report.

    :return: True or False, or None when either group is missing
    """
    k0s, k0u = report.groups["k0_s"], report.groups["k0_u"]
    if k0s is None or k0u is None:
        return None
    if is_isomorphic(k0s, k0u):
        report.diagnostics.note("K_0(U) = K_0(S)", str(k0s))
        return True
    log.info("%s: K_0(U) = %s differs from K_0(S) = %s", report.name, k0u, k0s)
    report.note("K_0(U) differs from K_0(S): %s vs %s" % (k0u, k0s))
    return False


def assemble_asymptotic(report):
    """
    Fill ``K_0(A)`` and ``K_1(A)`` of a report from its stable and
    unstable groups, then compare ``K_0(S)`` with ``K_0(U)``.

    :raises ValueError: if a stable or unstable group is missing
    :rtype: KTheoryReport
    """
    missing = [key for key in GROUP_NAMES[:4] if report.groups[key] is None]
    if missing:
        raise ValueError("Report %s has no value for %s" % (report.name, ", ".join(missing)))
    ks = (report.groups["k0_s"], report.groups["k1_s"])
    ku = (report.groups["k0_u"], report.groups["k1_u"])
    try:
        k0a, k1a = k_asymptotic(ks, ku, report.dim)
        report.groups.update(k0_a=k0a, k1_a=k1a)
    except ValueError as ex:
        report.note("K(A) not computable: %s" % ex)
    compare_stable_unstable(report)
    return report


def _finite_level(h, suffix):
    return dict(("h%s_%s" % (k, suffix), group.describe()) for k, (group, _) in sorted(h.finite_level.items()))


def analyze_complex(cx, kmax=DEFAULT_KMAX, algebras="SUA", name=None):
    """
    Run both homology pipelines on a stable complex and assemble the
    requested K-groups. A complex failing validation yields a report
    with diagnostics only.

    :param algebras: any combination of the letters S, U, A
    :rtype: KTheoryReport
    """
    algebras = algebras.upper()
    unknown = sorted(set(algebras) - set("SUA"))
    if unknown or not algebras:
        raise ValueError("Invalid algebra selection '%s', expected letters from 'SUA'" % algebras)
    report = KTheoryReport(cx.dim, name)
    report.counts = dict(zip(("vertices", "edges", "faces"), cx.counts))
    diag = tilekt.chaincx.validate(cx)
    report.diagnostics.extend(diag, "complex")
    if not diag.ok:
        log.info("%s: complex failed validation", name)
        return report
    report.diagnostics.extend(tilekt.chaincx.uct_decomposition_check(cx), "uct")

    need_s = "S" in algebras or "A" in algebras
    need_u = "U" in algebras or "A" in algebras
    if need_s:
        hs = tilekt.chaincx.stable_cohomology(cx, kmax=kmax)
        report.diagnostics.extend(hs.diagnostics, "H_S")
        report.homology.update(h0_s=hs.h0, h1_s=hs.h1, h2_s=hs.h2)
        report.finite_level.update(_finite_level(hs, "s"))
        ks = k_stable(hs, cx.dim)
        if ks[0].extension is not None:
            report.note(SPLIT_UNDECIDED)
    if need_u:
        hu = tilekt.chaincx.stable_transpose_homology(cx, kmax=kmax)
        report.diagnostics.extend(hu.diagnostics, "H^ST")
        report.homology.update(h0_st=hu.h0, h1_st=hu.h1, h2_st=hu.h2)
        report.finite_level.update(_finite_level(hu, "st"))
        ku = k_unstable(hu, cx.dim)
    if "S" in algebras:
        report.groups.update(k0_s=ks[0], k1_s=ks[1])
    if "U" in algebras:
        report.groups.update(k0_u=ku[0], k1_u=ku[1])
    if "A" in algebras:
        try:
            k0a, k1a = k_asymptotic(ks, ku, cx.dim)
            report.groups.update(k0_a=k0a, k1_a=k1a)
        except ValueError as ex:
            report.note("K(A) not computable: %s" % ex)
    for key in GROUP_NAMES + HOMOLOGY_NAMES:
        value = report.groups.get(key) or report.homology.get(key)
        if value is not None and value.residual:
            report.note("residual-present: %s" % key)
    report.diagnostics.extend(torsion_placement_check(report), "torsion")
    log.info("%s: %s", name, ", ".join("%s=%s" % (k, report.groups[k]) for k in GROUP_NAMES if report.groups[k] is not None))
    return report


def analyze_substitution_1d(s, kmax=DEFAULT_KMAX, algebras="SUA", route="stable"):
    """
    Full analysis of a substitution of the line.

    ``route`` selects how ``K_0(U)`` is obtained: from the stable complex,
    from the collared complex, or from both with an agreement check.

    :rtype: KTheoryReport
    """
    if route not in ROUTES:
        raise ValueError("Invalid route '%s', expected one of %s" % (route, ", ".join(ROUTES)))
    cx = tilekt.tiling1d.build_complex_1d(s)
    report = analyze_complex(cx, kmax=kmax, algebras=algebras, name=s.name)
    inflation, lengths = tilekt.tiling1d.perron_data(s)
    report.perron = {"inflation": inflation, "lengths": lengths}
    report.diagnostics.extend(tilekt.tiling1d.forgetful_inclusion_relations(s), "collared")
    report.diagnostics.extend(tilekt.tiling1d.pe_map_relations(s, cx=cx), "chain maps")
    if not report.ok:
        return report
    if route in ("collared", "both"):
        cech = tilekt.tiling1d.cech_k0_unstable(s, kmax=kmax)
        report.finite_level["cech_k0_u"] = str(cech)
        k0u = report.groups["k0_u"]
        if route == "both" and k0u is not None:
            report.diagnostics.check("collared K_0(U) = stable-transpose K_0(U)", is_isomorphic(cech, k0u),
                                     "%s vs %s" % (cech, k0u))
        elif k0u is not None:
            report.groups["k0_u"] = cech
        if route == "collared" and report.groups["k0_a"] is not None:
            report.note(COLLARED_ASYMPTOTIC)
    compare_stable_unstable(report)
    return report


def analyze_block_2d(s, kmax=DEFAULT_KMAX, algebras="SUA"):
    """
    Full analysis of a block substitution of the plane.

    :rtype: KTheoryReport
    """
    cx = tilekt.tiling2d.build_complex_2d(s)
    return analyze_complex(cx, kmax=kmax, algebras=algebras, name=s.name)
