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
The stable cochain complex with its substitution-homotopy maps,
and the direct limits of its cohomology and of the homology of
its transpose.

Example::

    import tilekt.chaincx

    cx = tilekt.chaincx.StableComplex()
    cx.load("/path/to/complex.json")

    diag = tilekt.chaincx.validate(cx)
    print(diag.format())

    result = tilekt.chaincx.stable_cohomology(cx)
    print(result.h0, result.h1, result.h2)
"""


import logging

import six

import tilekt.common
import tilekt.exactmat as em
from tilekt.abgroup import DEFAULT_KMAX, limit_free, limit_presented
from tilekt.common import Diagnostics, Header


__all__ = (
    "StableComplex",
    "HomologyResult",
    "validate",
    "stable_cohomology",
    "stable_transpose_homology",
    "uct_decomposition_check",
)


log = logging.getLogger(__name__)


#: Matrix fields of a complex document and their shapes as (rows, cols) label lists.
MATRIX_FIELDS = (
    ("delta0", "edges", "vertices"),
    ("delta1", "faces", "edges"),
    ("wv", "vertices", "vertices"),
    ("we", "edges", "edges"),
    ("wf", "faces", "faces"),
)


class StableComplex(tilekt.common.MetadataBase):
    """
    Integer matrices of the stable complex with labeled cell bases.

    Columns index source cells, rows index target cells, both in the
    order of the label lists. In dimension 1 there are no faces; then
    ``delta1`` is the empty ``0 x sE`` matrix and ``wf`` is ``0 x 0``.
    """

    def __init__(self, dim=1, vertices=(), edges=(), faces=(), delta0=None, delta1=None, wv=None, we=None, wf=None):
        super(StableComplex, self).__init__()
        self.header = Header(self, "complex")
        self.dim = dim
        self.vertices = list(vertices)
        self.edges = list(edges)
        self.faces = list(faces)
        nv, ne, nf = len(self.vertices), len(self.edges), len(self.faces)
        self.delta0 = em.as_matrix(delta0) if delta0 is not None else em.zeros(ne, nv)
        self.delta1 = em.as_matrix(delta1) if delta1 is not None else em.zeros(nf, ne)
        self.wv = em.as_matrix(wv) if wv is not None else em.identity(nv)
        self.we = em.as_matrix(we) if we is not None else em.identity(ne)
        self.wf = em.as_matrix(wf) if wf is not None else em.identity(nf)

    def __repr__(self):
        return u"<%s:dim=%s,sV=%s,sE=%s,sF=%s>" % (self.__class__.__name__, self.dim, len(self.vertices),
                                                   len(self.edges), len(self.faces))

    @property
    def counts(self):
        return len(self.vertices), len(self.edges), len(self.faces)

    def _validate_dim(self):
        self._assert_value("dim", [1, 2])

    def _validate_labels(self):
        for field in ("vertices", "edges", "faces"):
            self._assert_type(field, [list])
            labels = getattr(self, field)
            for label in labels:
                if not isinstance(label, six.string_types):
                    raise TypeError("%s: Field '%s' has a non-string label: %r" % (self.__class__.__name__, field, label))
            if len(set(labels)) != len(labels):
                raise ValueError("%s: Field '%s' has duplicate labels" % (self.__class__.__name__, field))
        if self.dim == 1 and self.faces:
            raise ValueError("%s: A complex of dimension 1 has no faces" % self.__class__.__name__)

    def _validate_shapes(self):
        for field, rows, cols in MATRIX_FIELDS:
            matrix = getattr(self, field)
            expected = (len(getattr(self, rows)), len(getattr(self, cols)))
            if tuple(matrix.shape) != expected:
                raise ValueError("%s: Field '%s' has shape %sx%s, expected %sx%s"
                                 % ((self.__class__.__name__, field) + tuple(matrix.shape) + expected))
            if not em.is_integral(matrix):
                raise ValueError("%s: Field '%s' has non-integer entries" % (self.__class__.__name__, field))

    def serialize(self, parser):
        self.validate()
        data = parser
        self.header.serialize(data)
        data["dim"] = self.dim
        data["vertices"] = list(self.vertices)
        data["edges"] = list(self.edges)
        data["faces"] = list(self.faces)
        for field, _, _ in MATRIX_FIELDS:
            data[field] = em.to_lists(getattr(self, field))
        return data

    def deserialize(self, data):
        self._assert_known_keys(data, ["type", "version", "dim", "vertices", "edges", "faces"] + [f for f, _, _ in MATRIX_FIELDS])
        self.header.deserialize(data)
        self.dim = data["dim"]
        self.vertices = list(data["vertices"])
        self.edges = list(data["edges"])
        self.faces = list(data.get("faces", []))
        self._validate_dim()
        self._validate_labels()
        for field, rows, cols in MATRIX_FIELDS:
            shape = (len(getattr(self, rows)), len(getattr(self, cols)))
            value = data.get(field)
            if value is None:
                if field not in ("delta1", "wf") or shape[0]:
                    raise ValueError("%s: Missing field '%s'" % (self.__class__.__name__, field))
                value = []
            setattr(self, field, value)
            self._assert_int_rows(field)
            if not value:
                matrix = em.zeros(*shape)
                if shape[0]:
                    raise ValueError("%s: Field '%s' is empty, expected %s rows" % (self.__class__.__name__, field, shape[0]))
            else:
                matrix = em.as_matrix(value)
            setattr(self, field, matrix)
        self.validate()


class HomologyResult(object):
    """
    Limit groups in degrees 0, 1, 2 and the finite-level data they came from.

    ``finite_level[k]`` is a pair ``(presented_group, induced_matrix)``.
    """

    def __init__(self, h0, h1, h2, finite_level, trace=(), diagnostics=None):
        self.h0 = h0
        self.h1 = h1
        self.h2 = h2
        self.finite_level = finite_level
        self.trace = list(trace)
        self.diagnostics = diagnostics if diagnostics is not None else Diagnostics()

    def __repr__(self):
        return u"<%s:%s|%s|%s>" % (self.__class__.__name__, self.h0, self.h1, self.h2)

    def __getitem__(self, degree):
        return (self.h0, self.h1, self.h2)[degree]


def validate(c):
    """
    Check the cochain and commuting-diagram identities of a complex.

    Never raises; every failure is recorded with the offending product.

    :rtype: Diagnostics
    """
    diag = Diagnostics("complex")
    nv, ne, nf = c.counts
    shapes_ok = True
    for field, rows, cols in MATRIX_FIELDS:
        matrix = getattr(c, field)
        expected = (len(getattr(c, rows)), len(getattr(c, cols)))
        shapes_ok &= diag.check("shape of %s" % field, tuple(matrix.shape) == expected,
                                "%sx%s, expected %sx%s" % (tuple(matrix.shape) + expected))
    if not shapes_ok:
        return diag

    product = c.delta1 * c.delta0
    diag.check("delta1*delta0 == 0", product.is_zero_matrix, "delta1*delta0 = %s" % em.to_lists(product))
    left = c.we * c.delta0
    right = c.delta0 * c.wv
    diag.check("we*delta0 == delta0*wv", left == right,
               "we*delta0 - delta0*wv = %s" % em.to_lists(left - right))
    left = c.wf * c.delta1
    right = c.delta1 * c.we
    diag.check("wf*delta1 == delta1*we", left == right,
               "wf*delta1 - delta1*we = %s" % em.to_lists(left - right))

    if c.dim == 2 and nf:
        sums = [sum(int(c.delta1[i, j]) for i in range(nf)) for j in range(ne)]
        diag.check("delta1 column sums are zero", not any(sums), "column sums %s" % sums)
        coker = em.cokernel(c.delta1)
        diag.check("image of delta1 is the sum-zero lattice", coker.free_rank == 1 and not coker.torsion_factors,
                   "coker delta1 = %s" % coker.describe())
        ones = [sorted(int(c.wf[i, j]) for i in range(nf)) == [0] * (nf - 1) + [1] for j in range(nf)]
        diag.check("wf columns have exactly one 1", all(ones),
                   "bad columns %s" % [c.faces[j] for j, good in enumerate(ones) if not good])
        if coker.free_rank == 1 and not coker.torsion_factors:
            try:
                induced = em.induced_map(c.wf, coker, coker)
                diag.check("wf induces the identity on coker delta1", induced == em.identity(1),
                           "induced map %s" % em.to_lists(induced))
            except ValueError as ex:
                diag.check("wf induces the identity on coker delta1", False, str(ex))

    if product.is_zero_matrix:
        h0 = nv - em.rank(c.delta0)
        sub = em.subquotient_ker_over_im(c.delta1, c.delta0)
        h2 = nf - em.rank(c.delta1)
        euler = h0 - sub.free_rank + h2
        diag.check("Euler characteristic", euler == nv - ne + nf,
                   "%s - %s + %s != %s - %s + %s" % (h0, sub.free_rank, h2, nv, ne, nf))
    return diag


def _limit_of(kind, group, matrix, kmax, trace):
    if kind == "free":
        return limit_free(matrix, kmax=kmax, trace=trace)
    return limit_presented(matrix, group, kmax=kmax, trace=trace)


def _run(stages, kmax, label):
    trace = []
    groups = []
    finite_level = {}
    for degree, (kind, group, w) in enumerate(stages):
        induced = em.induced_map(w, group, group)
        finite_level[degree] = (group, induced)
        trace.append("%s degree %s: finite level %s" % (label, degree, group.describe()))
        groups.append(_limit_of(kind, group, induced, kmax, trace))
        log.debug("%s degree %s: %s", label, degree, groups[-1])
    return groups, finite_level, trace


def stable_cohomology(c, kmax=DEFAULT_KMAX):
    """
    Stable cohomology: ``H^0 = lim(ker d0, W_V)``,
    ``H^1 = lim(ker d1 / Im d0, W_E)``, ``H^2 = lim(coker d1, W_F)``.

    :rtype: HomologyResult
    """
    c.validate()
    stages = [
        ("free", em.kernel_embedding(c.delta0), c.wv),
        ("presented", em.subquotient_ker_over_im(c.delta1, c.delta0), c.we),
        ("presented", em.cokernel(c.delta1), c.wf),
    ]
    groups, finite_level, trace = _run(stages, kmax, "H_S")
    diag = Diagnostics("stable cohomology")
    if c.dim == 1:
        diag.check("H^1_S = Z", str(groups[1]) == "Z", "H^1_S = %s" % groups[1])
        diag.check("H^2_S = 0", groups[2].is_zero, "H^2_S = %s" % groups[2])
    else:
        diag.check("H^2_S = Z", str(groups[2]) == "Z", "H^2_S = %s" % groups[2])
    return HomologyResult(groups[0], groups[1], groups[2], finite_level, trace, diag)


def stable_transpose_homology(c, kmax=DEFAULT_KMAX):
    """
    Homology of the transposed complex: ``H_2 = lim(ker d1^t, W_F^t)``,
    ``H_1 = lim(ker d0^t / Im d1^t, W_E^t)``, ``H_0 = lim(coker d0^t, W_V^t)``.

    :rtype: HomologyResult
    """
    c.validate()
    d0t = c.delta0.T
    d1t = c.delta1.T
    stages = [
        ("presented", em.cokernel(d0t), c.wv.T),
        ("presented", em.subquotient_ker_over_im(d0t, d1t), c.we.T),
        ("free", em.kernel_embedding(d1t), c.wf.T),
    ]
    groups, finite_level, trace = _run(stages, kmax, "H^ST")
    diag = Diagnostics("stable-transpose homology")
    if c.dim == 1:
        diag.check("H_1^ST = Z", str(groups[1]) == "Z", "H_1^ST = %s" % groups[1])
    else:
        diag.check("H_2^ST = Z", str(groups[2]) == "Z", "H_2^ST = %s" % groups[2])
    return HomologyResult(groups[0], groups[1], groups[2], finite_level, trace, diag)


def _finite_groups(c):
    cohomology = [
        (em.kernel_embedding(c.delta0), c.wv),
        (em.subquotient_ker_over_im(c.delta1, c.delta0), c.we),
        (em.cokernel(c.delta1), c.wf),
    ]
    d0t = c.delta0.T
    d1t = c.delta1.T
    homology = [
        (em.cokernel(d0t), c.wv.T),
        (em.subquotient_ker_over_im(d0t, d1t), c.we.T),
        (em.kernel_embedding(d1t), c.wf.T),
    ]
    return cohomology, homology


def uct_decomposition_check(c):
    """
    Finite-level universal coefficient check:
    ``H_k(C^ST) = torsion(H^(k+1)(C_S)) + Z^rank(H^k(C_S))``.
    Where both sides are torsion-free the induced endomorphisms must
    have equal characteristic polynomials.

    :rtype: Diagnostics
    """
    diag = Diagnostics("uct")
    try:
        cohomology, homology = _finite_groups(c)
    except ValueError as ex:
        diag.check("finite-level groups", False, str(ex))
        return diag
    for k in range(3):
        group, _ = homology[k]
        upper = cohomology[k + 1][0].torsion_factors if k < 2 else ()
        rank = cohomology[k][0].free_rank
        diag.check("H_%s^ST torsion = torsion H^%s_S" % (k, k + 1), tuple(group.torsion_factors) == tuple(upper),
                   "%s vs %s" % (list(group.torsion_factors), list(upper)))
        diag.check("rank H_%s^ST = rank H^%s_S" % (k, k), group.free_rank == rank,
                   "%s vs %s" % (group.free_rank, rank))
        co_group, co_w = cohomology[k]
        if not group.torsion_factors and not co_group.torsion_factors and group.free_rank == co_group.free_rank:
            try:
                m = em.induced_map(co_w, co_group, co_group)
                mt = em.induced_map(homology[k][1], group, group)
            except ValueError as ex:
                diag.check("degree %s induced maps" % k, False, str(ex))
                continue
            same = em.spectral_scan(m).char_poly == em.spectral_scan(mt).char_poly
            diag.check("degree %s: induced maps are transposes up to similarity" % k, same,
                       "characteristic polynomials differ")
    return diag
