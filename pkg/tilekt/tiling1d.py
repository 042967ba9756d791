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
Substitution tilings of the line.

Prototiles are letters, tiles are oriented left to right and the
substitution homotopy contracts the leftmost child of every supertile.

Example::

    import tilekt.tiling1d

    fib = tilekt.tiling1d.Substitution1D()
    fib.loads('{"type": "substitution_1d", "letters": ["a", "b"], "rules": {"a": "ab", "b": "a"}}')

    cells = tilekt.tiling1d.stable_cells_1d(fib)
    print(cells.vertex_labels)      # ['a.b', ...]

    cx = tilekt.tiling1d.build_complex_1d(fib)
"""


import collections
import logging

import numpy
import six

import tilekt.common
import tilekt.exactmat as em
from tilekt.abgroup import DEFAULT_KMAX, limit_presented
from tilekt.chaincx import StableComplex
from tilekt.common import Diagnostics, Header


__all__ = (
    "Substitution1D",
    "StableCells1D",
    "CollaredComplex1D",
    "CollaredMaps1D",
    "PEMaps1D",

    "is_primitive",
    "substitution_matrix",
    "iterate",
    "legal_factors",
    "stable_cells_1d",
    "build_complex_1d",
    "perron_data",
    "collared_complex_1d",
    "collared_maps_1d",
    "cech_k0_unstable",
    "forgetful_inclusion_relations",
    "pe_maps_1d",
    "pe_map_relations",
)


log = logging.getLogger(__name__)


#: Iteration cap for the floating point Perron computation.
PERRON_MAX_ITERATIONS = 10000

#: Convergence threshold for the Perron computation.
PERRON_TOLERANCE = 1e-14


def is_primitive(matrix):
    """
    Return the smallest ``k`` with ``matrix^k > 0`` or None.

    Powers are taken on the boolean pattern; by Wielandt's bound a
    primitive ``n x n`` matrix has ``k <= (n - 1)^2 + 1``.

    :param matrix: square nonnegative integer matrix
    """
    pattern = numpy.array(em.to_lists(matrix), dtype=numpy.int64) > 0
    n = pattern.shape[0]
    if n == 0:
        return None
    bound = (n - 1) ** 2 + 1
    power = pattern.copy()
    for k in range(1, bound + 1):
        if power.all():
            return k
        power = (power.astype(numpy.int64).dot(pattern.astype(numpy.int64))) > 0
    return None


class Substitution1D(tilekt.common.MetadataBase):
    """
    Letters in a fixed order and one nonempty replacement word per letter.
    """

    def __init__(self, letters=(), rules=None, name=None):
        super(Substitution1D, self).__init__()
        self.header = Header(self, "substitution_1d")
        self.name = name
        self.letters = list(letters)
        self.rules = dict(rules or {})

    def __repr__(self):
        return u"<%s:%s>" % (self.__class__.__name__, self.name or self.describe())

    def describe(self):
        return ", ".join("%s->%s" % (letter, self.rules.get(letter, "")) for letter in self.letters)

    def index(self, letter):
        return self.letters.index(letter)

    def _validate_letters(self):
        self._assert_type("letters", [list])
        self._assert_not_blank("letters")
        for letter in self.letters:
            if not isinstance(letter, six.string_types) or len(letter) != 1:
                raise ValueError("%s: Letters must be single characters, got %r" % (self.__class__.__name__, letter))
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("%s: Field 'letters' has duplicates" % self.__class__.__name__)

    def _validate_name(self):
        if self.name is not None:
            self._assert_type("name", six.string_types)

    def _validate_rules(self):
        self._assert_type("rules", [dict])
        if sorted(self.rules) != sorted(self.letters):
            raise ValueError("%s: Field 'rules' must have exactly one rule per letter, got %s"
                             % (self.__class__.__name__, sorted(self.rules)))
        for letter, word in self.rules.items():
            if not isinstance(word, six.string_types) or not word:
                raise ValueError("%s: Rule for '%s' must be a nonempty word" % (self.__class__.__name__, letter))
            unknown = sorted(set(word) - set(self.letters))
            if unknown:
                raise ValueError("%s: Rule for '%s' uses unknown letters: %s" % (self.__class__.__name__, letter, unknown))

    def serialize(self, parser):
        self.validate()
        self.header.serialize(parser)
        parser["letters"] = list(self.letters)
        parser["rules"] = dict(self.rules)
        if self.name is not None:
            parser["name"] = self.name

    def deserialize(self, parser):
        self._assert_known_keys(parser, ["type", "version", "name", "letters", "rules"])
        self.header.deserialize(parser)
        self.name = parser.get("name")
        self.letters = list(parser["letters"])
        self.rules = dict(parser["rules"])
        self.validate()

    def apply(self, word):
        return "".join(self.rules[letter] for letter in word)


def substitution_matrix(s):
    """
    Entry ``(i, j)`` counts letter ``i`` in the image of letter ``j``.
    """
    n = len(s.letters)
    rows = [[s.rules[column].count(row) for column in s.letters] for row in s.letters]
    return em.as_matrix(rows, (n, n))


def iterate(s, word, times):
    for _ in range(times):
        word = s.apply(word)
    return word


def _check_primitive(s):
    matrix = substitution_matrix(s)
    if is_primitive(matrix) is None:
        n = len(s.letters)
        raise ValueError("Substitution %s is not primitive: no power up to %s is positive" % (s.describe(), (n - 1) ** 2 + 1))


def _factors(word, length):
    return [word[i:i + length] for i in range(len(word) - length + 1)]


def _factor_key(s, factor):
    return tuple(s.index(letter) for letter in factor)


def legal_factors(s, length):
    """
    All words of the given length occurring in some ``w^k(letter)``,
    ordered by letter indices.

    A factor of length ``n`` of ``w(u)`` lies in the image of a legal
    factor ``u`` of length at most ``n``, so the closure over shorter
    legal factors and the factors already found is complete.
    """
    _check_primitive(s)
    if length < 1:
        raise ValueError("Factor length must be positive: %s" % length)
    if length == 1:
        return list(s.letters)
    sources = []
    for shorter in range(1, length):
        sources.extend(legal_factors(s, shorter))
    found = set()
    queue = collections.deque(sources)
    while queue:
        word = queue.popleft()
        for factor in _factors(s.apply(word), length):
            if factor not in found:
                found.add(factor)
                queue.append(factor)
    return sorted(found, key=lambda f: _factor_key(s, f))


class StableCells1D(collections.namedtuple("StableCells1D", "edges vertices")):
    """
    Stable edges are the letters; stable vertices are legal two-letter words.
    """

    __slots__ = ()

    @property
    def vertex_labels(self):
        return ["%s.%s" % (v[0], v[1]) for v in self.vertices]


def stable_cells_1d(s):
    cells = StableCells1D(list(s.letters), legal_factors(s, 2))
    log.debug("%s: %s stable edges, %s stable vertices", s, len(cells.edges), len(cells.vertices))
    return cells


def _vertex_images(s, x, y):
    image = s.rules[x]
    targets = [(image[i:i + 2], 1) for i in range(len(image) - 1)]
    targets.append((image[-1] + s.rules[y][0], 1))
    return targets


def build_complex_1d(s):
    """
    Stable complex of a substitution of the line:
    ``delta0(x.y) = x - y``, ``W_E(e)`` is the first letter of ``w(e)``
    and ``W_V(x.y)`` sums the vertices inside ``w(x)`` and the junction
    of ``w(x)`` with ``w(y)``.

    :rtype: StableComplex
    """
    cells = stable_cells_1d(s)
    edges = cells.edges
    vertices = cells.vertices
    delta0 = em.from_images(edges, vertices, [[(v[0], 1), (v[1], -1)] for v in vertices])
    we = em.from_images(edges, edges, [[(s.rules[e][0], 1)] for e in edges])
    wv = em.from_images(vertices, vertices, [_vertex_images(s, v[0], v[1]) for v in vertices])
    return StableComplex(dim=1, vertices=cells.vertex_labels, edges=list(edges), faces=[],
                         delta0=delta0, delta1=em.zeros(0, len(edges)), wv=wv, we=we, wf=em.zeros(0, 0))


def perron_data(s):
    """
    Inflation factor and natural tile lengths, the shortest tile having
    length 1. Floating point; informational only.

    :rtype: (float, [float])
    """
    _check_primitive(s)
    transposed = numpy.array(em.to_lists(substitution_matrix(s)), dtype=float).T
    lengths = numpy.ones(len(s.letters))
    inflation = 0.0
    for _ in range(PERRON_MAX_ITERATIONS):
        image = transposed.dot(lengths)
        inflation = image.sum() / lengths.sum()
        image = image / image.sum()
        converged = numpy.abs(image - lengths / lengths.sum()).max() < PERRON_TOLERANCE
        lengths = image
        if converged:
            break
    lengths = lengths / lengths.min()
    return float(inflation), [float(i) for i in lengths]


class CollaredComplex1D(collections.namedtuple("CollaredComplex1D", "vertices edges boundary1 omega_v omega_e")):
    """
    Collared vertices are legal two-letter words, collared edges legal
    three-letter words ``xyz`` (edge ``y`` with its neighbors).
    ``boundary1`` is ``cV x cE``; ``omega_v``, ``omega_e`` are the
    collared substitution matrices.
    """

    __slots__ = ()


def collared_complex_1d(s):
    vertices = legal_factors(s, 2)
    edges = legal_factors(s, 3)
    boundary1 = em.from_images(vertices, edges, [[(e[0:2], 1), (e[1:3], -1)] for e in edges])
    omega_v = em.from_images(vertices, vertices, [[(s.rules[v[0]][-1] + s.rules[v[1]][0], 1)] for v in vertices])
    images = []
    for e in edges:
        left, middle, right = s.rules[e[0]], s.rules[e[1]], s.rules[e[2]]
        context = left[-1] + middle + right[0]
        images.append([(context[k:k + 3], 1) for k in range(len(middle))])
    omega_e = em.from_images(edges, edges, images)
    log.debug("%s: %s collared vertices, %s collared edges", s, len(vertices), len(edges))
    return CollaredComplex1D(vertices, edges, boundary1, omega_v, omega_e)


def cech_k0_unstable(s, kmax=DEFAULT_KMAX, trace=None):
    """
    ``K_0(U) = lim(coker boundary1^t, omega_E^t)`` over collared cells.

    :rtype: GroupExpression
    """
    collared = collared_complex_1d(s)
    group = em.cokernel(collared.boundary1.T)
    induced = em.induced_map(collared.omega_e.T, group, group)
    return limit_presented(induced, group, kmax=kmax, trace=trace)


class CollaredMaps1D(collections.namedtuple("CollaredMaps1D", "f_v f_e i_v i_e")):
    """
    Forgetful maps ``F_V(x.y) = y``, ``F_E(xyz) = y.z`` and inclusions
    ``i_V(y) = x.y``, ``i_E(y.z) = xyz`` for the first legal ``x``.
    """

    __slots__ = ()


def _first_extension(s, words, suffix):
    for word in words:
        if word[1:] == suffix:
            return word
    raise RuntimeError("No legal extension of '%s' for %s" % (suffix, s))


def collared_maps_1d(s, collared=None):
    collared = collared or collared_complex_1d(s)
    cells = stable_cells_1d(s)
    f_v = em.from_images(cells.edges, collared.vertices, [[(v[1], 1)] for v in collared.vertices])
    f_e = em.from_images(cells.vertices, collared.edges, [[(e[1:3], 1)] for e in collared.edges])
    i_v = em.from_images(collared.vertices, cells.edges, [[(_first_extension(s, collared.vertices, e), 1)] for e in cells.edges])
    i_e = em.from_images(collared.edges, cells.vertices, [[(_first_extension(s, collared.edges, v), 1)] for v in cells.vertices])
    return CollaredMaps1D(f_v, f_e, i_v, i_e)


def _check_equal(diag, name, left, right):
    diag.check(name, left == right, "difference %s" % em.to_lists(left - right))


def check_collared_relations(cx, collared, maps):
    """
    The six identities linking stable and collared cells.

    :rtype: Diagnostics
    """
    diag = Diagnostics("collared relations")
    _check_equal(diag, "W_E = F_V*omega_V*i_V", cx.we, maps.f_v * collared.omega_v * maps.i_v)
    _check_equal(diag, "W_V = F_E*omega_E*i_E", cx.wv, maps.f_e * collared.omega_e * maps.i_e)
    _check_equal(diag, "delta0 = F_V*boundary1*i_E", cx.delta0, maps.f_v * collared.boundary1 * maps.i_e)
    _check_equal(diag, "F_V*boundary1 = delta0*F_E", maps.f_v * collared.boundary1, cx.delta0 * maps.f_e)
    _check_equal(diag, "F_V*omega_V = W_E*F_V", maps.f_v * collared.omega_v, cx.we * maps.f_v)
    _check_equal(diag, "F_E*omega_E = W_V*F_E", maps.f_e * collared.omega_e, cx.wv * maps.f_e)
    return diag


def forgetful_inclusion_relations(s):
    """
    Build the forgetful and inclusion maps and verify the six identities
    between stable and collared matrices.

    :rtype: Diagnostics
    """
    diag = Diagnostics("collared relations")
    try:
        cx = build_complex_1d(s)
        collared = collared_complex_1d(s)
        maps = collared_maps_1d(s, collared)
    except (ValueError, RuntimeError) as ex:
        diag.check("collared cells", False, str(ex))
        return diag
    return check_collared_relations(cx, collared, maps)


class PEMaps1D(collections.namedtuple("PEMaps1D", "vertex_classes edge_classes r0 r1 g0 g1 s0 s1")):
    """
    Chain maps between the stable complex and the complex of cells of
    one substitution level finer.

    Edge classes are ``(parent, k)``, the ``k``-th child of a parent
    letter. Vertex classes are the junction classes ``x'.y'``, one per
    stable vertex, followed by internal classes ``(parent, k)`` for the
    vertex left of child ``k``.
    """

    __slots__ = ()

    @property
    def vertex_labels(self):
        return [("%s'.%s'" % tuple(c[1]) if c[0] == "junction" else "%s'_v%s" % c[1]) for c in self.vertex_classes]

    @property
    def edge_labels(self):
        return ["%s'_e%s" % c for c in self.edge_classes]


def pe_maps_1d(s):
    """
    ``r`` relabels a class by its child cell, ``g`` collapses it to the
    parent cell and ``s`` selects the classes contracted by the homotopy.

    :rtype: PEMaps1D
    """
    cells = stable_cells_1d(s)
    edge_classes = [(p, k) for p in s.letters for k in range(len(s.rules[p]))]
    junctions = [("junction", v) for v in cells.vertices]
    internals = [("internal", (p, k)) for p in s.letters for k in range(1, len(s.rules[p]))]
    vertex_classes = junctions + internals

    r1 = em.from_images(cells.edges, edge_classes, [[(s.rules[p][k], 1)] for p, k in edge_classes])
    g1 = em.from_images(cells.edges, edge_classes, [[(p, 1)] for p, _ in edge_classes])
    s1 = em.from_images(edge_classes, cells.edges, [[((e, 0), 1)] for e in cells.edges])

    r0_images = []
    g0_images = []
    for kind, value in vertex_classes:
        if kind == "junction":
            x, y = value
            r0_images.append([(s.rules[x][-1] + s.rules[y][0], 1)])
            g0_images.append([(value, 1)])
        else:
            p, k = value
            r0_images.append([(s.rules[p][k - 1:k + 1], 1)])
            g0_images.append([])
    r0 = em.from_images(cells.vertices, vertex_classes, r0_images)
    g0 = em.from_images(cells.vertices, vertex_classes, g0_images)
    s0_images = []
    for v in cells.vertices:
        targets = [(("junction", v), 1)]
        targets.extend((("internal", (v[0], k)), 1) for k in range(1, len(s.rules[v[0]])))
        s0_images.append(targets)
    s0 = em.from_images(vertex_classes, cells.vertices, s0_images)
    return PEMaps1D(vertex_classes, edge_classes, r0, r1, g0, g1, s0, s1)


def pe_map_relations(s, maps=None, cx=None):
    """
    ``g*s = id`` and ``r*s = W`` in degrees 0 and 1.

    :rtype: Diagnostics
    """
    maps = maps or pe_maps_1d(s)
    cx = cx or build_complex_1d(s)
    diag = Diagnostics("chain maps")
    _check_equal(diag, "g0*s0 = id", maps.g0 * maps.s0, em.identity(len(cx.vertices)))
    _check_equal(diag, "g1*s1 = id", maps.g1 * maps.s1, em.identity(len(cx.edges)))
    _check_equal(diag, "r0*s0 = W_V", maps.r0 * maps.s0, cx.wv)
    _check_equal(diag, "r1*s1 = W_E", maps.r1 * maps.s1, cx.we)
    return diag
