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
Block substitutions of the plane: unit square prototiles, each
replaced by a ``lambda x lambda`` grid of prototiles.

Rule grids are lists of rows, row 0 at the bottom. The substitution
homotopy contracts the bottom-left child of every supertile.

Example::

    import tilekt.tiling2d

    sub = tilekt.tiling2d.BlockSubstitution2D()
    sub.load("trisquare.json")

    cells = tilekt.tiling2d.stable_cells_2d(sub)
    print(len(cells.vertices), len(cells.edges), len(cells.faces))   # 21 14 3

    cx = tilekt.tiling2d.build_complex_2d(sub)
"""


import collections
import logging

import six

import tilekt.common
import tilekt.exactmat as em
from tilekt.chaincx import StableComplex
from tilekt.common import Header
from tilekt.tiling1d import is_primitive


__all__ = (
    "BlockSubstitution2D",
    "StableCells2D",
    "stable_cells_2d",
    "build_complex_2d",
)


log = logging.getLogger(__name__)


class BlockSubstitution2D(tilekt.common.MetadataBase):
    def __init__(self, faces=(), lam=2, rules=None, name=None):
        super(BlockSubstitution2D, self).__init__()
        self.header = Header(self, "block_2d")
        self.name = name
        self.faces = list(faces)
        self.lam = lam
        self.rules = dict(rules or {})

    def __repr__(self):
        return u"<%s:%s>" % (self.__class__.__name__, self.name or ",".join(self.faces))

    def index(self, face):
        return self.faces.index(face)

    def _validate_faces(self):
        self._assert_type("faces", [list])
        self._assert_not_blank("faces")
        for face in self.faces:
            if not isinstance(face, six.string_types) or not face or "," in face:
                raise ValueError("%s: Invalid face label %r" % (self.__class__.__name__, face))
        if len(set(self.faces)) != len(self.faces):
            raise ValueError("%s: Field 'faces' has duplicates" % self.__class__.__name__)

    def _validate_lam(self):
        if isinstance(self.lam, bool) or not isinstance(self.lam, six.integer_types) or self.lam < 2:
            raise ValueError("%s: Field 'lambda' must be an integer >= 2, got %r" % (self.__class__.__name__, self.lam))

    def _validate_name(self):
        if self.name is not None:
            self._assert_type("name", six.string_types)

    def _validate_rules(self):
        self._assert_type("rules", [dict])
        if sorted(self.rules) != sorted(self.faces):
            raise ValueError("%s: Field 'rules' must have exactly one rule per face, got %s"
                             % (self.__class__.__name__, sorted(self.rules)))
        for face, grid in self.rules.items():
            if len(grid) != self.lam or any(len(row) != self.lam for row in grid):
                raise ValueError("%s: Rule for '%s' is not a %sx%s grid" % (self.__class__.__name__, face, self.lam, self.lam))
            unknown = sorted(set(f for row in grid for f in row) - set(self.faces))
            if unknown:
                raise ValueError("%s: Rule for '%s' uses unknown faces: %s" % (self.__class__.__name__, face, unknown))

    def serialize(self, parser):
        self.validate()
        self.header.serialize(parser)
        parser["faces"] = list(self.faces)
        parser["lambda"] = self.lam
        parser["rules"] = dict((face, [list(row) for row in grid]) for face, grid in self.rules.items())
        if self.name is not None:
            parser["name"] = self.name

    def deserialize(self, parser):
        self._assert_known_keys(parser, ["type", "version", "name", "faces", "lambda", "rules"])
        self.header.deserialize(parser)
        self.name = parser.get("name")
        self.faces = list(parser["faces"])
        self.lam = parser["lambda"]
        self.rules = dict((face, [list(row) for row in grid]) for face, grid in parser["rules"].items())
        self.validate()

    def substitution_matrix(self):
        n = len(self.faces)
        rows = [[sum(row.count(target) for row in self.rules[source]) for source in self.faces] for target in self.faces]
        return em.as_matrix(rows, (n, n))

    def image(self, patch):
        """
        Substitute every tile of a patch (tuple of rows, bottom first).
        """
        lam = self.lam
        rows = []
        for patch_row in patch:
            for a in range(lam):
                row = []
                for face in patch_row:
                    row.extend(self.rules[face][a])
                rows.append(tuple(row))
        return tuple(rows)


def _windows(grid, height, width):
    for i in range(len(grid) - height + 1):
        for j in range(len(grid[0]) - width + 1):
            yield tuple(tuple(grid[i + a][j:j + width]) for a in range(height))


def _closure(s, height, width, sources):
    # a window of the image of a legal patch lies in the image of a legal
    # patch no larger than the window
    found = set()
    queue = collections.deque(sources)
    while queue:
        patch = queue.popleft()
        for window in _windows(s.image(patch), height, width):
            if window not in found:
                found.add(window)
                queue.append(window)
    return found


class StableCells2D(collections.namedtuple("StableCells2D", "faces v_edges h_edges vertices")):
    """
    ``v_edges`` are legal (left, right) pairs, ``h_edges`` legal
    (bottom, top) pairs and ``vertices`` legal 2x2 blocks listed
    counterclockwise as (sw, se, ne, nw).
    """

    __slots__ = ()

    @property
    def edges(self):
        return [("v", e) for e in self.v_edges] + [("h", e) for e in self.h_edges]

    @property
    def edge_labels(self):
        return ["%s:%s,%s" % (kind, e[0], e[1]) for kind, e in self.edges]

    @property
    def vertex_labels(self):
        return [",".join(v) for v in self.vertices]


def stable_cells_2d(s):
    """
    Enumerate stable cells by closure under the substitution.

    :raises ValueError: for a non-primitive substitution
    """
    s.validate()
    n = len(s.faces)
    if is_primitive(s.substitution_matrix()) is None:
        raise ValueError("Block substitution %s is not primitive: no power up to %s is positive" % (s, (n - 1) ** 2 + 1))
    singles = [((f, ), ) for f in s.faces]
    vertical = _closure(s, 2, 1, singles)
    horizontal = _closure(s, 1, 2, singles)
    pairs = [p for p in vertical] + [p for p in horizontal]
    blocks = _closure(s, 2, 2, singles + pairs)

    def key(labels):
        return tuple(s.index(f) for f in labels)

    h_edges = sorted(((p[0][0], p[1][0]) for p in vertical), key=key)
    v_edges = sorted((p[0] for p in horizontal), key=key)
    vertices = sorted(((b[0][0], b[0][1], b[1][1], b[1][0]) for b in blocks), key=key)
    cells = StableCells2D(list(s.faces), v_edges, h_edges, vertices)
    log.debug("%s: %s stable vertices, %s stable edges, %s faces", s, len(vertices), len(cells.edges), n)
    return cells


def _stack(s, bottom, top):
    return s.image(((bottom, ), (top, )))


def _vertex_edges(vertex):
    sw, se, ne, nw = vertex
    return [(("h", (sw, nw)), 1), (("v", (sw, se)), 1), (("h", (se, ne)), -1), (("v", (nw, ne)), -1)]


def _edge_faces(edge):
    kind, (first, second) = edge
    if kind == "h":
        return [(second, 1), (first, -1)]
    return [(first, 1), (second, -1)]


def _edge_image(s, edge):
    kind, (first, second) = edge
    lam = s.lam
    if kind == "h":
        grid = _stack(s, first, second)
        return [(("h", (grid[j][0], grid[j + 1][0])), 1) for j in range(lam)]
    row = s.image(((first, second), ))[0]
    return [(("v", (row[i], row[i + 1])), 1) for i in range(lam)]


def _vertex_image(s, vertex):
    sw, se, ne, nw = vertex
    grid = s.image(((sw, se), (nw, ne)))
    lam = s.lam
    result = []
    for j in range(1, lam + 1):
        for i in range(1, lam + 1):
            block = (grid[j - 1][i - 1], grid[j - 1][i], grid[j][i], grid[j][i - 1])
            result.append((block, 1))
    return result


def build_complex_2d(s):
    """
    Stable complex of a block substitution.

    ``delta0`` of a vertex (sw, se, ne, nw) is ``h(sw,nw) + v(sw,se) -
    h(se,ne) - v(nw,ne)``; ``delta1`` sends ``h(b,t)`` to ``t - b`` and
    ``v(l,r)`` to ``l - r``. ``W_F`` picks the bottom-left child; ``W_E``
    and ``W_V`` collect the children flattened onto an edge or vertex by
    the corner homotopy, ``lambda`` resp. ``lambda^2`` terms each.

    :rtype: StableComplex
    """
    cells = stable_cells_2d(s)
    edges = cells.edges
    delta0 = em.from_images(edges, cells.vertices, [_vertex_edges(v) for v in cells.vertices])
    delta1 = em.from_images(cells.faces, edges, [_edge_faces(e) for e in edges])
    wf = em.from_images(cells.faces, cells.faces, [[(s.rules[f][0][0], 1)] for f in cells.faces])
    we = em.from_images(edges, edges, [_edge_image(s, e) for e in edges])
    wv = em.from_images(cells.vertices, cells.vertices, [_vertex_image(s, v) for v in cells.vertices])
    return StableComplex(dim=2, vertices=cells.vertex_labels, edges=cells.edge_labels, faces=list(cells.faces),
                         delta0=delta0, delta1=delta1, wv=wv, we=we, wf=wf)
