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
Exact integer matrix algebra.

Matrices are sympy ``ImmutableMatrix`` objects with integer (or, for
``to_reduced`` maps, rational) entries. Empty dimensions are allowed
everywhere and denote zero maps between zero groups.

Example::

    import tilekt.exactmat as em

    a = em.as_matrix([[2, 0], [0, 3]])
    snf = em.snf(a)
    print(snf.invariant_factors)        # (1, 6)

    ker = em.kernel_embedding(em.as_matrix([[0, 1, -1], [0, -1, 1]]))
    print(ker.free_rank)                # 2
"""


import collections

import six
from sympy import ImmutableMatrix, Poly, Rational, Symbol, divisors, factor_list


__all__ = (
    "SmithDecomposition",
    "PresentedGroup",
    "SpectralData",

    "as_matrix",
    "identity",
    "zeros",
    "to_lists",
    "is_integral",
    "is_unimodular",
    "rank",
    "hstack",
    "vstack",
    "block_diag",
    "from_images",
    "submatrix",
    "poly_at_matrix",
    "kron",
    "vec",
    "unvec",

    "snf",
    "kernel_embedding",
    "image_embedding",
    "cokernel",
    "subquotient_ker_over_im",
    "induced_map",
    "spectral_scan",
    "solve_integer_system",
)


X = Symbol("x")


def as_matrix(rows, shape=None):
    """
    Build an immutable integer matrix.

    :param rows: list of rows, or any sympy matrix
    :param shape: (rows, cols); required when ``rows`` is empty and
                  the column count matters
    :rtype: ImmutableMatrix
    """
    if hasattr(rows, "shape") and hasattr(rows, "tolist"):
        result = ImmutableMatrix(rows)
    else:
        rows = [list(row) for row in rows]
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        nrows, ncols = shape
        if len(rows) != nrows or any(len(row) != ncols for row in rows):
            raise ValueError("Matrix rows do not match shape %sx%s" % (nrows, ncols))
        entries = []
        for row in rows:
            for item in row:
                if isinstance(item, bool) or not isinstance(item, six.integer_types):
                    raise TypeError("Matrix entry is not an integer: %r" % (item, ))
                entries.append(item)
        result = ImmutableMatrix(nrows, ncols, entries)
    if shape is not None and tuple(result.shape) != tuple(shape):
        raise ValueError("Matrix has shape %sx%s, expected %sx%s" % (result.shape + tuple(shape)))
    return result


def identity(n):
    return ImmutableMatrix.eye(n)


def zeros(nrows, ncols):
    return ImmutableMatrix.zeros(nrows, ncols)


def to_lists(a):
    """
    Return the entries of an integral matrix as a list of lists of ints.
    """
    return [[int(a[i, j]) for j in range(a.cols)] for i in range(a.rows)]


def is_integral(a):
    return all(entry.is_integer for entry in a)


def is_unimodular(a):
    return a.rows == a.cols and abs(a.det()) == 1


def rank(a):
    if 0 in a.shape:
        return 0
    return snf(a).rank


def hstack(*blocks):
    nrows = blocks[0].rows
    ncols = sum(b.cols for b in blocks)
    rows = [[] for _ in range(nrows)]
    for block in blocks:
        if block.rows != nrows:
            raise ValueError("hstack: row counts differ: %s != %s" % (block.rows, nrows))
        for i in range(nrows):
            rows[i].extend(block[i, j] for j in range(block.cols))
    return ImmutableMatrix(nrows, ncols, [item for row in rows for item in row])


def vstack(*blocks):
    ncols = blocks[0].cols
    entries = []
    for block in blocks:
        if block.cols != ncols:
            raise ValueError("vstack: column counts differ: %s != %s" % (block.cols, ncols))
        entries.extend(block[i, j] for i in range(block.rows) for j in range(ncols))
    return ImmutableMatrix(sum(b.rows for b in blocks), ncols, entries)


def block_diag(*blocks):
    nrows = sum(b.rows for b in blocks)
    ncols = sum(b.cols for b in blocks)
    result = [[0] * ncols for _ in range(nrows)]
    r = c = 0
    for block in blocks:
        for i in range(block.rows):
            for j in range(block.cols):
                result[r + i][c + j] = block[i, j]
        r += block.rows
        c += block.cols
    return ImmutableMatrix(nrows, ncols, [item for row in result for item in row])


def from_images(rows, columns, images):
    """
    Matrix whose column ``j`` is the sum of the row basis vectors listed
    in ``images[j]`` as ``(row_label, coefficient)`` pairs.
    """
    index = dict((label, i) for i, label in enumerate(rows))
    matrix = [[0] * len(columns) for _ in rows]
    for j, targets in enumerate(images):
        for target, coefficient in targets:
            matrix[index[target]][j] += coefficient
    return as_matrix(matrix, (len(rows), len(columns)))


def poly_at_matrix(poly, a):
    """
    Evaluate a univariate polynomial at a square matrix (Horner scheme).
    """
    result = zeros(a.rows, a.cols)
    one = identity(a.rows)
    for coeff in Poly(poly, X).all_coeffs():
        result = result * a + coeff * one
    return ImmutableMatrix(result)


class SmithDecomposition(collections.namedtuple("SmithDecomposition", "p q d invariant_factors p_inv q_inv")):
    """
    ``d = p * a * q`` with unimodular ``p`` and ``q``.

    ``p_inv`` and ``q_inv`` are the exact inverses of ``p`` and ``q``;
    they are tracked during the elimination so no inversion is needed.
    """

    @property
    def rank(self):
        return len(self.invariant_factors)


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, target, source, factor):
    # row_target += factor * row_source
    if factor:
        src = m[source]
        dst = m[target]
        for k in range(len(dst)):
            dst[k] += factor * src[k]


def _add_col(m, target, source, factor):
    # col_target += factor * col_source
    if factor:
        for row in m:
            row[target] += factor * row[source]


def _eye_lists(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


class _Elimination(object):
    """
    Integer matrix with row and column operations recorded
    in the transformation matrices and their inverses.
    """

    def __init__(self, rows, m, n):
        self.a = [list(row) for row in rows]
        self.m = m
        self.n = n
        self.p = _eye_lists(m)
        self.p_inv = _eye_lists(m)
        self.q = _eye_lists(n)
        self.q_inv = _eye_lists(n)

    def swap_rows(self, i, j):
        if i != j:
            _swap_rows(self.a, i, j)
            _swap_rows(self.p, i, j)
            _swap_cols(self.p_inv, i, j)

    def swap_cols(self, i, j):
        if i != j:
            _swap_cols(self.a, i, j)
            _swap_cols(self.q, i, j)
            _swap_rows(self.q_inv, i, j)

    def add_row(self, target, source, factor):
        # E = I + factor * e_target e_source^T, E^-1 = I - factor * e_target e_source^T
        _add_row(self.a, target, source, factor)
        _add_row(self.p, target, source, factor)
        _add_col(self.p_inv, source, target, -factor)

    def add_col(self, target, source, factor):
        _add_col(self.a, target, source, factor)
        _add_col(self.q, target, source, factor)
        _add_row(self.q_inv, source, target, -factor)

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        self.p[i] = [-x for x in self.p[i]]
        for row in self.p_inv:
            row[i] = -row[i]

    def min_pivot(self, t):
        # smallest nonzero |entry| in the lower right block, row-major ties
        best = None
        for i in range(t, self.m):
            row = self.a[i]
            for j in range(t, self.n):
                value = row[j]
                if value and (best is None or abs(value) < best[0]):
                    best = (abs(value), i, j)
        return best

    def clear_cross(self, t):
        """
        Zero row t and column t outside the pivot.
        Return False if a nonzero remainder is left.
        """
        a = self.a
        pivot = a[t][t]
        clean = True
        for i in range(t + 1, self.m):
            if a[i][t]:
                self.add_row(i, t, -(a[i][t] // pivot))
                if a[i][t]:
                    clean = False
        for j in range(t + 1, self.n):
            if a[t][j]:
                self.add_col(j, t, -(a[t][j] // pivot))
                if a[t][j]:
                    clean = False
        return clean

    def min_cross(self, t):
        a = self.a
        best = (abs(a[t][t]), t, t)
        for i in range(t + 1, self.m):
            if a[i][t] and abs(a[i][t]) < best[0]:
                best = (abs(a[i][t]), i, t)
        for j in range(t + 1, self.n):
            if a[t][j] and abs(a[t][j]) < best[0]:
                best = (abs(a[t][j]), t, j)
        return best

    def non_divisible(self, t):
        a = self.a
        pivot = a[t][t]
        for i in range(t + 1, self.m):
            for j in range(t + 1, self.n):
                if a[i][j] % pivot:
                    return i
        return None

    def run(self):
        t = 0
        factors = []
        while t < min(self.m, self.n):
            best = self.min_pivot(t)
            if best is None:
                break
            _, i, j = best
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            while True:
                if not self.clear_cross(t):
                    _, i, j = self.min_cross(t)
                    self.swap_rows(t, i)
                    self.swap_cols(t, j)
                    continue
                row = self.non_divisible(t)
                if row is None:
                    break
                self.add_row(t, row, 1)
            if self.a[t][t] < 0:
                self.negate_row(t)
            factors.append(self.a[t][t])
            t += 1
        return tuple(factors)


def _from_lists(rows, nrows, ncols):
    return ImmutableMatrix(nrows, ncols, [item for row in rows for item in row])


def snf(a):
    """
    Smith normal form of an integer matrix.

    The pivot is the nonzero entry of smallest absolute value, ties
    broken in row-major order, so the result is deterministic.

    :param a: integer matrix, any shape
    :rtype: SmithDecomposition
    """
    a = as_matrix(a)
    m, n = a.shape
    elim = _Elimination(to_lists(a), m, n)
    factors = elim.run()
    return SmithDecomposition(
        p=_from_lists(elim.p, m, m),
        q=_from_lists(elim.q, n, n),
        d=_from_lists(elim.a, m, n),
        invariant_factors=factors,
        p_inv=_from_lists(elim.p_inv, m, m),
        q_inv=_from_lists(elim.q_inv, n, n),
    )


class PresentedGroup(collections.namedtuple("PresentedGroup",
                                            "kind free_rank torsion_factors to_reduced from_reduced relations constraint")):
    """
    A finitely generated group given as a subgroup or subquotient of Z^n.

    Reduced coordinates list the torsion generators first (``Z/t``
    for ``t`` in ``torsion_factors``), then ``free_rank`` free ones.

    - ``to_reduced``: ambient coordinates -> reduced coordinates
      (defined on the subgroup for kernel/image/subquotient)
    - ``from_reduced``: reduced coordinates -> ambient representatives
    - ``relations``: columns span the subgroup being divided out
    - ``constraint``: the subgroup is contained in ker(constraint)
    """

    @property
    def ambient(self):
        return self.from_reduced.rows

    @property
    def size(self):
        return len(self.torsion_factors) + self.free_rank

    @property
    def order(self):
        # order of the torsion subgroup
        result = 1
        for t in self.torsion_factors:
            result *= t
        return result

    @property
    def is_trivial(self):
        return self.size == 0

    def describe(self):
        parts = ["Z/%s" % t for t in self.torsion_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%s" % self.free_rank)
        return " + ".join(parts) if parts else "0"


def _cols(a, indices):
    return submatrix(a, range(a.rows), indices)


def _rows(a, indices):
    return submatrix(a, indices, range(a.cols))


def submatrix(a, rows, cols):
    rows = list(rows)
    cols = list(cols)
    return ImmutableMatrix(len(rows), len(cols), [a[i, j] for i in rows for j in cols])


def kernel_embedding(a):
    """
    Presentation of ker(a) as Z^(n - rank a).

    ``from_reduced`` is ``Q`` restricted to its last columns,
    ``to_reduced`` the matching rows of ``Q^-1``.
    """
    a = as_matrix(a)
    n = a.cols
    dec = snf(a)
    r = dec.rank
    q = _cols(dec.q, range(r, n))
    p = _rows(dec.q_inv, range(r, n))
    if not (a * q).is_zero_matrix:
        raise RuntimeError("Kernel basis is not annihilated by the matrix")
    return PresentedGroup("kernel", n - r, (), p, q, zeros(n, 0), a)


def image_embedding(a):
    """
    Presentation of the column lattice a * Z^n as Z^rank(a).

    ``from_reduced`` has columns ``d_i * P^-1[:, i]``; ``to_reduced``
    has rows ``P[i, :] / d_i``, so it is rational in general.
    """
    a = as_matrix(a)
    m = a.rows
    dec = snf(a)
    r = dec.rank
    q = ImmutableMatrix(m, r, [dec.p_inv[i, j] * dec.invariant_factors[j] for i in range(m) for j in range(r)])
    p = ImmutableMatrix(r, m, [Rational(dec.p[i, j], dec.invariant_factors[i]) for i in range(r) for j in range(m)])
    if p * q != identity(r):
        raise RuntimeError("Image presentation does not satisfy p*q = I")
    if q * p * a != a:
        raise RuntimeError("Image presentation does not satisfy q*p*a = a")
    return PresentedGroup("image", r, (), p, q, zeros(m, 0), zeros(0, m))


def _quotient_selection(dec, m):
    torsion = [i for i, d in enumerate(dec.invariant_factors) if d > 1]
    free = list(range(dec.rank, m))
    return torsion, free


def cokernel(a):
    """
    Presentation of Z^m / a * Z^n.

    Works for any shape, including m > n.
    """
    a = as_matrix(a)
    m = a.rows
    dec = snf(a)
    torsion, free = _quotient_selection(dec, m)
    selection = torsion + free
    p = _rows(dec.p, selection)
    q = _cols(dec.p_inv, selection)
    factors = tuple(dec.invariant_factors[i] for i in torsion)
    return PresentedGroup("cokernel", len(free), factors, p, q, a, zeros(0, m))


def subquotient_ker_over_im(d1, d0):
    """
    Presentation of ker(d1) / Im(d0).

    ``ker d1`` is identified with Z^k through the last columns of the
    Smith transform of ``d1``; the quotient is then the cokernel of
    ``d0`` written in those coordinates.

    :raises ValueError: if ``d1 * d0 != 0``
    """
    d1 = as_matrix(d1)
    d0 = as_matrix(d0)
    if d1.cols != d0.rows:
        raise ValueError("Incompatible shapes for d1 (%sx%s) and d0 (%sx%s)" % (d1.shape + d0.shape))
    if not (d1 * d0).is_zero_matrix:
        raise ValueError("Invalid complex: d1 * d0 != 0")
    e = d1.cols
    dec1 = snf(d1)
    r1 = dec1.rank
    k = _cols(dec1.q, range(r1, e))
    k_inv = _rows(dec1.q_inv, range(r1, e))
    b = k_inv * d0
    if k * b != d0:
        raise RuntimeError("Image of d0 is not contained in ker d1")
    dec2 = snf(b)
    torsion, free = _quotient_selection(dec2, e - r1)
    selection = torsion + free
    p = _rows(dec2.p, selection) * k_inv
    q = k * _cols(dec2.p_inv, selection)
    if p * q != identity(len(selection)):
        raise RuntimeError("Subquotient presentation does not satisfy p*q = I")
    if not (d1 * q).is_zero_matrix:
        raise RuntimeError("Subquotient representatives are not cycles")
    factors = tuple(dec2.invariant_factors[i] for i in torsion)
    return PresentedGroup("subquotient", len(free), factors, p, q, d0, d1)


def _reduce_torsion_rows(m, factors):
    rows = to_lists(m)
    for i, t in enumerate(factors):
        rows[i] = [x % t for x in rows[i]]
    return _from_lists(rows, m.rows, m.cols)


def induced_map(w, source, target):
    """
    Matrix of the endomorphism induced by ``w`` in reduced coordinates,
    ``target.to_reduced * w * source.from_reduced`` with torsion rows
    reduced modulo their orders.

    :raises ValueError: if ``w`` does not descend to the presented groups
    """
    w = as_matrix(w)
    if w.cols != source.ambient or w.rows != target.ambient:
        raise ValueError("Map of shape %sx%s does not fit ambient dimensions %s -> %s"
                         % (w.rows, w.cols, source.ambient, target.ambient))
    image = w * source.from_reduced
    m = target.to_reduced * image
    if not is_integral(m):
        raise ValueError("Induced map is not integral: the map does not descend")
    # the image must lie in the target subgroup
    if target.constraint.rows and not (target.constraint * image).is_zero_matrix:
        raise ValueError("Map does not send the source into the target subgroup")
    if target.kind in ("kernel", "image"):
        if target.from_reduced * m != image:
            raise ValueError("Map does not send the source into the target subgroup")
    # relations of the source must land in the relations of the target
    if source.relations.cols:
        moved = target.to_reduced * (w * source.relations)
        if not is_integral(moved):
            raise ValueError("Map does not preserve the relations")
        for i in range(moved.rows):
            modulus = target.torsion_factors[i] if i < len(target.torsion_factors) else 0
            for j in range(moved.cols):
                value = int(moved[i, j])
                if (modulus and value % modulus) or (not modulus and value):
                    raise ValueError("Map does not preserve the relations")
    return _reduce_torsion_rows(m, target.torsion_factors)


class SpectralData(collections.namedtuple("SpectralData", "char_poly min_poly integer_eigenvalues")):
    """
    ``integer_eigenvalues`` is a tuple of (root, multiplicity in the
    characteristic polynomial) pairs sorted by root.
    """

    def has_eigenvalue(self, value):
        return any(root == value for root, _ in self.integer_eigenvalues)


def _integer_roots(poly):
    poly = Poly(poly, X)
    roots = []
    multiplicity = 0
    while not poly.is_zero and poly.eval(0) == 0:
        poly = poly.quo(Poly(X, X))
        multiplicity += 1
    if multiplicity:
        roots.append((0, multiplicity))
    constant = abs(int(poly.eval(0))) if poly.degree() > 0 else 0
    if constant:
        for d in divisors(constant):
            for candidate in (d, -d):
                count = 0
                current = poly
                while current.degree() > 0 and current.eval(candidate) == 0:
                    current = current.quo(Poly(X - candidate, X))
                    count += 1
                if count:
                    roots.append((candidate, count))
    return tuple(sorted(roots))


def minimal_polynomial(a, char_poly=None):
    """
    Minimal polynomial from the factorization of the characteristic one:
    each factor exponent is lowered while the product still annihilates ``a``.
    """
    a = as_matrix(a)
    if char_poly is None:
        char_poly = Poly(a.charpoly(X).as_expr(), X)
    if a.rows == 0:
        return Poly(1, X)
    _, factors = factor_list(char_poly.as_expr(), X)
    factors = [(Poly(f, X), e) for f, e in factors]
    exponents = [e for _, e in factors]

    def product(exps):
        result = Poly(1, X)
        for (f, _), e in zip(factors, exps):
            result = result * f ** e
        return result

    for index in range(len(factors)):
        while exponents[index] > 1:
            trial = list(exponents)
            trial[index] -= 1
            if poly_at_matrix(product(trial), a).is_zero_matrix:
                exponents = trial
            else:
                break
    return product(exponents).monic()


def spectral_scan(a):
    """
    Characteristic polynomial, minimal polynomial and integer eigenvalues.

    :param a: square integer matrix
    :rtype: SpectralData
    """
    a = as_matrix(a)
    if a.rows != a.cols:
        raise ValueError("spectral_scan needs a square matrix, got %sx%s" % a.shape)
    if a.rows == 0:
        one = Poly(1, X)
        return SpectralData(one, one, ())
    char_poly = Poly(a.charpoly(X).as_expr(), X)
    min_poly = minimal_polynomial(a, char_poly)
    return SpectralData(char_poly, min_poly, _integer_roots(char_poly))


def solve_integer_system(a, b):
    """
    Integer solution ``x`` of ``a * x = b`` or None.

    :param a: m x n integer matrix
    :param b: m x k integer matrix
    :rtype: n x k ImmutableMatrix or None
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.rows != b.rows:
        raise ValueError("Right hand side has %s rows, expected %s" % (b.rows, a.rows))
    dec = snf(a)
    rhs = dec.p * b
    n = a.cols
    y = [[0] * b.cols for _ in range(n)]
    for i in range(a.rows):
        for j in range(b.cols):
            value = int(rhs[i, j])
            if i < dec.rank:
                d = dec.invariant_factors[i]
                if value % d:
                    return None
                y[i][j] = value // d
            elif value:
                return None
    return dec.q * _from_lists(y, n, b.cols)


def kron(a, b):
    """
    Kronecker product of two matrices.
    """
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    entries = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                for l in range(b.cols):
                    entries.append(a[i, j] * b[k, l])
    return ImmutableMatrix(rows, cols, entries)


def vec(a):
    # column-major
    return ImmutableMatrix(a.rows * a.cols, 1, [a[i, j] for j in range(a.cols) for i in range(a.rows)])


def unvec(v, nrows, ncols):
    return ImmutableMatrix(nrows, ncols, [v[j * nrows + i] for i in range(nrows) for j in range(ncols)])
