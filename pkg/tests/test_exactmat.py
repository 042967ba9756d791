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

import itertools
import os
import random
import sys

DIR = os.path.dirname(__file__)
sys.path.insert(0, os.path.join(DIR, ".."))

from sympy import Poly, igcd  # noqa

import tilekt.exactmat as em  # noqa


#: Number of random matrices per property test.
PROPERTY_CASES = int(os.environ.get("TILEKT_PROPERTY_CASES", "1000"))


def random_matrix(rng, nrows, ncols, bound=5):
    return em.as_matrix([[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows)], (nrows, ncols))


def reduce_torsion_rows(m, factors):
    rows = em.to_lists(m)
    for i, t in enumerate(factors):
        rows[i] = [x % t for x in rows[i]]
    return em.as_matrix(rows, m.shape)


class TestMatrixHelpers(unittest.TestCase):

    def test_as_matrix(self):
        a = em.as_matrix([[1, 2], [3, 4]])
        self.assertEqual(a.shape, (2, 2))
        self.assertEqual(em.to_lists(a), [[1, 2], [3, 4]])
        self.assertEqual(em.as_matrix([], (0, 3)).shape, (0, 3))

    def test_as_matrix_errors(self):
        self.assertRaises(ValueError, em.as_matrix, [[1, 2], [3]])
        self.assertRaises(TypeError, em.as_matrix, [[1.5]])
        self.assertRaises(ValueError, em.as_matrix, [[1, 2]], (2, 1))

    def test_rank(self):
        self.assertEqual(em.rank(em.as_matrix([[1, 2], [2, 4]])), 1)
        self.assertEqual(em.rank(em.zeros(0, 3)), 0)
        self.assertTrue(em.is_unimodular(em.as_matrix([[2, 1], [1, 1]])))
        self.assertFalse(em.is_unimodular(em.as_matrix([[2, 0], [0, 1]])))

    def test_stacking(self):
        a = em.as_matrix([[1, 2]])
        b = em.as_matrix([[3]])
        self.assertEqual(em.to_lists(em.hstack(a, b)), [[1, 2, 3]])
        self.assertEqual(em.to_lists(em.vstack(a, em.as_matrix([[4, 5]]))), [[1, 2], [4, 5]])
        self.assertEqual(em.to_lists(em.block_diag(a, b)), [[1, 2, 0], [0, 0, 3]])
        self.assertRaises(ValueError, em.vstack, a, b)

    def test_from_images(self):
        matrix = em.from_images(["a", "b"], ["x", "y"], [[("a", 1), ("b", -1)], [("b", 2)]])
        self.assertEqual(em.to_lists(matrix), [[1, 0], [-1, 2]])
        # repeated targets add up
        matrix = em.from_images(["a"], ["x"], [[("a", 1), ("a", 1)]])
        self.assertEqual(em.to_lists(matrix), [[2]])

    def test_kron_vec(self):
        a = em.as_matrix([[1, 2]])
        b = em.as_matrix([[1], [1]])
        self.assertEqual(em.to_lists(em.kron(a, b)), [[1, 2], [1, 2]])
        c = em.as_matrix([[1, 2], [3, 4]])
        self.assertEqual(em.to_lists(em.vec(c)), [[1], [3], [2], [4]])
        self.assertEqual(em.unvec(em.vec(c), 2, 2), c)


class TestSmithNormalForm(unittest.TestCase):

    def _check(self, a):
        dec = em.snf(a)
        self.assertEqual(dec.p * a * dec.q, dec.d)
        self.assertEqual(abs(dec.p.det()), 1)
        self.assertEqual(abs(dec.q.det()), 1)
        self.assertEqual(dec.p * dec.p_inv, em.identity(a.rows))
        self.assertEqual(dec.q * dec.q_inv, em.identity(a.cols))
        factors = dec.invariant_factors
        for i in range(a.rows):
            for j in range(a.cols):
                if i == j and i < len(factors):
                    self.assertEqual(dec.d[i, j], factors[i])
                else:
                    self.assertEqual(dec.d[i, j], 0)
        for first, second in zip(factors, factors[1:]):
            self.assertEqual(second % first, 0)
        self.assertTrue(all(f > 0 for f in factors))
        return dec

    def test_small(self):
        dec = self._check(em.as_matrix([[2, 4], [6, 8]]))
        self.assertEqual(tuple(dec.invariant_factors), (2, 4))

    def test_singular(self):
        dec = self._check(em.as_matrix([[1, 2, 3], [2, 4, 6]]))
        self.assertEqual(tuple(dec.invariant_factors), (1, ))
        self.assertEqual(dec.rank, 1)

    def test_zero_and_empty(self):
        self.assertEqual(tuple(self._check(em.zeros(2, 3)).invariant_factors), ())
        self.assertEqual(tuple(self._check(em.zeros(0, 2)).invariant_factors), ())
        self.assertEqual(tuple(self._check(em.zeros(2, 0)).invariant_factors), ())

    def test_deterministic(self):
        a = em.as_matrix([[4, 6, 2], [2, 2, 8]])
        self.assertEqual(em.snf(a), em.snf(a))

    def test_random(self):
        rng = random.Random(20261019)
        for _ in range(PROPERTY_CASES):
            a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            dec = self._check(a)
            self.assertEqual(dec.rank, a.rank())

    def test_random_minors(self):
        # d_1 * ... * d_k is the gcd of the k x k minors
        rng = random.Random(31)
        for _ in range(PROPERTY_CASES):
            a = random_matrix(rng, rng.randint(1, 3), rng.randint(1, 4))
            factors = list(em.snf(a).invariant_factors)
            for k in range(1, min(a.shape) + 1):
                g = 0
                for rows in itertools.combinations(range(a.rows), k):
                    for cols in itertools.combinations(range(a.cols), k):
                        g = igcd(g, int(em.submatrix(a, rows, cols).det()))
                expected = 0
                if k <= len(factors):
                    expected = 1
                    for f in factors[:k]:
                        expected *= int(f)
                self.assertEqual(g, expected, "k=%s for %s" % (k, em.to_lists(a)))


class TestPresentedGroups(unittest.TestCase):

    def test_kernel(self):
        a = em.as_matrix([[1, -1]])
        group = em.kernel_embedding(a)
        self.assertEqual(group.free_rank, 1)
        self.assertTrue((a * group.from_reduced).is_zero_matrix)
        self.assertEqual(group.to_reduced * group.from_reduced, em.identity(1))

    def test_image(self):
        group = em.image_embedding(em.as_matrix([[2], [4]]))
        self.assertEqual(group.free_rank, 1)
        self.assertEqual(group.to_reduced * group.from_reduced, em.identity(1))

    def test_cokernel(self):
        group = em.cokernel(em.as_matrix([[2], [0]]))
        self.assertEqual(group.describe(), "Z/2 + Z")
        self.assertEqual(group.order, 2)
        self.assertEqual(em.cokernel(em.zeros(2, 0)).describe(), "Z^2")
        self.assertTrue(em.cokernel(em.identity(3)).is_trivial)
        # more columns than rows
        self.assertEqual(em.cokernel(em.as_matrix([[2, 4]])).describe(), "Z/2")
        self.assertEqual(em.cokernel(em.as_matrix([[4, 6, 0], [0, 0, 0]])).describe(), "Z/2 + Z")

    def test_subquotient(self):
        d1 = em.as_matrix([[1, -1]])
        self.assertTrue(em.subquotient_ker_over_im(d1, em.as_matrix([[1], [1]])).is_trivial)
        self.assertEqual(em.subquotient_ker_over_im(d1, em.as_matrix([[2], [2]])).describe(), "Z/2")
        self.assertEqual(em.subquotient_ker_over_im(d1, em.zeros(2, 0)).describe(), "Z")

    def test_subquotient_not_a_complex(self):
        self.assertRaises(ValueError, em.subquotient_ker_over_im, em.as_matrix([[1, 0]]), em.as_matrix([[1], [1]]))
        self.assertRaises(ValueError, em.subquotient_ker_over_im, em.as_matrix([[1, 0]]), em.as_matrix([[1]]))

    def test_induced_map(self):
        group = em.cokernel(em.as_matrix([[2], [0]]))
        induced = em.induced_map(3 * em.identity(2), group, group)
        self.assertEqual(em.to_lists(induced), [[1, 0], [0, 3]])

    def test_induced_map_does_not_descend(self):
        kernel = em.kernel_embedding(em.as_matrix([[1, -1]]))
        self.assertRaises(ValueError, em.induced_map, em.as_matrix([[1, 0], [0, 2]]), kernel, kernel)
        self.assertRaises(ValueError, em.induced_map, em.identity(3), kernel, kernel)

    def test_random_kernel(self):
        rng = random.Random(37)
        for _ in range(PROPERTY_CASES):
            a = random_matrix(rng, rng.randint(1, 3), rng.randint(1, 4), bound=3)
            group = em.kernel_embedding(a)
            self.assertEqual(group.free_rank, a.cols - a.rank())
            self.assertTrue((a * group.from_reduced).is_zero_matrix)
            if group.free_rank:
                self.assertEqual(group.to_reduced * group.from_reduced, em.identity(group.free_rank))
                # saturated: every invariant factor of the basis is 1
                self.assertEqual(set(em.snf(group.from_reduced).invariant_factors), set([1]))

    def test_random_induced_maps(self):
        rng = random.Random(41)
        for _ in range(PROPERTY_CASES):
            n = rng.randint(1, 3)
            a = random_matrix(rng, n, n, bound=4)
            group = em.cokernel(a)
            if group.is_trivial:
                continue
            self.assertEqual(group.to_reduced * group.from_reduced, em.identity(group.size))
            self.assertEqual(em.induced_map(em.identity(n), group, group), em.identity(group.size))
            # polynomials in a preserve its column lattice
            w1 = a + rng.randint(-3, 3) * em.identity(n)
            w2 = a * a + rng.randint(-3, 3) * em.identity(n)
            first = em.induced_map(w1, group, group)
            second = em.induced_map(w2, group, group)
            self.assertEqual(em.induced_map(w2 * w1, group, group), reduce_torsion_rows(second * first, group.torsion_factors))

    def test_random_cokernel_order(self):
        rng = random.Random(7)
        for _ in range(PROPERTY_CASES):
            n = rng.randint(1, 3)
            a = random_matrix(rng, n, n)
            det = abs(a.det())
            group = em.cokernel(a)
            if det:
                self.assertEqual(group.free_rank, 0)
                self.assertEqual(group.order, det)
            else:
                self.assertTrue(group.free_rank > 0)


class TestSpectral(unittest.TestCase):

    def test_integer_eigenvalues(self):
        data = em.spectral_scan(em.as_matrix([[2, 0], [0, 1]]))
        self.assertEqual(data.integer_eigenvalues, ((1, 1), (2, 1)))
        self.assertTrue(data.has_eigenvalue(2))
        self.assertFalse(data.has_eigenvalue(-1))

    def test_minimal_polynomial(self):
        data = em.spectral_scan(em.identity(2))
        self.assertEqual(data.min_poly.as_expr(), em.X - 1)
        self.assertEqual(data.char_poly, Poly((em.X - 1) ** 2, em.X))
        # a Jordan block keeps the full power
        data = em.spectral_scan(em.as_matrix([[2, 1], [0, 2]]))
        self.assertEqual(data.min_poly.degree(), 2)

    def test_zero_eigenvalue(self):
        data = em.spectral_scan(em.as_matrix([[0, 1], [0, 0]]))
        self.assertEqual(data.integer_eigenvalues, ((0, 2), ))

    def test_not_square(self):
        self.assertRaises(ValueError, em.spectral_scan, em.as_matrix([[1, 2]]))


class TestSolve(unittest.TestCase):

    def test_solution(self):
        x = em.solve_integer_system(em.as_matrix([[2, 0], [0, 3]]), em.as_matrix([[4], [9]]))
        self.assertEqual(em.to_lists(x), [[2], [3]])

    def test_no_integer_solution(self):
        self.assertIsNone(em.solve_integer_system(em.as_matrix([[2]]), em.as_matrix([[3]])))
        self.assertIsNone(em.solve_integer_system(em.as_matrix([[1], [1]]), em.as_matrix([[1], [2]])))

    def test_random(self):
        rng = random.Random(11)
        for _ in range(PROPERTY_CASES):
            a = random_matrix(rng, rng.randint(1, 3), rng.randint(1, 3))
            x = random_matrix(rng, a.cols, 1)
            solution = em.solve_integer_system(a, a * x)
            self.assertIsNotNone(solution)
            self.assertEqual(a * solution, a * x)


if __name__ == "__main__":
    unittest.main()
