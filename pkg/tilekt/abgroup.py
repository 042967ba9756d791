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
Abelian groups arising as direct limits and the engine evaluating them.

A direct limit ``lim(A, Z^n)`` is reduced step by step: zero eigenvalues
are stripped, eigenvalues +1 and -1 are split off as free summands,
localizations ``Z[1/m]`` are certified, invariant subspaces are split
off, and whatever is left is reported as a residual term.

Example::

    from tilekt.abgroup import limit_free

    print(limit_free([[1, 1], [2, 0]]))         # Z + Z[1/2]
    print(limit_free([[3, 1], [1, 2]]))         # Z[1/5]^2
    print(limit_free([[3, 1], [1, 6]]))         # lim[[3,1],[1,6]]
"""


import itertools
import json
import logging
import re

import six
from sympy import ImmutableMatrix, Poly, factor_list, factorint, igcd, ilcm
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

import tilekt.exactmat as em


__all__ = (
    "GroupExpression",
    "DEFAULT_KMAX",
    "DEFAULT_BOX",

    "radical",
    "parse_group",
    "direct_sum",
    "limit_free",
    "certify_localization",
    "extract_eigenvalue",
    "limit_presented",
    "tensor",
    "z_similarity_certificate",
    "is_isomorphic",
)


log = logging.getLogger(__name__)


#: Largest power tried by certify_localization.
DEFAULT_KMAX = 64

#: Coefficient box for z_similarity_certificate.
DEFAULT_BOX = 6

#: Upper bound on candidates enumerated by z_similarity_certificate.
MAX_CANDIDATES = 200000


def radical(m):
    """
    Product of the distinct primes dividing ``m``.
    """
    m = abs(int(m))
    if m == 0:
        raise ValueError("Radical of zero is undefined")
    result = 1
    for prime in factorint(m):
        result *= prime
    return result


def _primes(m):
    return set(factorint(abs(int(m))))


def _invariant_factors(orders):
    # group prime powers by prime, then multiply the k-th largest of each
    powers = {}
    for order in orders:
        order = abs(int(order))
        if order == 0:
            raise ValueError("Torsion order must not be zero")
        for prime, exp in factorint(order).items():
            powers.setdefault(prime, []).append(prime ** exp)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    factors = [1] * length
    for values in powers.values():
        values = sorted(values, reverse=True)
        for k, value in enumerate(values):
            factors[k] *= value
    return tuple(sorted(f for f in factors if f > 1))


def _matrix_key(a):
    return (a.rows, tuple(int(x) for x in a))


def _format_matrix(a):
    return "[%s]" % ",".join("[%s]" % ",".join(str(int(a[i, j])) for j in range(a.cols)) for i in range(a.rows))


class GroupExpression(object):
    """
    Canonical description of an abelian group:
    ``Z^free_rank + Z/t (torsion) + Z[1/m]^b (localized) + lim[..] (residual)``,
    or an extension record ``ext(sub; quotient)``.

    Two expressions are equal when their canonical strings are equal.
    ``notes`` carry diagnostics and never take part in comparison.
    """

    def __init__(self, free_rank=0, torsion=(), localized=(), residual=(), extension=None, notes=()):
        if isinstance(free_rank, bool) or not isinstance(free_rank, six.integer_types) or free_rank < 0:
            raise ValueError("GroupExpression: Field 'free_rank' has invalid value: %s" % (free_rank, ))
        merged = {}
        for m, exponent in (localized.items() if isinstance(localized, dict) else localized):
            if exponent < 0:
                raise ValueError("GroupExpression: Negative localization exponent: %s" % exponent)
            if not exponent:
                continue
            rad = radical(m)
            if rad == 1:
                free_rank += exponent
            else:
                merged[rad] = merged.get(rad, 0) + exponent
        self.free_rank = free_rank
        self.torsion = _invariant_factors(torsion)
        self.localized = tuple(sorted(merged.items()))
        self.residual = tuple(sorted((em.as_matrix(a) for a in residual), key=_matrix_key))
        self.extension = extension
        self.notes = tuple(notes)
        if extension is not None:
            sub, quotient = extension
            if not isinstance(sub, GroupExpression) or not isinstance(quotient, GroupExpression):
                raise TypeError("GroupExpression: Extension parts must be GroupExpression instances")
            if self.free_rank or self.torsion or self.localized or self.residual:
                raise ValueError("GroupExpression: An extension record cannot carry other summands")

    def __str__(self):
        if self.extension is not None:
            return "ext(%s; %s)" % (self.extension[0], self.extension[1])
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%s" % self.free_rank)
        parts.extend("Z/%s" % t for t in self.torsion)
        for m, exponent in self.localized:
            parts.append("Z[1/%s]" % m if exponent == 1 else "Z[1/%s]^%s" % (m, exponent))
        parts.extend("lim%s" % _format_matrix(a) for a in self.residual)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return u"<%s:%s>" % (self.__class__.__name__, self)

    def __eq__(self, other):
        if not isinstance(other, GroupExpression):
            return False
        return str(self) == str(other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(str(self))

    @property
    def rank(self):
        """
        Torsion-free rank (dimension over Q).
        """
        if self.extension is not None:
            return self.extension[0].rank + self.extension[1].rank
        return self.free_rank + sum(e for _, e in self.localized) + sum(a.rows for a in self.residual)

    @property
    def is_zero(self):
        return self.extension is None and str(self) == "0"

    @property
    def is_free(self):
        return self.extension is None and not (self.torsion or self.localized or self.residual)

    @property
    def is_torsion_free(self):
        if self.extension is not None:
            return self.extension[0].is_torsion_free and self.extension[1].is_torsion_free
        return not self.torsion

    @property
    def is_resolved(self):
        return self.extension is None and not self.residual

    def torsion_part(self):
        if self.extension is not None:
            return direct_sum(self.extension[0].torsion_part(), self.extension[1].torsion_part())
        return GroupExpression(torsion=self.torsion)

    def with_notes(self, *notes):
        result = GroupExpression(self.free_rank, self.torsion, self.localized, self.residual, self.extension,
                                 self.notes + tuple(notes))
        return result

    def describe(self):
        """
        Canonical string followed by the facts known about residual terms.
        """
        text = str(self)
        details = []
        for a in self.residual:
            details.append("rank-%s subgroup of Z[1/%s]^%s" % (a.rows, radical(a.det()), a.rows))
        if details:
            text += " (%s)" % "; ".join(details)
        return text

    def to_dict(self):
        data = {
            "canonical": str(self),
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "localized": [[m, e] for m, e in self.localized],
            "residual": [em.to_lists(a) for a in self.residual],
            "extension": None,
            "notes": list(self.notes),
        }
        if self.extension is not None:
            data["extension"] = {"sub": self.extension[0].to_dict(), "quotient": self.extension[1].to_dict()}
        return data

    @classmethod
    def from_dict(cls, data):
        extension = None
        if data.get("extension"):
            extension = (cls.from_dict(data["extension"]["sub"]), cls.from_dict(data["extension"]["quotient"]))
        result = cls(
            free_rank=data.get("free_rank", 0),
            torsion=data.get("torsion", ()),
            localized=[tuple(i) for i in data.get("localized", ())],
            residual=[em.as_matrix(a) for a in data.get("residual", ())],
            extension=extension,
            notes=data.get("notes", ()),
        )
        if "canonical" in data and data["canonical"] != str(result):
            raise ValueError("GroupExpression: canonical string '%s' does not match fields ('%s')" % (data["canonical"], result))
        return result


ZERO = GroupExpression()


def free(n):
    return GroupExpression(free_rank=n)


_TERM_RE = re.compile(r"^(?:Z\^(?P<rank>\d+)|Z/(?P<torsion>\d+)|Z\[1/(?P<m>\d+)\](?:\^(?P<exp>\d+))?|(?P<z>Z)|(?P<zero>0))$")


def _split_top_level(text, separator):
    parts = []
    depth = 0
    current = ""
    i = 0
    while i < len(text):
        char = text[i]
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        if depth == 0 and text.startswith(separator, i):
            parts.append(current)
            current = ""
            i += len(separator)
            continue
        current += char
        i += 1
    parts.append(current)
    return [p.strip() for p in parts]


def parse_group(text):
    """
    Parse a canonical group string, e.g. ``Z^2 + Z/2 + Z[1/2]^3``.
    Notes in trailing parentheses (as printed by describe) are ignored.

    :rtype: GroupExpression
    """
    text = text.strip()
    if text.startswith("ext(") and text.endswith(")"):
        inner = _split_top_level(text[4:-1], ";")
        if len(inner) != 2:
            raise ValueError("Invalid extension record: %s" % text)
        return GroupExpression(extension=(parse_group(inner[0]), parse_group(inner[1])))
    text = re.sub(r"\s*\([^()]*subgroup[^()]*\)$", "", text)
    free_rank = 0
    torsion = []
    localized = []
    residual = []
    for term in _split_top_level(text, "+"):
        if term.startswith("lim"):
            try:
                residual.append(em.as_matrix(json.loads(term[3:])))
            except (ValueError, TypeError):
                raise ValueError("Invalid residual term: %s" % term)
            continue
        match = _TERM_RE.match(term)
        if not match:
            raise ValueError("Invalid group term: '%s'" % term)
        if match.group("rank"):
            free_rank += int(match.group("rank"))
        elif match.group("torsion"):
            torsion.append(int(match.group("torsion")))
        elif match.group("m"):
            localized.append((int(match.group("m")), int(match.group("exp") or 1)))
        elif match.group("z"):
            free_rank += 1
    return GroupExpression(free_rank, torsion, localized, residual)


def direct_sum(*groups):
    """
    Direct sum of expressions.

    :raises ValueError: if an extension record would be flattened
    """
    nonzero = [g for g in groups if not g.is_zero]
    if len(nonzero) == 1:
        return nonzero[0]
    if any(g.extension is not None for g in nonzero):
        raise ValueError("Cannot form a direct sum with an extension record")
    localized = []
    torsion = []
    residual = []
    notes = []
    for g in nonzero:
        localized.extend(g.localized)
        torsion.extend(g.torsion)
        residual.extend(g.residual)
        notes.extend(g.notes)
    return GroupExpression(sum(g.free_rank for g in nonzero), torsion, localized, residual, notes=notes)


def _record(trace, message, *args):
    text = message % args if args else message
    log.debug(text)
    if trace is not None:
        trace.append(text)


def certify_localization(a, kmax=DEFAULT_KMAX):
    """
    Return ``radical(|det a|)`` if ``a^k = 0 (mod |det a|)`` for some
    ``k <= kmax``; then ``lim(a, Z^n) = Z[1/radical]^n``. Return None
    otherwise; that proves nothing about the limit.

    :raises ValueError: for a singular matrix
    """
    a = em.as_matrix(a)
    if a.rows != a.cols:
        raise ValueError("certify_localization needs a square matrix, got %sx%s" % a.shape)
    det = abs(int(a.det())) if a.rows else 1
    if det == 0:
        raise ValueError("certify_localization needs a nonsingular matrix")
    if det == 1:
        return 1
    n = a.rows
    base = [[x % det for x in row] for row in em.to_lists(a)]
    power = base
    for _ in range(kmax):
        if not any(any(row) for row in power):
            return radical(det)
        power = [[sum(power[i][k] * base[k][j] for k in range(n)) % det for j in range(n)] for i in range(n)]
    return None


def _quotient_poly(min_poly, value):
    x = em.X
    q, r = Poly(min_poly, x).div(Poly(x - value, x))
    if not r.is_zero:
        return None
    return q


def extract_eigenvalue(a, value, spectral=None):
    """
    Split off the eigenvalue ``value`` (+1 or -1).

    With ``m(x) = (x - value) * q(x)`` the minimal polynomial, return the
    matrix of ``a`` on ``ker q(a)`` and the rank of ``q(a) Z^n``. The
    quotient ``lim(value * I, q(a) Z^n)`` is free, so the caller adds
    ``Z^extracted_rank`` as a summand.

    :raises ValueError: if ``value`` is not a root of the minimal polynomial
    """
    a = em.as_matrix(a)
    if value not in (1, -1):
        raise ValueError("Only the eigenvalues 1 and -1 can be extracted, got %s" % value)
    if spectral is None:
        spectral = em.spectral_scan(a)
    q = _quotient_poly(spectral.min_poly, value)
    if q is None:
        raise ValueError("%s is not a root of the minimal polynomial %s" % (value, spectral.min_poly.as_expr()))
    qa = em.poly_at_matrix(q, a)
    kernel = em.kernel_embedding(qa)
    restricted = em.induced_map(a, kernel, kernel)
    return restricted, em.rank(qa)


def _strip_zero_eigenvalues(a, spectral):
    # lim(A, Z^n) = lim(A, ker q(A)) where charpoly = x^r q(x)
    x = em.X
    poly = Poly(spectral.char_poly, x)
    while poly.degree() > 0 and poly.eval(0) == 0:
        poly = poly.quo(Poly(x, x))
    kernel = em.kernel_embedding(em.poly_at_matrix(poly, a))
    if kernel.free_rank == 0:
        return em.zeros(0, 0)
    return em.induced_map(a, kernel, kernel)


def _sylvester(a1, a2, c):
    """
    Rational solution of a1 * X - X * a2 = c.
    """
    k = a1.rows
    lhs = em.kron(em.identity(a2.rows), a1) - em.kron(a2.T, em.identity(k))
    solution = lhs.LUsolve(em.vec(c))
    return em.unvec(solution, k, a2.rows)


def _denominator(x):
    result = 1
    for entry in x:
        result = ilcm(result, entry.q)
    return result


def _absorbs(group, primes):
    # every prime is inverted in every summand of a purely localized group
    if not group.is_resolved or group.free_rank or group.torsion or not group.localized:
        return False
    return all(all(m % p == 0 for m, _ in group.localized) for p in primes)


def _block_split(a, spectral, kmax, trace):
    _, factors = factor_list(spectral.char_poly.as_expr(), em.X)
    factors = [Poly(f, em.X) ** e for f, e in factors]
    if len(factors) < 2:
        return None
    n = a.rows
    indices = list(range(len(factors)))
    for size in range(1, len(factors)):
        for subset in itertools.combinations(indices, size):
            poly = Poly(1, em.X)
            for i in subset:
                poly = poly * factors[i]
            dec = em.snf(em.poly_at_matrix(poly, a))
            r = dec.rank
            order = list(range(r, n)) + list(range(r))
            u = em.submatrix(dec.q, range(n), order)
            u_inv = em.submatrix(dec.q_inv, order, range(n))
            conj = u_inv * a * u
            k = n - r
            a1 = em.submatrix(conj, range(k), range(k))
            a2 = em.submatrix(conj, range(k, n), range(k, n))
            c = em.submatrix(conj, range(k), range(k, n))
            if not em.submatrix(conj, range(k, n), range(k)).is_zero_matrix:
                raise RuntimeError("Kernel of a polynomial in the matrix is not invariant")
            sub = _limit_free(a1, kmax, trace)
            quotient = _limit_free(a2, kmax, trace)
            if not sub.is_resolved or not quotient.is_resolved:
                continue
            x = _sylvester(a1, a2, -c)
            denominator = _denominator(x)
            if quotient.is_free or denominator == 1 or _absorbs(sub, _primes(denominator)):
                _record(trace, "block split: invariant sublattice of rank %s, coupling denominator %s", k, denominator)
                return direct_sum(sub, quotient)
    return None


def _tidy_residual(a):
    """
    Small-entry representative of the Z-similarity class of ``a``
    found by greedy elementary conjugation.
    """
    n = a.rows

    def key(m):
        entries = [int(x) for x in m]
        return (sum(abs(x) for x in entries), sum(1 for x in entries if x < 0), tuple(entries))

    best = a
    for _ in range(100):
        improved = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for s in (1, -1):
                    e = em.identity(n).as_mutable()
                    e[i, j] = s
                    e_inv = em.identity(n).as_mutable()
                    e_inv[i, j] = -s
                    candidate = ImmutableMatrix(e * best * e_inv)
                    if key(candidate) < key(best):
                        best = candidate
                        improved = True
        if not improved:
            break
    if n <= 4:
        for perm in itertools.permutations(range(n)):
            for signs in itertools.product((1, -1), repeat=n):
                g = em.zeros(n, n).as_mutable()
                for i, j in enumerate(perm):
                    g[i, j] = signs[i]
                candidate = ImmutableMatrix(g * best * g.T)
                if key(candidate) < key(best):
                    best = candidate
    return best


def _limit_free(a, kmax, trace):
    n = a.rows
    if n == 0:
        return ZERO
    spectral = em.spectral_scan(a)
    if spectral.has_eigenvalue(0):
        restricted = _strip_zero_eigenvalues(a, spectral)
        _record(trace, "zero eigenvalues: rank %s -> %s", n, restricted.rows)
        return _limit_free(restricted, kmax, trace)
    det = int(a.det())
    if abs(det) == 1:
        _record(trace, "determinant %s: Z^%s", det, n)
        return free(n)
    for value in (1, -1):
        if spectral.has_eigenvalue(value):
            restricted, extracted = extract_eigenvalue(a, value, spectral)
            _record(trace, "eigenvalue %s: extracted Z^%s, remaining rank %s", value, extracted, restricted.rows)
            return direct_sum(free(extracted), _limit_free(restricted, kmax, trace))
    rad = certify_localization(a, kmax)
    if rad is not None:
        _record(trace, "certified Z[1/%s]^%s (determinant %s)", rad, n, det)
        return GroupExpression(localized=[(rad, n)])
    split = _block_split(a, spectral, kmax, trace)
    if split is not None:
        return split
    tidy = _tidy_residual(a)
    _record(trace, "residual term of rank %s, determinant %s", n, det)
    return GroupExpression(residual=[tidy])


def limit_free(a, kmax=DEFAULT_KMAX, trace=None):
    """
    Evaluate ``lim(a, Z^n)``.

    :param a: square integer matrix
    :param kmax: bound for certify_localization
    :param trace: optional list collecting the reduction steps
    :rtype: GroupExpression
    """
    a = em.as_matrix(a)
    if a.rows != a.cols:
        raise ValueError("limit_free needs a square matrix, got %sx%s" % a.shape)
    return _limit_free(a, kmax, trace)


def _subgroup_structure(generators, factors):
    """
    Invariant factors and order of the subgroup of
    Z/t_1 + ... + Z/t_k generated by the columns of ``generators``.
    """
    k = len(factors)
    diag = em.as_matrix([[factors[i] if i == j else 0 for j in range(k)] for i in range(k)], (k, k))
    combined = em.hstack(generators, diag)
    kernel = em.kernel_embedding(combined).from_reduced
    relations = em.submatrix(kernel, range(generators.cols), range(kernel.cols))
    quotient = em.cokernel(relations)
    order = 1
    for t in quotient.torsion_factors:
        order *= t
    if quotient.free_rank:
        raise RuntimeError("Subgroup of a finite group has positive rank")
    return quotient.torsion_factors, order


def _torsion_lift(m_t, leak, m_f, factors):
    """
    Solve tau * m_f - m_t * tau = leak with row i taken modulo factors[i].
    """
    k = m_t.rows
    f = m_f.rows
    system = em.kron(m_f.T, em.identity(k)) - em.kron(em.identity(f), m_t)
    moduli = [factors[i] for _ in range(f) for i in range(k)]
    slack = em.as_matrix([[moduli[i] if i == j else 0 for j in range(k * f)] for i in range(k * f)], (k * f, k * f))
    solution = em.solve_integer_system(em.hstack(system, slack), em.vec(leak))
    if solution is None:
        return None
    tau = em.unvec(em.submatrix(solution, range(k * f), [0]), k, f)
    return ImmutableMatrix(k, f, [int(tau[i, j]) % factors[i] for i in range(k) for j in range(f)])


def limit_presented(m, group, kmax=DEFAULT_KMAX, trace=None):
    """
    Evaluate ``lim(m, G)`` for a presented group ``G = T + Z^f`` whose
    reduced coordinates list the torsion generators first.

    The torsion of the limit is the eventual image of ``m`` on ``T``;
    the torsion-free part is ``lim(m_F, Z^f)``. The two always split:
    the torsion of the limit is finite.

    :raises ValueError: if ``m`` does not define an endomorphism of ``G``
    """
    m = em.as_matrix(m)
    factors = tuple(group.torsion_factors)
    k = len(factors)
    n = k + group.free_rank
    if m.shape != (n, n):
        raise ValueError("Matrix of shape %sx%s does not act on a group with %s generators" % (m.rows, m.cols, n))
    if not em.submatrix(m, range(k, n), range(k)).is_zero_matrix:
        raise ValueError("Map sends torsion into the free part")
    for j in range(k):
        for i in range(k):
            if (factors[j] * int(m[i, j])) % factors[i]:
                raise ValueError("Map does not preserve the torsion relations")
    m_f = em.submatrix(m, range(k, n), range(k, n))
    free_part = _limit_free(m_f, kmax, trace)
    if not k:
        return free_part
    m_t = em.submatrix(m, range(k), range(k))
    leak = em.submatrix(m, range(k), range(k, n))
    total = 1
    for t in factors:
        total *= t
    current = em.identity(k)
    structure, order = factors, total
    for _ in range(total):
        image = ImmutableMatrix(k, k, [int(x) % factors[i // k] for i, x in enumerate(m_t * current)])
        new_structure, new_order = _subgroup_structure(image, factors)
        current = image
        if new_order == order:
            break
        structure, order = new_structure, new_order
    _record(trace, "torsion: order %s -> eventual image of order %s", total, order)
    if group.free_rank and order > 1:
        tau = _torsion_lift(m_t, leak, m_f, factors)
        if tau is not None:
            _record(trace, "torsion complement lifted: tau = %s", _format_matrix(tau))
        else:
            _record(trace, "no finite-level torsion complement; limit splits since its torsion is finite")
    return direct_sum(GroupExpression(torsion=structure), free_part)


def _strip_primes(order, m):
    for p in _primes(m):
        while order % p == 0:
            order //= p
    return order


def tensor(g1, g2):
    """
    Tensor product over Z of two resolved expressions.

    :raises ValueError: for residual or extension operands
    """
    for g in (g1, g2):
        if not g.is_resolved:
            raise ValueError("cannot tensor unresolved expression: %s" % g)
    # summands as (kind, parameter, multiplicity)
    def summands(g):
        result = []
        if g.free_rank:
            result.append(("free", 1, g.free_rank))
        result.extend(("torsion", t, 1) for t in g.torsion)
        result.extend(("local", m, e) for m, e in g.localized)
        return result

    free_rank = 0
    torsion = []
    localized = []
    for kind1, p1, e1 in summands(g1):
        for kind2, p2, e2 in summands(g2):
            count = e1 * e2
            kinds = (kind1, kind2)
            if kinds == ("free", "free"):
                free_rank += count
            elif "torsion" in kinds:
                if kinds == ("torsion", "torsion"):
                    order = igcd(p1, p2)
                elif kind1 == "torsion":
                    order = p1 if kind2 == "free" else _strip_primes(p1, p2)
                else:
                    order = p2 if kind1 == "free" else _strip_primes(p2, p1)
                if order > 1:
                    torsion.extend([order] * count)
            else:
                localized.append((p1 * p2, count))
    return GroupExpression(free_rank, torsion, localized)


def _search_order(box, dim):
    values = sorted(range(-box, box + 1), key=lambda v: (abs(v), -v))
    for norm in range(box + 1):
        allowed = [v for v in values if abs(v) <= norm]
        for coeffs in itertools.product(allowed, repeat=dim):
            if max(abs(c) for c in coeffs) == norm:
                yield coeffs


def z_similarity_certificate(a, b, box=DEFAULT_BOX):
    """
    Search a unimodular ``X`` with ``X * a = b * X``.

    The integer solutions form a lattice; its LLL-reduced basis is
    combined with coefficients of increasing max-norm up to ``box``.
    A returned ``X`` proves ``lim(a, Z^n) = lim(b, Z^n)``; None proves
    nothing.

    :raises ValueError: on dimension or characteristic polynomial mismatch
    """
    a = em.as_matrix(a)
    b = em.as_matrix(b)
    if a.shape != b.shape or a.rows != a.cols:
        raise ValueError("z_similarity_certificate needs square matrices of equal size")
    n = a.rows
    if em.spectral_scan(a).char_poly != em.spectral_scan(b).char_poly:
        raise ValueError("Matrices have different characteristic polynomials")
    if a == b:
        return em.identity(n)
    system = em.kron(a.T, em.identity(n)) - em.kron(em.identity(n), b)
    kernel = em.kernel_embedding(system).from_reduced
    dim = kernel.cols
    if dim == 0:
        return None
    rows = [[ZZ(int(kernel[i, j])) for i in range(kernel.rows)] for j in range(dim)]
    reduced = DomainMatrix(rows, (dim, n * n), ZZ).lll().to_Matrix()
    while box > 0 and (2 * box + 1) ** dim > MAX_CANDIDATES:
        box -= 1
    for coeffs in _search_order(box, dim):
        v = [sum(c * int(reduced[r, i]) for r, c in enumerate(coeffs)) for i in range(n * n)]
        x = em.unvec(v, n, n)
        if abs(x.det()) == 1:
            if x * a != b * x:
                raise RuntimeError("Similarity certificate does not intertwine the matrices")
            return x
    return None


def is_isomorphic(g1, g2, box=DEFAULT_BOX):
    """
    True if both expressions are known to describe isomorphic groups:
    equal canonical strings, or equal up to Z-similar residual terms.
    """
    if g1 == g2:
        return True
    if g1.extension is not None or g2.extension is not None:
        if g1.extension is None or g2.extension is None:
            return False
        return is_isomorphic(g1.extension[0], g2.extension[0], box) and is_isomorphic(g1.extension[1], g2.extension[1], box)
    stripped1 = GroupExpression(g1.free_rank, g1.torsion, g1.localized)
    stripped2 = GroupExpression(g2.free_rank, g2.torsion, g2.localized)
    if stripped1 != stripped2 or len(g1.residual) != len(g2.residual):
        return False
    remaining = list(g2.residual)
    for a in g1.residual:
        for index, b in enumerate(remaining):
            if a.shape != b.shape:
                continue
            try:
                certificate = z_similarity_certificate(a, b, box)
            except ValueError:
                continue
            if certificate is not None:
                del remaining[index]
                break
        else:
            return False
    return True
