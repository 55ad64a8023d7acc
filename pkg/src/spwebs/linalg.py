"""Matrices over exact rings, the symplectic form, and Pfaffians.

Matrices are dense numpy arrays with dtype=object so the entries can be
Fraction, Poly, or float; @ and elementwise ops work on all three.

Pfaffians come in two flavours: a combinatorial sum over perfect pairings
(only for small matrices, used as an oracle) and an elimination scheme.
For exact entries the elimination is fraction-free: the working entries are
Pfaffian minors of the input, and the Dress-Wenzel identity

    Pf(Sab)Pf(Scd) - Pf(Sac)Pf(Sbd) + Pf(Sad)Pf(Sbc) = Pf(S)Pf(Sabcd)

makes each division exact, so polynomial matrices never leave the
polynomial ring.  Float matrices use ordinary skew elimination with
magnitude pivoting.
"""

from fractions import Fraction

import numpy as np

from .errors import BadK, DimensionMismatch, NotSkew, NotSymplectic, TooLarge
from .rings import Poly, exact_div_scalar


def mat(rows):
    a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != a.shape[1]:
            raise DimensionMismatch("ragged rows")
        for j, x in enumerate(row):
            a[i, j] = x
    return a


def eye(n, one=None):
    if one is None:
        one = Fraction(1)
    zero = one - one
    a = np.empty((n, n), dtype=object)
    a[:, :] = zero
    for i in range(n):
        a[i, i] = one
    return a


def zeros(n, m=None):
    a = np.empty((n, n if m is None else m), dtype=object)
    a[:, :] = Fraction(0)
    return a


def scalar_is_zero(x):
    if isinstance(x, Poly):
        return x.is_zero()
    return x == 0


def has_float(a):
    return any(isinstance(x, float) for x in a.flat)


def mat_equal(a, b, tol=0.0):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape != b.shape:
        return False
    for x, y in zip(a.flat, b.flat):
        if isinstance(x, float) or isinstance(y, float):
            if abs(x - y) > tol:
                return False
        else:
            d = x - y
            if not scalar_is_zero(d):
                return False
    return True


def symplectic_J(n):
    """The 2n x 2n form [[0, I], [-I, 0]]."""
    a = zeros(2 * n)
    for i in range(n):
        a[i, n + i] = Fraction(1)
        a[n + i, i] = Fraction(-1)
    return a


def is_symplectic(m, tol=1e-12):
    m = np.asarray(m, dtype=object)
    if m.shape[0] != m.shape[1] or m.shape[0] % 2:
        return False
    j = symplectic_J(m.shape[0] // 2)
    return mat_equal(m.T @ j @ m, j, tol=tol)


def symplectic_inverse(m):
    """Inverse of a symplectic matrix: -J M^T J."""
    m = np.asarray(m, dtype=object)
    j = symplectic_J(m.shape[0] // 2)
    return -(j @ m.T @ j)


def all_pairings(items):
    """Yield all perfect pairings of a list as tuples of index pairs."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for i, second in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for sub in all_pairings(remaining):
            yield ((first, second),) + sub


def perm_sign(seq):
    """Sign of a permutation given as a sequence of distinct comparables."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


class SkewMatrix:
    """A square matrix checked to satisfy A^T = -A at construction."""

    def __init__(self, a, tol=1e-12):
        a = np.asarray(a, dtype=object) if not isinstance(a, np.ndarray) else a
        if a.dtype != object:
            a = a.astype(object)
        if a.shape[0] != a.shape[1]:
            raise DimensionMismatch("skew matrix must be square")
        if not mat_equal(a.T, -a, tol=tol):
            raise NotSkew("matrix is not antisymmetric")
        self.a = a

    @property
    def dim(self):
        return self.a.shape[0]

    def pfaffian(self):
        return pf_eliminate(self.a)


def pf_combinatorial(a):
    """Pfaffian as the signed sum over perfect pairings; dim <= 8."""
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if n > 8:
        raise TooLarge("combinatorial Pfaffian limited to dimension 8")
    if n % 2:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    total = None
    for pairing in all_pairings(list(range(n))):
        word = [x for pair in pairing for x in pair]
        term = perm_sign(word)
        for i, j in pairing:
            term = term * a[i, j]
        total = term if total is None else total + term
    return total


def pf_eliminate(a):
    """Pfaffian by skew elimination; exact entries stay exact."""
    a = np.asarray(a, dtype=object)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch("Pfaffian of a non-square matrix")
    n = a.shape[0]
    if n % 2:
        return 0.0 if has_float(a) else Fraction(0)
    if n == 0:
        return Fraction(1)
    if has_float(a):
        return _pf_float(a)
    return _pf_fraction_free(a)


def _pf_float(a):
    n = a.shape[0]
    m = [[float(x) for x in row] for row in a.tolist()]
    sign = 1.0
    result = 1.0
    for k in range(0, n, 2):
        j = max(range(k + 1, n), key=lambda t: abs(m[k][t]))
        if m[k][j] == 0.0:
            return 0.0
        if j != k + 1:
            m[j], m[k + 1] = m[k + 1], m[j]
            for row in m:
                row[j], row[k + 1] = row[k + 1], row[j]
            sign = -sign
        p = m[k][k + 1]
        for i in range(k + 2, n):
            c = m[k][i] / p
            if c:
                for t in range(n):
                    m[i][t] -= c * m[k + 1][t]
                for t in range(n):
                    m[t][i] -= c * m[t][k + 1]
        result *= p
    return sign * result


def _pf_fraction_free(a):
    n = a.shape[0]
    b = [list(row) for row in a.tolist()]
    sign = 1
    prev = Fraction(1)
    for k in range(0, n - 2, 2):
        if scalar_is_zero(b[k][k + 1]):
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if not scalar_is_zero(b[i][j]):
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                # every bordered Pfaffian minor vanishes, so the rank is
                # exhausted and the full Pfaffian is zero
                return Fraction(0)
            i, j = found
            if i != k:
                _swap_rc(b, i, k)
                sign = -sign
            if j != k + 1:
                _swap_rc(b, j, k + 1)
                sign = -sign
        p = b[k][k + 1]
        for i in range(k + 2, n):
            for j in range(i + 1, n):
                num = p * b[i][j] - b[k][i] * b[k + 1][j] + b[k][j] * b[k + 1][i]
                val = exact_div_scalar(num, prev)
                b[i][j] = val
                b[j][i] = -val
        prev = p
    result = b[n - 2][n - 1]
    return result if sign == 1 else -result


def _swap_rc(b, i, j):
    b[i], b[j] = b[j], b[i]
    for row in b:
        row[i], row[j] = row[j], row[i]


def det(a):
    a = np.asarray(a, dtype=object)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch("determinant of a non-square matrix")
    if a.shape[0] == 0:
        return Fraction(1)
    if has_float(a):
        return float(np.linalg.det(a.astype(float)))
    return _det_bareiss(a)


def _det_bareiss(a):
    n = a.shape[0]
    m = [list(row) for row in a.tolist()]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if scalar_is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not scalar_is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_div_scalar(num, prev)
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return result if sign == 1 else -result


def exterior_power_trace(a, k):
    """Trace of the k-th exterior power: sum of principal k-minors."""
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if k < 0 or k > n:
        raise BadK("exterior power out of range")
    if k == 0:
        return Fraction(1)
    from itertools import combinations

    total = None
    for subset in combinations(range(n), k):
        sub = a[np.ix_(subset, subset)]
        d = det(sub)
        total = d if total is None else total + d
    return total


def check_symplectic(m, tol=1e-12, what="matrix"):
    if not is_symplectic(m, tol=tol):
        raise NotSymplectic("%s is not symplectic" % what)
    return m
