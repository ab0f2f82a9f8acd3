"""Exact linear algebra over the rationals and over the integers.

Matrices are lists of rows of :class:`Fraction`.  Univariate polynomials are
coefficient lists, lowest degree first, with no trailing zeros (``[]`` is 0).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Matrix = list[list[Fraction]]
UPoly = list[Fraction]


class SingularMatrixError(ArithmeticError):
    pass


# --- dense matrices ---------------------------------------------------------


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def mat_is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Matrix) -> int:
    return len(rref(rows)[1])


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def determinant(a: Matrix) -> Fraction:
    m = to_matrix(a)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def nullspace(a: Matrix) -> Matrix:
    """Basis of ``{v : a v = 0}`` as a list of vectors."""
    if not a:
        return []
    ncols = len(a[0])
    red, piv = rref(a)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence) -> list[Fraction] | None:
    """One solution of ``a x = b`` or ``None`` if inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(v)] for row, v in zip(a, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[-1]
    return x


# --- sparse vectors and incremental echelon bases ---------------------------


class SparseEchelon:
    """Incrementally maintained reduced echelon basis of sparse vectors.

    Vectors are dicts ``key -> Fraction``.  ``order`` maps a key to a sortable
    value; the pivot of a vector is its largest key under that order.  Every
    stored row has leading coefficient 1 and no other row has a nonzero entry
    in its pivot, so the echelon form of a span is unique.

    With ``track=True`` each row remembers its expression in terms of the
    vectors passed to :meth:`insert`, which makes :meth:`express` possible.
    """

    def __init__(self, order, track: bool = False):
        self._order = order
        self.rows: dict[Hashable, dict] = {}
        self._combo: dict[Hashable, dict[int, Fraction]] = {}
        self._track = track
        self._count = 0

    def __len__(self) -> int:
        return len(self.rows)

    def pivot(self, vec: Mapping) -> Hashable:
        return max(vec, key=self._order)

    def reduce(self, vec: Mapping) -> tuple[dict, dict[int, Fraction]]:
        """Remainder of ``vec`` modulo the span and the combination used."""
        v = {k: Fraction(c) for k, c in vec.items() if c != 0}
        combo: dict[int, Fraction] = {}
        # eliminate pivots from largest to smallest; a pass over sorted pivots
        # suffices because rows are fully reduced against each other
        for p in sorted((p for p in self.rows if p in v), key=self._order, reverse=True):
            c = v.get(p)
            if not c:
                continue
            for k, rc in self.rows[p].items():
                nv = v.get(k, 0) - c * rc
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            if self._track:
                for idx, w in self._combo[p].items():
                    combo[idx] = combo.get(idx, 0) + c * w
        return v, combo

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]

    def insert(self, vec: Mapping) -> bool:
        """Add ``vec``; returns False if it already lies in the span."""
        idx = self._count
        self._count += 1
        rem, combo = self.reduce(vec)
        if not rem:
            return False
        p = self.pivot(rem)
        lead = rem[p]
        row = {k: c / lead for k, c in rem.items()}
        new_combo = {}
        if self._track:
            # row = (vec - sum combo) / lead
            new_combo = {i: -w / lead for i, w in combo.items() if w}
            new_combo[idx] = new_combo.get(idx, 0) + 1 / lead
        # back-substitute into existing rows to keep full reduction
        for q, other in self.rows.items():
            c = other.get(p)
            if c:
                for k, rc in row.items():
                    nv = other.get(k, 0) - c * rc
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
                if self._track:
                    oc = self._combo[q]
                    for i, w in new_combo.items():
                        nv = oc.get(i, 0) - c * w
                        if nv:
                            oc[i] = nv
                        else:
                            oc.pop(i, None)
        self.rows[p] = row
        if self._track:
            self._combo[p] = new_combo
        return True

    def express(self, vec: Mapping) -> dict[int, Fraction] | None:
        """Coefficients on the inserted vectors (by insertion index), or None."""
        if not self._track:
            raise RuntimeError("express() needs track=True")
        rem, combo = self.reduce(vec)
        if rem:
            return None
        return {i: c for i, c in combo.items() if c}

    def sorted_rows(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows, key=self._order, reverse=True)]


# --- univariate polynomials over Q ------------------------------------------


def upoly_trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return upoly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def upoly_sub(p: UPoly, q: UPoly) -> UPoly:
    return upoly_add(p, [-c for c in q])


def upoly_mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return upoly_trim(out)


def upoly_divmod(p: UPoly, q: UPoly) -> tuple[UPoly, UPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        c = r[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = upoly_trim(r)
    return upoly_trim(quot), r


def upoly_monic(p: UPoly) -> UPoly:
    return [c / p[-1] for c in p] if p else []


def upoly_gcd(p: UPoly, q: UPoly) -> UPoly:
    a, b = upoly_trim(p), upoly_trim(q)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    return upoly_monic(a)


def upoly_derivative(p: UPoly) -> UPoly:
    return upoly_trim([i * c for i, c in enumerate(p)][1:])


def squarefree_part(p: UPoly) -> UPoly:
    """``p / gcd(p, p')``, monic."""
    p = upoly_trim(p)
    g = upoly_gcd(p, upoly_derivative(p))
    return upoly_monic(upoly_divmod(p, g)[0])


def is_squarefree(p: UPoly) -> bool:
    return len(upoly_gcd(p, upoly_derivative(p))) == 1


def upoly_eval_matrix(p: UPoly, a: Matrix) -> Matrix:
    n = len(a)
    result = zeros(n)
    for c in reversed(p):
        result = mat_mul(result, a)
        for i in range(n):
            result[i][i] += c
    return result


def upoly_roots_rational(p: UPoly) -> list[Fraction]:
    """Distinct rational roots via the rational root theorem."""
    p = upoly_trim(p)
    if not p:
        raise ValueError("the zero polynomial has every number as a root")
    roots = []
    # factor out x^k
    while p and p[0] == 0:
        p = p[1:]
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(p) <= 1:
        return roots
    den = 1
    for c in p:
        den = den * c.denominator // _igcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for d in _divisors(an):
            for cand in (Fraction(num, d), Fraction(-num, d)):
                if cand not in roots and upoly_eval(p, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def upoly_eval(p: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# --- characteristic/minimal polynomials and Jordan-Chevalley ---------------


def charpoly(a: Matrix) -> UPoly:
    """Characteristic polynomial ``det(t I - a)`` (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = zeros(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = mat_mul(a, m)
        trace = sum((am[i][i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -trace / k
    return coeffs


def minimal_polynomial(a: Matrix) -> UPoly:
    """Monic minimal polynomial, from the first linear dependence among powers."""
    n = len(a)
    if n == 0:
        return [Fraction(1)]
    flat = []
    power = identity(n)
    for k in range(n + 1):
        flat.append([x for row in power for x in row])
        cols = [list(col) for col in zip(*flat)]
        ns = nullspace(cols)
        if ns:
            v = ns[0]
            return upoly_monic(upoly_trim(v))
        power = mat_mul(power, a)
    raise AssertionError("Cayley-Hamilton violated")


def is_nilpotent_matrix(a: Matrix) -> bool:
    n = len(a)
    return n == 0 or mat_is_zero(mat_pow(a, n))


def is_semisimple_matrix(a: Matrix) -> bool:
    """Diagonalizable over the algebraic closure: squarefree minimal polynomial."""
    return len(a) == 0 or is_squarefree(minimal_polynomial(a))


def mat_pow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def jordan_chevalley(a: Matrix) -> tuple[Matrix, Matrix]:
    """Additive Jordan-Chevalley decomposition ``a = s + n`` over Q.

    Newton iteration ``s <- s - p(s) p'(s)^{-1}`` with ``p`` the squarefree
    part of the characteristic polynomial.  No eigenvalues are computed, and
    both parts are polynomials in ``a`` with rational coefficients.
    """
    n = len(a)
    if n == 0:
        return [], []
    a = to_matrix(a)
    p = squarefree_part(charpoly(a))
    dp = upoly_derivative(p)
    s = [list(row) for row in a]
    for _ in range(n.bit_length() + 2):
        ps = upoly_eval_matrix(p, s)
        if mat_is_zero(ps):
            break
        s = mat_sub(s, mat_mul(ps, inverse(upoly_eval_matrix(dp, s))))
    else:
        raise AssertionError("Newton iteration for the semisimple part did not converge")
    return s, mat_sub(a, s)


# --- integer lattices ---------------------------------------------------------


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix, zero rows dropped.

    The returned rows form a basis of the lattice spanned by the input rows;
    pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``.
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        # gcd-combine all rows below r in column c
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r] if any(row)]
