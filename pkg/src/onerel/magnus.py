"""Bi-invariant total order on free groups via noncommutative power series.

Each generator ``s`` maps to ``1 + X_s`` and its inverse to the truncated
geometric series ``1 - X_s + X_s^2 - ...``.  A nontrivial reduced word then
has a nonzero coefficient on some non-constant monomial of degree at most its
length, and the sign of the first such coefficient (monomials ordered by
degree, then lexicographically by generator index) orders the group.
Coefficients are exact integers throughout.
"""

from __future__ import annotations

from .errors import InternalCheckError
from .words import Word

# monomial = tuple of generator indices; polynomial = {monomial: int coeff}


def _mul_truncated(p, q, degree):
    out = {}
    for m1, c1 in p.items():
        room = degree - len(m1)
        if room < 0:
            continue
        for m2, c2 in q.items():
            if len(m2) > room:
                continue
            m = m1 + m2
            c = out.get(m, 0) + c1 * c2
            if c:
                out[m] = c
            elif m in out:
                del out[m]
    return out


def _letter_poly(index, sign, degree):
    if sign > 0:
        poly = {(): 1}
        if degree >= 1:
            poly[(index,)] = 1
        return poly
    # 1 - X + X^2 - ... truncated
    return {(index,) * k: (-1) ** k for k in range(degree + 1)}


def truncated_expansion(w: Word, degree: int) -> dict:
    """Magnus expansion of ``w`` with all terms of degree <= ``degree`` exact."""
    poly = {(): 1}
    for index, sign in w.letters:
        poly = _mul_truncated(poly, _letter_poly(index, sign, degree), degree)
    return poly


def leading_term(w: Word):
    """First non-constant term of the expansion: ``(monomial, coeff)``.

    Returns ``None`` for the identity.  The search truncates at doubling
    degrees up to ``len(w)``, which bounds the first nonzero term of a
    nontrivial reduced word.
    """
    if not w:
        return None
    bound = len(w)
    degree = 1
    while True:
        poly = truncated_expansion(w, degree)
        candidates = [(m, c) for m, c in poly.items() if m and c]
        if candidates:
            mono, coeff = min(candidates, key=lambda mc: (len(mc[0]), mc[0]))
            return mono, coeff
        if degree >= bound:
            raise InternalCheckError(
                f"no nonzero term up to degree {bound} for a nontrivial word")
        degree = min(2 * degree, bound)


def magnus_compare(u: Word, v: Word) -> int:
    """Compare free-group elements: -1, 0 or 1 for u < v, u == v, u > v."""
    w = u * v.inverse()
    term = leading_term(w)
    if term is None:
        return 0
    return 1 if term[1] > 0 else -1
