"""Staircase-shape certification for group-ring matrices.

A matrix is in staircase (lower trapezoidal) position when, under the chosen
row and column orders, the last nonzero column index of each row strictly
increases down the rows.  Shape search works purely on the zero/nonzero
pattern; entry values only matter when certifying the diagonal.

All indices in certificates are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, UnsupportedError
from .groupring import (GroupRingMatrix, engulfing_search_finite,
                        non_engulfing_certificate_ordered)


@dataclass(frozen=True)
class StaircaseCertificate:
    rows: tuple  # permutation: position -> original row index
    cols: tuple  # permutation: position -> original column index
    diag: tuple  # per row position, the column position of its last nonzero

    def render(self):
        return (f"rows: {list(self.rows)} cols: {list(self.cols)} "
                f"diag: {list(self.diag)}")


@dataclass(frozen=True)
class TrapezoidViolation:
    row: int | None
    column: int | None
    reason: str


@dataclass(frozen=True)
class ImpossibleProof:
    mode: str
    explored: int
    reason: str = "exhausted all admissible column orders"


def _validate_perm(perm, size, what):
    perm = tuple(perm)
    if sorted(perm) != list(range(size)):
        raise InputError(f"{what} order is not a permutation of 0..{size - 1}")
    return perm


def is_lower_trapezoidal(matrix: GroupRingMatrix, row_order, col_order):
    """Check the staircase property under explicit orders.

    Returns a :class:`StaircaseCertificate` or a :class:`TrapezoidViolation`
    locating the first offending row.
    """
    row_order = _validate_perm(row_order, matrix.nrows, "row")
    col_order = _validate_perm(col_order, matrix.ncols, "column")
    pattern = matrix.pattern()
    diag = []
    last = -1
    for pos, r in enumerate(row_order):
        row = pattern[r]
        j = max((k for k in range(matrix.ncols) if row[col_order[k]]), default=None)
        if j is None:
            return TrapezoidViolation(row=r, column=None, reason="zero row")
        if j <= last:
            return TrapezoidViolation(
                row=r, column=col_order[j],
                reason=f"row at position {pos} repeats or decreases the staircase")
        diag.append(j)
        last = j
    return StaircaseCertificate(rows=row_order, cols=col_order, diag=tuple(diag))


def _pattern_masks(pattern):
    return [sum(1 << j for j, v in enumerate(row) if v) for row in pattern]


def _search(masks, ncols, row_fixed):
    """Lexicographically least column order making the pattern a staircase.

    Columns are placed left to right; placing a column "finishes" the rows
    whose support it completes.  A placement finishing two rows at once is
    invalid (their last-nonzero columns would coincide), and in row-fixed
    mode rows must finish in their given order.  Dead placed-sets are
    memoised, which keeps the search exact well past the size cap.
    """
    nrows = len(masks)
    full = (1 << ncols) - 1
    dead = set()
    explored = 0

    def finished(placed):
        return [r for r in range(nrows) if masks[r] & ~placed == 0]

    def extend(placed, order, done_count):
        nonlocal explored
        if placed == full:
            return order if done_count == nrows else None
        if placed in dead:
            return None
        explored += 1
        before = finished(placed)
        for col in range(ncols):
            bit = 1 << col
            if placed & bit:
                continue
            new_placed = placed | bit
            newly = [r for r in finished(new_placed) if r not in before]
            if len(newly) > 1:
                continue
            if row_fixed and newly and newly[0] != done_count:
                continue
            result = extend(new_placed, order + [col], done_count + len(newly))
            if result is not None:
                return result
        dead.add(placed)
        return None

    return extend(0, [], 0), explored


def find_staircase(matrix: GroupRingMatrix, allow_row_permutation=True, cap=12):
    """Exact search for a staircase certificate over the support pattern.

    With row permutation allowed (the default) any row order may be used;
    otherwise rows stay in matrix order.  Deterministic: the returned
    certificate has the lexicographically least column order.  Matrices over
    the size cap are rejected rather than approximated.
    """
    m, n = matrix.shape
    if m > cap or n > cap:
        raise UnsupportedError(
            f"shape {m}x{n} exceeds the exact-search cap {cap}")
    if m == 0:
        return StaircaseCertificate(rows=(), cols=tuple(range(n)), diag=())
    pattern = matrix.pattern()
    masks = _pattern_masks(pattern)
    if any(mask == 0 for mask in masks):
        return ImpossibleProof(
            mode="row-free" if allow_row_permutation else "row-fixed",
            explored=0, reason="a zero row admits no staircase position")
    if m > n:
        return ImpossibleProof(
            mode="row-free" if allow_row_permutation else "row-fixed",
            explored=0, reason="more rows than columns")

    order, explored = _search(masks, n, row_fixed=not allow_row_permutation)
    if order is None:
        return ImpossibleProof(
            mode="row-free" if allow_row_permutation else "row-fixed",
            explored=explored)
    # recover the row order: sort rows by last-nonzero position under `order`
    positions = {}
    for r, mask in enumerate(masks):
        positions[r] = max(k for k in range(n) if mask >> order[k] & 1)
    rows = tuple(range(m)) if not allow_row_permutation else tuple(
        sorted(range(m), key=positions.get))
    cert = is_lower_trapezoidal(matrix, rows, tuple(order))
    if not isinstance(cert, StaircaseCertificate):
        raise AssertionError(f"search produced an invalid certificate: {cert}")
    return cert


@dataclass
class DiagonalReport:
    certificates: list = field(default_factory=list)  # per-diagonal EngulfingReport
    all_non_engulfing: bool = True


def certify_diagonal(matrix: GroupRingMatrix, cert: StaircaseCertificate,
                     strategy="orderedOracle", side="left") -> DiagonalReport:
    """Delegate each staircase diagonal entry to an engulfing check.

    ``orderedOracle`` uses the oracle's right-invariant order (never finds a
    witness); ``finiteSearch`` runs the exhaustive finite-group search and
    may disprove the diagonal.
    """
    if strategy not in ("orderedOracle", "finiteSearch"):
        raise InputError(f"unknown strategy {strategy!r}")
    report = DiagonalReport()
    for pos, r in enumerate(cert.rows):
        entry = matrix.entry(r, cert.cols[cert.diag[pos]])
        if strategy == "orderedOracle":
            rep = non_engulfing_certificate_ordered(entry, side=side)
        else:
            rep = engulfing_search_finite(entry, side=side)
        report.certificates.append(rep)
        if rep.engulfing:
            report.all_non_engulfing = False
    return report
