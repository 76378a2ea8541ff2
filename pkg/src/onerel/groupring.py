"""Exact group-ring arithmetic over pluggable oracles, with support analysis.

Elements are finite formal sums stored sparsely as ``key -> (element, coeff)``
with no zero coefficients.  On top of the arithmetic this module implements
the support-based checks used elsewhere: k-unique products for finite subsets,
an exhaustive engulfing-witness search over finite groups, and the
order-backed non-engulfing certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .domains import Domain, PrimeFieldDomain, RationalDomain
from .errors import InputError, InternalCheckError, UnsupportedError
from .intlinalg import nullspace
from .magnus import magnus_compare  # noqa: F401  (re-export: order used by FreeOracle)
from .oracles import GroupOracle


class GroupRingElement:
    __slots__ = ("oracle", "domain", "terms")

    def __init__(self, oracle: GroupOracle, domain: Domain, terms=()):
        self.oracle = oracle
        self.domain = domain
        acc = {}
        for elem, coeff in terms:
            coeff = domain.coerce(coeff)
            k = oracle.key(elem)
            if k in acc:
                acc[k] = (elem, domain.add(acc[k][1], coeff))
            else:
                acc[k] = (elem, coeff)
        self.terms = {k: v for k, v in acc.items() if not domain.is_zero(v[1])}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, oracle, domain):
        return cls(oracle, domain)

    @classmethod
    def one(cls, oracle, domain):
        return cls(oracle, domain, [(oracle.identity(), 1)])

    @classmethod
    def of(cls, oracle, domain, elem, coeff=1):
        return cls(oracle, domain, [(elem, coeff)])

    # -- structure -----------------------------------------------------------

    def support(self):
        return set(self.terms)

    def support_elements(self):
        return [elem for elem, _ in self.terms.values()]

    def coefficient(self, elem):
        entry = self.terms.get(self.oracle.key(elem))
        return entry[1] if entry else self.domain.zero

    def is_zero(self):
        return not self.terms

    def is_scalar(self):
        """Whether the element lies in the coefficient ring R.1."""
        if not self.terms:
            return True
        if len(self.terms) > 1:
            return False
        return next(iter(self.terms)) == self.oracle.key(self.oracle.identity())

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and self.oracle is other.oracle
            and self.domain == other.domain
            and {k: v[1] for k, v in self.terms.items()}
            == {k: v[1] for k, v in other.terms.items()}
        )

    def __hash__(self):
        return hash(frozenset((k, v[1]) for k, v in self.terms.items()))

    def _check_compatible(self, other):
        if self.oracle is not other.oracle or self.domain != other.domain:
            raise InputError("group-ring elements over different oracles or domains")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_compatible(other)
        terms = [(e, c) for e, c in self.terms.values()]
        terms += [(e, c) for e, c in other.terms.values()]
        return GroupRingElement(self.oracle, self.domain, terms)

    def __neg__(self):
        return GroupRingElement(
            self.oracle, self.domain,
            [(e, self.domain.neg(c)) for e, c in self.terms.values()])

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check_compatible(other)
        dom, orc = self.domain, self.oracle
        terms = []
        for e1, c1 in self.terms.values():
            for e2, c2 in other.terms.values():
                terms.append((orc.multiply(e1, e2), dom.mul(c1, c2)))
        return GroupRingElement(orc, dom, terms)

    def scale(self, coeff):
        coeff = self.domain.coerce(coeff)
        return GroupRingElement(
            self.oracle, self.domain,
            [(e, self.domain.mul(coeff, c)) for e, c in self.terms.values()])

    def translate(self, g, side="left"):
        """Multiply by a single group element: g*x (left) or x*g (right)."""
        orc = self.oracle
        if side == "left":
            terms = [(orc.multiply(g, e), c) for e, c in self.terms.values()]
        else:
            terms = [(orc.multiply(e, g), c) for e, c in self.terms.values()]
        return GroupRingElement(orc, self.domain, terms)

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=repr):
            elem, coeff = self.terms[k]
            ge = self.oracle.render(elem)
            if ge == "1":
                piece = str(coeff)
            elif coeff == self.domain.one:
                piece = ge
            elif coeff == self.domain.neg(self.domain.one):
                piece = f"-{ge}"
            else:
                piece = f"{coeff}*{ge}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def __repr__(self):
        return f"<{self.render()} over {self.domain.name}[{self.oracle.name}]>"


class GroupRingMatrix:
    """Rectangular grid of group-ring elements over one oracle and domain."""

    def __init__(self, oracle, domain, entries, row_labels=None, col_labels=None,
                 ncols=None):
        self.oracle = oracle
        self.domain = domain
        self.entries = [list(row) for row in entries]
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise InputError("ragged matrix")
        self.nrows = len(self.entries)
        self.ncols = widths.pop() if widths else (ncols or 0)
        for row in self.entries:
            for e in row:
                if e.oracle is not oracle or e.domain != domain:
                    raise InputError("matrix entry over a different oracle or domain")
        self.row_labels = list(row_labels) if row_labels else [str(i) for i in range(self.nrows)]
        self.col_labels = list(col_labels) if col_labels else [str(j) for j in range(self.ncols)]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i, j):
        return self.entries[i][j]

    def pattern(self):
        """Zero/nonzero support pattern as a list of bool rows."""
        return [[not e.is_zero() for e in row] for row in self.entries]

    def render_rows(self):
        return [[e.render() for e in row] for row in self.entries]


# -- unique products ----------------------------------------------------------


@dataclass
class UniqueProductsReport:
    side: str
    k: int
    product_count: int
    unique_products: list = field(default_factory=list)  # (a, b, product) triples
    distinct_factor_count: int = 0
    verdict: bool = False


def unique_products_check(oracle, A, B, k, side="plain"):
    """Count uniquely represented products in A*B.

    ``plain`` asks for k uniquely represented products (requires |AB| >= k);
    ``left`` asks additionally for pairwise distinct left factors (requires
    |A| >= k) and ``right`` for distinct right factors (|B| >= k).
    """
    if side not in ("plain", "left", "right"):
        raise InputError(f"unknown side {side!r}")
    if k < 1:
        raise InputError("k must be a positive integer")
    A = list({oracle.key(a): a for a in A}.values())
    B = list({oracle.key(b): b for b in B}.values())
    if not A or not B:
        raise InputError("A and B must be non-empty")

    reps = {}
    for a in A:
        for b in B:
            reps.setdefault(oracle.key(oracle.multiply(a, b)), []).append((a, b))
    if side == "plain" and len(reps) < k:
        raise InputError(f"plain mode requires |AB| >= k, got |AB| = {len(reps)}")
    if side == "left" and len(A) < k:
        raise InputError(f"left mode requires |A| >= k, got |A| = {len(A)}")
    if side == "right" and len(B) < k:
        raise InputError(f"right mode requires |B| >= k, got |B| = {len(B)}")

    unique = [(pairs[0][0], pairs[0][1]) for pairs in reps.values() if len(pairs) == 1]
    if side == "left":
        distinct = len({oracle.key(a) for a, _ in unique})
    elif side == "right":
        distinct = len({oracle.key(b) for _, b in unique})
    else:
        distinct = len(unique)
    verdict = distinct >= k
    return UniqueProductsReport(
        side=side, k=k, product_count=len(reps),
        unique_products=[(a, b, oracle.multiply(a, b)) for a, b in unique],
        distinct_factor_count=distinct, verdict=verdict)


# -- engulfing ----------------------------------------------------------------


@dataclass
class EngulfingReport:
    status: str  # "witness" | "none" | "certified_by_order"
    side: str
    witness: GroupRingElement | None = None
    kernel_dimension: int | None = None
    note: str = ""

    @property
    def engulfing(self):
        return self.status == "witness"


def _verify_witness(r, m, side):
    if r.is_scalar():
        raise InternalCheckError("engulfing witness lies in the coefficient ring")
    product = r * m if side == "left" else m * r
    if not product.support() <= m.support():
        raise InternalCheckError("engulfing witness fails support re-verification")


def engulfing_search_finite(m: GroupRingElement, side="left") -> EngulfingReport:
    """Exhaustive engulfing search over a finite group and field coefficients.

    Solves the linear system forcing the coefficients of ``r*m`` (or ``m*r``)
    to vanish outside ``supp(m)``.  Returns a re-verified witness when the
    solution space holds anything beyond the scalars, otherwise the solution
    space dimension as a proof of absence.
    """
    if side not in ("left", "right"):
        raise InputError(f"unknown side {side!r}")
    if m.is_zero():
        raise InputError("engulfing is defined for non-zero elements")
    dom = m.domain
    if not dom.is_field or not isinstance(dom, (RationalDomain, PrimeFieldDomain)):
        raise UnsupportedError("finite engulfing search needs Q or F_p coefficients")
    oracle = m.oracle
    if not oracle.is_finite():
        raise UnsupportedError("finite engulfing search needs a finite group oracle")

    elems = oracle.elements()
    index = {oracle.key(g): i for i, g in enumerate(elems)}
    n = len(elems)
    supp = m.support()
    outside = [k for k in index if k not in supp]

    # constraint rows: one per group element outside supp(m); columns index r
    rows = []
    for h_key in outside:
        row = [dom.zero] * n
        for mk, (me, mc) in m.terms.items():
            # find g with g*me = h (left) or me*g = h (right)
            me_inv = oracle.invert(me)
            h_elem = elems[index[h_key]]
            g = oracle.multiply(h_elem, me_inv) if side == "left" else oracle.multiply(me_inv, h_elem)
            row[index[oracle.key(g)]] = dom.add(row[index[oracle.key(g)]], mc)
        rows.append(row)

    # x @ A = 0 with one column of A per constraint
    a_matrix = [[rows[c][g] for c in range(len(rows))] for g in range(n)]
    basis = nullspace(a_matrix, dom)

    dim = len(basis)
    id_index = index[oracle.key(oracle.identity())]
    for vec in basis:
        support = [i for i, c in enumerate(vec) if not dom.is_zero(c)]
        if support and support != [id_index]:
            witness = GroupRingElement(
                oracle, dom, [(elems[i], vec[i]) for i in support])
            _verify_witness(witness, m, side)
            return EngulfingReport(status="witness", side=side, witness=witness,
                                   kernel_dimension=dim)
    return EngulfingReport(status="none", side=side, kernel_dimension=dim,
                           note="solution space is spanned by the scalars")


def non_engulfing_certificate_ordered(m: GroupRingElement, side="left",
                                      extra_samples=()) -> EngulfingReport:
    """Certificate that an element over an ordered oracle is not engulfing.

    Requires the oracle to carry a right-invariant total order; the order
    axioms are spot-checked on the support of ``m`` before certifying.
    """
    if side not in ("left", "right"):
        raise InputError(f"unknown side {side!r}")
    oracle = m.oracle
    if oracle.compare is None:
        raise UnsupportedError(f"oracle {oracle.name} carries no total order")
    if m.is_zero():
        raise InputError("engulfing is defined for non-zero elements")

    sample = m.support_elements() + list(extra_samples)
    for x in sample:
        if oracle.compare(x, x) != 0:
            raise InternalCheckError("order is not reflexive on sampled elements")
    for x in sample:
        for y in sample:
            cxy = oracle.compare(x, y)
            if cxy != -oracle.compare(y, x):
                raise InternalCheckError("order is not antisymmetric on sampled elements")
            for g in sample:
                if cxy != oracle.compare(oracle.multiply(x, g), oracle.multiply(y, g)):
                    raise InternalCheckError("order is not right-invariant on sampled elements")
    return EngulfingReport(
        status="certified_by_order", side=side,
        note="right-invariant total order implies 2-unique products, hence no engulfing")
