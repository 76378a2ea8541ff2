"""Finite-cover chain complexes, exact homology and subword scans.

Pushing a presentation's derivative matrix through the regular representation
of a finite quotient gives integer boundary matrices for the corresponding
cover of the presentation complex.  Chains are row vectors acted on from the
right, so the matrix composite ``D2 @ D1`` must vanish; homology and lattice
generation questions are settled by Smith and Hermite forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .domains import Domain, ZZ
from .errors import InputError
from .foxcalc import QuotientMap, jacobian
from .intlinalg import (field_rank, is_zero_matrix, kernel_basis, lattice_equal,
                        mat_mul, quotient_invariants, solve_left)
from .presentations import Presentation
from .words import Word, proper_subwords


class FiniteQuotient:
    """Permutation images of the generators, with the generated group."""

    def __init__(self, presentation: Presentation, images=None):
        self.presentation = presentation
        self.map = QuotientMap.permutation(presentation, images)
        self.oracle = self.map.oracle
        self.degree = self.oracle.degree
        self.elements = self.oracle.elements()
        self.order = len(self.elements)
        self.is_transitive = self.oracle.is_transitive()

    @classmethod
    def trivial(cls, presentation):
        return cls(presentation,
                   {name: (0,) for name in presentation.names})

    def image(self, w: Word):
        return self.map.apply(w)


def _regular_blocks(element_list, oracle):
    index = {oracle.key(g): i for i, g in enumerate(element_list)}

    def block(ring_elem):
        n = len(element_list)
        mat = [[0] * n for _ in range(n)]
        for _, (g, coeff) in ring_elem.terms.items():
            for p, elem in enumerate(element_list):
                q = index[oracle.key(oracle.multiply(elem, g))]
                mat[p][q] += coeff
        return mat

    return block


@dataclass
class CoverComplex:
    presentation: Presentation
    quotient: FiniteQuotient
    domain: Domain
    d2: list                  # (|W|*|Q|) x (|S|*|Q|) integer matrix
    d1: list                  # (|S|*|Q|) x |Q| integer matrix
    row_labels: list = field(default_factory=list)   # (relator index, element)
    col_labels: list = field(default_factory=list)   # (generator name, element)
    vertex_labels: list = field(default_factory=list)

    @property
    def shape(self):
        return (len(self.d2), len(self.d2[0]) if self.d2 else len(self.d1),
                len(self.d1[0]) if self.d1 else 0)

    def composite_is_zero(self):
        return is_zero_matrix(mat_mul(self.d2, self.d1)) if self.d2 else True

    def to_triplet_text(self):
        """Sparse triplet serialisation: header then ``row col value`` lines."""
        out = []
        for name, mat in (("d2", self.d2), ("d1", self.d1)):
            rows = len(mat)
            cols = len(mat[0]) if mat else 0
            out.append(f"matrix {name} {rows} {cols}")
            for i, row in enumerate(mat):
                for j, v in enumerate(row):
                    if v:
                        out.append(f"{i} {j} {v}")
        return "\n".join(out)


def build_cover_complex(p: Presentation, q: FiniteQuotient,
                        domain: Domain = ZZ) -> CoverComplex:
    """Boundary matrices of the cover of the presentation complex at ``q``.

    Entries of the derivative matrix and of the fence column ``phi(s) - 1``
    are replaced by their right-regular permutation-matrix images; the
    composite is verified to vanish exactly.
    """
    jac = jacobian(p, q.map, ZZ)
    elements = q.elements
    oracle = q.oracle
    block = _regular_blocks(elements, oracle)
    n = len(elements)

    d2 = []
    row_labels = []
    for i in range(jac.nrows):
        blocks = [block(jac.entry(i, j)) for j in range(jac.ncols)]
        for p_idx in range(n):
            d2.append([blocks[j][p_idx][c] for j in range(jac.ncols) for c in range(n)])
            row_labels.append((i, oracle.render(elements[p_idx])))

    d1 = []
    col_labels = []
    from .groupring import GroupRingElement
    one = GroupRingElement.one(oracle, ZZ)
    for s in range(p.rank):
        fence = GroupRingElement.of(oracle, ZZ, q.image(Word([(s, 1)]))) - one
        blk = block(fence)
        for p_idx in range(n):
            d1.append(list(blk[p_idx]))
            col_labels.append((p.names[s], oracle.render(elements[p_idx])))

    complex_ = CoverComplex(
        presentation=p, quotient=q, domain=domain, d2=d2, d1=d1,
        row_labels=row_labels, col_labels=col_labels,
        vertex_labels=[oracle.render(g) for g in elements])
    if not complex_.composite_is_zero():
        raise InputError("cover boundary matrices do not compose to zero")
    return complex_


@dataclass
class HomologyReport:
    domain: Domain
    h0_free_rank: int
    h0_torsion: list
    h1_free_rank: int
    h1_torsion: list

    def h_summary(self, free_rank, torsion):
        parts = []
        if free_rank == 1:
            parts.append("Z")
        elif free_rank > 1:
            parts.append(f"Z^{free_rank}")
        parts += [f"Z/{d}" for d in torsion]
        return " + ".join(parts) if parts else "0"

    def render(self):
        return (f"H0 = {self.h_summary(self.h0_free_rank, self.h0_torsion)}, "
                f"H1 = {self.h_summary(self.h1_free_rank, self.h1_torsion)}")


def homology(c: CoverComplex) -> HomologyReport:
    """Invariant factors of H0 and H1 of the cover complex.

    Over Z this is Smith-form exact; over a field the torsion lists are empty
    and the free ranks are dimensions.
    """
    domain = c.domain
    n_vertices = len(c.d1[0]) if c.d1 else 0
    if domain.is_field:
        rank_d1 = field_rank(c.d1, domain) if c.d1 else 0
        rank_d2 = field_rank(c.d2, domain) if c.d2 else 0
        dim_ker = len(c.d1) - rank_d1
        return HomologyReport(domain=domain,
                              h0_free_rank=n_vertices - rank_d1, h0_torsion=[],
                              h1_free_rank=dim_ker - rank_d2, h1_torsion=[])

    h0_free, h0_torsion = quotient_invariants(n_vertices, c.d1)
    kernel = kernel_basis(c.d1) if c.d1 else []
    if not kernel:
        return HomologyReport(domain=domain, h0_free_rank=h0_free,
                              h0_torsion=h0_torsion, h1_free_rank=0, h1_torsion=[])
    coords = []
    for row in c.d2:
        x = solve_left(kernel, row)
        if x is None:
            raise InputError("cover complex rows escape the cycle lattice")
        coords.append(x)
    h1_free, h1_torsion = quotient_invariants(len(kernel), coords)
    return HomologyReport(domain=domain, h0_free_rank=h0_free, h0_torsion=h0_torsion,
                          h1_free_rank=h1_free, h1_torsion=h1_torsion)


def generation_check(c: CoverComplex, rows) -> bool:
    """Whether the selected relator-orbit rows span the 1-cycle lattice.

    Over Z this is Hermite-form lattice equality between the selected rows of
    ``d2`` and the kernel of ``d1``; over a field it is a rank comparison.
    """
    rows = sorted(set(int(r) for r in rows))
    for r in rows:
        if not 0 <= r < len(c.d2):
            raise InputError(f"row index {r} out of range")
    selected = [c.d2[r] for r in rows]
    if c.domain.is_field:
        want = (len(c.d1) - field_rank(c.d1, c.domain)) if c.d1 else 0
        have = field_rank(selected, c.domain) if selected else 0
        return have == want
    kernel = kernel_basis(c.d1) if c.d1 else []
    if not kernel:
        return True  # the zero lattice is spanned by anything, including nothing
    if not selected:
        return False
    return lattice_equal(selected, kernel)


@dataclass
class SubwordStatus:
    subword: Word
    status: str            # "NontrivialCertified" | "Unknown"
    image: str

    def render(self, names):
        return f"{self.subword.render(names)}: {self.status} (image {self.image})"


def weinbaum_scan(w: Word, p: Presentation, q: FiniteQuotient) -> list:
    """Certify proper cyclic subwords nontrivial via their quotient images.

    A non-identity image proves the subword avoids the relators' normal
    closure; an identity image is inconclusive and reported as Unknown.
    """
    out = []
    ident = q.oracle.key(q.oracle.identity())
    for sub in proper_subwords(w, cyclic=True):
        img = q.image(sub)
        status = "Unknown" if q.oracle.key(img) == ident else "NontrivialCertified"
        out.append(SubwordStatus(subword=sub, status=status,
                                 image=q.oracle.render(img)))
    return out
