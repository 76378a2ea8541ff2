"""Free differential calculus and presentation Jacobians.

Derivatives are the unique linear maps on the free-group ring with
``d(s)/ds = 1``, ``d(t)/ds = 0`` for ``t != s`` and the product rule
``d(vw)/ds = dv/ds + v * dw/ds``; it follows that ``d(s^-1)/ds = -s^-1``.
Unrolling the product rule over the letters of a word gives the closed form
used here: positive occurrences of ``s`` contribute their prefix, negative
occurrences contribute minus the prefix including the letter.
"""

from __future__ import annotations

from .domains import Domain, ZZ
from .errors import InputError, InternalCheckError
from .groupring import GroupRingElement, GroupRingMatrix
from .oracles import PermOracle, TRIVIAL_ORACLE, ZPowOracle
from .presentations import Presentation
from .words import Word


class FreeRingElement:
    """Element of the integral free-group ring: finite map Word -> int."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc = {}
        if isinstance(terms, dict):
            terms = terms.items()
        for word, coeff in terms:
            acc[word] = acc.get(word, 0) + int(coeff)
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls([(Word(), 1)])

    @classmethod
    def of(cls, word, coeff=1):
        return cls([(word, coeff)])

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return FreeRingElement(terms)

    def __neg__(self):
        return FreeRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return FreeRingElement(terms)

    def word_mul(self, word, side="left"):
        if side == "left":
            return FreeRingElement({word * w: c for w, c in self.terms.items()})
        return FreeRingElement({w * word: c for w, c in self.terms.items()})

    def scale(self, n):
        return FreeRingElement({w: n * c for w, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FreeRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def render(self, names):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w.letters)):
            c = self.terms[w]
            body = w.render(names)
            if body == "1":
                piece = str(c)
            elif c == 1:
                piece = body
            elif c == -1:
                piece = f"-{body}"
            else:
                piece = f"{c}*{body}"
            parts.append(piece)
        out = parts[0]
        for piece in parts[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out


_DERIVATIVE_CACHE: dict = {}


def clear_derivative_cache():
    _DERIVATIVE_CACHE.clear()


def _word_derivative(word: Word, gen_index: int) -> FreeRingElement:
    key = (word.letters, gen_index)
    cached = _DERIVATIVE_CACHE.get(key)
    if cached is not None:
        return cached
    terms = {}
    for k, (i, s) in enumerate(word.letters):
        if i != gen_index:
            continue
        prefix = word.prefix(k) if s > 0 else word.prefix(k + 1)
        terms[prefix] = terms.get(prefix, 0) + (1 if s > 0 else -1)
    result = FreeRingElement(terms)
    _DERIVATIVE_CACHE[key] = result
    return result


def fox_derivative(x, gen_index: int) -> FreeRingElement:
    """Derivative of a Word or FreeRingElement with respect to one generator."""
    if isinstance(x, Word):
        return _word_derivative(x, gen_index)
    out = FreeRingElement()
    for w, c in x.terms.items():
        out = out + _word_derivative(w, gen_index).scale(c)
    return out


def fundamental_identity_check(w: Word, alphabet_size: int) -> bool:
    """Exact check of ``sum_s (dw/ds) * (s - 1) == w - 1`` in the free ring."""
    total = FreeRingElement()
    for s in range(alphabet_size):
        d = _word_derivative(w, s)
        gen = Word([(s, 1)])
        total = total + (d.word_mul(gen, side="right") - d)
    return total == FreeRingElement([(w, 1), (Word(), -1)])


class QuotientMap:
    """A map from a presentation's free group onto a quotient oracle.

    Kinds: ``trivial``, ``abelian`` (images in Z^k; the default images give
    the full abelianisation) and ``permutation``.  Construction verifies that
    every relator maps to the identity, naming the first that does not.
    """

    def __init__(self, presentation: Presentation, kind, oracle, images):
        self.presentation = presentation
        self.kind = kind
        self.oracle = oracle
        self.images = dict(images)  # generator index -> oracle element
        for idx, w in enumerate(presentation.relators):
            if oracle.key(self.apply(w)) != oracle.key(oracle.identity()):
                name = w.render(presentation.names)
                raise InputError(
                    f"quotient map does not kill relator {idx} ({name})")

    @classmethod
    def trivial(cls, presentation):
        oracle = TRIVIAL_ORACLE
        return cls(presentation, "trivial", oracle,
                   {i: 0 for i in range(presentation.rank)})

    @classmethod
    def abelianization(cls, presentation):
        rank = presentation.rank
        oracle = ZPowOracle(rank, var_names=presentation.names)
        images = {i: tuple(1 if j == i else 0 for j in range(rank))
                  for i in range(rank)}
        return cls(presentation, "abelian", oracle, images)

    @classmethod
    def to_abelian(cls, presentation, images):
        """Explicit images in Z^k; integers are taken as Z^1 images."""
        vecs = {}
        for i in range(presentation.rank):
            img = images[i] if not isinstance(images, dict) or i in images else None
            if img is None:
                raise InputError(f"missing image for generator {presentation.names[i]}")
            vecs[i] = (img,) if isinstance(img, int) else tuple(img)
        ranks = {len(v) for v in vecs.values()}
        if len(ranks) != 1:
            raise InputError("abelian images must share one rank")
        rank = ranks.pop()
        oracle = ZPowOracle(rank, var_names=["t"] if rank == 1 else None)
        return cls(presentation, "abelian", oracle, vecs)

    @classmethod
    def permutation(cls, presentation, images=None):
        """Permutation images; defaults to the presentation's quotient stanza."""
        if images is None:
            images = presentation.quotient_images
            if images is None:
                raise InputError("presentation carries no quotient stanza")
        images = {presentation.gen_index(k) if isinstance(k, str) else k: tuple(v)
                  for k, v in images.items()}
        degrees = {len(v) for v in images.values()}
        if len(degrees) != 1:
            raise InputError("permutation images must share one degree")
        oracle = PermOracle(degrees.pop(), generators=list(images.values()))
        return cls(presentation, "permutation", oracle, images)

    def apply(self, w: Word):
        out = self.oracle.identity()
        for i, s in w.letters:
            img = self.images[i] if s > 0 else self.oracle.invert(self.images[i])
            out = self.oracle.multiply(out, img)
        return out

    def apply_ring(self, x: FreeRingElement, domain: Domain) -> GroupRingElement:
        return GroupRingElement(
            self.oracle, domain,
            [(self.apply(w), c) for w, c in x.terms.items()])


def jacobian(presentation: Presentation, quotient: QuotientMap,
             domain: Domain = ZZ) -> GroupRingMatrix:
    """Matrix of pushed-forward derivatives: rows relators, columns generators."""
    entries = []
    for w in presentation.relators:
        row = [quotient.apply_ring(fox_derivative(w, s), domain)
               for s in range(presentation.rank)]
        entries.append(row)
    return GroupRingMatrix(
        quotient.oracle, domain, entries,
        row_labels=[w.render(presentation.names) for w in presentation.relators],
        col_labels=list(presentation.names), ncols=presentation.rank)


class ResolutionComplex:
    """Three-term complex: derivative matrix, fence column, augmentation.

    ``d2`` is the Jacobian; ``d1`` sends the generator basis vector for ``s``
    to ``phi(s) - 1``; ``d0`` is the augmentation.  Both composites are
    verified to vanish exactly on construction, and the rows of ``d2``
    generate the image identified with the coefficient-extended relation
    module.
    """

    def __init__(self, presentation, quotient, domain=ZZ):
        self.presentation = presentation
        self.quotient = quotient
        self.domain = domain
        self.d2 = jacobian(presentation, quotient, domain)
        oracle = quotient.oracle
        one = GroupRingElement.one(oracle, domain)
        self.d1 = [GroupRingElement.of(oracle, domain, quotient.apply(Word([(s, 1)]))) - one
                   for s in range(presentation.rank)]
        self._verify()

    def _verify(self):
        for i in range(self.d2.nrows):
            total = GroupRingElement.zero(self.d2.oracle, self.domain)
            for j in range(self.d2.ncols):
                total = total + self.d2.entry(i, j) * self.d1[j]
            if not total.is_zero():
                raise InternalCheckError(
                    f"d1 o d2 is nonzero on relator row {i}: {total.render()}")
        for col in self.d1:
            aug = self.domain.zero
            for _, c in col.terms.values():
                aug = self.domain.add(aug, c)
            if not self.domain.is_zero(aug):
                raise InternalCheckError("d0 o d1 is nonzero")

    def relation_module_rows(self):
        """Rows of d2, the module generators of the image of d2."""
        return [list(row) for row in self.d2.entries]


def resolution_complex(presentation, quotient, domain=ZZ) -> ResolutionComplex:
    return ResolutionComplex(presentation, quotient, domain)
