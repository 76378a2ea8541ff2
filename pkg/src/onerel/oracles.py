"""Group oracles: a uniform element interface for group-ring arithmetic.

An oracle supplies identity/multiply/invert plus an injective canonical key
for hashing.  Finite oracles can enumerate all elements (deterministically,
identity first); ordered oracles expose ``compare``, a right-invariant total
order.
"""

from __future__ import annotations

import re
from collections import deque

from .errors import InputError, UnsupportedError
from .magnus import magnus_compare
from .words import Word


class GroupOracle:
    name = "?"
    compare = None  # ordered oracles override: compare(a, b) -> -1/0/1

    def identity(self):
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def key(self, a):
        raise NotImplementedError

    def is_finite(self):
        return False

    def elements(self):
        raise UnsupportedError(f"{self.name} cannot enumerate its elements")

    def render(self, a):
        return str(a)

    def power(self, a, n):
        out = self.identity()
        base = a if n >= 0 else self.invert(a)
        for _ in range(abs(n)):
            out = self.multiply(out, base)
        return out


class ModOracle(GroupOracle):
    """The cyclic group Z/n, elements 0..n-1 under addition."""

    def __init__(self, n):
        if n < 1:
            raise InputError("modulus must be positive")
        self.n = n
        self.name = f"Z/{n}"

    def identity(self):
        return 0

    def multiply(self, a, b):
        return (a + b) % self.n

    def invert(self, a):
        return (-a) % self.n

    def key(self, a):
        return a % self.n

    def is_finite(self):
        return True

    def elements(self):
        return list(range(self.n))

    def render(self, a):
        return "1" if a % self.n == 0 else f"g^{a % self.n}" if a % self.n != 1 else "g"


class ZPowOracle(GroupOracle):
    """Free abelian group Z^k with lexicographic (bi-invariant) order."""

    def __init__(self, rank, var_names=None):
        self.rank = rank
        self.name = f"Z^{rank}"
        if var_names is not None and len(var_names) != rank:
            raise InputError("need one variable name per coordinate")
        self.var_names = list(var_names) if var_names else [f"x{i}" for i in range(rank)]

    def identity(self):
        return (0,) * self.rank

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def invert(self, a):
        return tuple(-x for x in a)

    def key(self, a):
        return tuple(a)

    def is_finite(self):
        return self.rank == 0

    def elements(self):
        if self.rank == 0:
            return [()]
        raise UnsupportedError("Z^k is infinite")

    def compare(self, a, b):
        ta, tb = tuple(a), tuple(b)
        return -1 if ta < tb else (0 if ta == tb else 1)

    def render(self, a):
        parts = [
            self.var_names[i] if e == 1 else f"{self.var_names[i]}^{e}"
            for i, e in enumerate(a) if e
        ]
        return "*".join(parts) if parts else "1"


TRIVIAL_ORACLE = ModOracle(1)


def parse_permutation(text, degree=None):
    """Parse disjoint-cycle notation with 1-based points into a 0-based tuple.

    ``"(1 2)(3 4)"``; commas or spaces separate points; ``()``, ``e`` and
    ``id`` denote the identity.  ``degree`` fixes the number of points;
    otherwise the largest point seen is used.
    """
    text = text.strip()
    if text in ("()", "e", "id", ""):
        pts = degree or 1
        return tuple(range(pts))
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles or re.sub(r"\([^()]*\)|\s", "", text):
        raise InputError(f"cannot parse permutation {text!r}")
    parsed = []
    maxpt = 0
    for cyc in cycles:
        pts = [int(t) for t in re.split(r"[,\s]+", cyc.strip()) if t]
        if any(p < 1 for p in pts):
            raise InputError("permutation points are 1-based positive integers")
        if len(set(pts)) != len(pts):
            raise InputError(f"repeated point in cycle ({cyc})")
        parsed.append(pts)
        maxpt = max(maxpt, max(pts, default=0))
    n = degree if degree is not None else maxpt
    if maxpt > n:
        raise InputError(f"point {maxpt} exceeds degree {n}")
    img = list(range(n))
    for pts in parsed:
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def permutation_cycles(perm):
    """Render a 0-based image tuple in 1-based disjoint-cycle notation."""
    n = len(perm)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        out.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(out) if out else "()"


class PermOracle(GroupOracle):
    """Finite permutation group generated by given images.

    Permutations act on the right: ``(p*q)(x) = q(p(x))``, so evaluating a
    word multiplies images left to right.
    """

    def __init__(self, degree, generators=()):
        if degree < 1:
            raise InputError("degree must be positive")
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise InputError(f"{g} is not a permutation of {degree} points")
        self.name = f"Perm{degree}"
        self._elements = None

    def identity(self):
        return tuple(range(self.degree))

    def multiply(self, a, b):
        return tuple(b[a[i]] for i in range(self.degree))

    def invert(self, a):
        out = [0] * self.degree
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def key(self, a):
        return tuple(a)

    def is_finite(self):
        return True

    def elements(self):
        if self._elements is None:
            ident = self.identity()
            seen = {ident}
            order = [ident]
            queue = deque([ident])
            gens = sorted(set(self.generators))
            while queue:
                g = queue.popleft()
                for h in gens:
                    nxt = self.multiply(g, h)
                    if nxt not in seen:
                        seen.add(nxt)
                        order.append(nxt)
                        queue.append(nxt)
            self._elements = order
        return list(self._elements)

    def is_transitive(self):
        reached = {0}
        frontier = [0]
        while frontier:
            p = frontier.pop()
            for g in self.generators:
                if g[p] not in reached:
                    reached.add(g[p])
                    frontier.append(g[p])
        return len(reached) == self.degree

    def render(self, a):
        return permutation_cycles(a)


class FreeOracle(GroupOracle):
    """Free group on named generators, ordered through the series expansion."""

    def __init__(self, names):
        self.names = list(names)
        self.name = f"F({','.join(self.names)})"

    def identity(self):
        return Word()

    def multiply(self, a, b):
        return a * b

    def invert(self, a):
        return a.inverse()

    def key(self, a):
        return a.letters

    def compare(self, a, b):
        return magnus_compare(a, b)

    def render(self, a):
        return a.render(self.names)
