"""Finite abelian subgroups of SL(3) presented by diagonal weights.

A group is a product of cyclic factors ``Z/n_1 + ... + Z/n_k``.  The same
finite abelian group ``A`` carries both the characters and the group
elements; the pairing between them is ``sum_i a_i b_i / n_i mod 1``.

Characters are encoded as integers ``0 <= c < order`` in mixed radix, so a
cyclic group ``1/r(a,b,c)`` uses plain residues mod ``r``.

Lattice points of ``N`` are stored as integer triples scaled by ``den``, the
exponent of the group (lcm of the factors).  A junior point has scaled
coordinate sum equal to ``den``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import product
from typing import Iterator

Exps = tuple[int, int, int]
Point = tuple[int, int, int]


class GroupSpecError(ValueError):
    """Raised for malformed or non-SL(3) group descriptions."""


_FACTOR = re.compile(r"^1/(\d+)\((-?\d+),(-?\d+),(-?\d+)\)$")


@dataclass(frozen=True)
class Group:
    factors: tuple[int, ...]
    # weights[k] is the weight of coordinate k, one residue per factor
    weights: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def __post_init__(self) -> None:
        if any(n < 1 for n in self.factors):
            raise GroupSpecError("cyclic factors must have order >= 1")
        for w in self.weights:
            if len(w) != len(self.factors):
                raise GroupSpecError("one weight residue per factor expected")
        for i, n in enumerate(self.factors):
            if sum(w[i] for w in self.weights) % n:
                raise GroupSpecError(
                    f"weights {tuple(w[i] for w in self.weights)} do not sum to 0 mod {n}"
                )

    # -- basic invariants -------------------------------------------------

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def den(self) -> int:
        return reduce(math.lcm, self.factors, 1)

    @cached_property
    def is_cyclic(self) -> bool:
        return len(self.factors) == 1

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        out, s = [], 1
        for n in reversed(self.factors):
            out.append(s)
            s *= n
        return tuple(reversed(out))

    # -- character arithmetic ---------------------------------------------

    def encode(self, tup: tuple[int, ...]) -> int:
        return sum((t % n) * s for t, n, s in zip(tup, self.factors, self._strides))

    def decode(self, c: int) -> tuple[int, ...]:
        return tuple((c // s) % n for n, s in zip(self.factors, self._strides))

    @cached_property
    def trivial(self) -> int:
        return 0

    def add(self, c1: int, c2: int) -> int:
        return self.encode(tuple(a + b for a, b in zip(self.decode(c1), self.decode(c2))))

    def neg(self, c: int) -> int:
        return self.encode(tuple(-a for a in self.decode(c)))

    def scale(self, c: int, k: int) -> int:
        return self.encode(tuple(k * a for a in self.decode(c)))

    def sum(self, chars) -> int:
        total = (0,) * len(self.factors)
        for c in chars:
            total = tuple(a + b for a, b in zip(total, self.decode(c)))
        return self.encode(total)

    @cached_property
    def coordinate_characters(self) -> tuple[int, int, int]:
        return tuple(self.encode(w) for w in self.weights)  # type: ignore[return-value]

    def character_of(self, exps) -> int:
        """Character of the (Laurent) monomial with the given exponents."""
        tup = tuple(
            sum(e * w[i] for e, w in zip(exps, self.weights)) for i in range(len(self.factors))
        )
        return self.encode(tup)

    def characters(self) -> range:
        return range(self.order)

    def nontrivial_characters(self) -> list[int]:
        return list(range(1, self.order))

    def char_label(self, c: int) -> str:
        if self.is_cyclic:
            return str(c)
        return "(" + ",".join(str(a) for a in self.decode(c)) + ")"

    def char_tuple(self, c: int) -> list[int]:
        return list(self.decode(c))

    # -- lattice N and the junior simplex ----------------------------------

    def elements(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(n) for n in self.factors))

    def eigen_point(self, g: tuple[int, ...]) -> Point:
        """Fractional eigenvalue exponents of ``g``, scaled by ``den``."""
        out = []
        for w in self.weights:
            num = sum(wi * gi * (self.den // n) for wi, gi, n in zip(w, g, self.factors))
            out.append(num % self.den)
        return tuple(out)  # type: ignore[return-value]

    @cached_property
    def junior_points(self) -> tuple[Point, ...]:
        d = self.den
        pts = {(d, 0, 0), (0, d, 0), (0, 0, d)}
        for g in self.elements():
            p = self.eigen_point(g)
            if sum(p) == d:
                pts.add(p)
        return tuple(sorted(pts, reverse=True))

    def in_lattice(self, p: Point) -> tuple[tuple[int, ...], tuple[int, int, int]] | None:
        """Membership certificate ``(g, z)`` with ``p = den*z + eigen_point(g)``."""
        for g in self.elements():
            e = self.eigen_point(g)
            diff = [a - b for a, b in zip(p, e)]
            if all(x % self.den == 0 for x in diff):
                return g, tuple(x // self.den for x in diff)  # type: ignore[return-value]
        return None

    def coords(self, p: Point) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(Fraction(x, self.den) for x in p)  # type: ignore[return-value]

    def is_corner(self, p: Point) -> bool:
        return sorted(p) == [0, 0, self.den]

    # -- presentation -----------------------------------------------------

    def spec(self) -> str:
        parts = []
        for i, n in enumerate(self.factors):
            a, b, c = (w[i] for w in self.weights)
            parts.append(f"1/{n}({a},{b},{c})")
        return ";".join(parts)

    def __str__(self) -> str:
        return self.spec()


def _generated_size(group: Group) -> int:
    seen = {0}
    frontier = [0]
    gens = group.coordinate_characters
    while frontier:
        c = frontier.pop()
        for g in gens:
            nxt = group.add(c, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen)


def make_group(factors, weights) -> Group:
    factors = tuple(int(n) for n in factors)
    ws = tuple(tuple(int(w[i]) % factors[i] for i in range(len(factors))) for w in weights)
    group = Group(factors, ws)  # type: ignore[arg-type]
    if _generated_size(group) != group.order:
        raise GroupSpecError(f"{group.spec()} does not act faithfully")
    return group


def cyclic(r: int, a: int, b: int, c: int) -> Group:
    return make_group((r,), ((a,), (b,), (c,)))


def parse_group_spec(text: str) -> Group:
    """Parse ``1/r(a,b,c)`` or a ``;``-separated list of such factors."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise GroupSpecError("empty group description")
    factors, cols = [], []
    for part in compact.split(";"):
        m = _FACTOR.match(part)
        if not m:
            raise GroupSpecError(f"cannot parse group factor {part!r}")
        r, a, b, c = (int(x) for x in m.groups())
        if r < 1:
            raise GroupSpecError("factor order must be positive")
        if (a + b + c) % r:
            raise GroupSpecError(f"{part}: weights sum to {a + b + c}, not 0 mod {r}")
        factors.append(r)
        cols.append((a, b, c))
    weights = tuple(tuple(col[k] for col in cols) for k in range(3))
    return make_group(factors, weights)


def canonical_cyclic(r: int, a: int, b: int, c: int) -> tuple[int, int, int]:
    """Smallest sorted weight triple over coordinate permutations and unit rescaling."""
    best = None
    for u in range(1, r + 1):
        if math.gcd(u, r) != 1:
            continue
        t = tuple(sorted(((u * a) % r, (u * b) % r, (u * c) % r)))
        if best is None or t < best:
            best = t
    assert best is not None
    return best


def cyclic_sweep(max_order: int, min_order: int = 2) -> list[tuple[int, int, int, int]]:
    """One representative ``(r, a, b, c)`` per class of faithful cyclic SL(3) actions."""
    out = []
    for r in range(min_order, max_order + 1):
        reps = set()
        for a in range(r):
            for b in range(a, r):
                c = (-a - b) % r
                if c < b or math.gcd(math.gcd(a, b), math.gcd(c, r)) != 1:
                    continue
                reps.add(canonical_cyclic(r, a, b, c))
        out.extend((r, *t) for t in sorted(reps))
    return out


def permuted(group: Group, perm: tuple[int, int, int]) -> Group:
    return Group(group.factors, tuple(group.weights[i] for i in perm))  # type: ignore[arg-type]


__all__ = [
    "Exps",
    "Group",
    "GroupSpecError",
    "Point",
    "canonical_cyclic",
    "cyclic",
    "cyclic_sweep",
    "make_group",
    "parse_group_spec",
    "permuted",
]
