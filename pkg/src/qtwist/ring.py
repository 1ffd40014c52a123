"""Group rings Z[A] over finitely generated abelian groups.

Group elements are coordinate tuples: ``free_rank`` unreduced integer
coordinates followed by one coordinate per torsion factor, reduced into
``[0, n_i)``. The Laurent ring Z[t, t^-1] is Z[Z] with ``t = (1,)``.

Ideals are only decided over finite A, where an ideal is a Z-sublattice of
Z^|A| closed under multiplication by group elements; it is stored by its
Hermite basis. Over Z[t, t^-1] the gcd of a generator list is reported
instead (``laurent_normalize``).
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import NotMonomialUnit, StructuralError, UnsupportedGroup
from .intmat import hnf_contains, hnf_rows

GroupElem = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(n) for n in self.torsion))
        if self.free_rank < 0:
            raise StructuralError("free rank must be non-negative")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise StructuralError(
                    f"torsion factors {self.torsion} are not divisibility-chained"
                )
        if any(n < 2 for n in self.torsion):
            raise StructuralError("torsion factors must be >= 2")

    @property
    def ncoords(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_laurent(self) -> bool:
        return self.free_rank == 1 and not self.torsion

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise UnsupportedGroup(f"{self} is infinite")
        return math.prod(self.torsion)

    @property
    def zero(self) -> GroupElem:
        return (0,) * self.ncoords

    def reduce(self, coords) -> GroupElem:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.ncoords:
            raise StructuralError(
                f"element {coords} has {len(coords)} coordinates, {self} needs {self.ncoords}"
            )
        r = self.free_rank
        return coords[:r] + tuple(c % n for c, n in zip(coords[r:], self.torsion))

    def add(self, g: GroupElem, h: GroupElem) -> GroupElem:
        r = self.free_rank
        return tuple(a + b for a, b in zip(g[:r], h[:r])) + tuple(
            (a + b) % n for a, b, n in zip(g[r:], h[r:], self.torsion)
        )

    def neg(self, g: GroupElem) -> GroupElem:
        r = self.free_rank
        return tuple(-a for a in g[:r]) + tuple(
            (-a) % n for a, n in zip(g[r:], self.torsion)
        )

    def sub(self, g: GroupElem, h: GroupElem) -> GroupElem:
        return self.add(g, self.neg(h))

    def scale(self, k: int, g: GroupElem) -> GroupElem:
        r = self.free_rank
        return tuple(k * a for a in g[:r]) + tuple(
            (k * a) % n for a, n in zip(g[r:], self.torsion)
        )

    @cached_property
    def elements(self) -> tuple[GroupElem, ...]:
        """All elements in lexicographic coordinate order (finite groups only)."""
        if not self.is_finite:
            raise UnsupportedGroup(f"{self} is infinite")
        return tuple(itertools.product(*(range(n) for n in self.torsion)))

    @cached_property
    def _index(self) -> dict[GroupElem, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, g: GroupElem) -> int:
        return self._index[g]

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{n}" for n in self.torsion]
        return " x ".join(parts) if parts else "0"


LAURENT = AbelianGroup(1)


def cyclic(n: int) -> AbelianGroup:
    return AbelianGroup(0, (n,))


def parse_group(text: str) -> AbelianGroup:
    """Read ``Z``, ``Z/n`` or a product such as ``Z/2 x Z/4``.

    Free factors must precede torsion factors, mirroring the coordinate
    order of group elements.
    """
    text = text.strip()
    if text in ("0", "1", ""):
        return AbelianGroup()
    free, torsion = 0, []
    for part in re.split(r"\s+x\s+|\s*\*\s*", text):
        part = part.strip()
        if part == "Z":
            if torsion:
                raise StructuralError("free factors must precede torsion factors")
            free += 1
            continue
        m = re.fullmatch(r"Z/(\d+)", part)
        if not m:
            raise StructuralError(f"cannot read group factor {part!r}")
        torsion.append(int(m.group(1)))
    return AbelianGroup(free, tuple(torsion))


def format_elem(g: GroupElem) -> str:
    return "(" + ",".join(str(c) for c in g) + ")"


class GroupRingElem:
    """Finitely supported integer combination of group elements.

    Instances are immutable and hashable; zero coefficients are never stored.
    """

    __slots__ = ("group", "_terms", "_hash")

    def __init__(self, group: AbelianGroup, terms=None):
        acc: dict[GroupElem, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for g, c in items:
                g = group.reduce(g)
                acc[g] = acc.get(g, 0) + int(c)
        self.group = group
        self._terms = {g: c for g, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, group, terms):
        obj = cls.__new__(cls)
        obj.group = group
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, group):
        return cls._raw(group, {})

    @classmethod
    def one(cls, group):
        return cls._raw(group, {group.zero: 1})

    @classmethod
    def monomial(cls, group, g, coeff=1):
        g = group.reduce(g)
        return cls._raw(group, {g: coeff} if coeff else {})

    @property
    def terms(self) -> dict[GroupElem, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if isinstance(other, int):
            return GroupRingElem.monomial(self.group, self.group.zero, other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        if other.group != self.group:
            raise StructuralError(f"group mismatch: {self.group} vs {other.group}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for g, c in other._terms.items():
            v = out.get(g, 0) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return GroupRingElem._raw(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem._raw(self.group, {g: -c for g, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        add = self.group.add
        out: dict[GroupElem, int] = {}
        for g, c in self._terms.items():
            for h, d in other._terms.items():
                k = add(g, h)
                out[k] = out.get(k, 0) + c * d
        return GroupRingElem._raw(self.group, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def shift(self, g: GroupElem) -> "GroupRingElem":
        """Multiply by the group element ``g``."""
        add = self.group.add
        return GroupRingElem._raw(self.group, {add(h, g): c for h, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElem.monomial(self.group, self.group.zero, other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.group == other.group and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group, frozenset(self._terms.items())))
        return self._hash

    def is_monomial_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def to_vector(self) -> list[int]:
        grp = self.group
        v = [0] * grp.order
        for g, c in self._terms.items():
            v[grp.index(g)] = c
        return v

    def __str__(self):
        if not self._terms:
            return "0"
        if self.group.is_laurent:
            return _format_laurent(self)
        out = []
        for g, c in self.items():
            sign = "-" if c < 0 else "+"
            out.append((sign, f"{abs(c)}*{format_elem(g)}"))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"GroupRingElem({self.group}, {self})"


def _format_laurent(x: GroupRingElem) -> str:
    pieces = []
    for (k,), c in sorted(x._terms.items(), reverse=True):
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = "t" if k == 1 else f"t^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        pieces.append(("-" if c < 0 else "+", body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def gr_add(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a + b


def gr_neg(a: GroupRingElem) -> GroupRingElem:
    return -a


def gr_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a * b


def gr_monomial_inverse(u: GroupRingElem) -> GroupRingElem:
    """Inverse of a unit of the form +-1*(g)."""
    if not u.is_monomial_unit():
        raise NotMonomialUnit(f"{u} is not of the form +-1*(g)")
    (g, c), = u._terms.items()
    return GroupRingElem._raw(u.group, {u.group.neg(g): c})


def laurent(coeffs: dict[int, int] | list[int], low: int = 0) -> GroupRingElem:
    """Laurent polynomial from ``{degree: coeff}`` or a coefficient list starting at ``low``."""
    if isinstance(coeffs, dict):
        items = coeffs.items()
    else:
        items = ((low + i, c) for i, c in enumerate(coeffs))
    return GroupRingElem(LAURENT, {(k,): c for k, c in items})


T = laurent({1: 1})


# --- ideals over finite A ---------------------------------------------------


@dataclass(frozen=True)
class IdealLattice:
    """Ideal of Z[A] (A finite) as the Hermite basis of its Z-lattice in Z^|A|.

    Coordinates follow ``group.elements`` order.
    """

    group: AbelianGroup
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.rank == self.group.order and all(
            row[i] == 1 for i, row in enumerate(self.basis)
        )

    def contains(self, x: GroupRingElem) -> bool:
        if x.group != self.group:
            raise StructuralError(f"group mismatch: {self.group} vs {x.group}")
        return hnf_contains(self.basis, x.to_vector())

    __contains__ = contains

    def generators(self) -> list[GroupRingElem]:
        elems = self.group.elements
        return [
            GroupRingElem(self.group, {elems[i]: c for i, c in enumerate(row) if c})
            for row in self.basis
        ]

    def __str__(self):
        if not self.basis:
            return "(0)"
        return "; ".join("(" + ", ".join(map(str, row)) + ")" for row in self.basis)


def ideal_from_generators(group: AbelianGroup, gens) -> IdealLattice:
    """Ideal of Z[A] generated by ``gens``, for finite A."""
    if not group.is_finite:
        raise UnsupportedGroup(
            f"ideal equality over the infinite group {group} is not decided; "
            "use laurent_normalize for Z[t, t^-1]"
        )
    rows = []
    for s in gens:
        if s.group != group:
            raise StructuralError(f"group mismatch: {group} vs {s.group}")
        if s.is_zero():
            continue
        for g in group.elements:
            rows.append(s.shift(g).to_vector())
    return IdealLattice(group, hnf_rows(rows, group.order))


def zero_ideal(group: AbelianGroup) -> IdealLattice:
    return ideal_from_generators(group, [])


def full_ideal(group: AbelianGroup) -> IdealLattice:
    return ideal_from_generators(group, [GroupRingElem.one(group)])


def ideal_equal(i: IdealLattice, j: IdealLattice) -> bool:
    if i.group != j.group:
        raise StructuralError(f"group mismatch: {i.group} vs {j.group}")
    return i.basis == j.basis


def ideal_contains(i: IdealLattice, x: GroupRingElem) -> bool:
    return i.contains(x)


# --- Laurent gcd ------------------------------------------------------------


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p: list[int]) -> int:
    return math.gcd(*p) if p else 0


def _primitive(p: list[int]) -> list[int]:
    c = _content(p)
    q = [x // c for x in p] if c else []
    if q and q[-1] < 0:
        q = [-x for x in q]
    return q


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b`` (coefficient lists, low degree first)."""
    a = list(a)
    lb, db = b[-1], len(b) - 1
    while len(a) - 1 >= db and a:
        la, shift = a[-1], len(a) - 1 - db
        a = [x * lb for x in a]
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        p = a or b
        return [x * _content(p) for x in _primitive(p)]
    c = math.gcd(_content(a), _content(b))
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return [c * x for x in _primitive(a)]


def _as_poly(x: GroupRingElem) -> list[int]:
    if not x._terms:
        return []
    low = min(k for (k,) in x._terms)
    high = max(k for (k,) in x._terms)
    p = [0] * (high - low + 1)
    for (k,), c in x._terms.items():
        p[k - low] = c
    return p


def laurent_normalize(gens) -> GroupRingElem:
    """Gcd of Laurent polynomials, as a polynomial with nonzero constant term
    and positive leading coefficient. Returns 0 for empty or all-zero input."""
    g: list[int] = []
    for x in gens:
        if not x.group.is_laurent:
            raise StructuralError(f"{x.group} is not the infinite cyclic group")
        g = _poly_gcd(g, _as_poly(x))
    if g and g[-1] < 0:
        g = [-c for c in g]
    return laurent(g)


@dataclass(frozen=True)
class LaurentIdeal:
    """Ideal of Z[t, t^-1] reported as its generators and their gcd."""

    generators: tuple[GroupRingElem, ...]
    gcd: GroupRingElem

    def is_zero(self) -> bool:
        return self.gcd.is_zero()

    def __str__(self):
        return f"gcd = {self.gcd}"
