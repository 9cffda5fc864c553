"""Finitely generated abelian groups up to odd torsion.

A group is stored in canonical form as a free rank plus an ascending
multiset of cyclic 2-power torsion orders.  Only 2-groups ever occur as
torsion here, so this is the full invariant; odd torsion is deliberately
not representable.

>>> print(direct_sum(Z(1), C(2)))
Z + Z/2
>>> print(n_copies(3, C(2)))
Z/2 + Z/2 + Z/2
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyWindow


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class FgAb2:
    """A finitely generated abelian group modulo odd torsion.

    ``rank`` counts infinite cyclic summands; ``torsion`` lists the orders
    of the cyclic 2-torsion summands, each a power of two >= 2, ascending.
    Two values are equal iff their canonical forms coincide.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError(f"rank must be nonnegative, got {self.rank}")
        tors = tuple(sorted(self.torsion))
        for t in tors:
            if t < 2 or not _is_power_of_two(t):
                raise ValueError(f"torsion order {t} is not a 2-power >= 2")
        object.__setattr__(self, "torsion", tors)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def torsion_order(self) -> int:
        """Order of the torsion subgroup (1 for torsion-free groups)."""
        return math.prod(self.torsion)

    def __str__(self) -> str:
        return format_group(self)


ZERO = FgAb2(0, ())


def Z(rank: int) -> FgAb2:
    """Free abelian group of the given rank."""
    return FgAb2(rank, ())


def C(order: int) -> FgAb2:
    """Cyclic group of the given 2-power order."""
    return FgAb2(0, (order,))


def C2(copies: int) -> FgAb2:
    """(Z/2)^copies."""
    return FgAb2(0, (2,) * copies)


def direct_sum(*groups: FgAb2) -> FgAb2:
    """Direct sum; rank adds and torsion multisets merge.

    Associative and commutative with neutral element the zero group.
    """
    rank = sum(g.rank for g in groups)
    torsion: list[int] = []
    for g in groups:
        torsion.extend(g.torsion)
    return FgAb2(rank, tuple(torsion))


def n_copies(k: int, g: FgAb2) -> FgAb2:
    """k-fold direct sum of g; k = 0 gives the zero group."""
    if k < 0:
        raise ValueError(f"copy count must be nonnegative, got {k}")
    return FgAb2(k * g.rank, g.torsion * k)


def subtract_summand(total: FgAb2, part: FgAb2) -> FgAb2:
    """Remove a direct summand, i.e. solve total = part + result.

    Raises ValueError when part is not a summand of total.
    """
    rank = total.rank - part.rank
    if rank < 0:
        raise ValueError(f"{part} is not a summand of {total} (rank)")
    remaining = list(total.torsion)
    for t in part.torsion:
        try:
            remaining.remove(t)
        except ValueError:
            raise ValueError(f"{part} is not a summand of {total} (torsion {t})") from None
    return FgAb2(rank, tuple(remaining))


def ses_consistent(a: FgAb2, b: FgAb2, c: FgAb2) -> bool:
    """Necessary conditions for a short exact sequence 0 -> a -> b -> c -> 0.

    Checks the rank additivity and the two torsion-order divisibilities.
    These conditions are necessary but not sufficient; every split sequence
    passes.
    """
    if b.rank != a.rank + c.rank:
        return False
    ta, tb, tc = a.torsion_order(), b.torsion_order(), c.torsion_order()
    return tb % ta == 0 and (ta * tc) % tb == 0


@dataclass(frozen=True)
class ExactWindow:
    """Consecutive terms of an exact sequence.

    ``bounded`` means the window is flanked by zero groups (or by maps that
    are provably zero) on both sides.
    """

    groups: tuple[FgAb2, ...]
    bounded: bool = True

    def __post_init__(self) -> None:
        if not self.groups:
            raise EmptyWindow("exact window must contain at least one group")
        object.__setattr__(self, "groups", tuple(self.groups))


def alternating_rank_sum(groups) -> int:
    return sum((-1) ** i * g.rank for i, g in enumerate(groups))


def exact_window_check(w: ExactWindow) -> bool:
    """Necessary exactness conditions for a window of groups.

    Bounded all-finite windows must telescope: the alternating product of
    the group orders is 1.  As soon as free parts appear only the rank Euler
    characteristic is asserted (boundary maps are not modeled, so torsion
    telescoping is not determined).  Unbounded windows, supplied as one full
    period of a periodic long exact sequence, are held to the rank condition.
    """
    if not w.groups:
        raise EmptyWindow("exact window must contain at least one group")
    all_finite = all(g.is_finite for g in w.groups)
    if w.bounded and all_finite:
        even = math.prod(g.torsion_order() for g in w.groups[0::2])
        odd = math.prod(g.torsion_order() for g in w.groups[1::2])
        return even == odd
    return alternating_rank_sum(w.groups) == 0


def format_group(g: FgAb2) -> str:
    """Canonical text form, e.g. "Z^2 + Z/2 + Z/16"; "0" for the zero group."""
    parts: list[str] = []
    if g.rank == 1:
        parts.append("Z")
    elif g.rank > 1:
        parts.append(f"Z^{g.rank}")
    parts.extend(f"Z/{t}" for t in g.torsion)
    return " + ".join(parts) if parts else "0"


def parse_group(text: str) -> FgAb2:
    """Inverse of :func:`format_group` on canonical forms."""
    text = text.strip()
    if text == "0":
        return ZERO
    rank = 0
    torsion: list[int] = []
    for token in text.split("+"):
        token = token.strip()
        if token == "Z":
            rank += 1
        elif token.startswith("Z^"):
            rank += int(token[2:])
        elif token.startswith("Z/"):
            torsion.append(int(token[2:]))
        else:
            raise ValueError(f"cannot parse group term {token!r}")
    return FgAb2(rank, tuple(torsion))


def group_to_json(g: FgAb2) -> dict:
    """JSON shape {"rank": <int>, "torsion": [<int>...]} with torsion ascending."""
    return {"rank": g.rank, "torsion": list(g.torsion)}


def group_from_json(data: dict) -> FgAb2:
    return FgAb2(int(data["rank"]), tuple(int(t) for t in data["torsion"]))
