"""Small finite posets over ``range(n)`` stored as bitsets."""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

from .lattice import CycleDetected, _bits, _transitive_closure


class NotAntisymmetric(ValueError):
    pass


class Poset:
    """A finite poset on ``range(n)``; ``up[x]`` has bit y set iff x <= y."""

    def __init__(self, n: int, up: Sequence[int], names: Sequence[str] = ()):
        self.n = n
        self.up = list(up)
        self.names = tuple(names) if names else tuple(str(i) for i in range(n))
        self.down = [0] * n
        for x in range(n):
            for y in _bits(self.up[x]):
                self.down[y] |= 1 << x
        self.covers = frozenset(
            (x, y)
            for x in range(n)
            for y in _bits(self.up[x] & ~(1 << x))
            if not (self.up[x] & self.down[y] & ~(1 << x) & ~(1 << y))
        )

    @classmethod
    def from_relation(cls, n: int, pairs: Iterable[tuple[int, int]], names: Sequence[str] = ()) -> "Poset":
        """Reflexive-transitive closure of ``pairs``; it must be antisymmetric."""
        succ = [[] for _ in range(n)]
        for x, y in pairs:
            if x != y:
                succ[x].append(y)
        try:
            up = _transitive_closure(n, succ)
        except CycleDetected as exc:
            raise NotAntisymmetric("the closure is not antisymmetric") from exc
        return cls(n, up, names)

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], names: Sequence[str] = ()) -> "Poset":
        return cls.from_relation(n, covers, names)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def is_cover(self, x: int, y: int) -> bool:
        return (x, y) in self.covers

    def upper_covers(self, x: int) -> list[int]:
        return sorted(y for a, y in self.covers if a == x)

    def lower_covers(self, y: int) -> list[int]:
        return sorted(x for x, b in self.covers if b == y)

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if self.up[x] == 1 << x]

    def downsets(self) -> list[int]:
        """All down-sets (including the empty one) as bitmasks."""
        order = sorted(range(self.n), key=lambda x: bin(self.down[x]).count("1"))
        out = [0]
        for x in order:
            below = self.down[x] & ~(1 << x)
            out.extend(d | 1 << x for d in out if d & below == below and not d >> x & 1)
        return out

    def count_downsets(self) -> int:
        return len(self.downsets())

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """The isomorphic copy where element x becomes ``perm[x]``."""
        up = [0] * self.n
        for x in range(self.n):
            for y in _bits(self.up[x]):
                up[perm[x]] |= 1 << perm[y]
        names = [""] * self.n
        for x in range(self.n):
            names[perm[x]] = self.names[x]
        return Poset(self.n, up, names)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{self.names[a]}<{self.names[b]}" for a, b in sorted(self.covers))
        return f"Poset(n={self.n}; {pairs})"


def isomorphism(P: Poset, Q: Poset) -> list[int] | None:
    """An order isomorphism P -> Q as a list, found by backtracking."""
    if P.n != Q.n or len(P.covers) != len(Q.covers):
        return None

    def signature(S, x):
        return (bin(S.down[x]).count("1"), bin(S.up[x]).count("1"),
                len(S.lower_covers(x)), len(S.upper_covers(x)))

    sig_p = [signature(P, x) for x in range(P.n)]
    sig_q = [signature(Q, x) for x in range(Q.n)]
    if sorted(sig_p) != sorted(sig_q):
        return None
    order = sorted(range(P.n), key=lambda x: sig_p[x])
    image = [-1] * P.n
    used = [False] * Q.n

    def extend(k):
        if k == P.n:
            return True
        x = order[k]
        for y in range(Q.n):
            if used[y] or sig_q[y] != sig_p[x]:
                continue
            if all(P.leq(x, z) == Q.leq(y, image[z]) and P.leq(z, x) == Q.leq(image[z], y)
                   for z in order[:k]):
                image[x] = y
                used[y] = True
                if extend(k + 1):
                    return True
                used[y] = False
        image[x] = -1
        return False

    return image if extend(0) else None


def all_relabelings(P: Poset) -> Iterable[Poset]:
    for perm in permutations(range(P.n)):
        yield P.relabel(perm)
