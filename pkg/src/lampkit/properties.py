"""Necessary conditions on the join-irreducible poset of a congruence lattice.

Every checker takes an abstract :class:`~lampkit.poset.Poset` standing for
``Jir D`` of a finite distributive lattice ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .lattice import FiniteLattice, build_lattice, irreducibles
from .poset import Poset, isomorphism


class BoundTooLarge(ValueError):
    pass


MAX_ENUMERATION = 6


def downset_lattice(P: Poset) -> FiniteLattice:
    """The lattice of all down-sets of P (with the empty set), by inclusion."""
    sets = sorted(P.downsets(), key=lambda d: (bin(d).count("1"), d))
    index = {d: i for i, d in enumerate(sets)}
    covers = [(index[d], index[d | 1 << x]) for d in sets for x in range(P.n)
              if not d >> x & 1 and (d | 1 << x) in index]
    labels = ["{" + ",".join(P.names[x] for x in range(P.n) if d >> x & 1) + "}" for d in sets]
    return build_lattice(covers, n=len(sets), labels=labels)


def jir_poset(L: FiniteLattice) -> Poset:
    """Join-irreducible elements of L with the induced order."""
    jir = sorted(irreducibles(L).jir)
    up = [0] * len(jir)
    for i, a in enumerate(jir):
        for j, b in enumerate(jir):
            if L.leq(a, b):
                up[i] |= 1 << j
    return Poset(len(jir), up, [L.name(x) for x in jir])


def birkhoff_round_trip(P: Poset) -> bool:
    return isomorphism(jir_poset(downset_lattice(P)), P) is not None


# ---------------------------------------------------------------- checkers


def p2(P: Poset) -> bool:
    """At least two maximal elements."""
    return len(P.maximal()) >= 2


def _conflicts(P: Poset) -> list[tuple[int, int]]:
    tops = set(P.maximal())
    out = set()
    for x in range(P.n):
        ups = [y for y in P.upper_covers(x) if y in tops]
        out.update((a, b) for a in ups for b in ups if a < b)
    return sorted(out)


def bipartite_maximal(P: Poset) -> bool:
    """Max P splits into two nonempty parts with no conflict inside a part.

    Two maxima conflict when they share a lower cover.
    """
    tops = P.maximal()
    if len(tops) < 2:
        return False
    adj = {t: [] for t in tops}
    for a, b in _conflicts(P):
        adj[a].append(b)
        adj[b].append(a)
    color: dict = {}
    for start in tops:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s not in color:
                    color[s] = 1 - color[t]
                    stack.append(s)
                elif color[s] == color[t]:
                    return False
    # a component can be flipped freely, so both colours can be made nonempty
    return True


def dioecious(P: Poset) -> bool:
    """A lower cover of a maximal element has another upper cover."""
    tops = set(P.maximal())
    for x in range(P.n):
        ups = P.upper_covers(x)
        if any(y in tops for y in ups) and len(ups) < 2:
            return False
    return True


def two_cover(P: Poset) -> bool:
    return all(len(P.upper_covers(x)) <= 2 for x in range(P.n))


def forbidden_marriage(P: Poset) -> bool:
    """No two lower covers of a maximal element share a lower cover."""
    for z in P.maximal():
        lows = P.lower_covers(z)
        for i, x in enumerate(lows):
            below_x = set(P.lower_covers(x))
            for y in lows[i + 1:]:
                if below_x & set(P.lower_covers(y)):
                    return False
    return True


def two_pendant_four_crown_poset() -> Poset:
    """R: a four-crown A, B, C, D over M_AB, M_BC, M_CD, M_DA with pendants Z, W."""
    names = ["A", "B", "C", "D", "M_AB", "M_BC", "M_CD", "M_DA", "Z", "W"]
    i = {name: k for k, name in enumerate(names)}
    covers = []
    for mid in ("AB", "BC", "CD", "DA"):
        covers += [(i["M_" + mid], i[mid[0]]), (i["M_" + mid], i[mid[1]])]
    covers += [(i["Z"], i["M_AB"]), (i["Z"], i["M_CD"]), (i["W"], i["M_BC"]), (i["W"], i["M_DA"])]
    return Poset.from_covers(len(names), covers, names)


def cover_preserving_embeddings(X: Poset, Y: Poset, maxima_to_maxima: bool = False) -> Iterator[list[int]]:
    """Injective maps f with x <= x' iff f(x) <= f(x') and x ≺ x' iff f(x) ≺ f(x')."""
    if X.n > Y.n:
        return
    y_tops = set(Y.maximal())
    x_tops = set(X.maximal())
    order = sorted(range(X.n), key=lambda x: -len(X.lower_covers(x)) - len(X.upper_covers(x)))
    image = [-1] * X.n
    used = [False] * Y.n

    def fits(x, y):
        if maxima_to_maxima and x in x_tops and y not in y_tops:
            return False
        for z in range(X.n):
            w = image[z]
            if w < 0:
                continue
            if X.leq(x, z) != Y.leq(y, w) or X.leq(z, x) != Y.leq(w, y):
                return False
            if X.is_cover(x, z) != Y.is_cover(y, w) or X.is_cover(z, x) != Y.is_cover(w, y):
                return False
        return True

    def extend(k):
        if k == X.n:
            yield list(image)
            return
        x = order[k]
        for y in range(Y.n):
            if not used[y] and fits(x, y):
                image[x] = y
                used[y] = True
                yield from extend(k + 1)
                used[y] = False
                image[x] = -1

    yield from extend(0)


def two_pendant_four_crown(P: Poset) -> bool:
    """R is not a cover-preserving subposet of P with its maxima maximal in P."""
    R = two_pendant_four_crown_poset()
    return next(cover_preserving_embeddings(R, P, maxima_to_maxima=True), None) is None


PROPERTIES: dict[str, Callable[[Poset], bool]] = {
    "p2": p2,
    "bipartite_maximal": bipartite_maximal,
    "dioecious": dioecious,
    "two_cover": two_cover,
    "forbidden_marriage": forbidden_marriage,
    "two_pendant_four_crown": two_pendant_four_crown,
}


def check_all(P: Poset) -> dict[str, bool]:
    if P.n == 0:
        raise ValueError("the poset must be nonempty")
    return {name: check(P) for name, check in PROPERTIES.items()}


# ---------------------------------------------------------------- exhaustive search


def naturally_labeled_posets(n: int) -> Iterator[Poset]:
    """Every poset on n elements, up to isomorphism at least once.

    Element j is added with a strict down-set chosen among the down-sets of
    the poset on 0..j-1, so every linear extension order is covered.
    """

    def grow(up):
        j = len(up)
        if j == n:
            yield Poset(n, up)
            return
        P = Poset(j, up)
        for d in P.downsets():
            new_up = [u | (1 << j if d >> x & 1 else 0) for x, u in enumerate(up)]
            yield from grow(new_up + [1 << j])

    yield from grow([])


@dataclass(frozen=True)
class Witness:
    lattice_size: int
    poset: Poset


def min_failing(prop: str | Callable[[Poset], bool], size_bound: int) -> Witness | None:
    """Least |downset_lattice(P)| over posets P with 1..size_bound elements failing prop."""
    if size_bound > MAX_ENUMERATION:
        raise BoundTooLarge(f"exhaustive search is limited to {MAX_ENUMERATION} elements")
    check = PROPERTIES[prop] if isinstance(prop, str) else prop
    best = None
    for n in range(1, size_bound + 1):
        for P in naturally_labeled_posets(n):
            if check(P):
                continue
            size = P.count_downsets()
            if best is None or size < best.lattice_size:
                best = Witness(size, P)
    return best
