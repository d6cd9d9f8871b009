"""Plain-text formats for recipes and posets.

A recipe file has one ``grid A B`` line followed by ``fork L R N`` lines; a
poset file has ``elem NAME`` and ``cover LOWER UPPER`` lines. In both, ``#``
starts a comment and blank lines are ignored.
"""

from __future__ import annotations

import shlex

from .construction import Recipe, Step
from .poset import NotAntisymmetric, Poset


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            try:
                yield number, shlex.split(body)
            except ValueError as exc:
                raise ParseError(str(exc), number) from exc


def _ints(words, count, number):
    if len(words) != count:
        raise ParseError(f"expected {count} integers after {words[0]!r}", number)
    try:
        return [int(w) for w in words[1:]]
    except ValueError as exc:
        raise ParseError(f"not an integer in {' '.join(words)!r}", number) from exc


def parse_recipe(text: str) -> Recipe:
    """Syntax only: grid sides and fork ranks are checked when the recipe is built."""
    recipe = None
    for number, words in _lines(text):
        head = words[0]
        if head == "grid":
            if recipe is not None:
                raise ParseError("a recipe has exactly one grid line", number)
            a, b = _ints(words, 3, number)
            recipe = Recipe(a, b)
        elif head == "fork":
            if recipe is None:
                raise ParseError("fork before grid", number)
            l, r, n = _ints(words, 4, number)
            if l < 0 or r < 0:
                raise ParseError("cell indices must be non-negative", number)
            recipe = recipe.then(l, r, n)
        else:
            raise ParseError(f"unknown directive {head!r}", number)
    if recipe is None:
        raise ParseError("missing grid line")
    return recipe


def inline_recipe(recipe: Recipe) -> str:
    """One-line form with ``;`` separators, accepted by ``parse_recipe_inline``."""
    return format_recipe(recipe).strip().replace("\n", "; ")


def parse_recipe_inline(text: str) -> Recipe:
    return parse_recipe(text.replace(";", "\n"))


def format_recipe(recipe: Recipe) -> str:
    lines = [f"grid {recipe.grid_a} {recipe.grid_b}"]
    lines += [f"fork {s.l_index} {s.r_index} {s.rank}" for s in recipe.steps]
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> Poset:
    names: list[str] = []
    index: dict[str, int] = {}
    pairs = []
    for number, words in _lines(text):
        head = words[0]
        if head == "elem":
            if len(words) != 2:
                raise ParseError("elem takes one name", number)
            if words[1] in index:
                raise ParseError(f"duplicate element {words[1]!r}", number)
            index[words[1]] = len(names)
            names.append(words[1])
        elif head == "cover":
            if len(words) != 3:
                raise ParseError("cover takes two names", number)
            for w in words[1:]:
                if w not in index:
                    raise ParseError(f"undeclared element {w!r}", number)
            if words[1] == words[2]:
                raise ParseError("an element cannot cover itself", number)
            pairs.append((index[words[1]], index[words[2]]))
        else:
            raise ParseError(f"unknown directive {head!r}", number)
    try:
        return Poset.from_relation(len(names), pairs, names)
    except NotAntisymmetric as exc:
        raise ParseError("cover lines contain a cycle") from exc


def format_poset(P: Poset) -> str:
    lines = [f"elem {shlex.quote(name)}" for name in P.names]
    lines += [f"cover {shlex.quote(P.names[a])} {shlex.quote(P.names[b])}" for a, b in sorted(P.covers)]
    return "\n".join(lines) + "\n"
