"""Deterministic SVG drawings of slim rectangular lattices.

Lamp feet are black dots, neon tubes are thick edges and selected
illuminated sets are grey polygons drawn beneath everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import Layout, layout as make_layout
from .lamps import LampSystem
from .lattice import FiniteLattice, irreducibles


class UnknownLamp(ValueError):
    pass


@dataclass(frozen=True)
class RenderOptions:
    scale: int = 40
    show_lit: str | None = None
    show_feet: bool = True
    thick_tubes: bool = True

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def select_lamps(system: LampSystem, selector: str | None) -> list[int]:
    """Lamp indices named by ``all``, ``internal``, ``boundary`` or ``0,2,...``."""
    if selector is None:
        return []
    k = len(system.lamps)
    if selector == "all":
        return list(range(k))
    if selector == "internal":
        return [i for i, I in enumerate(system.lamps) if I.internal]
    if selector == "boundary":
        return [i for i, I in enumerate(system.lamps) if I.boundary]
    chosen = []
    for word in selector.split(","):
        word = word.strip()
        if not word.isdigit() or int(word) >= k:
            raise UnknownLamp(f"no lamp {word!r}; expected all, internal, boundary or indices below {k}")
        chosen.append(int(word))
    return sorted(set(chosen))


def _num(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{float(x):.6f}".rstrip("0")


def render_svg(L: FiniteLattice, options: RenderOptions = RenderOptions(),
               lay: Layout | None = None) -> str:
    lay = lay or make_layout(L)
    system = LampSystem(L, lay)
    lit = select_lamps(system, options.show_lit)
    s = options.scale
    margin = s
    A, B = lay.width_left, lay.width_right
    width = (A + B) * s + 2 * margin
    height = (A + B) * s + 2 * margin

    def xy(pt):
        u, v = pt
        return _num((Fraction(u) + A) * s + margin), _num((A + B - Fraction(v)) * s + margin)

    dot = max(2, s // 8)
    thin = max(1, s // 20)
    thick = 3 * thin
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if lit:
        out.append('<g id="lit" fill="#c8c8c8" stroke="#c8c8c8">')
        for i in lit:
            region = system.regions[i].lit
            if region.polygon:
                pts = " ".join(",".join(xy(p)) for p in region.polygon)
                out.append(f'<polygon data-lamp="{i}" points="{pts}" stroke-width="{thin}"/>')
            for a, b in region.segments:
                (x1, y1), (x2, y2) = xy(a), xy(b)
                out.append(f'<line data-lamp="{i}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                           f'stroke-width="{thick}"/>')
        out.append("</g>")
    mir = irreducibles(L).mir
    out.append(f'<g id="edges" stroke="black" stroke-width="{thin}">')
    for p, q in sorted(L.covers):
        (x1, y1), (x2, y2) = xy(lay.point(p)), xy(lay.point(q))
        tube = options.thick_tubes and p in mir
        extra = f' stroke-width="{thick}" class="tube"' if tube else ""
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{extra}/>')
    out.append("</g>")
    feet = {I.foot for I in system.lamps} if options.show_feet else set()
    out.append(f'<g id="elements" stroke="black" stroke-width="{thin}">')
    for x in range(L.n):
        cx, cy = xy(lay.point(x))
        fill = "black" if x in feet else "white"
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{dot}" fill="{fill}"><title>{L.name(x)}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
