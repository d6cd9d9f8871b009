"""Slim rectangular lattices built by multifork extensions, their lamps and congruences."""

from .congruence import Congruence, EdgeCongruences, check_main_lemma, con_lattice, jir_con
from .construction import Recipe, Step, build, enumerate_recipes, grid, multifork, random_recipe, s_n
from .geometry import Layout, layout
from .io import ParseError, format_poset, format_recipe, parse_poset, parse_recipe
from .lamps import Lamp, LampSystem, cov, lamps, lift
from .lattice import FiniteLattice, build_lattice
from .poset import Poset
from .properties import PROPERTIES, check_all, min_failing
from .render import RenderOptions, render_svg
from .trajectories import TrajectoryAnalysis, trajectories
from .verify import LatticeReport, validate_slim_rectangular, verify_lattice, verify_recipe

__all__ = [name for name in dir() if not name.startswith("_")]
