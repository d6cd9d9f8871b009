"""Command line entry point: ``lampkit build|render|report|verify|enumerate|check-poset``.

Exit status is 0 when everything passes, 1 when a check fails and 2 for
usage, parse and construction errors.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from itertools import islice

from .construction import Recipe, build, enumerate_recipes, random_recipe
from .io import ParseError, inline_recipe, parse_poset, parse_recipe, parse_recipe_inline
from .lattice import LatticeError
from .poset import Poset

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_recipe(args) -> Recipe:
    if args.expr is not None:
        return parse_recipe_inline(args.expr)
    if args.recipe is None:
        raise UsageError("give a recipe file, '-' for standard input, or -e 'grid A B; fork L R N'")
    if args.recipe == "-":
        return parse_recipe(sys.stdin.read())
    try:
        with open(args.recipe, encoding="utf-8") as fh:
            return parse_recipe(fh.read())
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------- commands


def cmd_build(args) -> int:
    from .lamps import lamps as find_lamps
    from .verify import validate_slim_rectangular

    recipe = _read_recipe(args)
    L = build(recipe)
    found = find_lamps(L)
    internal = sum(I.internal for I in found)
    report = validate_slim_rectangular(L)
    verdicts = " ".join(f"{k}={_yes(v)}" for k, v in vars(report).items())
    lines = [
        f"recipe: {inline_recipe(recipe)}",
        f"{L.n} elements, {len(L.covers)} edges, {len(found)} lamps "
        f"({len(found) - internal} boundary, {internal} internal)",
        f"validation: {verdicts}",
        "all checks pass" if report.ok else "FAILED: " + ", ".join(report.failed()),
    ]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_render(args) -> int:
    from .render import RenderOptions, render_svg

    recipe = _read_recipe(args)
    options = RenderOptions(scale=args.scale, show_lit=args.show_lit,
                            show_feet=not args.no_feet, thick_tubes=not args.thin_tubes)
    _emit(args, render_svg(build(recipe), options))
    return EXIT_OK


def _poset_lines(P: Poset, names=None) -> list[str]:
    names = names or P.names
    return [f"{names[a]} < {names[b]}" for a, b in sorted(P.covers)]


def cmd_report(args) -> int:
    from .congruence import EdgeCongruences, check_main_lemma, jir_con
    from .lamps import LampSystem, RELATIONS
    from .properties import check_all
    from .trajectories import TrajectoryAnalysis

    recipe = _read_recipe(args)
    L = build(recipe)
    S = LampSystem(L)
    lay = S.lay
    out = [f"recipe: {inline_recipe(recipe)}", f"{L.n} elements, {len(L.covers)} edges",
           f"grid embedding: {lay.width_left} x {lay.width_right}", "lamps:"]
    for k, I in enumerate(S.lamps):
        out.append(f"  {k}: {I.kind.value} foot {L.name(I.foot)}{lay.indices(I.foot)} "
                   f"peak {L.name(I.peak)}{lay.indices(I.peak)} "
                   f"tubes {','.join(L.name(p) for p in I.tubes)}")
    out.append("relations:")
    for kind in RELATIONS:
        pairs = " ".join(f"({i},{j})" for i, j in sorted(S.relation_pairs(kind)))
        out.append(f"  {kind}: {pairs or '-'}")
    out.append("lamp poset covers: " + (", ".join(_poset_lines(S.poset, [str(k) for k in range(len(S))])) or "-"))
    edges = EdgeCongruences.of(L)
    members, J = jir_con(L, edges)
    lemma = check_main_lemma(L, S, edges)
    out.append(f"join-irreducible congruences: {len(members)}; down-sets: {J.count_downsets()}")
    out.append("lamp order matches congruence order: " + _yes(lemma.ok))
    out.extend(f"  {p}" for p in lemma.problems)
    T = TrajectoryAnalysis.of(L, lay, S)
    hats = sum(u.hat for u in T.trajs)
    out.append(f"trajectories: {len(T.trajs)} ({hats} hat, {len(T.trajs) - hats} straight)")
    out.append("properties of Jir(Con L): " + " ".join(f"{k}={_yes(v)}" for k, v in check_all(J).items()))
    _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def _recipes(args):
    if args.sample is not None:
        return [random_recipe(args.seed + k, args.max_size, args.max_rank, args.max_steps)
                for k in range(args.sample)]
    return enumerate_recipes(args.max_size, args.max_rank, args.max_steps)


def cmd_enumerate(args) -> int:
    recipes = _recipes(args)
    if args.limit is not None:
        recipes = islice(recipes, args.limit)
    _emit(args, "".join(inline_recipe(r) + "\n" for r in recipes))
    return EXIT_OK


def _verify_one(recipe):
    from .verify import verify_recipe

    return verify_recipe(recipe)


def verify_lines(recipes, jobs: int = 1):
    """Report lines in recipe order, then tallies; yields ``(text, failed)``."""
    from .verify import CHECKS

    if jobs > 1:
        from multiprocessing import Pool

        pool = Pool(jobs)
        reports = pool.imap(_verify_one, recipes, chunksize=8)
    else:
        pool = None
        reports = map(_verify_one, recipes)
    total = failures = 0
    by_check: Counter = Counter()
    notes: Counter = Counter()
    try:
        for rep in reports:
            total += 1
            yield rep.line(), not rep.ok
            if not rep.ok:
                failures += 1
                by_check.update(rep.failed())
                for check in rep.failed():
                    for problem in rep.problems[check]:
                        yield f"  {check}: {problem}", True
                yield f"  replay: lampkit report -e '{rep.label}'", True
            for key, value in rep.notes.items():
                if key != "con" and value:
                    notes[key] += 1
    finally:
        if pool is not None:
            pool.close()
    yield f"{total} lattices, {failures} failures", False
    if by_check:
        yield "failed checks: " + " ".join(f"{k}={by_check[k]}" for k in CHECKS if by_check[k]), False
    if notes:
        yield "lattices with notes: " + " ".join(f"{k}={v}" for k, v in sorted(notes.items())), False


def cmd_verify(args) -> int:
    failed = False
    sink = open(args.output, "w", encoding="utf-8", newline="\n") if args.output else sys.stdout
    try:
        for text, bad in verify_lines(_recipes(args), args.jobs):
            failed |= bad
            if bad or not args.quiet or not text.startswith(("grid", "  ")):
                sink.write(text + "\n")
                sink.flush()
    finally:
        if sink is not sys.stdout:
            sink.close()
    return EXIT_FAIL if failed else EXIT_OK


def cmd_check_poset(args) -> int:
    from .properties import check_all

    try:
        with open(args.poset, encoding="utf-8") if args.poset != "-" else sys.stdin as fh:
            P = parse_poset(fh.read())
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    if P.n == 0:
        raise UsageError("the poset has no elements")
    verdicts = check_all(P)
    lines = [f"{P.n} elements, {len(P.covers)} covers, {P.count_downsets()} down-sets"]
    lines += [f"{name}: {'holds' if ok else 'fails'}" for name, ok in verdicts.items()]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all(verdicts.values()) else EXIT_FAIL


# ---------------------------------------------------------------- parser


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lampkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def recipe_args(p):
        p.add_argument("recipe", nargs="?", help="recipe file, or - for standard input")
        p.add_argument("-e", "--expr", help="inline recipe such as 'grid 2 2; fork 0 0 1'")
        p.add_argument("-o", "--output", help="write to this file instead of standard output")

    def bound_args(p, size):
        p.add_argument("--max-size", type=_positive, default=size)
        p.add_argument("--max-steps", type=int, default=3)
        p.add_argument("--max-rank", type=_positive, default=3)
        p.add_argument("--sample", type=_positive, help="draw this many random recipes instead")
        p.add_argument("--seed", type=int, default=0, help="seed for --sample")
        p.add_argument("-o", "--output", help="write to this file instead of standard output")

    p = sub.add_parser("build", help="construct a lattice and validate it")
    recipe_args(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("render", help="draw the diagram as SVG")
    recipe_args(p)
    p.add_argument("--scale", type=_positive, default=40, help="pixels per grid unit")
    p.add_argument("--show-lit", metavar="LAMPS",
                   help="shade Lit sets: all, internal, boundary or comma-separated lamp indices")
    p.add_argument("--no-feet", action="store_true", help="do not fill lamp feet")
    p.add_argument("--thin-tubes", action="store_true", help="draw neon tubes like other edges")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("report", help="lamps, relations, congruences and trajectories")
    recipe_args(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="run every check over an enumeration")
    bound_args(p, 40)
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    p.add_argument("-q", "--quiet", action="store_true", help="print only failures and tallies")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list recipes in canonical order")
    bound_args(p, 40)
    p.add_argument("--limit", type=_positive)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check-poset", help="test the six properties on a poset file")
    p.add_argument("poset", help="poset file, or - for standard input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_check_poset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "max_steps", 0) < 0:
            raise UsageError("--max-steps must be non-negative")
        return args.func(args)
    except ParseError as exc:
        print(f"lampkit: parse error: {exc}", file=sys.stderr)
    except (UsageError, LatticeError, ValueError) as exc:
        print(f"lampkit: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
