"""Acceptance criteria, one verdict line each (see the terminal summary).

The default corpus is every recipe up to 22 elements plus a seeded random
sample of recipes up to 40 elements.  Set ``LAMPKIT_FULL_SWEEP=1`` to run the
complete enumeration up to 40 elements instead (hours on one core).
"""

import os
import time
from collections import Counter
from dataclasses import dataclass

import pytest

from lampkit.cli import main
from lampkit.construction import (
    Recipe, build, distributive_cells, enumerate_recipes, grid, random_recipe, s_n,
)
from lampkit.geometry import layout
from lampkit.io import inline_recipe
from lampkit.lamps import Kind, LampSystem, RELATIONS, cov, lift
from lampkit.lattice import FiniteLattice
from lampkit.properties import (
    PROPERTIES, check_all, downset_lattice, min_failing, two_pendant_four_crown_poset,
)
from lampkit.trajectories import trajectories
from lampkit.verify import FOOT_RELATIONS, LatticeReport, verify_lattice

from conftest import lattice

FULL = os.environ.get("LAMPKIT_FULL_SWEEP") == "1"
EXHAUSTIVE_SIZE = 40 if FULL else 22
SAMPLE = 0 if FULL else 300
SAMPLE_SEED = 20240101


@dataclass
class Entry:
    label: str
    L: FiniteLattice
    S: LampSystem
    report: LatticeReport


def corpus_recipes() -> list[Recipe]:
    seen = {}
    for recipe in enumerate_recipes(EXHAUSTIVE_SIZE, 3, 3):
        seen.setdefault(inline_recipe(recipe), recipe)
    for k in range(SAMPLE):
        recipe = random_recipe(SAMPLE_SEED + k, 40, 3, 3)
        seen.setdefault(inline_recipe(recipe), recipe)
    return list(seen.values())


@pytest.fixture(scope="module")
def corpus():
    start = time.perf_counter()
    entries = []
    for recipe in corpus_recipes():
        label = inline_recipe(recipe)
        L = build(recipe, check=True)
        entries.append(Entry(label, L, LampSystem(L), verify_lattice(L, label)))
    return entries, time.perf_counter() - start


def scope(entries, seconds):
    largest = max(e.L.n for e in entries)
    how = "full enumeration" if FULL else f"all recipes <= {EXHAUSTIVE_SIZE} + {SAMPLE} sampled <= 40"
    return f"{len(entries)} lattices ({how}; largest {largest} elements; {seconds:.0f}s)"


def failures(entries, checks):
    bad = Counter()
    where = {}
    for e in entries:
        for check in checks:
            if e.report.problems.get(check):
                bad[check] += 1
                where.setdefault(check, (e.label, e.report.problems[check][0]))
    return bad, where


def verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


BASE_CHECKS = ("construction", "validation", "boundary", "tables", "distributive_cells", "lamps",
               "regions")


# ---------------------------------------------------------------- criterion 1


def test_c1_main_lemma(corpus, record):
    entries, seconds = corpus
    checks = BASE_CHECKS + ("relations", "lamp_poset", "main_lemma")
    bad, where = failures(entries, checks)
    roof = sum(1 for e in entries if e.report.notes.get("roof_pairs"))
    record(f"criterion 1 (main lemma): {verdict(not bad)} on {scope(entries, seconds)}; "
           f"rho_alg closure antisymmetric, phi an order isomorphism onto Jir(Con L), covers in rho_alg; "
           f"six relations equal rho_alg, the two closed-foot relations add roof pairs in {roof} lattices")
    assert not bad, where


def test_c1_foot_relations_differ_exactly_on_roof_pairs(corpus):
    entries, _ = corpus
    for e in entries:
        roof = e.S.roof_pairs()
        for kind in RELATIONS:
            diff = e.S.relation_pairs(kind) ^ e.S.rho_alg
            assert diff == (roof if kind in FOOT_RELATIONS else set()), (e.label, kind)


@pytest.mark.xfail(strict=True, reason="a foot lying on the roof of another lamp's Lit set is "
                                       "in the closed Lit set but not below the other foot")
def test_c1_all_eight_relations_coincide_literally(corpus, record):
    entries, _ = corpus
    bad = [e.label for e in entries
           if any(e.S.relation_pairs(kind) != e.S.rho_alg for kind in RELATIONS)]
    record(f"criterion 1 literal eight-way agreement: {verdict(not bad)}; "
           f"{len(bad)} lattices differ, first {bad[0] if bad else '-'}")
    assert not bad


# ---------------------------------------------------------------- criterion 2


def test_c2_properties_and_geometric_lemmas(corpus, record):
    entries, seconds = corpus
    checks = ("properties", "separatory", "floor_aligned", "no_gap", "sufficiently_disjoint")
    bad, where = failures(entries, checks)
    pairs = sum(1 for e in entries if e.report.notes.get("floor_aligned_boundary_pairs"))
    record(f"criterion 2 (six properties of Jir(Con L), no separatory pair, no floor-aligned pair "
           f"unless both lamps are boundary, no_gap with independent lower covers): "
           f"{verdict(not bad)} on {len(entries)} lattices; same-side boundary pairs are floor-aligned "
           f"in {pairs} lattices")
    assert not bad, where


def lift_blocked(L, S, I) -> bool:
    """Peak I is on the cov chain from foot I, and another lamp's peak comes first."""
    peaks = {J.peak for J in S.lamps}
    chain = [I.foot]
    while chain[-1] != L.top:
        chain.append(cov(L, chain[-1]))
    assert I.peak in chain
    return any(x in peaks for x in chain[1:chain.index(I.peak)])


def test_c2_lift_fails_exactly_when_blocked(corpus, record):
    entries, _ = corpus
    failing = Counter()
    for e in entries:
        for k, I in enumerate(e.S.lamps):
            wrong = lift(e.L, I.foot) != I.peak
            assert wrong == lift_blocked(e.L, e.S, I), (e.label, k)
            failing[e.label] += wrong
    bad = [label for label, n in failing.items() if n]
    record(f"criterion 2 lift: Peak I = lift(foot I) FAILS in {len(bad)} of {len(entries)} lattices "
           f"({sum(failing.values())} lamps); Peak I is always on the cov chain from foot I, and lift "
           f"fails exactly when another lamp's peak comes first; smallest counterexample "
           f"'grid 2 2; fork 0 0 3; fork 1 1 1'")


def test_c2_lift_counterexamples():
    L = lattice("grid 2 2; fork 0 0 3; fork 1 1 1")
    S = LampSystem(L)
    wrong = [I for I in S.lamps if lift(L, I.foot) != I.peak]
    assert len(wrong) == 1 and wrong[0].internal and len(wrong[0].tubes) == 3
    # the blocking lamp's foot need not lie on the chain
    L = lattice("grid 2 2; fork 0 0 3; fork 1 1 2; fork 1 2 1")
    S = LampSystem(L)
    big = next(I for I in S.lamps if len(I.tubes) == 3)
    blocker = next(J for J in S.lamps if J.peak == lift(L, big.foot))
    chain = [big.foot]
    while chain[-1] != blocker.peak:
        chain.append(cov(L, chain[-1]))
    assert blocker.peak != big.peak and blocker.foot not in chain
    assert not {J.foot for J in S.lamps} & set(chain[1:])


@pytest.mark.xfail(strict=True, reason="lift stops at the peak of a lamp whose foot lies on the chain")
def test_c2_lift_literal(corpus):
    entries, _ = corpus
    report_lift = [e.label for e in entries if e.report.problems.get("lift")]
    assert not report_lift


@pytest.mark.xfail(strict=True, reason="two boundary lamps on the same side have collinear floors")
def test_c2_floor_aligned_literal(corpus):
    entries, _ = corpus
    k_pairs = [e.label for e in entries if e.report.notes.get("floor_aligned_boundary_pairs")]
    assert not k_pairs


# ---------------------------------------------------------------- criterion 3


def seven_lamp_fork_chains():
    """Every grid with seven boundary lamps, a rank-1 fork, then a rank-3 fork."""
    for a in range(2, 5):
        b = 9 - a
        G = grid(a, b)
        lay = layout(G)
        for c1 in distributive_cells(G, lay, cross_check=False):
            first = Recipe(a, b).then(*lay.indices(c1.bottom), 1)
            L1 = build(first, check=False)
            lay1 = layout(L1)
            for c2 in distributive_cells(L1, lay1, cross_check=False):
                yield first, L1, first.then(*lay1.indices(c2.bottom), 3)


def test_c3_published_constants(record):
    R = two_pendant_four_crown_poset()
    r_size = downset_lattice(R).n
    s_ok = True
    for n in range(1, 6):
        S = LampSystem(s_n(n))
        kinds = Counter(I.kind for I in S.lamps)
        internal = next(k for k, I in enumerate(S.lamps) if I.internal)
        s_ok &= len(S.lamps) == 3 and kinds[Kind.INTERNAL] == 1
        s_ok &= all(S.poset.lt(internal, k) for k, I in enumerate(S.lamps) if I.boundary)
    counts = set()
    cases = 0
    for _, L1, second in seven_lamp_fork_chains():
        t1 = trajectories(L1)
        t2 = trajectories(build(second, check=False))
        counts.add((len(t1), sum(u.hat for u in t1),
                    sum(u.hat for u in t2), sum(not u.hat for u in t2)))
        cases += 1
    ok = r_size == 56 and s_ok and counts == {(8, 1, 4, 7)}
    record(f"criterion 3 (constants): {verdict(ok)}; |D(R)| = {r_size}; S_1..S_5 have 3 lamps with the "
           f"internal lamp below both boundary lamps: {s_ok}; {cases} rank-1 then rank-3 fork chains on "
           f"grids with 7 boundary lamps give (trajectories, hats, hats after, straight after) = "
           f"{sorted(counts)}")
    assert ok


# ---------------------------------------------------------------- criterion 4


def test_c4_oracle_equivalences(corpus, record):
    entries, seconds = corpus
    bad, where = failures(entries, ("illumination", "birkhoff", "trajectories"))
    skipped = sum(1 for e in entries if e.report.notes.get("birkhoff") == "skipped")
    largest_con = max(e.report.notes.get("con", 0) for e in entries)
    record(f"criterion 4 (ray test = Lit polygons at every vertex, |Con L| = down-sets of Jir(Con L), "
           f"Theta-blocks = lamps): {verdict(not bad)} on {len(entries)} lattices; "
           f"largest Con L {largest_con}, Birkhoff skipped {skipped}")
    assert not bad, where
    assert skipped == 0


# ---------------------------------------------------------------- criterion 5


def test_c5_minimal_failures(record):
    start = time.perf_counter()
    minima = {}
    for name in PROPERTIES:
        witness = min_failing(name, 5)
        minima[name] = witness.lattice_size if witness else None

    def others_hold(P):
        v = check_all(P)
        return v["forbidden_marriage"] or not all(x for k, x in v.items() if k != "forbidden_marriage")

    restricted = min_failing(others_hold, 5).lattice_size
    seconds = time.perf_counter() - start
    table = " ".join(f"{k}={'none' if v is None else v}" for k, v in minima.items())
    record(f"criterion 5 (least down-set lattice failing each property, posets <= 5 elements, "
           f"{seconds:.0f}s): {table}; forbidden marriage fails already at 6 (the diamond), not 8; "
           f"with the other five properties required the least failure has 8 elements (D_8)")
    assert minima["forbidden_marriage"] == 6 and restricted == 8
    assert minima["two_pendant_four_crown"] is None
    assert seconds < 120


# ---------------------------------------------------------------- criterion 6


def test_c6_determinism(tmp_path, record, capsys):
    outputs = []
    for run in range(2):
        v = tmp_path / f"verify{run}.txt"
        r = tmp_path / f"render{run}.svg"
        assert main(["verify", "--sample", "15", "--seed", "5", "--max-size", "30", "-o", str(v)]) == 0
        assert main(["render", "-e", "grid 3 4; fork 1 0 2; fork 0 1 1", "--show-lit", "all",
                     "-o", str(r)]) == 0
        outputs.append((v.read_bytes(), r.read_bytes()))
    capsys.readouterr()
    ok = outputs[0] == outputs[1]
    record(f"criterion 6 (determinism of verify and render output bytes): {verdict(ok)}")
    assert ok
