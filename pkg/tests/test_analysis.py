"""Confluence-family checks: abstract, exhaustive, and critical-pair."""

import random

from relrew.analysis import (
    FAILS,
    HOLDS,
    check_cp,
    check_weak_confluence_technique,
    closure_nodes,
    exhaustive_church_rosser,
    exhaustive_confluence,
    exhaustive_weak_confluence,
    has_diamond,
    is_church_rosser,
    is_confluent,
    is_weakly_confluent,
    seed_terms,
    spectrum_survey,
)
from relrew.relalg import Rel, random_rel
from relrew.rewrite import ground_instances, parse_trs
from relrew.syntax import universe
from relrew.termrel import TermRel

NONCONFLUENT = "sig a/0 b/0 c/0\nrule a -> b\nrule a -> c\n"


# ---------------------------------------------------------------------------
# abstract checks

def test_diamond_example():
    a = Rel.from_pairs(3, [(0, 1), (0, 2), (1, 0), (2, 0)])
    assert has_diamond(a).ok


def test_weakly_confluent_but_not_confluent():
    # the classic counterexample: 1 <-> 0-ish loop with two normal forms
    a = Rel.from_pairs(4, [(0, 1), (1, 0), (0, 2), (1, 3)])
    assert is_weakly_confluent(a).ok
    report = is_confluent(a)
    assert not report.ok
    assert report.witnesses  # e.g. the unjoinable normal forms 2 and 3


def test_confluent_example():
    a = Rel.from_pairs(3, [(0, 1), (0, 2), (1, 2)])
    assert is_confluent(a).ok
    assert is_church_rosser(a).ok


def test_cr_iff_confluence_random():
    rng = random.Random(99)
    for _ in range(300):
        n = rng.randint(1, 6)
        a = random_rel(n, rng.uniform(0.05, 0.5), rng)
        assert is_church_rosser(a).ok == is_confluent(a).ok


# ---------------------------------------------------------------------------
# exhaustive term-level checks

def test_seed_terms_structure(arith):
    seeds = seed_terms(arith, 2)
    assert len(seeds) == len(set(seeds))
    ground_only = universe(arith.signature, (), 2).terms()
    for t in ground_only:
        assert t in seeds


def test_closure_nodes_contains_reducts(arith):
    seeds = [arith.parse("A(S(0),0)")]
    nodes = closure_nodes(arith, seeds)
    assert arith.parse("S(0)") in nodes


def test_arith_weakly_confluent_small(arith):
    seeds = seed_terms(arith, 2)
    assert exhaustive_weak_confluence(arith, seeds).verdict == HOLDS


def test_arith_confluent_small(arith):
    seeds = seed_terms(arith, 1)
    assert exhaustive_confluence(arith, seeds).verdict == HOLDS
    assert exhaustive_church_rosser(arith, seeds).verdict == HOLDS


def test_nonconfluent_trs_detected():
    trs = parse_trs(NONCONFLUENT)
    seeds = seed_terms(trs, 1)
    report = exhaustive_weak_confluence(trs, seeds)
    assert report.verdict == FAILS
    assert ("b", "c") in [tuple(w) for w in report.witnesses]
    assert exhaustive_church_rosser(trs, seeds).verdict == FAILS


def test_spectrum_survey_small(arith):
    report = spectrum_survey(arith, seed_terms(arith, 2))
    assert report.ok
    assert report.inclusion_violations == []
    assert report.stars_equal


# ---------------------------------------------------------------------------
# critical pairs

def test_check_cp_arith(arith):
    report = check_cp(arith, depth=2)
    assert report.cp1.verdict == HOLDS
    assert report.cp2.verdict == HOLDS
    assert report.cp1_prime.verdict == HOLDS


def test_check_cp_overlapping_rules():
    report = check_cp(parse_trs(NONCONFLUENT), depth=1)
    assert report.cp1_prime.verdict == FAILS
    assert report.cp1.verdict == FAILS  # b and c do not join


def test_technique_on_arith(arith):
    u = universe(arith.signature, arith.variables, 2)
    g = ground_instances(arith, u)
    report = check_weak_confluence_technique(g)
    assert report.premises_hold
    assert report.conclusion.ok


def test_technique_implication_random(arith):
    """Whenever both premises hold on a non-overflowing sample, the
    conclusion must hold as well."""
    u = universe(arith.signature, arith.variables, 2)
    sup = u.terms_up_to(1)
    rng = random.Random(123)
    checked = 0
    for _ in range(60):
        pairs = frozenset(
            (rng.choice(sup), rng.choice(sup)) for _ in range(rng.randint(0, 5))
        )
        report = check_weak_confluence_technique(TermRel(u, pairs))
        if report.premises_hold and report.overflow_dropped == 0:
            checked += 1
            assert report.conclusion.ok
    assert checked > 10  # the implication was actually exercised
