"""Confluence-family property checks and the critical-pair machinery.

Abstract checks (diamond, confluence, weak confluence, Church-Rosser) work
on finite :class:`relrew.relalg.Rel` values and are exact.  Term-level
checks run either on the exhaustive reachable closure of a terminating
system (definitive verdicts) or on a truncated working universe, in which
case a failing inequality whose evaluation dropped pairs is reported as
``unconfirmed`` rather than ``fails``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .relalg import Rel
from .rewrite import (
    TRS,
    full_step,
    ground_instances,
    parallel_step,
    reduction_graph,
    sequential_step,
)
from .syntax import Term, Universe, format_term, term_key, universe
from .termrel import (
    OpStats,
    TermRel,
    check_refine,
    delta,
    full_closure,
    sequential_closure,
    subst_rel,
    successors,
)

HOLDS = "holds"
FAILS = "fails"
UNCONFIRMED = "unconfirmed"


@dataclass
class PropertyReport:
    property: str
    verdict: str
    witnesses: List[Tuple[str, str]] = field(default_factory=list)
    overflow_dropped: int = 0

    @property
    def ok(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "witnesses": [list(w) for w in self.witnesses],
            "overflow_dropped": self.overflow_dropped,
        }


def _verdict(ok: bool, dropped: int, exhaustive: bool) -> str:
    if ok:
        return HOLDS
    return FAILS if exhaustive or dropped == 0 else UNCONFIRMED


MAX_WITNESSES = 5


# ---------------------------------------------------------------------------
# abstract (finite-carrier) checks

def _rel_report(name: str, lhs: Rel, rhs: Rel,
                carrier: Optional[Sequence] = None,
                equality: bool = False) -> PropertyReport:
    if equality:
        bad = sorted((lhs.pairs ^ rhs.pairs))
    else:
        bad = sorted(lhs.pairs - rhs.pairs)
    label = (lambda i: str(carrier[i]) if carrier is not None else str(i))
    witnesses = [(label(i), label(j)) for i, j in bad[:MAX_WITNESSES]]
    return PropertyReport(name, HOLDS if not bad else FAILS, witnesses)


def has_diamond(a: Rel, carrier: Optional[Sequence] = None) -> PropertyReport:
    """a°;a <= a;a°: one-step peaks close in one step."""
    return _rel_report(
        "diamond", a.converse().compose(a), a.compose(a.converse()), carrier
    )


def is_confluent(a: Rel, carrier: Optional[Sequence] = None) -> PropertyReport:
    """a*°;a* <= a*;a*°: star peaks are joinable."""
    s = a.kleene_star()
    return _rel_report(
        "confluence", s.converse().compose(s), s.compose(s.converse()), carrier
    )


def is_weakly_confluent(a: Rel, carrier: Optional[Sequence] = None) -> PropertyReport:
    """a°;a <= a*;a*°: one-step peaks are joinable."""
    s = a.kleene_star()
    return _rel_report(
        "weak-confluence", a.converse().compose(a), s.compose(s.converse()), carrier
    )


def is_church_rosser(a: Rel, carrier: Optional[Sequence] = None) -> PropertyReport:
    """(a | a°)* = a*;a°*: convertible elements are joinable."""
    s = a.kleene_star()
    return _rel_report(
        "church-rosser",
        a.sym_closure().kleene_star(),
        s.compose(s.converse()),
        carrier,
        equality=True,
    )


# ---------------------------------------------------------------------------
# exhaustive checks on reachable closures

def _seq_adjacency(trs: TRS, nodes: Set[Term]) -> Dict[Term, Tuple[Term, ...]]:
    return {t: tuple(sorted(sequential_step(trs, t), key=term_key))
            for t in nodes}


def _reach(adj: Dict[Term, Tuple[Term, ...]], seed: Term,
           bound: Optional[int] = None) -> Set[Term]:
    seen = {seed}
    frontier = [seed]
    depth = 0
    while frontier and (bound is None or depth < bound):
        depth += 1
        nxt = []
        for t in frontier:
            for s in adj.get(t, ()):
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return seen


def seed_terms(trs: TRS, depth: int, open_depth: int = 2) -> Tuple[Term, ...]:
    """The seed population for exhaustive analyses: all closed terms of depth
    <= depth, plus all open terms up to ``open_depth`` (the full open universe
    grows too fast for exhaustive sweeps beyond that)."""
    ground = universe(trs.signature, (), depth).terms()
    if not trs.variables:
        return ground
    open_terms = universe(trs.signature, trs.variables, min(depth, open_depth)).terms()
    return tuple(sorted(set(ground) | set(open_terms), key=term_key))


def closure_nodes(trs: TRS, seeds: Sequence[Term]) -> Set[Term]:
    """Reachable closure of the seeds under full reduction (which contains
    both the sequential and the parallel step)."""
    g = reduction_graph(trs, seeds, kind="full")
    return g.nodes


@dataclass
class SpectrumReport:
    nodes: int
    inclusion_violations: List[Tuple[str, str, str]]
    stars_equal: bool
    witnesses: List[Tuple[str, str]]

    @property
    def ok(self) -> bool:
        return not self.inclusion_violations and self.stars_equal

    def to_json(self) -> dict:
        return {
            "property": "spectrum",
            "verdict": HOLDS if self.ok else FAILS,
            "nodes": self.nodes,
            "inclusion_violations": [list(v) for v in self.inclusion_violations],
            "stars_equal": self.stars_equal,
            "witnesses": [list(w) for w in self.witnesses],
            "overflow_dropped": 0,
        }


def spectrum_survey(trs: TRS, seeds: Sequence[Term]) -> SpectrumReport:
    """Check seq ⊆ par ⊆ full ⊆ seq-star pointwise on the reachable closure,
    and that the three reflexive-transitive closures coincide."""
    nodes = closure_nodes(trs, seeds)
    violations: List[Tuple[str, str, str]] = []
    witnesses: List[Tuple[str, str]] = []
    seq_adj: Dict[Term, Tuple[Term, ...]] = {}
    par_adj: Dict[Term, Tuple[Term, ...]] = {}
    full_adj: Dict[Term, Tuple[Term, ...]] = {}
    for t in nodes:
        sq = sequential_step(trs, t)
        pr = parallel_step(trs, t)
        fl = full_step(trs, t)
        seq_adj[t], par_adj[t], full_adj[t] = tuple(sq), tuple(pr), tuple(fl)
        for bad in sorted(sq - pr, key=term_key):
            violations.append(("seq<=par", format_term(t), format_term(bad)))
        for bad in sorted(pr - fl, key=term_key):
            violations.append(("par<=full", format_term(t), format_term(bad)))
    stars_equal = True
    for t in nodes:
        seq_star = _reach(seq_adj, t)
        for bad in sorted(set(full_adj[t]) - seq_star, key=term_key):
            violations.append(("full<=seq-star", format_term(t), format_term(bad)))
        # seq ⊆ par ⊆ full makes the three stars coincide iff full ⊆ seq-star,
        # but we verify the reach sets directly as well
        if _reach(par_adj, t) != seq_star or _reach(full_adj, t) != seq_star:
            stars_equal = False
            witnesses.append((format_term(t), "star-mismatch"))
    return SpectrumReport(len(nodes), violations[:MAX_WITNESSES * 4],
                          stars_equal, witnesses[:MAX_WITNESSES])


def exhaustive_weak_confluence(trs: TRS, seeds: Sequence[Term],
                               join_depth: int = 12) -> PropertyReport:
    """Every one-step peak on the reachable closure joins within
    ``join_depth`` sequential steps (exhaustive BFS join search)."""
    nodes = closure_nodes(trs, seeds)
    adj = _seq_adjacency(trs, nodes)
    reach_cache: Dict[Term, Set[Term]] = {}

    def reach(t: Term) -> Set[Term]:
        if t not in reach_cache:
            reach_cache[t] = _reach(adj, t, bound=join_depth)
        return reach_cache[t]

    witnesses: List[Tuple[str, str]] = []
    for t in nodes:
        reducts = adj[t]
        for i, s1 in enumerate(reducts):
            for s2 in reducts[i + 1:]:
                if not (reach(s1) & reach(s2)):
                    witnesses.append((format_term(s1), format_term(s2)))
    verdict = HOLDS if not witnesses else FAILS
    return PropertyReport("weak-confluence", verdict, witnesses[:MAX_WITNESSES])


def exhaustive_confluence(trs: TRS, seeds: Sequence[Term]) -> PropertyReport:
    """Every star peak on the reachable closure is joinable."""
    nodes = closure_nodes(trs, seeds)
    adj = _seq_adjacency(trs, nodes)
    reach_cache = {t: _reach(adj, t) for t in nodes}
    witnesses: List[Tuple[str, str]] = []
    for t in nodes:
        rs = sorted(reach_cache[t], key=term_key)
        for i, s1 in enumerate(rs):
            for s2 in rs[i + 1:]:
                if not (reach_cache[s1] & reach_cache[s2]):
                    witnesses.append((format_term(s1), format_term(s2)))
        if len(witnesses) >= MAX_WITNESSES:
            break
    verdict = HOLDS if not witnesses else FAILS
    return PropertyReport("confluence", verdict, witnesses[:MAX_WITNESSES])


def exhaustive_church_rosser(trs: TRS, seeds: Sequence[Term]) -> PropertyReport:
    """Convertible nodes of the reachable closure are joinable."""
    nodes = closure_nodes(trs, seeds)
    adj = _seq_adjacency(trs, nodes)
    undirected: Dict[Term, Set[Term]] = {t: set() for t in nodes}
    for t, succs in adj.items():
        for s in succs:
            undirected[t].add(s)
            undirected.setdefault(s, set()).add(t)
    reach_cache = {t: _reach(adj, t) for t in nodes}
    seen: Set[Term] = set()
    witnesses: List[Tuple[str, str]] = []
    for root in nodes:
        if root in seen:
            continue
        component = sorted(
            _reach({t: tuple(s) for t, s in undirected.items()}, root), key=term_key
        )
        seen.update(component)
        for i, s1 in enumerate(component):
            for s2 in component[i + 1:]:
                if not (reach_cache.get(s1, {s1}) & reach_cache.get(s2, {s2})):
                    witnesses.append((format_term(s1), format_term(s2)))
        if len(witnesses) >= MAX_WITNESSES:
            break
    verdict = HOLDS if not witnesses else FAILS
    return PropertyReport("church-rosser", verdict, witnesses[:MAX_WITNESSES])


# ---------------------------------------------------------------------------
# critical pairs, relationally

@dataclass
class CPReport:
    cp1: PropertyReport
    cp2: PropertyReport
    cp1_prime: PropertyReport
    overflow_dropped: int

    def to_json(self) -> dict:
        return {
            "property": "critical-pairs",
            "overflow_dropped": self.overflow_dropped,
            "checks": [
                self.cp1.to_json(),
                self.cp2.to_json(),
                self.cp1_prime.to_json(),
            ],
        }


def _joinable_pairs(lhs: TermRel, step: TermRel,
                    name: str, dropped: int) -> PropertyReport:
    """lhs <= step*;step*° checked via reachability joins."""
    succ = successors(step)
    cache: Dict[Term, Set[Term]] = {}

    def reach(t: Term) -> Set[Term]:
        if t not in cache:
            seen = {t}
            frontier = [t]
            while frontier:
                x = frontier.pop()
                for y in succ.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
            cache[t] = seen
        return cache[t]

    witnesses = []
    for p, q in lhs.sorted_pairs():
        if not (reach(p) & reach(q)):
            witnesses.append((format_term(p), format_term(q)))
    ok = not witnesses
    return PropertyReport(name, _verdict(ok, dropped, exhaustive=False),
                          witnesses[:MAX_WITNESSES], dropped)


def check_cp(trs: TRS, depth: int = 2) -> CPReport:
    """Evaluate the relational critical-pair conditions for the rule
    relation of ``trs`` over the depth-bounded working universe:

    * CP-1   ⊳°;⊳ ≤ ⊳ˢ*;⊳ˢ*°      (root peaks join sequentially)
    * CP-2   ⊳°;∂_Δ(⊳ˢ) ≤ Δ[⊳ˢ];⊳ʰ°  (root/inner peaks close)
    * CP-1'  ⊳°;⊳ ≤ Δ               (root steps are deterministic)
    """
    u = universe(trs.signature, trs.variables, depth)
    stats = OpStats()
    g = ground_instances(trs, u, stats)
    gs = sequential_closure(g, stats)
    gh = full_closure(g, stats)

    root_peaks = g.converse().compose(g)
    cp1 = _joinable_pairs(root_peaks, gs, "cp-1", stats.dropped)

    inner = g.converse().compose(check_refine(gs, stats))
    dgs = subst_rel(delta(u), gs, stats)
    dgs_succ = successors(dgs)
    gh_succ = successors(gh)
    cp2_witnesses = []
    for p, q in inner.sorted_pairs():
        if not (dgs_succ.get(p, set()) & gh_succ.get(q, set())):
            cp2_witnesses.append((format_term(p), format_term(q)))
    cp2 = PropertyReport(
        "cp-2",
        _verdict(not cp2_witnesses, stats.dropped, exhaustive=False),
        cp2_witnesses[:MAX_WITNESSES],
        stats.dropped,
    )

    cp1p_witnesses = [
        (format_term(p), format_term(q)) for p, q in root_peaks.sorted_pairs()
        if p is not q
    ]
    # CP-1' is a universally quantified statement about root steps; within
    # the universe it is checked exactly (every lhs instance is present)
    cp1_prime = PropertyReport(
        "cp-1-prime",
        HOLDS if not cp1p_witnesses else FAILS,
        cp1p_witnesses[:MAX_WITNESSES],
        0,
    )
    return CPReport(cp1, cp2, cp1_prime, stats.dropped)


@dataclass
class TechniqueReport:
    premise_root_peaks: PropertyReport       # a°;a ≤ aˢ*;aˢ*°
    premise_root_vs_inner: PropertyReport    # a°;∂_Δ(aˢ) ≤ aˢ*;aˢ*°
    conclusion: PropertyReport               # aˢ°;aˢ ≤ aˢ*;aˢ*°
    overflow_dropped: int

    @property
    def premises_hold(self) -> bool:
        return self.premise_root_peaks.ok and self.premise_root_vs_inner.ok

    def to_json(self) -> dict:
        return {
            "property": "weak-confluence-technique",
            "overflow_dropped": self.overflow_dropped,
            "checks": [
                self.premise_root_peaks.to_json(),
                self.premise_root_vs_inner.to_json(),
                self.conclusion.to_json(),
            ],
        }


def check_weak_confluence_technique(a: TermRel) -> TechniqueReport:
    """The weak-confluence proof technique, instantiated: if root peaks
    join and root-vs-inner peaks join, then all one-step peaks of the
    sequential closure join."""
    stats = OpStats()
    aseq = sequential_closure(a, stats)
    p1 = _joinable_pairs(a.converse().compose(a), aseq,
                         "root-peaks-join", stats.dropped)
    p2 = _joinable_pairs(a.converse().compose(check_refine(aseq, stats)), aseq,
                         "root-vs-inner-peaks-join", stats.dropped)
    concl = _joinable_pairs(aseq.converse().compose(aseq), aseq,
                            "one-step-peaks-join", stats.dropped)
    return TechniqueReport(p1, p2, concl, stats.dropped)
