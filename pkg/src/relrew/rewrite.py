"""Term rewriting systems: rules, single-step reduction in three flavours,
reduction graphs, and the induced relations on a term universe.

The three steppers implement, for a set of ground rules R:

* sequential step   rewrite exactly one redex occurrence (one context);
* parallel step     rewrite any number of pairwise disjoint redexes at once
                    (reflexive by construction);
* full step         rewrite arguments in parallel, then optionally contract
                    the created root redex (reflexive, may develop redexes
                    created by the parallel part).

``ground_instances`` turns the rule set into a relation on a finite
universe (all substitution instances of the rules that fit), so the
relational closures of :mod:`relrew.termrel` can be cross-validated against
the inductive steppers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .syntax import (
    Signature,
    Term,
    TermError,
    Universe,
    app,
    apply_subst,
    decompose,
    format_term,
    free_vars,
    hole,
    match,
    parse_term,
    plug,
    term_key,
)
from .termrel import OpStats, TermRel


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if self.lhs.is_var:
            raise TermError(f"rule left-hand side may not be a variable: {self.lhs}")
        if not free_vars(self.rhs) <= free_vars(self.lhs):
            raise TermError(
                f"rule {format_term(self.lhs)} -> {format_term(self.rhs)} "
                "introduces fresh variables on the right"
            )

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} -> {format_term(self.rhs)}"


@dataclass(frozen=True)
class TRS:
    signature: Signature
    variables: Tuple[str, ...]
    rules: Tuple[Rule, ...]

    def parse(self, text: str) -> Term:
        return parse_term(text, self.signature, self.variables)


def parse_trs(text: str) -> TRS:
    """Parse the line-oriented rewrite-system format::

        # comment
        sig 0/0 S/1 A/2 M/2
        var x y
        rule A(0,x) -> x

    ``sig`` and ``var`` lines accumulate; ``rule`` lines may only use
    previously declared names.
    """
    arities: Dict[str, int] = {}
    variables: List[str] = []
    pending_rules: List[Tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "sig":
            if not rest:
                raise TermError(f"line {lineno}: empty sig declaration")
            for tok in rest.split():
                name, slash, ar = tok.partition("/")
                if not slash or not ar.lstrip("-").isdigit():
                    raise TermError(f"line {lineno}: expected NAME/ARITY, got {tok!r}")
                if name in arities and arities[name] != int(ar):
                    raise TermError(f"line {lineno}: conflicting arity for {name!r}")
                arities[name] = int(ar)
        elif head == "var":
            if not rest:
                raise TermError(f"line {lineno}: empty var declaration")
            for name in rest.split():
                if name in arities:
                    raise TermError(f"line {lineno}: {name!r} is already an operator")
                if name not in variables:
                    variables.append(name)
        elif head == "rule":
            lhs_text, arrow, rhs_text = rest.partition("->")
            if not arrow:
                raise TermError(f"line {lineno}: rule must contain '->'")
            pending_rules.append((lhs_text.strip(), rhs_text.strip(), lineno))
        else:
            raise TermError(f"line {lineno}: unknown directive {head!r}")
    signature = Signature(arities)
    rules = []
    for lhs_text, rhs_text, lineno in pending_rules:
        try:
            lhs = parse_term(lhs_text, signature, variables)
            rhs = parse_term(rhs_text, signature, variables)
            rules.append(Rule(lhs, rhs))
        except TermError as e:
            raise TermError(f"line {lineno}: {e}") from None
    return TRS(signature, tuple(variables), tuple(rules))


def format_trs(trs: TRS) -> str:
    lines = ["sig " + " ".join(f"{n}/{a}" for n, a in trs.signature)]
    if trs.variables:
        lines.append("var " + " ".join(trs.variables))
    lines.extend(f"rule {r}" for r in trs.rules)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# single steps

def root_reducts(trs: TRS, t: Term) -> List[Tuple[int, Dict[str, Term], Term]]:
    """All rule applications at the root: (rule index, substitution, result)."""
    out = []
    for i, rule in enumerate(trs.rules):
        sigma = match(rule.lhs, t)
        if sigma is not None:
            out.append((i, sigma, apply_subst(rule.rhs, sigma)))
    return out


@dataclass(frozen=True)
class StepWitness:
    """One sequential rewrite: plug(context, rhs^subst) is the target."""

    context: Term
    rule_index: int
    subst: Tuple[Tuple[str, Term], ...]


def sequential_steps(trs: TRS, t: Term) -> List[Tuple[Term, StepWitness]]:
    """All single-position rewrites of t, with their witnesses."""
    out = []
    for context, sub in decompose(t):
        for i, sigma, reduct in root_reducts(trs, sub):
            target = plug(context, reduct)
            witness = StepWitness(
                context, i, tuple(sorted(sigma.items()))
            )
            out.append((target, witness))
    return out


@lru_cache(maxsize=None)
def sequential_step(trs: TRS, t: Term) -> FrozenSet[Term]:
    return frozenset(target for target, _ in sequential_steps(trs, t))


@lru_cache(maxsize=None)
def parallel_step(trs: TRS, t: Term) -> FrozenSet[Term]:
    """Targets of the parallel step relation (includes t itself)."""
    if t.is_var:
        return frozenset((t,))
    out: Set[Term] = set()
    for combo in product(*(parallel_step(trs, a) for a in t.args)):
        out.add(app(t.name, *combo))
    out.update(r for _, _, r in root_reducts(trs, t))
    return frozenset(out)


@lru_cache(maxsize=None)
def full_step(trs: TRS, t: Term) -> FrozenSet[Term]:
    """Targets of the full step relation: parallel-rewrite the arguments,
    then optionally contract the root redex of the result."""
    if t.is_var:
        return frozenset((t,))
    out: Set[Term] = set()
    for combo in product(*(full_step(trs, a) for a in t.args)):
        mid = app(t.name, *combo)
        out.add(mid)
        out.update(r for _, _, r in root_reducts(trs, mid))
    return frozenset(out)


STEPPERS = {
    "seq": sequential_step,
    "par": parallel_step,
    "full": full_step,
}


def is_normal_form(trs: TRS, t: Term) -> bool:
    return not sequential_step(trs, t)


# ---------------------------------------------------------------------------
# reduction graphs

@dataclass
class ReductionGraph:
    trs: TRS
    kind: str
    seeds: Tuple[Term, ...]
    nodes: Set[Term] = field(default_factory=set)
    edges: Set[Tuple[Term, Term]] = field(default_factory=set)
    witnesses: Dict[Tuple[Term, Term], List[StepWitness]] = field(default_factory=dict)
    exhausted: bool = True

    def successors(self, t: Term) -> Set[Term]:
        return {q for p, q in self.edges if p is t}

    def normal_forms(self) -> List[Term]:
        return sorted(
            (t for t in self.nodes if is_normal_form(self.trs, t)), key=term_key
        )

    def reachable(self, seed: Term) -> Set[Term]:
        succ: Dict[Term, Set[Term]] = {}
        for p, q in self.edges:
            succ.setdefault(p, set()).add(q)
        seen = {seed}
        frontier = [seed]
        while frontier:
            t = frontier.pop()
            for s in succ.get(t, ()):
                if s not in seen:
                    seen.add(s)
                    frontier.append(s)
        return seen


def reduction_graph(trs: TRS, seeds: Sequence[Term], kind: str = "seq",
                    bound: Optional[int] = None,
                    max_nodes: int = 1_000_000) -> ReductionGraph:
    """Breadth-first closure of ``seeds`` under the chosen stepper.

    ``bound`` limits the number of BFS layers; if the frontier is still
    growing when the bound is hit, ``exhausted`` is False and the graph is
    the partial closure explored so far.
    """
    if kind not in STEPPERS:
        raise ValueError(f"unknown step kind {kind!r}")
    step = STEPPERS[kind]
    g = ReductionGraph(trs, kind, tuple(seeds))
    frontier: List[Term] = []
    for s in seeds:
        if s not in g.nodes:
            g.nodes.add(s)
            frontier.append(s)
    layer = 0
    while frontier:
        if bound is not None and layer >= bound:
            g.exhausted = False
            break
        layer += 1
        next_frontier: List[Term] = []
        for t in frontier:
            if kind == "seq":
                for target, w in sequential_steps(trs, t):
                    g.edges.add((t, target))
                    g.witnesses.setdefault((t, target), []).append(w)
                    if target not in g.nodes:
                        g.nodes.add(target)
                        next_frontier.append(target)
            else:
                for target in step(trs, t):
                    g.edges.add((t, target))
                    if target not in g.nodes:
                        g.nodes.add(target)
                        next_frontier.append(target)
            if len(g.nodes) > max_nodes:
                raise RuntimeError("reduction graph exceeded the node cap")
        frontier = next_frontier
    return g


# ---------------------------------------------------------------------------
# the rule relation on a universe

def ground_instances(trs: TRS, u: Universe,
                     stats: Optional[OpStats] = None) -> TermRel:
    """All substitution instances of the rules that fit in the universe,
    as a relation (the root-step relation).  Instances whose left side is
    in the universe but whose right side escapes it are counted as dropped.
    """
    pairs: Set[Tuple[Term, Term]] = set()
    for t in u.terms():
        for _, _, r in root_reducts(trs, t):
            if r in u:
                pairs.add((t, r))
            elif stats is not None:
                stats.note()
    return TermRel(u, frozenset(pairs))


# ---------------------------------------------------------------------------
# export

def graph_to_dot(g: ReductionGraph) -> str:
    lines = ["digraph reduction {"]
    lines.append('  rankdir=LR;')
    names = {t: format_term(t) for t in g.nodes}
    for t in sorted(g.nodes, key=term_key):
        shape = "doublecircle" if is_normal_form(g.trs, t) else "ellipse"
        seed = " peripheries=2" if t in g.seeds and shape == "ellipse" else ""
        lines.append(f'  "{names[t]}" [shape={shape}{seed}];')
    for p, q in sorted(g.edges, key=lambda e: (term_key(e[0]), term_key(e[1]))):
        label = ""
        ws = g.witnesses.get((p, q))
        if ws:
            rules = sorted({w.rule_index for w in ws})
            label = f' [label="r{",r".join(str(i) for i in rules)}"]'
        lines.append(f'  "{names[p]}" -> "{names[q]}"{label};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: ReductionGraph) -> str:
    nodes = sorted(g.nodes, key=term_key)
    payload = {
        "kind": g.kind,
        "seeds": [format_term(t) for t in g.seeds],
        "exhausted": g.exhausted,
        "nodes": [format_term(t) for t in nodes],
        "normal_forms": [format_term(t) for t in g.normal_forms()],
        "edges": [
            [format_term(p), format_term(q)]
            for p, q in sorted(
                g.edges, key=lambda e: (term_key(e[0]), term_key(e[1]))
            )
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
