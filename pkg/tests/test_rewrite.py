"""Rule parsing, single steps, reduction graphs, and exports."""

import json

import pytest

from relrew.rewrite import (
    Rule,
    format_trs,
    full_step,
    graph_to_dot,
    graph_to_json,
    ground_instances,
    is_normal_form,
    parallel_step,
    parse_trs,
    reduction_graph,
    root_reducts,
    sequential_step,
    sequential_steps,
)
from relrew.syntax import TermError, app, apply_subst, plug, universe, var
from relrew.termrel import OpStats

X, Y, ZERO = var("x"), var("y"), app("0")


# ---------------------------------------------------------------------------
# parsing

def test_parse_arith(arith):
    assert len(arith.rules) == 4
    assert dict(arith.signature) == {"0": 0, "S": 1, "A": 2, "M": 2}
    assert arith.variables == ("x", "y")


def test_format_parse_round_trip(arith):
    again = parse_trs(format_trs(arith))
    assert again == arith


@pytest.mark.parametrize("text,needle", [
    ("rule x -> 0", "variable"),                      # lhs is a variable
    ("sig A/2 0/0\nvar x y\nrule A(0,x) -> y", "fresh"),  # fresh rhs var
    ("sig A/2\nsig A/3", "arity"),                    # conflicting arity
    ("frob A/2", "directive"),                        # unknown directive
    ("sig A/x", "ARITY"),                             # malformed sig token
    ("sig A/1\nvar A", "operator"),                   # var shadows operator
    ("sig A/2 0/0\nrule A(0,0) = 0", "->"),           # missing arrow
])
def test_parse_diagnostics(text, needle):
    with pytest.raises(TermError) as e:
        parse_trs(text)
    assert needle in str(e.value)


def test_rule_rejects_variable_lhs():
    with pytest.raises(TermError):
        Rule(X, ZERO)


def test_comments_and_blank_lines():
    trs = parse_trs("# header\n\nsig 0/0 S/1  # trailing\nvar x\nrule S(x) -> x\n")
    assert len(trs.rules) == 1


# ---------------------------------------------------------------------------
# steppers

def test_root_reducts(arith):
    t = arith.parse("A(0,S(0))")
    reducts = root_reducts(arith, t)
    assert [(i, r) for i, _, r in reducts] == [(0, app("S", ZERO))]


def test_sequential_step_worked_example(arith):
    t = arith.parse("M(M(0,0),A(S(x),y))")
    assert arith.parse("M(0,A(S(x),y))") in sequential_step(arith, t)
    assert arith.parse("M(M(0,0),S(A(x,y)))") in sequential_step(arith, t)
    assert arith.parse("0") not in sequential_step(arith, t)


def test_parallel_step_worked_example(arith):
    t = arith.parse("M(M(0,0),A(S(x),y))")
    par = parallel_step(arith, t)
    assert arith.parse("M(0,S(A(x,y)))") in par
    assert t in par  # reflexive
    assert arith.parse("0") not in par


def test_full_step_worked_example(arith):
    t = arith.parse("M(M(0,0),A(S(x),y))")
    assert arith.parse("0") in full_step(arith, t)


def test_step_witnesses_replay(arith):
    t = arith.parse("M(S(0),A(0,S(0)))")
    for target, w in sequential_steps(arith, t):
        rule = arith.rules[w.rule_index]
        assert plug(w.context, apply_subst(rule.rhs, dict(w.subst))) is target


def test_is_normal_form(arith):
    assert is_normal_form(arith, arith.parse("S(S(0))"))
    assert not is_normal_form(arith, arith.parse("A(0,0)"))
    assert is_normal_form(arith, X)


# ---------------------------------------------------------------------------
# reduction graphs

def test_graph_terminates_and_finds_nf(arith):
    g = reduction_graph(arith, [arith.parse("M(S(S(0)),S(S(0)))")], kind="seq")
    assert g.exhausted
    nfs = g.normal_forms()
    assert len(nfs) == 1
    assert nfs[0] is arith.parse("S(S(S(S(0))))")  # 2*2 = 4


def test_graph_bound_marks_nonexhausted(arith):
    g = reduction_graph(arith, [arith.parse("M(S(S(0)),S(S(0)))")],
                        kind="seq", bound=1)
    assert not g.exhausted


def test_graph_reachable(arith):
    seed = arith.parse("A(S(0),0)")
    g = reduction_graph(arith, [seed], kind="seq")
    assert arith.parse("S(0)") in g.reachable(seed)


def test_ground_instances_on_u2(arith):
    u = universe(arith.signature, arith.variables, 2)
    st = OpStats()
    g = ground_instances(arith, u, st)
    # every pair really is a root step, and lhs instances whose reduct
    # escapes the universe are counted
    for t, r in g.pairs:
        assert r in [red for _, _, red in root_reducts(arith, t)]
    assert len(g.pairs) == 66
    assert st.dropped == 126


# ---------------------------------------------------------------------------
# exports

def test_graph_to_json_schema(arith):
    g = reduction_graph(arith, [arith.parse("A(S(0),0)")], kind="seq")
    payload = json.loads(graph_to_json(g))
    assert payload["kind"] == "seq"
    assert payload["exhausted"] is True
    assert "S(S(0))" in payload["nodes"] or "S(0)" in payload["normal_forms"]
    assert all(len(e) == 2 for e in payload["edges"])


def test_graph_to_dot_deterministic(arith):
    g1 = reduction_graph(arith, [arith.parse("M(S(0),S(0))")], kind="seq")
    g2 = reduction_graph(arith, [arith.parse("M(S(0),S(0))")], kind="seq")
    assert graph_to_dot(g1) == graph_to_dot(g2)
    assert graph_to_dot(g1).startswith("digraph")
