import pytest
from hypothesis import given, settings, strategies as st

from gfgpda import zoo
from gfgpda.core import (
    BOTTOM,
    BadPartition,
    Configuration,
    NotARun,
    NotEnabled,
    OmegaPDA,
    Transition,
    enabled,
    format_pda,
    is_deterministic,
    check_visibly,
    lim_sup_color,
    parse_lasso,
    parse_pda,
    replay,
    step,
    validate,
)


@pytest.fixture(scope="module")
def fig2():
    return zoo.example23().automaton


def test_validate_fig2_clean(fig2):
    assert validate(fig2) == []


def test_validate_bottom_deleted():
    pda = OmegaPDA(
        ("q",), ("a",), (), "q",
        (Transition("q", BOTTOM, "a", "q", (), 0),),
    )
    diags = validate(pda)
    assert len(diags) == 1 and "bottom" in diags[0]


def test_validate_push_too_long():
    pda = OmegaPDA(
        ("q",), ("a",), ("X", "Y", "Z"), "q",
        (Transition("q", "X", "a", "q", ("X", "Y", "Z"), 0),),
    )
    diags = validate(pda)
    assert len(diags) == 1 and "push too long" in diags[0]


def test_enabled_fig2_initial(fig2):
    ts = enabled(fig2, fig2.initial_configuration())
    assert [t.label for t in ts] == ["a", "b"]


def test_enabled_q4_bottom(fig2):
    ts = enabled(fig2, Configuration("q4", (BOTTOM,)))
    assert len(ts) == 1 and ts[0].label == "#" and ts[0].target == "q4"


def test_enabled_empty_case(fig2):
    assert enabled(fig2, Configuration("q4", (BOTTOM, "A"))) == []


def test_step_push_pop_swap(fig2):
    a = fig2.transitions[0]
    c1 = step(fig2.initial_configuration(), a)
    assert c1 == Configuration("q1", (BOTTOM, "A"))
    pop = fig2.transitions[5]
    c2 = step(Configuration("q1", (BOTTOM, "A", "N")), pop)
    assert c2 == Configuration("q2", (BOTTOM, "A"))
    swap = Transition("q1", "N", "c", "q1", ("N",), 1)
    c3 = step(Configuration("q1", (BOTTOM, "N")), swap)
    assert c3.stack == (BOTTOM, "N")


def test_step_not_enabled(fig2):
    with pytest.raises(NotEnabled):
        step(fig2.initial_configuration(), fig2.transitions[5])


def test_replay_acd_path(fig2):
    t = fig2.transitions
    run = replay(fig2, [t[0], t[2], t[5]])
    assert run.last == Configuration("q2", (BOTTOM, "A"))
    assert run.word() == ("a", "c", "d")


def test_replay_empty(fig2):
    run = replay(fig2, [])
    assert len(run) == 0 and run.last == fig2.initial_configuration()


def test_replay_reports_first_bad_index(fig2):
    t = fig2.transitions
    with pytest.raises(NotARun) as exc:
        replay(fig2, [t[0], t[5]])  # d needs top N, top is A
    assert exc.value.index == 1


def test_fig2_not_deterministic(fig2):
    ok, pairs = is_deterministic(fig2)
    assert not ok
    assert any({p[0].target, p[1].target} == {"q2", "q3"} for p in pairs)


def test_lss_not_deterministic():
    ok, pairs = is_deterministic(zoo.lss().automaton)
    assert not ok
    # the only nondeterministic choice is switching the state
    assert all(p[0].target != p[1].target for p in pairs)


def test_a_branch_restriction_deterministic(fig2):
    keep = [t for t in fig2.transitions if t.source not in ("q3", "q5")
            and t.target not in ("q3", "q5") and t.top != "B" and "B" not in t.push]
    sub = OmegaPDA(fig2.states, fig2.input_alphabet, fig2.stack_alphabet, fig2.initial,
                   tuple(t for t in keep if t.label != "b"))
    assert is_deterministic(sub)[0]


def test_check_visibly_repbdd():
    fx = zoo.repbdd()
    ok, diags = check_visibly(fx.automaton, fx.partition)
    assert ok, diags


def test_check_visibly_rejects_lss_any_partition():
    fx = zoo.lss()
    letters = list(fx.automaton.input_alphabet)
    ok, _ = check_visibly(fx.automaton, (letters, [], []))
    assert not ok


def test_check_visibly_rejects_epsilon():
    pda = zoo.palindrome().automaton
    ok, diags = check_visibly(pda, (["0"], ["1"], ["#"]))
    assert not ok and any("epsilon" in d for d in diags)


def test_check_visibly_bad_partition(fig2):
    with pytest.raises(BadPartition):
        check_visibly(fig2, (["a"], ["a"], ["b"]))


def test_lim_sup_color():
    assert lim_sup_color([1, 2, 1]) == (2, True)
    assert lim_sup_color([1]) == (1, False)
    assert lim_sup_color([0]) == (0, True)


def test_parse_lasso_forms():
    w = parse_lasso("acd;#")
    assert w.prefix == ("a", "c", "d") and w.loop == ("#",)
    w = parse_lasso("(+,0) (-,-);(0,0)")
    assert w.prefix == ("(+,0)", "(-,-)") and w.loop == ("(0,0)",)
    assert parse_lasso(";a").prefix == ()


def test_text_format_round_trip_all_fixtures():
    for fx in zoo.all_fixtures():
        text = format_pda(fx.automaton)
        again = parse_pda(text)
        assert again == fx.automaton
        assert format_pda(again) == text


def test_comment_and_blank_lines():
    text = "# a comment\n\n" + format_pda(zoo.allodd().automaton)
    assert parse_pda(text) == zoo.allodd().automaton


# -- properties ------------------------------------------------------------


def _random_run(pda, data, max_len=25):
    run = replay(pda, [])
    for _ in range(max_len):
        options = enabled(pda, run.last)
        if not options:
            break
        t = data.draw(st.sampled_from(options))
        run = replay(pda, run.transitions + (t,))
    return run


@st.composite
def fixture_runs(draw):
    fx = draw(st.sampled_from([f.name for f in zoo.all_fixtures()]))
    return zoo.get(fx).automaton, draw(st.data())


@given(st.sampled_from([f.name for f in zoo.all_fixtures()]), st.data())
@settings(max_examples=60, deadline=None)
def test_replay_identity_and_invariants(name, data):
    pda = zoo.get(name).automaton
    run = _random_run(pda, data)
    # replay of the extracted transition sequence is the identity
    assert replay(pda, run.transitions) == run
    for c, t, c2 in zip(run.configurations, run.transitions, run.configurations[1:]):
        # heights move by |push| - 1 and the bottom symbol stays put
        assert c2.height - c.height == len(t.push) - 1
        assert c2.stack[0] == BOTTOM and BOTTOM not in c2.stack[1:]


@given(st.sampled_from(["figure1", "example23", "twopump", "repbdd"]), st.data())
@settings(max_examples=40, deadline=None)
def test_deterministic_means_single_choice(name, data):
    from gfgpda.resolvers import determinize_moore

    pda = zoo.get(name).automaton
    fx = zoo.get(name)
    if fx.resolver is not None and hasattr(fx.resolver, "states"):
        pda = determinize_moore(fx.automaton, fx.resolver)
    ok, _ = is_deterministic(pda)
    if not ok:
        return
    run = _random_run(pda, data, max_len=12)
    for c in run.configurations:
        by_label = {}
        for t in enabled(pda, c):
            by_label.setdefault(t.label, []).append(t)
        assert all(len(v) == 1 for v in by_label.values())
        if None in by_label:
            assert len(by_label) == 1
