import random

import pytest
from hypothesis import given, settings, strategies as st

from gfgpda import analysis, zoo
from gfgpda.closure import (
    AlphabetMismatch,
    DeterministicParityAutomaton,
    dpa_lasso_verdict,
    format_dpa,
    lar_verdict,
    lift_resolver,
    muller_accepts,
    parse_dpa,
    product,
    product_with_info,
)
from gfgpda.core import LassoWord, parse_lasso
from gfgpda.resolvers import moore_lasso_acceptance


def one_state_dpa(alphabet, color):
    return DeterministicParityAutomaton(
        ("d0",), tuple(alphabet), "d0",
        {("d0", a): "d0" for a in alphabet},
        {("d0", a): color for a in alphabet},
    )


def inf_many_d_dpa(alphabet):
    """Accepts words with infinitely many d's."""
    return DeterministicParityAutomaton(
        ("d0",), tuple(alphabet), "d0",
        {("d0", a): "d0" for a in alphabet},
        {("d0", a): (2 if a == "d" else 1) for a in alphabet},
    )


def contains_a_dpa(alphabet):
    """Accepts words containing at least one 'a'."""
    states = ("n", "y")
    delta = {}
    colors = {}
    for a in alphabet:
        delta[("n", a)] = "y" if a == "a" else "n"
        colors[("n", a)] = 2 if a == "a" else 1
        delta[("y", a)] = "y"
        colors[("y", a)] = 2
    return DeterministicParityAutomaton(states, tuple(alphabet), "n", delta, colors)


def corpus(seed, count=50):
    fx = zoo.example23()
    words = [w for w, _ in fx.sample(seed=seed, count=count - 10)]
    rng = random.Random(seed)
    while len(words) < count:
        u = tuple(rng.choice("abcd#") for _ in range(rng.randint(0, 4)))
        v = tuple(rng.choice("abcd#") for _ in range(rng.randint(1, 2)))
        words.append(LassoWord(u, v))
    return words


@pytest.mark.parametrize("mode,op", [
    ("intersect", lambda p, a: p and a),
    ("union", lambda p, a: p or a),
    ("minus", lambda p, a: p and not a),
])
@pytest.mark.parametrize("dpa_maker", [one_state_dpa, inf_many_d_dpa, contains_a_dpa])
def test_product_modes_match_independent_simulation(mode, op, dpa_maker):
    pda = zoo.example23().automaton
    if dpa_maker is one_state_dpa:
        dpa = one_state_dpa(pda.input_alphabet, 2)
    else:
        dpa = dpa_maker(pda.input_alphabet)
    prod = product(pda, dpa, mode)
    for w in corpus(seed=13, count=30):
        want = op(analysis.lasso_membership(pda, w), dpa_lasso_verdict(dpa, w))
        assert analysis.lasso_membership(prod, w) == want, (mode, w)


def test_product_with_all_accepting_intersect_is_identity():
    pda = zoo.example23().automaton
    dpa = one_state_dpa(pda.input_alphabet, 2)
    prod = product(pda, dpa, "intersect")
    assert analysis.lasso_membership(prod, parse_lasso("acd;#"))
    assert not analysis.lasso_membership(prod, parse_lasso("acdd;#"))


def test_product_with_all_rejecting_union_is_identity():
    pda = zoo.example23().automaton
    dpa = one_state_dpa(pda.input_alphabet, 1)
    prod = product(pda, dpa, "union")
    for w in corpus(seed=3, count=25):
        assert analysis.lasso_membership(prod, w) == analysis.lasso_membership(pda, w)


def test_product_minus_all_accepting_is_empty():
    pda = zoo.example23().automaton
    dpa = one_state_dpa(pda.input_alphabet, 2)
    prod = product(pda, dpa, "minus")
    assert analysis.parity_nonempty(prod) is None


def test_product_alphabet_mismatch():
    pda = zoo.example23().automaton
    with pytest.raises(AlphabetMismatch):
        product(pda, one_state_dpa(("a", "b"), 2), "intersect")


def test_product_epsilon_keeps_dpa_frozen():
    pda = zoo.palindrome().automaton
    dpa = contains_a_dpa(pda.input_alphabet)

    # palindrome has epsilon transitions; products must still agree
    prod = product(pda, dpa, "intersect")
    for w, _ in zoo.palindrome().sample(seed=5, count=15):
        want = analysis.lasso_membership(pda, w) and dpa_lasso_verdict(dpa, w)
        assert analysis.lasso_membership(prod, w) == want, w


# -- resolver lifting ------------------------------------------------------------


def test_lift_resolver_accepts_acd():
    fx = zoo.example23()
    dpa = one_state_dpa(fx.automaton.input_alphabet, 2)
    prod, info = product_with_info(fx.automaton, dpa, "intersect")
    lifted = lift_resolver(fx.resolver, fx.automaton, info)
    assert moore_lasso_acceptance(prod, lifted, parse_lasso("acd;#")) == "accepted"
    assert moore_lasso_acceptance(prod, lifted, parse_lasso("bccdddd;#")) == "accepted"


def test_lift_resolver_projection_identity():
    from gfgpda.resolvers import run_on_prefix

    fx = zoo.example23()
    dpa = inf_many_d_dpa(fx.automaton.input_alphabet)
    prod, info = product_with_info(fx.automaton, dpa, "union")
    lifted = lift_resolver(fx.resolver, fx.automaton, info)
    g = run_on_prefix(prod, lifted, "acd")
    base_g = run_on_prefix(fx.automaton, fx.resolver, "acd")
    assert tuple(info.base_of[t] for t in g.run.transitions) == base_g.run.transitions
    assert g.run.last.stack == base_g.run.last.stack


def test_product_preserves_nondeterminism_degree():
    # the lifted resolver never faces a choice the base resolver didn't have
    fx = zoo.example23()
    dpa = inf_many_d_dpa(fx.automaton.input_alphabet)
    prod, info = product_with_info(fx.automaton, dpa, "intersect")
    base_fanout = {}
    for t in fx.automaton.transitions:
        base_fanout.setdefault((t.source, t.top, t.label), 0)
        base_fanout[(t.source, t.top, t.label)] += 1
    for (src, top, lab), group in _fanout(prod).items():
        base_src = src.split("*")[0]
        assert group == base_fanout[(base_src, top, lab)]


def _fanout(pda):
    fan = {}
    for t in pda.transitions:
        fan.setdefault((t.source, t.top, t.label), 0)
        fan[(t.source, t.top, t.label)] += 1
    return fan


# -- LAR correctness --------------------------------------------------------------


@given(st.data())
@settings(max_examples=120, deadline=None)
def test_lar_matches_muller_on_periodic_sequences(data):
    pool = [(p, a) for p in range(3) for a in range(2)]
    alphabet = data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=4, unique=True))
    prefix = data.draw(st.lists(st.sampled_from(alphabet), max_size=5))
    loop = data.draw(st.lists(st.sampled_from(alphabet), min_size=1, max_size=5))
    mode = data.draw(st.sampled_from(("intersect", "union", "minus")))
    pairs = list(prefix) + list(loop)
    got = lar_verdict(mode, pairs, len(prefix))
    want = muller_accepts(mode, frozenset(loop))
    assert got == want, (mode, prefix, loop)


# -- DPA text format -----------------------------------------------------------------


def test_dpa_text_round_trip():
    dpa = contains_a_dpa(("a", "b", "c", "d", "#"))
    text = format_dpa(dpa)
    again = parse_dpa(text)
    assert again == dpa
    assert format_dpa(again) == text
