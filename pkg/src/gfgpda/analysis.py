"""Regular configuration sets, saturation, parity emptiness, lasso membership.

Configuration sets are encoded as words ``BOTTOM gamma q`` with the state
last, so a P-automaton reads the stack bottom-up and then one state symbol.

Parity nonemptiness searches, per even color ``d``, for a reachable head
``(q, X)`` that can pump: an abstract run from stack ``[X]`` back to state
``q`` with top ``X`` again, never dipping below the start level, using only
colors ``<= d``, with at least one color-``d`` transition and at least one
letter transition on the way.  The letter flag makes epsilon-only loops
non-accepting directly, so no color normalization pass is needed and the
returned witness replays on the input automaton unchanged.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

from .core import (
    BOTTOM,
    Configuration,
    LassoWord,
    OmegaPDA,
    Transition,
    replay,
)

UNKNOWN = "unknown"

Flags = tuple[bool, bool]  # (saw color d, saw letter transition)


@dataclass(frozen=True)
class PAutomaton:
    """NFA over ``Gamma_bottom + Q`` recognizing a set of configuration words."""

    states: tuple[str, ...]
    initial: str
    finals: frozenset[str]
    edges: frozenset[tuple[str, str, str]]

    def edge_index(self) -> dict[tuple[str, str], set[str]]:
        index: dict[tuple[str, str], set[str]] = {}
        for s, sym, t in self.edges:
            index.setdefault((s, sym), set()).add(t)
        return index

    def accepts_word(self, word: Iterable[str]) -> bool:
        index = self.edge_index()
        frontier = {self.initial}
        for sym in word:
            frontier = {t for s in frontier for t in index.get((s, sym), ())}
            if not frontier:
                return False
        return bool(frontier & self.finals)

    def accepts(self, config: Configuration) -> bool:
        return self.accepts_word(config.stack + (config.state,))


@dataclass(frozen=True)
class EmptinessWitness:
    """Finite certificate: replaying ``stem`` then ``loop`` forever is accepting."""

    stem: tuple[Transition, ...]
    loop: tuple[Transition, ...]
    loop_start: Configuration


def pa_from_words(words: Iterable[tuple[str, ...]]) -> PAutomaton:
    """Trie-shaped P-automaton accepting exactly the given configuration words."""
    states = ["n0"]
    edges: set[tuple[str, str, str]] = set()
    finals: set[str] = set()
    trie: dict[tuple[str, str], str] = {}
    for word in words:
        cur = "n0"
        for sym in word:
            nxt = trie.get((cur, sym))
            if nxt is None:
                nxt = f"n{len(states)}"
                states.append(nxt)
                trie[(cur, sym)] = nxt
                edges.add((cur, sym, nxt))
            cur = nxt
        finals.add(cur)
    return PAutomaton(tuple(states), "n0", frozenset(finals), frozenset(edges))


def pa_universal(pda: OmegaPDA) -> PAutomaton:
    """Accepts every configuration word ``BOTTOM Gamma* Q``."""
    edges = {("i", BOTTOM, "m")}
    for x in pda.stack_alphabet:
        edges.add(("m", x, "m"))
    for q in pda.states:
        edges.add(("m", q, "f"))
    return PAutomaton(("i", "m", "f"), "i", frozenset({"f"}), frozenset(edges))


def pa_empty() -> PAutomaton:
    return PAutomaton(("i",), "i", frozenset(), frozenset())


def saturate_pre_star(
    pda: OmegaPDA,
    allowed: Callable[[Transition], bool],
    target: PAutomaton,
) -> PAutomaton:
    """Classical pre* saturation adapted to the state-last word encoding.

    Adds an edge ``(t, X, u_p)`` (with ``u_p -p-> final``) whenever a rule
    ``(p, X, a, q, gamma)`` has a gamma-then-q path from ``t`` into a final
    state; for bottom rules only paths from the initial state matter.
    """
    if not target.finals:
        return target
    f0 = sorted(target.finals)[0]
    edges = set(target.edges)
    index: dict[tuple[str, str], set[str]] = {}
    for s, sym, t in edges:
        index.setdefault((s, sym), set()).add(t)
    states = list(target.states)
    u_node: dict[str, str] = {}

    def u_for(p: str) -> str:
        name = u_node.get(p)
        if name is None:
            name = f"u[{p}]"
            while name in states:
                name += "'"
            u_node[p] = name
            states.append(name)
            edges.add((name, p, f0))
            index.setdefault((name, p), set()).add(f0)
        return name

    def reach(start: str, word: tuple[str, ...]) -> set[str]:
        frontier = {start}
        for sym in word:
            frontier = {t for s in frontier for t in index.get((s, sym), ())}
            if not frontier:
                break
        return frontier

    def pops_to_final(t: str, q: str) -> bool:
        return bool(index.get((t, q), set()) & target.finals or (t, q, f0) in edges)

    rules = [t for t in pda.transitions if allowed(t)]
    changed = True
    while changed:
        changed = False
        for rule in rules:
            sources: Iterable[str]
            if rule.top == BOTTOM:
                sources = (target.initial,)
            else:
                sources = tuple(states)
            for t in sources:
                hit = any(pops_to_final(t2, rule.target) for t2 in reach(t, rule.push))
                if not hit:
                    continue
                new_edge = (t, rule.top, u_for(rule.source))
                if new_edge not in edges:
                    edges.add(new_edge)
                    index.setdefault((new_edge[0], new_edge[1]), set()).add(new_edge[2])
                    changed = True
    finals = frozenset(target.finals)
    return PAutomaton(tuple(states), target.initial, finals, frozenset(edges))


# ---------------------------------------------------------------------------
# Pop summaries and reachable heads (the emptiness substrate).
# ---------------------------------------------------------------------------

# Witnesses are stored lazily as derivation nodes and expanded on demand:
#   ("t", tau)            pop rule
#   ("s", tau, key)       swap rule, then pop summarized by key
#   ("p", tau, key, key)  push rule, then two pops
PopKey = tuple[str, str, str]
PopKeyF = tuple[str, str, str, Flags]


class _Pops:
    def __init__(self, transitions: Iterable[Transition], even_color: Optional[int] = None):
        """Pop summaries ``(p, X) -> {r: witness}``.

        With ``even_color`` set, transitions are restricted to colors
        ``<= even_color`` and facts carry path flags
        (saw-color-``d``, saw-letter), keyed ``(p, X, r, flags)``.
        """
        self.d = even_color
        self.defs: dict = {}
        self.by_px: dict[tuple[str, str], set] = {}
        swaps_on: dict[tuple[str, str], list[Transition]] = {}
        pushes_on_top: dict[tuple[str, str], list[Transition]] = {}
        pushes_on_below: dict[str, list[Transition]] = {}
        pops = []
        for t in transitions:
            if self.d is not None and t.color > self.d:
                continue
            if len(t.push) == 0:
                pops.append(t)
            elif len(t.push) == 1:
                swaps_on.setdefault((t.target, t.push[0]), []).append(t)
            else:
                pushes_on_top.setdefault((t.target, t.push[1]), []).append(t)
                pushes_on_below.setdefault(t.push[0], []).append(t)

        work: deque = deque()

        def flags_of(t: Transition) -> Flags:
            return (t.color == self.d, t.label is not None)

        def union(f1: Flags, f2: Flags) -> Flags:
            return (f1[0] or f2[0], f1[1] or f2[1])

        def add(p: str, x: str, r: str, fl: Flags, wit) -> None:
            key = (p, x, r, fl) if self.d is not None else (p, x, r)
            if key in self.defs:
                return
            self.defs[key] = wit
            self.by_px.setdefault((p, x), set()).add((r, fl))
            work.append((p, x, r, fl))

        for t in pops:
            add(t.source, t.top, t.target, flags_of(t), ("t", t))

        def key_of(q: str, y: str, r: str, fl: Flags):
            return (q, y, r, fl) if self.d is not None else (q, y, r)

        while work:
            q, y, r, fl = work.popleft()
            fact_key = key_of(q, y, r, fl)
            for t in swaps_on.get((q, y), ()):
                add(t.source, t.top, r, union(flags_of(t), fl), ("s", t, fact_key))
            for t in pushes_on_top.get((q, y), ()):
                below = t.push[0]
                for r2, fl2 in list(self.by_px.get((r, below), ())):
                    add(
                        t.source, t.top, r2,
                        union(union(flags_of(t), fl), fl2),
                        ("p", t, fact_key, key_of(r, below, r2, fl2)),
                    )
            for t in pushes_on_below.get(y, ()):
                top_sym = t.push[1]
                for s, fl1 in list(self.by_px.get((t.target, top_sym), ())):
                    if s == q:
                        add(
                            t.source, t.top, r,
                            union(union(flags_of(t), fl1), fl),
                            ("p", t, key_of(t.target, top_sym, q, fl1), fact_key),
                        )

    def results(self, p: str, x: str) -> list:
        """(r, flags, key) triples for pops of ``x`` from state ``p``."""
        out = []
        for r, fl in sorted(self.by_px.get((p, x), ()), key=str):
            key = (p, x, r, fl) if self.d is not None else (p, x, r)
            out.append((r, fl, key))
        return out

    def expand(self, key) -> tuple[Transition, ...]:
        """Flatten a lazy witness into the transition sequence it denotes."""
        memo: dict = {}
        order: list = []
        stack = [key]
        while stack:
            k = stack.pop()
            if k in memo:
                continue
            node = self.defs[k]
            deps = [d for d in node[2:] if d not in memo]
            if deps:
                stack.append(k)
                stack.extend(deps)
            else:
                memo[k] = True
                order.append(k)
        out: dict = {}
        for k in order:
            node = self.defs[k]
            seq: tuple[Transition, ...] = (node[1],)
            for dep in node[2:]:
                seq = seq + out[dep]
            out[k] = seq
        return out[key]


class _Heads:
    """Heads ``(q, X)`` reachable from a start configuration, with stem witnesses."""

    def __init__(self, pda: OmegaPDA, pops: _Pops, start: Configuration):
        self.facts: dict[tuple[str, str], tuple[Transition, ...]] = {}
        work: deque = deque()

        def add(q: str, x: str, stem: tuple[Transition, ...]) -> None:
            if (q, x) in self.facts:
                return
            self.facts[(q, x)] = stem
            work.append((q, x))

        add(start.state, start.top, ())
        # Popping into the start stack exposes the symbols below the top.
        carriers = [(start.state, ())]
        for i in range(len(start.stack) - 1, 0, -1):
            sym = start.stack[i]
            nxt = []
            for st, wit in carriers:
                for r, _fl, key in pops.results(st, sym):
                    nxt.append((r, wit + pops.expand(key)))
            carriers = nxt
            below = start.stack[i - 1]
            for st, wit in carriers:
                add(st, below, wit)

        by_source: dict[str, list[Transition]] = {}
        for t in pda.transitions:
            by_source.setdefault(t.source, []).append(t)

        while work:
            q, x = work.popleft()
            stem = self.facts[(q, x)]
            for t in by_source.get(q, ()):
                if t.top != x:
                    continue
                if len(t.push) == 1:
                    add(t.target, t.push[0], stem + (t,))
                elif len(t.push) == 2:
                    add(t.target, t.push[1], stem + (t,))
                    for r, _fl, key in pops.results(t.target, t.push[1]):
                        add(r, t.push[0], stem + (t,) + pops.expand(key))


def _tarjan_sccs(nodes: list, succ: dict) -> dict:
    """Iterative Tarjan; returns node -> scc id."""
    index: dict = {}
    low: dict = {}
    on_stack: dict = {}
    scc_of: dict = {}
    stack: list = []
    counter = [0]
    sccs = [0]
    for root in nodes:
        if root in index:
            continue
        call = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while call:
            v, it = call[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    call.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                elif on_stack.get(w):
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            call.pop()
            if call:
                pv = call[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    scc_of[w] = sccs[0]
                    if w == v:
                        break
                sccs[0] += 1
    return scc_of


def parity_nonempty(
    pda: OmegaPDA, start: Optional[Configuration] = None
) -> Optional[EmptinessWitness]:
    """First emptiness witness found (even colors ascending), or None."""
    if start is None:
        start = pda.initial_configuration()
    plain = _Pops(pda.transitions)
    heads = _Heads(pda, plain, start)
    evens = sorted({t.color for t in pda.transitions if t.color % 2 == 0})
    for d in evens:
        witness = _pump_witness(pda, heads, d, start)
        if witness is not None:
            return witness
    return None


def _pump_witness(
    pda: OmegaPDA, heads: _Heads, d: int, start: Configuration
) -> Optional[EmptinessWitness]:
    pops_d = _Pops(pda.transitions, even_color=d)
    # Head graph: nodes (q, X); edge witnesses are abstract run infixes that
    # never dip below the source head's level.
    succ: dict = {}
    edges: list = []  # (src, dst, flags, witness_thunk)

    def add_edge(src, dst, fl: Flags, wit) -> None:
        succ.setdefault(src, []).append(dst)
        edges.append((src, dst, fl, wit))

    for t in pda.transitions:
        if t.color > d:
            continue
        fl = (t.color == d, t.label is not None)
        src = (t.source, t.top)
        if len(t.push) == 1:
            add_edge(src, (t.target, t.push[0]), fl, (t,))
        elif len(t.push) == 2:
            add_edge(src, (t.target, t.push[1]), fl, (t,))
            for r, fl2, key in pops_d.results(t.target, t.push[1]):
                add_edge(
                    src, (r, t.push[0]),
                    (fl[0] or fl2[0], fl[1] or fl2[1]),
                    (t,) + pops_d.expand(key),
                )

    nodes = sorted(set(succ) | {dst for _, dst, _, _ in edges} | set(heads.facts), key=str)
    scc_of = _tarjan_sccs(nodes, succ)
    internal: dict[int, list] = {}
    for e in edges:
        src, dst = e[0], e[1]
        if scc_of.get(src) is not None and scc_of.get(src) == scc_of.get(dst):
            internal.setdefault(scc_of[src], []).append(e)

    for head, stem in heads.facts.items():
        scc = scc_of.get(head)
        if scc is None:
            continue
        scc_edges = internal.get(scc, ())
        e_d = next((e for e in scc_edges if e[2][0]), None)
        e_l = next((e for e in scc_edges if e[2][1]), None)
        if e_d is None or e_l is None:
            continue
        loop = _close_walk(head, [e_d, e_l], scc_edges)
        loop_start = replay(pda, stem).last
        return EmptinessWitness(tuple(stem), tuple(loop), loop_start)
    return None


def _close_walk(head, required: list, scc_edges) -> list[Transition]:
    """Closed walk from ``head`` through the required edges, inside one SCC."""
    succ_e: dict = {}
    for e in scc_edges:
        succ_e.setdefault(e[0], []).append(e)

    def path(src, dst) -> list:
        if src == dst:
            return []
        prev: dict = {src: None}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for e in succ_e.get(v, ()):
                if e[1] not in prev:
                    prev[e[1]] = e
                    if e[1] == dst:
                        queue.clear()
                        break
                    queue.append(e[1])
        out = []
        cur = dst
        while prev[cur] is not None:
            out.append(prev[cur])
            cur = prev[cur][0]
        return list(reversed(out))

    walk: list = []
    cur = head
    seen_ids = set()
    for e in required:
        if id(e) in seen_ids:
            continue
        walk += path(cur, e[0])
        walk.append(e)
        seen_ids.add(id(e))
        cur = e[1]
    walk += path(cur, head)
    return [t for e in walk for t in e[3]]


def validate_witness(pda: OmegaPDA, w: EmptinessWitness, start: Optional[Configuration] = None):
    """Raise if the witness does not certify nonemptiness."""
    if start is None:
        start = pda.initial_configuration()
    run = _replay_from(pda, start, w.stem + w.loop + w.loop)
    k = len(w.stem)
    n = len(w.loop)
    c0, c1, c2 = run.configurations[k], run.configurations[k + n], run.configurations[k + 2 * n]
    if c0 != w.loop_start:
        raise AssertionError("loop start mismatch")
    for c in (c1, c2):
        if c.state != c0.state or c.top != c0.top or c.height < c0.height:
            raise AssertionError("loop does not pump")
    if min(c.height for c in run.configurations[k:]) < c0.height:
        raise AssertionError("loop dips below its start level")
    if not any(t.label is not None for t in w.loop):
        raise AssertionError("loop has no letter transition")
    if max(t.color for t in w.loop) % 2 != 0:
        raise AssertionError("loop max color is odd")


def _replay_from(pda: OmegaPDA, start: Configuration, ts):
    from .core import NotARun, RunPrefix, step, NotEnabled

    configs = [start]
    for i, t in enumerate(ts):
        try:
            configs.append(step(configs[-1], t))
        except NotEnabled:
            raise NotARun(i) from None
    return RunPrefix(tuple(ts), tuple(configs))


# ---------------------------------------------------------------------------
# Ultimately periodic membership.
# ---------------------------------------------------------------------------


def lasso_product(pda: OmegaPDA, w: LassoWord) -> OmegaPDA:
    """Product with the deterministic |u|+|v| position tracker."""
    n = w.positions()

    def name(q: str, i: int) -> str:
        return f"{q}@{i}"

    transitions = []
    for t in pda.transitions:
        for i in range(n):
            if t.label is None:
                transitions.append(
                    Transition(name(t.source, i), t.top, None, name(t.target, i), t.push, t.color)
                )
            elif w.letter_at(i) == t.label:
                transitions.append(
                    Transition(
                        name(t.source, i), t.top, t.label,
                        name(t.target, w.next_position(i)), t.push, t.color,
                    )
                )
    states = tuple(name(q, i) for q in pda.states for i in range(n))
    return OmegaPDA(
        states, pda.input_alphabet, pda.stack_alphabet, name(pda.initial, 0), tuple(transitions)
    )


def lasso_membership(pda: OmegaPDA, w: LassoWord) -> bool:
    """Does the automaton accept ``u . v^omega``?"""
    for letter in w.prefix + w.loop:
        if letter not in pda.input_alphabet:
            raise ValueError(f"letter {letter!r} not in the input alphabet")
    return parity_nonempty(lasso_product(pda, w)) is not None


def brute_force_lasso_oracle(
    pda: OmegaPDA, w: LassoWord, height_bound: int, length_bound: int
) -> Union[bool, str]:
    """Independent bounded check of lasso membership.

    Explicit BFS over (configuration, lasso position) pairs with stack height
    at most ``height_bound``; Kosaraju SCC analysis decides acceptance.
    Returns UNKNOWN unless a lasso was found or the bounded graph is closed
    and no larger than ``length_bound`` nodes.
    """
    if height_bound <= 0 or length_bound <= 0:
        raise ValueError("bounds must be positive")
    start = (pda.initial_configuration(), 0)
    nodes = {start}
    queue = deque([start])
    out_edges: dict = {}
    boundary = False
    while queue:
        node = queue.popleft()
        config, i = node
        for t in pda.by_source_top.get((config.state, config.top), ()):
            if t.label is not None and t.label != w.letter_at(i):
                continue
            nxt_cfg = Configuration(t.target, config.stack[:-1] + t.push)
            nxt = (nxt_cfg, i if t.label is None else w.next_position(i))
            if nxt_cfg.height > height_bound:
                boundary = True
                continue
            out_edges.setdefault(node, []).append((nxt, t.color, t.label is not None))
            if nxt not in nodes:
                if len(nodes) >= length_bound:
                    return UNKNOWN
                nodes.add(nxt)
                queue.append(nxt)

    if _bounded_graph_accepts(nodes, out_edges):
        return True
    return False if not boundary else UNKNOWN


def _bounded_graph_accepts(nodes, out_edges) -> bool:
    colors = sorted({c for es in out_edges.values() for _, c, _ in es})
    for d in colors:
        if d % 2 != 0:
            continue
        sub: dict = {}
        for v, es in out_edges.items():
            sub[v] = [(u, c, let) for (u, c, let) in es if c <= d]
        comp = _kosaraju(list(nodes), sub)
        has_d: dict = {}
        has_letter: dict = {}
        for v, es in sub.items():
            for u, c, let in es:
                if comp[v] == comp[u]:
                    if c == d:
                        has_d[comp[v]] = True
                    if let:
                        has_letter[comp[v]] = True
        if any(has_d.get(k) and has_letter.get(k) for k in has_d):
            return True
    return False


def _kosaraju(nodes: list, succ: dict) -> dict:
    order = []
    seen = set()
    for root in nodes:
        if root in seen:
            continue
        stack = [(root, iter(succ.get(root, ())))]
        seen.add(root)
        while stack:
            v, it = stack[-1]
            pushed = False
            for e in it:
                u = e[0]
                if u not in seen:
                    seen.add(u)
                    stack.append((u, iter(succ.get(u, ()))))
                    pushed = True
                    break
            if not pushed:
                order.append(v)
                stack.pop()
    pred: dict = {}
    for v, es in succ.items():
        for e in es:
            pred.setdefault(e[0], []).append(v)
    comp: dict = {}
    current = 0
    for v in reversed(order):
        if v in comp:
            continue
        stack = [v]
        comp[v] = current
        while stack:
            x = stack.pop()
            for u in pred.get(x, ()):
                if u not in comp:
                    comp[u] = current
                    stack.append(u)
        current += 1
    return comp


# ---------------------------------------------------------------------------
# Color normalization and the #-tail configuration set.
# ---------------------------------------------------------------------------


def normalize_colors(pda: OmegaPDA) -> OmegaPDA:
    """Language-equivalent automaton with color-0 epsilon transitions.

    A pending component accumulates the maximal color seen along an epsilon
    sequence; letter transitions flush it, shifted up by 2 to stay nonzero
    and parity-faithful.
    """

    def name(q: str, p: Optional[int]) -> str:
        return f"{q}~{'-' if p is None else p}"

    by_source: dict[str, list[Transition]] = {}
    for t in pda.transitions:
        by_source.setdefault(t.source, []).append(t)

    def bump(p: Optional[int], c: int) -> int:
        return c if p is None else max(p, c)

    start = (pda.initial, None)
    seen = {start}
    queue = deque([start])
    states = [start]
    transitions = []
    while queue:
        q, p = queue.popleft()
        for t in by_source.get(q, ()):
            if t.label is None:
                nxt = (t.target, bump(p, t.color))
                color = 0
            else:
                nxt = (t.target, None)
                color = bump(p, t.color) + 2
            transitions.append(
                Transition(name(q, p), t.top, t.label, name(*nxt), t.push, color)
            )
            if nxt not in seen:
                seen.add(nxt)
                states.append(nxt)
                queue.append(nxt)
    return OmegaPDA(
        tuple(name(*s) for s in states),
        pda.input_alphabet,
        pda.stack_alphabet,
        name(*start),
        tuple(transitions),
    )


def accepts_tail_of(pda: OmegaPDA, tail_letter: str) -> PAutomaton:
    """The regular set of configurations from which ``tail_letter^omega`` is accepted.

    Level-preserving accepting heads first (runs that never go below their
    start height, decided per head by parity nonemptiness on a restricted
    automaton), then pre* saturation over tail-letter and epsilon transitions.
    """
    if tail_letter not in pda.input_alphabet:
        raise ValueError(f"{tail_letter!r} not in the input alphabet")

    def allowed(t: Transition) -> bool:
        return t.label is None or t.label == tail_letter

    restricted = tuple(t for t in pda.transitions if allowed(t))
    level = OmegaPDA(
        pda.states, pda.input_alphabet, pda.stack_alphabet, pda.initial,
        tuple(t for t in restricted if t.top != BOTTOM),
    )
    bottom_level = OmegaPDA(
        pda.states, pda.input_alphabet, pda.stack_alphabet, pda.initial, restricted
    )

    accepted_heads = []
    for q in pda.states:
        if parity_nonempty(bottom_level, Configuration(q, (BOTTOM,))) is not None:
            accepted_heads.append((q, BOTTOM))
        for x in pda.stack_alphabet:
            if parity_nonempty(level, Configuration(q, (BOTTOM, x))) is not None:
                accepted_heads.append((q, x))

    # C0: a finite union of languages (stack ending in X, state q).
    states = ["i", "acc"] + [f"s[{y}]" for y in pda.gamma_bottom]
    edges = {("i", BOTTOM, f"s[{BOTTOM}]")}
    for y in pda.gamma_bottom:
        for z in pda.stack_alphabet:
            edges.add((f"s[{y}]", z, f"s[{z}]"))
    for q, x in accepted_heads:
        edges.add((f"s[{x}]", q, "acc"))
    c0 = PAutomaton(tuple(states), "i", frozenset({"acc"}), frozenset(edges))
    return saturate_pre_star(pda, allowed, c0)
