"""Gale-Stewart games with pushdown winning conditions.

Pipeline: a condition automaton over paired letters is compiled into a
deterministic block-reading automaton (``build_pd``) that consumes both an
input word and a claimed run of the condition, moving all nondeterminism
into Player 2's letter choices.  The resulting game reduces to a parity game
on the configuration graph of a pushdown machine, solved by interval
iteration on height-truncated arenas: out-of-bound edges are resolved
pessimistically for either player in turn, and agreement of the two bounds
is conclusive for the full game.  Eve's winning strategies come out
positional on the truncated arena and are packaged as pushdown transducers;
the mode-tracking and three-phase delay transforms turn a transducer for the
block game into one for the original game.
"""

from __future__ import annotations

import sys
import threading
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .core import (
    BOTTOM,
    Configuration,
    GuardExceeded,
    LassoWord,
    OmegaPDA,
    PdaError,
    Transition,
)
from .resolvers import DetPushdown, PdtRule, Resolver, resolver_query

EVE = "eve"
ADAM = "adam"


class ResourceExceeded(PdaError):
    """The solver hit its vertex budget before reaching a conclusive bound."""


def pair_id(a1: str, a2: str) -> str:
    return f"({a1},{a2})"


# ---------------------------------------------------------------------------
# Game specifications.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaleStewartSpec:
    """Player 1 picks from sigma1, Player 2 from sigma2; Player 2 wins iff the
    paired outcome is in the condition language."""

    sigma1: tuple[str, ...]
    sigma2: tuple[str, ...]
    condition: OmegaPDA
    pairing: dict[str, tuple[str, str]]  # condition letter -> (a1, a2)
    gfg_claimed: bool = False

    def validate(self) -> list[str]:
        out = []
        pairs = {}
        for letter, pair in self.pairing.items():
            if letter not in self.condition.input_alphabet:
                out.append(f"pairing letter {letter!r} not in the condition alphabet")
            if pair in pairs.values():
                out.append(f"pair {pair} mapped twice")
            pairs[letter] = pair
        want = {(a1, a2) for a1 in self.sigma1 for a2 in self.sigma2}
        if set(pairs.values()) != want:
            out.append("pairing does not cover sigma1 x sigma2 exactly")
        if set(self.condition.input_alphabet) != set(self.pairing):
            out.append("condition alphabet and pairing domain differ")
        return out

    def letter_of(self, a1: str, a2: str) -> str:
        for letter, pair in self.pairing.items():
            if pair == (a1, a2):
                return letter
        raise KeyError((a1, a2))


def make_universality_spec(pda: OmegaPDA, gfg_claimed: bool = True) -> GaleStewartSpec:
    """Universality of L as the game over {(w, #^omega) : w in L}."""
    mark = "#"
    relabeled = OmegaPDA(
        pda.states,
        tuple(pair_id(a, mark) for a in pda.input_alphabet),
        pda.stack_alphabet,
        pda.initial,
        tuple(
            Transition(t.source, t.top, None if t.label is None else pair_id(t.label, mark),
                       t.target, t.push, t.color)
            for t in pda.transitions
        ),
    )
    pairing = {pair_id(a, mark): (a, mark) for a in pda.input_alphabet}
    return GaleStewartSpec(pda.input_alphabet, (mark,), relabeled, pairing, gfg_claimed)


# ---------------------------------------------------------------------------
# The deterministic block automaton P_d.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PdInfo:
    sigma1: tuple[str, ...]
    sigma2: tuple[str, ...]
    condition: OmegaPDA
    transition_ids: dict[Transition, str]
    decomp: dict[str, tuple[str, str, Any]]  # pd letter -> (a1, kind, payload)
    pairing_rev: dict[tuple[str, str], str]  # (a1, a2) -> condition letter

    @property
    def y_values(self) -> tuple[str, ...]:
        ids = tuple(self.transition_ids[t] for t in self.condition.transitions)
        return self.sigma2 + ids

    def pd_letter(self, x1: str, y: str) -> str:
        return f"{x1}&{y}"

    def letter_for(self, a1: str, a2: str) -> str:
        return self.pairing_rev[(a1, a2)]

    def encode_blocks(self, pairs, transitions) -> list[str]:
        """Block encoding of (pair word, condition run); fillers repeat a1."""
        out = []
        i = 0
        for a1, a2 in pairs:
            out.append(self.pd_letter(a1, a2))
            block_letter = None
            while block_letter is None:
                if i >= len(transitions):
                    raise ValueError("run ended before processing the pair word")
                t = transitions[i]
                i += 1
                out.append(self.pd_letter(a1, self.transition_ids[t]))
                block_letter = t.label
            if block_letter != self.letter_for(a1, a2):
                raise ValueError(f"run processes {block_letter!r}, word has ({a1},{a2})")
        if i != len(transitions):
            raise ValueError("trailing transitions after the pair word")
        return out

    def decode(self, letters) -> tuple[list[tuple[str, str]], list[Transition]]:
        """Inverse of the block encoding; raises on malformed input."""
        pairs: list[tuple[str, str]] = []
        transitions: list[Transition] = []
        expecting_pair = True
        for letter in letters:
            a1, kind, payload = self.decomp[letter]
            if expecting_pair:
                if kind != "a2":
                    raise ValueError(f"expected a pair letter, got {letter!r}")
                pairs.append((a1, payload))
                expecting_pair = False
            else:
                if kind != "tr":
                    raise ValueError(f"expected a transition letter, got {letter!r}")
                transitions.append(payload)
                if payload.label is not None:
                    expecting_pair = True
        return pairs, transitions


def build_pd(spec: GaleStewartSpec) -> tuple[OmegaPDA, PdInfo]:
    """Deterministic automaton over sigma1 x (sigma2 + transitions) accepting
    exactly the well-formed block encodings of accepted (word, run) pairs.

    Pair reads carry color 0, raw run-construction reads color 1, and
    block-completing reads flush the block's accumulated max color shifted up
    by 2; so inputs that eventually only construct the run (starving the
    word) have limsup 1 and are rejected, while completed-block inputs keep
    the parity of the simulated run.  Missing transitions dead-end the run,
    which rejects; no explicit sink is added.
    """
    bad = spec.validate()
    if bad:
        raise ValueError("; ".join(bad))
    cond = spec.condition
    tids = {t: f"t{i}" for i, t in enumerate(cond.transitions)}
    pairing_rev = {pair: letter for letter, pair in spec.pairing.items()}
    decomp: dict[str, tuple[str, str, Any]] = {}
    info = PdInfo(spec.sigma1, spec.sigma2, cond, tids, decomp, pairing_rev)
    for x1 in spec.sigma1:
        for a2 in spec.sigma2:
            decomp[info.pd_letter(x1, a2)] = (x1, "a2", a2)
        for t in cond.transitions:
            decomp[info.pd_letter(x1, tids[t])] = (x1, "tr", t)

    def await_state(q: str) -> str:
        return f"W({q})"

    def pending_state(q: str, letter: str, acc: Optional[int]) -> str:
        return f"P({q};{letter};{'-' if acc is None else acc})"

    def bump(acc: Optional[int], c: int) -> int:
        return c if acc is None else max(acc, c)

    by_source: dict[str, list[Transition]] = {}
    for t in cond.transitions:
        by_source.setdefault(t.source, []).append(t)

    states: list[str] = []
    transitions: list[Transition] = []
    seen: set = set()
    queue: deque = deque()

    def visit(node) -> str:
        if node not in seen:
            seen.add(node)
            queue.append(node)
            states.append(node)
        kind = node[0]
        if kind == "await":
            return await_state(node[1])
        return pending_state(node[1], node[2], node[3])

    start = ("await", cond.initial)
    visit(start)
    while queue:
        node = queue.popleft()
        if node[0] == "await":
            q = node[1]
            src = await_state(q)
            for x1 in spec.sigma1:
                for a2 in spec.sigma2:
                    cond_letter = pairing_rev[(x1, a2)]
                    dst = visit(("pending", q, cond_letter, None))
                    for x in cond.gamma_bottom:
                        transitions.append(
                            Transition(src, x, info.pd_letter(x1, a2), dst, (x,), 0)
                        )
        else:
            _, q, cond_letter, acc = node
            src = pending_state(q, cond_letter, acc)
            for t in by_source.get(q, ()):
                if t.label is None:
                    dst = visit(("pending", t.target, cond_letter, bump(acc, t.color)))
                    color = 1
                elif t.label == cond_letter:
                    dst = visit(("await", t.target))
                    color = bump(acc, t.color) + 2
                else:
                    continue
                for x1 in spec.sigma1:
                    transitions.append(
                        Transition(src, t.top, info.pd_letter(x1, tids[t]), dst, t.push, color)
                    )

    names = [await_state(s[1]) if s[0] == "await" else pending_state(s[1], s[2], s[3])
             for s in states]
    alphabet = tuple(decomp)
    pd = OmegaPDA(tuple(names), alphabet, cond.stack_alphabet, await_state(cond.initial),
                  tuple(transitions))
    return pd, info


# ---------------------------------------------------------------------------
# Parity games: finite (Zielonka) and pushdown (truncated interval iteration).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteParityGame:
    vertices: tuple
    owner: dict  # vertex -> EVE | ADAM
    edges: tuple  # (source, color, target)


@dataclass
class FiniteSolveResult:
    winning: dict  # player -> frozenset of vertices
    strategy: dict  # player -> {vertex: edge index}

    def winner_of(self, v) -> str:
        return EVE if v in self.winning[EVE] else ADAM


def solve_finite_parity_game(g: FiniteParityGame) -> FiniteSolveResult:
    """Zielonka on an edge-colored game; edges become midpoint vertices, dead
    ends become losing self-loops for their owner."""
    colors = [c for _, c, _ in g.edges]
    cmax = max(colors, default=0)
    cmin = min(colors, default=0)
    lose = {EVE: cmax + 1 + (cmax % 2), ADAM: cmax + 2 - (cmax % 2)}

    vertex_color: dict = {}
    owner: dict = {}
    succ: dict = {}
    pred: dict = {}
    edge_of_mid: dict = {}

    def add_vertex(v, own, col):
        vertex_color[v] = col
        owner[v] = own
        succ.setdefault(v, [])
        pred.setdefault(v, [])

    def add_edge(u, v):
        succ[u].append(v)
        pred[v].append(u)

    for v in g.vertices:
        add_vertex(v, g.owner[v], cmin)
    for i, (u, c, v) in enumerate(g.edges):
        mid = ("#mid", i)
        add_vertex(mid, EVE, c)
        edge_of_mid[mid] = i
        add_edge(u, mid)
        add_edge(mid, v)
    for v in g.vertices:
        if not succ[v]:
            mid = ("#dead", v)
            add_vertex(mid, EVE, lose[g.owner[v]])
            add_edge(v, mid)
            add_edge(mid, v)

    result = _zielonka_threaded(set(vertex_color), succ, pred, owner, vertex_color)
    winning = {p: frozenset(v for v in result[0][p] if v in g.owner) for p in (EVE, ADAM)}
    strategy: dict = {EVE: {}, ADAM: {}}
    for p in (EVE, ADAM):
        for v, mid in result[1][p].items():
            if v in g.owner and isinstance(mid, tuple) and mid[0] == "#mid":
                strategy[p][v] = edge_of_mid[mid]
    return FiniteSolveResult(winning, strategy)


def _zielonka_threaded(vertices, succ, pred, owner, color):
    holder: dict = {}

    def run():
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(vertices) + 10000))
        holder["out"] = _zielonka(frozenset(vertices), succ, pred, owner, color)

    old = threading.stack_size()
    threading.stack_size(256 * 1024 * 1024)
    try:
        worker = threading.Thread(target=run)
        worker.start()
        worker.join()
    finally:
        threading.stack_size(old)
    return holder["out"]


def _attractor(player, targets, sub, succ, pred, owner):
    attracted = set(targets)
    strat: dict = {}
    counts: dict = {}
    queue = deque(sorted(targets, key=str))
    while queue:
        u = queue.popleft()
        for v in pred.get(u, ()):
            if v not in sub or v in attracted:
                continue
            if owner[v] == player:
                attracted.add(v)
                strat[v] = u
                queue.append(v)
            else:
                if v not in counts:
                    counts[v] = sum(1 for w in succ[v] if w in sub)
                counts[v] -= 1
                if counts[v] == 0:
                    attracted.add(v)
                    queue.append(v)
    return attracted, strat


def _zielonka(sub, succ, pred, owner, color):
    if not sub:
        return ({EVE: set(), ADAM: set()}, {EVE: {}, ADAM: {}})
    d = max(color[v] for v in sub)
    p = EVE if d % 2 == 0 else ADAM
    opp = ADAM if p == EVE else EVE
    targets = {v for v in sub if color[v] == d}
    region, rstrat = _attractor(p, targets, sub, succ, pred, owner)
    wins, strats = _zielonka(frozenset(sub - region), succ, pred, owner, color)
    if not wins[opp]:
        strat_p = dict(strats[p])
        strat_p.update(rstrat)
        for v in sorted(targets, key=str):
            if owner[v] == p and v not in strat_p:
                strat_p[v] = next(w for w in succ[v] if w in sub)
        return ({p: set(sub), opp: set()}, {p: strat_p, opp: {}})
    region2, bstrat = _attractor(opp, wins[opp], sub, succ, pred, owner)
    wins2, strats2 = _zielonka(frozenset(sub - region2), succ, pred, owner, color)
    strat_opp = dict(strats[opp])
    strat_opp.update(strats2[opp])
    strat_opp.update(bstrat)
    return (
        {p: wins2[p], opp: wins2[opp] | region2},
        {p: strats2[p], opp: strat_opp},
    )


@dataclass(frozen=True)
class GameMove:
    source: Any
    top: str
    target: Any
    push: tuple[str, ...]
    color: int


@dataclass(frozen=True)
class PushdownParityGame:
    """Pushdown system plus owners; dead ends lose for their owner."""

    states: tuple
    stack_alphabet: tuple[str, ...]
    initial: Any
    owner: dict
    moves: tuple[GameMove, ...]

    def moves_at(self) -> dict:
        idx: dict = {}
        for m in self.moves:
            idx.setdefault((m.source, m.top), []).append(m)
        return idx


@dataclass
class PushdownSolveResult:
    winner: str
    eve_strategy: Optional[dict]  # (state, stack) -> GameMove
    stats: dict


def embed_finite_game(g: FiniteParityGame, initial) -> PushdownParityGame:
    """A finite parity game as a stackless pushdown game."""
    moves = tuple(
        GameMove(u, BOTTOM, v, (BOTTOM,), c) for (u, c, v) in g.edges
    )
    return PushdownParityGame(g.vertices, (), initial, dict(g.owner), moves)


def solve_pushdown_parity_game(
    game: PushdownParityGame, budget: int = 5_000_000
) -> PushdownSolveResult:
    """Interval iteration on height-truncated configuration graphs.

    Overflow edges point at a paradise vertex for one player at a time;
    a player winning their pessimistic truncation wins the full game.  The
    height grows until conclusive or the vertex budget is exhausted.
    """
    moves_at = game.moves_at()
    total = 0
    height = 1
    while True:
        configs: dict = {}
        boundary = False
        start = (game.initial, (BOTTOM,))
        order = [start]
        configs[start] = []
        i = 0
        while i < len(order):
            state, stack = order[i]
            i += 1
            for m in moves_at.get((state, stack[-1]), ()):
                nstack = stack[:-1] + m.push
                if len(nstack) - 1 > height:
                    boundary = True
                    configs[(state, stack)].append((m, None))
                    continue
                nxt = (m.target, nstack)
                configs[(state, stack)].append((m, nxt))
                if nxt not in configs:
                    configs[nxt] = []
                    order.append(nxt)
        total += len(configs)
        if total > budget:
            raise ResourceExceeded(
                f"{total} truncated-arena vertices exceed the budget {budget}"
            )

        cmax = max((m.color for m in game.moves), default=0)
        even_big = cmax + 2 - (cmax % 2)
        odd_big = cmax + 1 + (cmax % 2)
        par = "#paradise"
        base_edges = []
        edge_move = []
        owner = {c: game.owner[c[0]] for c in configs}
        for c, outs in configs.items():
            for m, nxt in outs:
                base_edges.append((c, m.color, par if nxt is None else nxt))
                edge_move.append(m)
        if boundary:
            owner[par] = EVE

        def finite_game(paradise_color: int) -> FiniteParityGame:
            vertices = list(configs) + ([par] if boundary else [])
            edges = tuple(base_edges) + (
                ((par, paradise_color, par),) if boundary else ()
            )
            return FiniteParityGame(tuple(vertices), dict(owner), edges)

        def config_strategy(res: FiniteSolveResult) -> dict:
            return {
                c: edge_move[i]
                for c, i in res.strategy[EVE].items()
                if c in configs and i < len(edge_move)
            }

        stats = {"vertices": total, "height": height}
        if not boundary:
            res = solve_finite_parity_game(finite_game(0))
            winner = res.winner_of(start)
            strat = config_strategy(res) if winner == EVE else None
            return PushdownSolveResult(winner, strat, stats)

        pess_eve = solve_finite_parity_game(finite_game(odd_big))
        if pess_eve.winner_of(start) == EVE:
            return PushdownSolveResult(EVE, config_strategy(pess_eve), stats)
        pess_adam = solve_finite_parity_game(finite_game(even_big))
        if pess_adam.winner_of(start) == ADAM:
            return PushdownSolveResult(ADAM, None, stats)
        height = height + 1 if height < 4 else height + max(2, height // 2)


# ---------------------------------------------------------------------------
# Gale-Stewart arena construction.
# ---------------------------------------------------------------------------


def gs_to_pushdown_game(
    dpda: OmegaPDA,
    sigma1: tuple[str, ...],
    sigma2p: tuple[str, ...],
    letter_of: dict[tuple[str, str], str],
) -> PushdownParityGame:
    """Turn-based arena: Adam picks a sigma1 letter, Eve a sigma2p letter,
    then the unique dpda transitions fire with their own colors.

    Letter-choice moves carry the minimal color.  Winner correspondence with
    the Gale-Stewart game requires that the dpda cannot starve on epsilon
    transitions (the block automata built here are epsilon-free).
    """
    from .core import is_deterministic

    det, pairs = is_deterministic(dpda)
    if not det:
        raise ValueError(f"arena needs a deterministic automaton: {pairs[:1]}")
    cmin = min((t.color for t in dpda.transitions), default=0)
    by_source_label: dict[tuple[str, Optional[str]], bool] = {}
    for t in dpda.transitions:
        by_source_label[(t.source, t.label)] = True
    gb = dpda.gamma_bottom

    states: list = []
    moves: list[GameMove] = []
    owner: dict = {}
    seen: set = set()
    queue: deque = deque()

    def visit(v):
        if v not in seen:
            seen.add(v)
            states.append(v)
            owner[v] = ADAM if v[0] == "A" else EVE
            queue.append(v)
        return v

    start = visit(("A", dpda.initial))
    while queue:
        v = queue.popleft()
        if v[0] == "A":
            q = v[1]
            for x1 in sigma1:
                tgt = visit(("E", q, x1))
                for x in gb:
                    moves.append(GameMove(v, x, tgt, (x,), cmin))
        elif v[0] == "E":
            _, q, x1 = v
            for y in sigma2p:
                letter = letter_of.get((x1, y))
                if letter is None or not by_source_label.get((q, letter)):
                    continue
                tgt = visit(("S", q, x1, y))
                for x in gb:
                    moves.append(GameMove(v, x, tgt, (x,), cmin))
        else:
            _, q, x1, y = v
            letter = letter_of[(x1, y)]
            for x in gb:
                eps = dpda.by_source_top.get((q, x), ())
                et = next((t for t in eps if t.label is None), None)
                if et is not None:
                    tgt = visit(("S", et.target, x1, y))
                    moves.append(GameMove(v, x, tgt, et.push, et.color))
                    continue
                lt = next((t for t in eps if t.label == letter), None)
                if lt is not None:
                    tgt = visit(("A", lt.target))
                    moves.append(GameMove(v, x, tgt, lt.push, lt.color))
    return PushdownParityGame(tuple(states), dpda.stack_alphabet, start, owner, tuple(moves))


@dataclass
class GsResult:
    winner: str
    sound: bool  # Adam verdicts are inconclusive unless the condition is GFG
    pd: OmegaPDA
    info: PdInfo
    game: PushdownParityGame
    solve: PushdownSolveResult


def solve_gale_stewart(spec: GaleStewartSpec, budget: int = 5_000_000) -> GsResult:
    pd, info = build_pd(spec)
    letter_of = {
        (x1, y): info.pd_letter(x1, y) for x1 in spec.sigma1 for y in info.y_values
    }
    game = gs_to_pushdown_game(pd, spec.sigma1, info.y_values, letter_of)
    res = solve_pushdown_parity_game(game, budget)
    sound = res.winner == EVE or spec.gfg_claimed
    return GsResult(res.winner, sound, pd, info, game, res)


def universality(pda: OmegaPDA, budget: int = 5_000_000, gfg_claimed: bool = True) -> bool:
    """Universality via the game over {(w, #^omega) : w in L}; sound negative
    verdicts require the automaton to be good-for-games."""
    return solve_gale_stewart(make_universality_spec(pda, gfg_claimed), budget).winner == EVE


# ---------------------------------------------------------------------------
# Strategy transducers.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StrategyPDT:
    """Deterministic pushdown transducer from input words to output letters;
    the output is read at the (epsilon-closed) end of the run."""

    machine: DetPushdown
    output: dict  # machine state -> output letter
    input_alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]

    def start(self) -> Configuration:
        return self.machine.close(self.machine.initial_configuration())

    def round(self, cfg: Configuration, letter: str) -> tuple[Configuration, str]:
        nxt = self.machine.consume(cfg, letter)
        try:
            return nxt, self.output[nxt.state]
        except KeyError:
            raise PdaError(f"strategy output undefined at {nxt.state}") from None

    def respond(self, word) -> str:
        cfg = self.start()
        out = None
        for a in word:
            cfg, out = self.round(cfg, a)
        if out is None:
            raise ValueError("strategies are defined on nonempty words")
        return out


def extract_strategy_pdt(gs: GsResult) -> StrategyPDT:
    """Eve's positional arena strategy as a stack-less transducer whose states
    are truncated-arena configurations."""
    if gs.winner != EVE or gs.solve.eve_strategy is None:
        raise ValueError("no Eve strategy: Adam wins this specification")
    sigma = gs.solve.eve_strategy
    moves_at = gs.game.moves_at()

    def apply(cfg, m: GameMove):
        state, stack = cfg
        return (m.target, stack[:-1] + m.push)

    def follow_forced(cfg):
        while cfg[0][0] == "S":
            ms = moves_at.get((cfg[0], cfg[1][-1]), ())
            if not ms:
                raise PdaError(f"strategy reached a dead simulation vertex {cfg}")
            cfg = apply(cfg, ms[0])
        return cfg

    def adam_read(cfg, x1: str):
        for m in moves_at.get((cfg[0], cfg[1][-1]), ()):
            if m.target[2] == x1:
                return apply(cfg, m)
        raise PdaError(f"no Adam move for {x1!r} at {cfg}")

    start = (gs.game.initial, (BOTTOM,))
    init = ("start", start)
    rules: list[PdtRule] = []
    output: dict = {}
    states: list = [init]
    seen = {init}
    queue: deque = deque()

    def e_state(cfg):
        node = ("play", cfg)
        if node not in seen:
            seen.add(node)
            states.append(node)
            queue.append(node)
            move = sigma.get(cfg)
            if move is None:
                raise PdaError(f"Eve strategy undefined at {cfg}")
            output[node] = move.target[3]
        return node

    for x1 in gs.info.sigma1:
        rules.append(PdtRule(init, BOTTOM, x1, e_state(adam_read(start, x1)), (BOTTOM,)))
    while queue:
        node = queue.popleft()
        cfg = node[1]
        nxt_a = follow_forced(apply(cfg, sigma[cfg]))
        for x1 in gs.info.sigma1:
            rules.append(PdtRule(node, BOTTOM, x1, e_state(adam_read(nxt_a, x1)), (BOTTOM,)))
    machine = DetPushdown(tuple(states), init, (), tuple(rules))
    return StrategyPDT(machine, output, gs.info.sigma1, gs.info.y_values)


def reading_modes(t: StrategyPDT) -> set[tuple[Any, str]]:
    modes = set()
    for rule in t.machine.rules:
        if rule.symbol is not None:
            modes.add((rule.source, rule.top))
    return modes


def mode_tracking_pdt(t: StrategyPDT) -> StrategyPDT:
    """Track the mode (state, top symbol) in the state; pops go through a raw
    state that re-reads the uncovered symbol."""
    gb = (BOTTOM,) + t.machine.stack_alphabet

    def mode(q, x):
        return ("mode", q, x)

    def raw(q):
        return ("raw", q)

    states = [mode(q, x) for q in t.machine.states for x in gb]
    states += [raw(q) for q in t.machine.states]
    rules: list[PdtRule] = []
    for r in t.machine.rules:
        if len(r.push) == 2:
            rules.append(PdtRule(mode(r.source, r.top), r.top, r.symbol,
                                 mode(r.target, r.push[1]), r.push))
        elif len(r.push) == 1:
            rules.append(PdtRule(mode(r.source, r.top), r.top, r.symbol,
                                 mode(r.target, r.push[0]), r.push))
        else:
            rules.append(PdtRule(mode(r.source, r.top), r.top, r.symbol, raw(r.target), ()))
    for q in t.machine.states:
        for x in gb:
            rules.append(PdtRule(raw(q), x, None, mode(q, x), (x,)))
    output = {mode(q, x): t.output[q] for q in t.machine.states for x in gb if q in t.output}
    machine = DetPushdown(tuple(states), mode(t.machine.initial, BOTTOM),
                          t.machine.stack_alphabet, tuple(rules))
    return StrategyPDT(machine, output, t.input_alphabet, t.output_alphabet)


def delay_transform(
    tprime: StrategyPDT,
    reading: set,
    classify: Callable[[str], str],  # 'sigma2' | 'eps_trans' | 'letter_trans'
    dummy: str,
    sigma1: tuple[str, ...],
    sigma2: tuple[str, ...],
) -> StrategyPDT:
    """Three-phase transform of a block-game transducer into a strategy for
    the original game: initialization until the first real letter, waiting
    until an output letter is due (stored), then a delay phase that feeds
    dummy letters while the run infix is constructed and finally emits the
    stored letter when the block completes."""

    def is_reading(q) -> bool:
        return q[0] == "mode" and (q[1], q[2]) in reading

    lam = tprime.output
    tags = ["i", "w"] + list(sigma2)
    states = [(q, tag) for q in tprime.machine.states for tag in tags]
    rules: list[PdtRule] = []
    for r in tprime.machine.rules:
        if r.symbol is None:
            for tag in tags:
                rules.append(PdtRule((r.source, tag), r.top, None, (r.target, tag), r.push))
            continue
        if r.symbol in sigma1:
            rules.append(PdtRule((r.source, "i"), r.top, r.symbol, (r.target, "w"), r.push))
        if r.symbol == dummy:
            out = lam.get(r.source)
            if out is not None and classify(out) == "sigma2":
                rules.append(PdtRule((r.source, "w"), r.top, None, (r.target, out), r.push))
            if is_reading(r.source) and out is not None and classify(out) == "eps_trans":
                for a2 in sigma2:
                    rules.append(PdtRule((r.source, a2), r.top, None, (r.target, a2), r.push))
        if r.symbol in sigma1 and is_reading(r.source):
            out = lam.get(r.source)
            if out is not None and classify(out) == "letter_trans":
                for a2 in sigma2:
                    rules.append(PdtRule((r.source, a2), r.top, r.symbol, (r.target, "w"), r.push))
    output = {}
    for q in tprime.machine.states:
        out = lam.get(q)
        if is_reading(q) and out is not None and classify(out) == "letter_trans":
            for a2 in sigma2:
                output[(q, a2)] = a2
    machine = DetPushdown(tuple(states), (tprime.machine.initial, "i"),
                          tprime.machine.stack_alphabet, tuple(rules))
    return StrategyPDT(machine, output, sigma1, tuple(sigma2))


def synthesize_strategy_pdt(spec: GaleStewartSpec, budget: int = 5_000_000) -> StrategyPDT:
    """Winning strategy for Player 2 as a pushdown transducer over sigma1."""
    gs = solve_gale_stewart(spec, budget)
    if gs.winner != EVE:
        raise ValueError("Player 2 does not win this specification")
    t = extract_strategy_pdt(gs)
    tprime = mode_tracking_pdt(t)

    def classify(y: str) -> str:
        if y in spec.sigma2:
            return "sigma2"
        tr = next(t for t, tid in gs.info.transition_ids.items() if tid == y)
        return "eps_trans" if tr.label is None else "letter_trans"

    return delay_transform(
        tprime, reading_modes(t), classify, spec.sigma1[0], spec.sigma1, spec.sigma2
    )


def simulate_play(strategy: StrategyPDT, adam: LassoWord, guard: int = 2000) -> LassoWord:
    """Deterministic co-simulation; the outcome lasso is detected at a
    repeated (transducer state, top symbol, adam position) step."""
    cfg = strategy.start()
    outcome: list[str] = []
    pos = 0
    snapshots: list[tuple] = []  # (key, height, len(outcome))
    candidates: list[int] = []
    steps = 0
    while True:
        key = (cfg.state, cfg.top, pos)
        height = cfg.height
        while candidates and snapshots[candidates[-1]][1] > height:
            candidates.pop()
        for idx in candidates:
            if snapshots[idx][0] == key:
                cut = snapshots[idx][2]
                return LassoWord(tuple(outcome[:cut]), tuple(outcome[cut:]))
        snapshots.append((key, height, len(outcome)))
        candidates.append(len(snapshots) - 1)
        x1 = adam.letter_at(pos)
        cfg, a2 = strategy.round(cfg, x1)
        outcome.append(pair_id(x1, a2))
        pos = pos + 1 if pos + 1 < adam.positions() else len(adam.prefix)
        steps += 1
        if steps > guard:
            raise GuardExceeded(f"no outcome lasso within {guard} rounds")


def compose_sigma_d(
    spec: GaleStewartSpec, sigma: Callable[[tuple[str, ...]], str], resolver: Resolver,
    info: Optional[PdInfo] = None,
) -> Callable[[tuple[str, ...]], str]:
    """Strategy for the block game from a strategy for the original game plus
    a resolver: alternate between simulating sigma's letter choice and letting
    the resolver build the run infix that processes it."""
    from .core import replay

    if info is None:
        info = build_pd(spec)[1]
    cache: dict[tuple[str, ...], str] = {}

    def sd(v: tuple[str, ...]) -> str:
        v = tuple(v)
        if v in cache:
            return cache[v]
        outputs = [sd(v[:k]) for k in range(1, len(v))]
        if not outputs:
            out = sigma((v[0],))
        else:
            prev = outputs[-1]
            prev_kind = "a2" if prev in spec.sigma2 else "tr"
            prev_tr = None
            if prev_kind == "tr":
                prev_tr = next(
                    t for t, tid in info.transition_ids.items() if tid == prev
                )
            if prev_kind == "tr" and prev_tr.label is not None:
                word = tuple(v[j] for j in range(len(outputs)) if outputs[j] in spec.sigma2)
                out = sigma(word + (v[-1],))
            else:
                history = [
                    next(t for t, tid in info.transition_ids.items() if tid == outputs[j])
                    for j in range(len(outputs))
                    if outputs[j] not in spec.sigma2
                ]
                j_prime = max(j for j in range(len(outputs)) if outputs[j] in spec.sigma2)
                pending = spec.letter_of(v[j_prime], outputs[j_prime])
                run = replay(spec.condition, tuple(history))
                tr = resolver_query(resolver, run, pending)
                out = info.transition_ids[tr]
        cache[v] = out
        return out

    return sd


# ---------------------------------------------------------------------------
# Text formats: game specifications and strategy transducers.
# ---------------------------------------------------------------------------


def parse_gs_spec(text: str) -> GaleStewartSpec:
    from .core import FormatError, parse_pda

    sigma1: list[str] = []
    sigma2: list[str] = []
    pairing: dict[str, tuple[str, str]] = {}
    gfg = False
    pda_lines: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        parts = line.split()
        if not parts or line.startswith("#"):
            continue
        if parts[0] == "sigma1":
            sigma1 += parts[1:]
        elif parts[0] == "sigma2":
            sigma2 += parts[1:]
        elif parts[0] == "pair":
            pairing[parts[1]] = (parts[2], parts[3])
        elif parts[0] == "gfg":
            gfg = parts[1].lower() in ("true", "1", "yes")
        else:
            pda_lines.append(raw)
    spec = GaleStewartSpec(
        tuple(sigma1), tuple(sigma2), parse_pda("\n".join(pda_lines)), pairing, gfg
    )
    bad = spec.validate()
    if bad:
        raise FormatError("; ".join(bad))
    return spec


def format_gs_spec(spec: GaleStewartSpec) -> str:
    from .core import format_pda

    lines = [format_pda(spec.condition).rstrip("\n")]
    lines.append("sigma1 " + " ".join(spec.sigma1))
    lines.append("sigma2 " + " ".join(spec.sigma2))
    for letter, (a1, a2) in spec.pairing.items():
        lines.append(f"pair {letter} {a1} {a2}")
    lines.append(f"gfg {'true' if spec.gfg_claimed else 'false'}")
    return "\n".join(lines) + "\n"


def format_strategy_pdt(t: StrategyPDT) -> str:
    ids = {q: f"s{i}" for i, q in enumerate(t.machine.states)}
    lines = [f"tstate {ids[q]}" for q in t.machine.states]
    lines.append(f"tinitial {ids[t.machine.initial]}")
    lines += [f"tstacksym {x}" for x in t.machine.stack_alphabet]
    from .core import push_to_text, top_to_text

    for r in t.machine.rules:
        sym = "eps" if r.symbol is None else r.symbol
        lines.append(
            f"ttrans {ids[r.source]} {top_to_text(r.top)} {sym} "
            f"{ids[r.target]} {push_to_text(r.push)}"
        )
    for q, out in t.output.items():
        lines.append(f"tout {ids[q]} {out}")
    lines.append("tinput " + " ".join(t.input_alphabet))
    lines.append("toutput " + " ".join(t.output_alphabet))
    return "\n".join(lines) + "\n"


def parse_strategy_pdt(text: str) -> StrategyPDT:
    from .core import FormatError, push_from_text

    states: list[str] = []
    initial: Optional[str] = None
    stack: list[str] = []
    rules: list[PdtRule] = []
    output: dict = {}
    input_alphabet: tuple[str, ...] = ()
    output_alphabet: tuple[str, ...] = ()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "tstate":
                states.append(parts[1])
            elif parts[0] == "tinitial":
                initial = parts[1]
            elif parts[0] == "tstacksym":
                stack.append(parts[1])
            elif parts[0] == "ttrans":
                src, top, sym, dst, push = parts[1:6]
                rules.append(
                    PdtRule(
                        src, BOTTOM if top == "_" else top,
                        None if sym == "eps" else sym, dst, push_from_text(push),
                    )
                )
            elif parts[0] == "tout":
                output[parts[1]] = parts[2]
            elif parts[0] == "tinput":
                input_alphabet = tuple(parts[1:])
            elif parts[0] == "toutput":
                output_alphabet = tuple(parts[1:])
            else:
                raise FormatError(f"line {ln}: unknown declaration {parts[0]!r}")
        except IndexError as exc:
            raise FormatError(f"line {ln}: {raw!r}: {exc}") from None
    if initial is None:
        raise FormatError("missing 'tinitial' declaration")
    machine = DetPushdown(tuple(states), initial, tuple(stack), tuple(rules))
    return StrategyPDT(machine, output, input_alphabet, output_alphabet)
