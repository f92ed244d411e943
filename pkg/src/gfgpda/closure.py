"""Products with deterministic parity automata: intersection, union and set
difference with omega-regular languages, via a latest-appearance-record over
the pairs of colors produced by the two sides.

Epsilon transitions of the pushdown side freeze the DPA coordinate and feed
the DPA's minimal color as a sentinel, which cannot change the DPA-side
limit verdict.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .core import FormatError, LassoWord, OmegaPDA, Transition
from .resolvers import Resolver, ResolverStuck

MODES = ("intersect", "union", "minus")


class AlphabetMismatch(Exception):
    pass


@dataclass(frozen=True)
class DeterministicParityAutomaton:
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    delta: dict[tuple[str, str], str]
    colors: dict[tuple[str, str], int]

    def validate(self) -> list[str]:
        out = []
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.delta:
                    out.append(f"delta({q}, {a}) missing")
                elif (q, a) not in self.colors:
                    out.append(f"color({q}, {a}) missing")
        if self.initial not in self.states:
            out.append(f"initial {self.initial!r} not declared")
        return out

    def min_color(self) -> int:
        return min(self.colors.values())


def dpa_lasso_verdict(dpa: DeterministicParityAutomaton, w: LassoWord) -> bool:
    """Direct deterministic simulation of the unique run on ``u . v^omega``."""
    state = dpa.initial
    for a in w.prefix:
        state = dpa.delta[(state, a)]
    seen: dict[tuple[str, int], int] = {}
    trace: list[int] = []
    pos = 0
    while (state, pos) not in seen:
        seen[(state, pos)] = len(trace)
        a = w.loop[pos]
        trace.append(dpa.colors[(state, a)])
        state = dpa.delta[(state, a)]
        pos = (pos + 1) % len(w.loop)
    start = seen[(state, pos)]
    return max(trace[start:]) % 2 == 0


@dataclass(frozen=True)
class LARState:
    """Permutation of occurring (pda color, dpa color) pairs plus hit position."""

    permutation: tuple[tuple[int, int], ...]
    hit: int


def lar_update(lar: LARState, pair: tuple[int, int]) -> LARState:
    hit = lar.permutation.index(pair)
    perm = (pair,) + tuple(p for p in lar.permutation if p != pair)
    return LARState(perm, hit)


def muller_accepts(mode: str, limit_pairs: frozenset[tuple[int, int]]) -> bool:
    pda_ok = max(p for p, _ in limit_pairs) % 2 == 0
    dpa_ok = max(a for _, a in limit_pairs) % 2 == 0
    if mode == "intersect":
        return pda_ok and dpa_ok
    if mode == "union":
        return pda_ok or dpa_ok
    if mode == "minus":
        return pda_ok and not dpa_ok
    raise ValueError(f"unknown mode {mode!r}")


def lar_color(mode: str, lar: LARState) -> int:
    """Parity color of an update: even iff the recurring record set satisfies the mode."""
    record = frozenset(lar.permutation[: lar.hit + 1])
    return 2 * lar.hit + 2 if muller_accepts(mode, record) else 2 * lar.hit + 1


def lar_verdict(mode: str, pairs: list[tuple[int, int]], loop_from: int) -> bool:
    """LAR-translated parity verdict of an ultimately periodic pair-color sequence."""
    alphabet = tuple(sorted(set(pairs)))
    lar = LARState(alphabet, 0)
    seen: dict[tuple[LARState, int], int] = {}
    colors: list[int] = []
    i = loop_from
    prefix = pairs[:loop_from]
    loop = pairs[loop_from:]
    for p in prefix:
        lar = lar_update(lar, p)
        colors.append(lar_color(mode, lar))
    pos = 0
    while (lar, pos) not in seen:
        seen[(lar, pos)] = len(colors)
        lar = lar_update(lar, loop[pos])
        colors.append(lar_color(mode, lar))
        pos = (pos + 1) % len(loop)
    return max(colors[seen[(lar, pos)] :]) % 2 == 0


@dataclass(frozen=True)
class ProductInfo:
    base_of: dict[Transition, Transition]
    # (product state, base transition) -> product transition
    extend: dict[tuple[str, Transition], Transition]


def _completed(pda: OmegaPDA) -> OmegaPDA:
    """Add an odd-colored rejecting sink so that every word has a run.

    Leaves the language unchanged; needed for union products, where a word
    without any run of the pushdown side must still get the DPA's verdict.
    """
    sink = "sink!"
    while sink in pda.states:
        sink += "!"
    extra = []
    for q in pda.states + (sink,):
        for x in pda.gamma_bottom:
            for a in pda.input_alphabet:
                extra.append(Transition(q, x, a, sink, (x,), 1))
    return OmegaPDA(
        pda.states + (sink,), pda.input_alphabet, pda.stack_alphabet, pda.initial,
        pda.transitions + tuple(extra),
    )


def product_with_info(
    pda: OmegaPDA, dpa: DeterministicParityAutomaton, mode: str
) -> tuple[OmegaPDA, ProductInfo]:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if set(dpa.alphabet) != set(pda.input_alphabet):
        raise AlphabetMismatch(f"{dpa.alphabet} vs {pda.input_alphabet}")
    bad = dpa.validate()
    if bad:
        raise ValueError("; ".join(bad))
    if mode == "union":
        pda = _completed(pda)
    sentinel = dpa.min_color()

    # First pass: the (state, dpa state) pairs and color pairs that can occur.
    by_source: dict[str, list[Transition]] = {}
    for t in pda.transitions:
        by_source.setdefault(t.source, []).append(t)
    seen = {(pda.initial, dpa.initial)}
    queue = deque(seen)
    pair_colors: set[tuple[int, int]] = set()
    while queue:
        q, d = queue.popleft()
        for t in by_source.get(q, ()):
            if t.label is None:
                pair_colors.add((t.color, sentinel))
                nxt = (t.target, d)
            else:
                pair_colors.add((t.color, dpa.colors[(d, t.label)]))
                nxt = (t.target, dpa.delta[(d, t.label)])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    lar0 = LARState(tuple(sorted(pair_colors)), 0)
    lar_ids: dict[LARState, int] = {}

    def lar_id(lar: LARState) -> int:
        return lar_ids.setdefault(lar, len(lar_ids))

    def name(q: str, d: str, lar: LARState) -> str:
        return f"{q}*{d}*L{lar_id(lar)}"

    start = (pda.initial, dpa.initial, lar0)
    states = [start]
    seen2 = {start}
    queue = deque([start])
    transitions: list[Transition] = []
    base_of: dict[Transition, Transition] = {}
    extend: dict[tuple[str, Transition], Transition] = {}
    while queue:
        q, d, lar = queue.popleft()
        for t in by_source.get(q, ()):
            if t.label is None:
                pair = (t.color, sentinel)
                d2 = d
            else:
                pair = (t.color, dpa.colors[(d, t.label)])
                d2 = dpa.delta[(d, t.label)]
            lar2 = lar_update(lar, pair)
            nxt = (t.target, d2, lar2)
            pt = Transition(
                name(q, d, lar), t.top, t.label, name(*nxt), t.push, lar_color(mode, lar2)
            )
            transitions.append(pt)
            base_of[pt] = t
            extend[(pt.source, t)] = pt
            if nxt not in seen2:
                seen2.add(nxt)
                states.append(nxt)
                queue.append(nxt)

    product_pda = OmegaPDA(
        tuple(name(*s) for s in states),
        pda.input_alphabet,
        pda.stack_alphabet,
        name(*start),
        tuple(transitions),
    )
    return product_pda, ProductInfo(base_of, extend)


def product(pda: OmegaPDA, dpa: DeterministicParityAutomaton, mode: str) -> OmegaPDA:
    return product_with_info(pda, dpa, mode)[0]


class LiftedResolver(Resolver):
    """Resolver for a product, delegating all choices to the base resolver."""

    def __init__(self, base: Resolver, base_pda: OmegaPDA, info: ProductInfo):
        self.base = base
        self.base_pda = base_pda
        self.info = info

    def start(self):
        from .core import replay

        return (self.base.start(), replay(self.base_pda, ()))

    def feed(self, state, t):
        from .core import RunPrefix, step

        base_state, base_run = state
        bt = self.info.base_of[t]
        run = RunPrefix(
            base_run.transitions + (bt,),
            base_run.configurations + (step(base_run.last, bt),),
        )
        return (self.base.feed(base_state, bt), run)

    def pick(self, state, run, letter):
        base_state, base_run = state
        bt = self.base.pick(base_state, base_run, letter)
        try:
            return self.info.extend[(run.last.state, bt)]
        except KeyError:
            raise ResolverStuck(f"no product transition extends {bt} at {run.last}") from None

    def summary(self, state):
        # The DPA and LAR components are functions of the history, so the
        # base summary (when finite) still pins down the future.
        return self.base.summary(state[0])


def lift_resolver(base: Resolver, base_pda: OmegaPDA, info: ProductInfo) -> LiftedResolver:
    return LiftedResolver(base, base_pda, info)


# ---------------------------------------------------------------------------
# DPA text format (the PDA format minus stack fields):
#   dstate <id> / dinitial <id> / dletter <id> / dtrans <src> <letter> <dst> <color>
# ---------------------------------------------------------------------------


def format_dpa(dpa: DeterministicParityAutomaton) -> str:
    lines = [f"dstate {q}" for q in dpa.states]
    lines.append(f"dinitial {dpa.initial}")
    lines += [f"dletter {a}" for a in dpa.alphabet]
    for (q, a), q2 in sorted(dpa.delta.items()):
        lines.append(f"dtrans {q} {a} {q2} {dpa.colors[(q, a)]}")
    return "\n".join(lines) + "\n"


def parse_dpa(text: str) -> DeterministicParityAutomaton:
    states: list[str] = []
    alphabet: list[str] = []
    initial: Optional[str] = None
    delta: dict[tuple[str, str], str] = {}
    colors: dict[tuple[str, str], int] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "dstate":
                states.append(parts[1])
            elif parts[0] == "dinitial":
                initial = parts[1]
            elif parts[0] == "dletter":
                alphabet.append(parts[1])
            elif parts[0] == "dtrans":
                delta[(parts[1], parts[2])] = parts[3]
                colors[(parts[1], parts[2])] = int(parts[4])
            else:
                raise FormatError(f"line {ln}: unknown declaration {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise FormatError(f"line {ln}: {raw!r}: {exc}") from None
    if initial is None:
        raise FormatError("missing 'dinitial' declaration")
    dpa = DeterministicParityAutomaton(
        tuple(states), tuple(alphabet), initial, delta, colors
    )
    bad = dpa.validate()
    if bad:
        raise FormatError("; ".join(bad))
    return dpa
