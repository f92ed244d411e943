"""Omega-pushdown automata: data model, configuration semantics, validators.

Conventions used throughout the package:

* The stack is stored bottom-first, top at the end; ``stack[0]`` is always
  the reserved bottom symbol ``BOTTOM``, which users cannot declare.
* A transition replaces the current top symbol by its ``push`` word, so
  the stack height changes by ``len(push) - 1``.
* Acceptance is transition-based parity: a run is accepting iff the
  maximal color occurring infinitely often is even.
* The transition list order of an automaton is stable and serves as the
  universal tie-breaker for "pick any" situations downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

BOTTOM = "_"

# Tokens reserved by the text format.
_RESERVED_IDS = {BOTTOM, "eps"}


class PdaError(Exception):
    """Base class for errors raised by this package."""


class NotEnabled(PdaError):
    """A transition was applied in a configuration that does not enable it."""


class NotARun(PdaError):
    """A transition sequence is not replayable; ``index`` is the first bad position."""

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"transition at index {index} is not enabled")


class BadPartition(PdaError):
    """The given letter classes do not partition the input alphabet."""


class GuardExceeded(PdaError):
    """A bounded simulation exceeded its step guard."""


class FormatError(PdaError):
    """Malformed text-format input."""


@dataclass(frozen=True)
class Transition:
    source: str
    top: str
    label: Optional[str]  # None means epsilon
    target: str
    push: tuple[str, ...]
    color: int

    def is_letter(self) -> bool:
        return self.label is not None

    def __str__(self) -> str:
        lab = self.label if self.label is not None else "eps"
        push = push_to_text(self.push)
        return f"({self.source},{top_to_text(self.top)},{lab},{self.target},{push},{self.color})"


@dataclass(frozen=True)
class Configuration:
    state: str
    stack: tuple[str, ...]

    @property
    def height(self) -> int:
        return len(self.stack) - 1

    @property
    def top(self) -> str:
        return self.stack[-1]

    def __str__(self) -> str:
        return f"({self.state}, {''.join(self.stack)})"


@dataclass(frozen=True)
class OmegaPDA:
    states: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    stack_alphabet: tuple[str, ...]  # BOTTOM excluded, reserved
    initial: str
    transitions: tuple[Transition, ...]

    @cached_property
    def by_source_top(self) -> dict[tuple[str, str], tuple[Transition, ...]]:
        index: dict[tuple[str, str], list[Transition]] = {}
        for t in self.transitions:
            index.setdefault((t.source, t.top), []).append(t)
        return {k: tuple(v) for k, v in index.items()}

    @cached_property
    def colors(self) -> tuple[int, ...]:
        return tuple(sorted({t.color for t in self.transitions}))

    @property
    def gamma_bottom(self) -> tuple[str, ...]:
        return (BOTTOM,) + self.stack_alphabet

    def initial_configuration(self) -> Configuration:
        return Configuration(self.initial, (BOTTOM,))

    def transition_index(self, t: Transition) -> int:
        return self.transitions.index(t)


@dataclass(frozen=True)
class RunPrefix:
    """A finite run: transitions plus the derived configuration sequence.

    ``configurations`` is one longer than ``transitions`` and starts at the
    initial configuration of the automaton the run was replayed on.
    """

    transitions: tuple[Transition, ...]
    configurations: tuple[Configuration, ...]

    @property
    def last(self) -> Configuration:
        return self.configurations[-1]

    def word(self) -> tuple[str, ...]:
        return tuple(t.label for t in self.transitions if t.label is not None)

    def __len__(self) -> int:
        return len(self.transitions)


@dataclass(frozen=True)
class LassoWord:
    """Finite representation ``u . v^omega`` of an ultimately periodic word."""

    prefix: tuple[str, ...]
    loop: tuple[str, ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("lasso loop must be nonempty")

    def letter_at(self, i: int) -> str:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.loop[(i - len(self.prefix)) % len(self.loop)]

    def positions(self) -> int:
        return len(self.prefix) + len(self.loop)

    def next_position(self, i: int) -> int:
        return i + 1 if i + 1 < self.positions() else len(self.prefix)

    def __str__(self) -> str:
        return f"{' '.join(self.prefix)};{' '.join(self.loop)}"


def parse_lasso(text: str) -> LassoWord:
    """Parse ``u;v``: letters are space-separated; a part without spaces is
    split into single characters unless it is one parenthesized letter."""
    if ";" not in text:
        raise FormatError(f"lasso word needs a ';' separator: {text!r}")
    u_text, v_text = text.split(";", 1)

    def letters(part: str) -> tuple[str, ...]:
        part = part.strip()
        if not part:
            return ()
        if " " in part:
            return tuple(part.split())
        if part.startswith("(") and part.endswith(")") and part.count("(") == 1:
            return (part,)
        return tuple(part)

    loop = letters(v_text)
    if not loop:
        raise FormatError(f"lasso loop must be nonempty: {text!r}")
    return LassoWord(letters(u_text), loop)


def validate(pda: OmegaPDA) -> list[str]:
    """Structural diagnostics; empty list iff all invariants hold."""
    diags: list[str] = []
    states = set(pda.states)
    letters = set(pda.input_alphabet)
    stack = set(pda.stack_alphabet)

    def check_id(kind: str, name: str):
        if not name or any(c.isspace() for c in name) or "." in name or name in _RESERVED_IDS:
            diags.append(f"{kind} {name!r} is not a legal identifier")

    for s in pda.states:
        check_id("state", s)
    for a in pda.input_alphabet:
        check_id("letter", a)
    for x in pda.stack_alphabet:
        check_id("stack symbol", x)
    if len(states) != len(pda.states):
        diags.append("duplicate state declarations")
    if len(letters) != len(pda.input_alphabet):
        diags.append("duplicate letter declarations")
    if len(stack) != len(pda.stack_alphabet):
        diags.append("duplicate stack symbol declarations")
    if pda.initial not in states:
        diags.append(f"initial state {pda.initial!r} not declared")

    for i, t in enumerate(pda.transitions):
        where = f"transition {i} {t}"
        if t.source not in states:
            diags.append(f"{where}: unknown source")
        if t.target not in states:
            diags.append(f"{where}: unknown target")
        if t.label is not None and t.label not in letters:
            diags.append(f"{where}: unknown letter")
        if t.top != BOTTOM and t.top not in stack:
            diags.append(f"{where}: unknown top symbol")
        if t.color < 0:
            diags.append(f"{where}: negative color")
        if len(t.push) > 2:
            diags.append(f"{where}: push too long")
            continue
        if t.top == BOTTOM:
            ok = t.push[:1] == (BOTTOM,) and all(x in stack for x in t.push[1:])
            if not ok:
                diags.append(f"{where}: bottom deleted or buried")
        else:
            if any(x == BOTTOM for x in t.push):
                diags.append(f"{where}: bottom written")
            elif not all(x in stack for x in t.push):
                diags.append(f"{where}: unknown push symbol")
    return diags


def enabled(pda: OmegaPDA, c: Configuration) -> list[Transition]:
    """Transitions enabled in ``c``, in declaration order."""
    return list(pda.by_source_top.get((c.state, c.top), ()))


def step(c: Configuration, t: Transition) -> Configuration:
    if t.source != c.state or t.top != c.top:
        raise NotEnabled(f"{t} not enabled in {c}")
    return Configuration(t.target, c.stack[:-1] + t.push)


def replay(pda: OmegaPDA, ts: Sequence[Transition]) -> RunPrefix:
    """The unique run prefix with transition sequence ``ts`` (Remark-style replay)."""
    configs = [pda.initial_configuration()]
    for i, t in enumerate(ts):
        try:
            configs.append(step(configs[-1], t))
        except NotEnabled:
            raise NotARun(i) from None
    return RunPrefix(tuple(ts), tuple(configs))


def is_deterministic(pda: OmegaPDA) -> tuple[bool, list[tuple[Transition, Transition]]]:
    """Check the two determinism conditions; returns violating transition pairs."""
    violations: list[tuple[Transition, Transition]] = []
    by_key: dict[tuple[str, str, Optional[str]], Transition] = {}
    for t in pda.transitions:
        key = (t.source, t.top, t.label)
        if key in by_key:
            violations.append((by_key[key], t))
        else:
            by_key[key] = t
    by_mode: dict[tuple[str, str], list[Transition]] = {}
    for t in pda.transitions:
        by_mode.setdefault((t.source, t.top), []).append(t)
    for ts in by_mode.values():
        eps = [t for t in ts if t.label is None]
        lets = [t for t in ts if t.label is not None]
        if eps and lets:
            violations.append((eps[0], lets[0]))
    return (not violations, violations)


def check_visibly(
    pda: OmegaPDA, partition: tuple[Iterable[str], Iterable[str], Iterable[str]]
) -> tuple[bool, list[str]]:
    """Visibly-pushdown shape check for a (calls, returns, internals) partition.

    Calls must push one symbol on top of the current top, returns must pop
    (or leave the empty stack unchanged), internals must not touch the stack,
    and no epsilon-transitions may exist.
    """
    calls, rets, ints = (frozenset(p) for p in partition)
    alphabet = frozenset(pda.input_alphabet)
    if calls | rets | ints != alphabet or (calls & rets) or (calls & ints) or (rets & ints):
        raise BadPartition(f"not a partition of {sorted(alphabet)}")

    diags: list[str] = []
    for i, t in enumerate(pda.transitions):
        where = f"transition {i} {t}"
        if t.label is None:
            diags.append(f"{where}: epsilon-transition not allowed")
        elif t.label in calls:
            if not (len(t.push) == 2 and t.push[0] == t.top):
                diags.append(f"{where}: call letter must push")
        elif t.label in rets:
            pops = t.top != BOTTOM and t.push == ()
            noop = t.top == BOTTOM and t.push == (BOTTOM,)
            if not (pops or noop):
                diags.append(f"{where}: return letter must pop or leave empty stack")
        else:
            if t.push != (t.top,):
                diags.append(f"{where}: internal letter must not change the stack")
    return (not diags, diags)


def lim_sup_color(colors: Iterable[int]) -> tuple[int, bool]:
    """Max color of a loop and whether repeating it forever is accepting."""
    cs = list(colors)
    if not cs:
        raise ValueError("color multiset must be nonempty")
    m = max(cs)
    return m, m % 2 == 0


# ---------------------------------------------------------------------------
# Text format.
#
# One declaration per line:
#   state <id> / initial <id> / letter <id> / stacksym <id>
#   trans <src> <top|_> <letter|eps> <dst> <push|eps> <color>
# `_` denotes the stack bottom.  A push word is `eps`, a single symbol,
# `_` (bottom kept alone), `_<sym>` (bottom plus one symbol) or two symbols
# joined by `.`.  Lines whose first token starts with `#` are comments.
# ---------------------------------------------------------------------------


def top_to_text(top: str) -> str:
    return "_" if top == BOTTOM else top


def push_to_text(push: tuple[str, ...]) -> str:
    if not push:
        return "eps"
    if push[0] == BOTTOM:
        return "_" + ".".join(push[1:])
    return ".".join(push)


def push_from_text(text: str) -> tuple[str, ...]:
    if text == "eps":
        return ()
    if text.startswith("_"):
        rest = text[1:]
        if rest.startswith("."):
            rest = rest[1:]
        return (BOTTOM,) + ((rest,) if rest else ())
    return tuple(text.split("."))


def format_pda(pda: OmegaPDA) -> str:
    lines = [f"state {q}" for q in pda.states]
    lines.append(f"initial {pda.initial}")
    lines += [f"letter {a}" for a in pda.input_alphabet]
    lines += [f"stacksym {x}" for x in pda.stack_alphabet]
    for t in pda.transitions:
        lab = t.label if t.label is not None else "eps"
        lines.append(
            f"trans {t.source} {top_to_text(t.top)} {lab} {t.target} "
            f"{push_to_text(t.push)} {t.color}"
        )
    return "\n".join(lines) + "\n"


def parse_pda(text: str) -> OmegaPDA:
    states: list[str] = []
    letters: list[str] = []
    stack: list[str] = []
    initial: Optional[str] = None
    transitions: list[Transition] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        try:
            if kind == "state":
                states.append(args[0])
            elif kind == "initial":
                initial = args[0]
            elif kind == "letter":
                letters.append(args[0])
            elif kind == "stacksym":
                stack.append(args[0])
            elif kind == "trans":
                src, top, lab, dst, push, color = args
                transitions.append(
                    Transition(
                        source=src,
                        top=BOTTOM if top == "_" else top,
                        label=None if lab == "eps" else lab,
                        target=dst,
                        push=push_from_text(push),
                        color=int(color),
                    )
                )
            else:
                raise FormatError(f"line {ln}: unknown declaration {kind!r}")
        except (IndexError, ValueError) as exc:
            raise FormatError(f"line {ln}: {raw!r}: {exc}") from None
    if initial is None:
        raise FormatError("missing 'initial' declaration")
    pda = OmegaPDA(tuple(states), tuple(letters), tuple(stack), initial, tuple(transitions))
    diags = validate(pda)
    if diags:
        raise FormatError("; ".join(diags))
    return pda
