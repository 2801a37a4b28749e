# orbit_exit_tool/rewriting.py
"""
Bounded Knuth-Bendix completion for category presentations

Words are tuples of generator names read left to right as paths: (a, b) means
"a, then b". Every generator has a source and a target object, so a word is a
composable chain and both sides of a rule are parallel. The empty tuple stands
for an identity; which one is always known from context.

Rules are kept shortlex-decreasing (length first, then generator rank), with
interreduced left-hand sides; critical pairs come from proper overlaps of
left-hand sides. Every rewrite application and every processed pair consumes
one unit of budget.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .errors import CompletionBudgetExceeded, InvalidWord

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]
Rule = Tuple[Word, Word]

DEFAULT_COMPLETION_BUDGET = 10_000


def find_subword(word: Word, pattern: Word, start: int = 0) -> int:
    n = len(pattern)
    for i in range(start, len(word) - n + 1):
        if word[i:i + n] == pattern:
            return i
    return -1


@dataclass(frozen=True)
class Generator:
    name: str
    source: str
    target: str


class RewritingSystem:
    """Rewriting system on path words of a finitely presented category"""

    def __init__(
            self,
            objects: Sequence[str],
            generators: Sequence[Generator],
            relations: Iterable[Rule] = (),
            budget: int = DEFAULT_COMPLETION_BUDGET,
    ):
        self.objects = tuple(objects)
        self.generators = {g.name: g for g in generators}
        self.rank = {g.name: i for i, g in enumerate(generators)}
        self.budget = budget
        self.consumed = 0
        self.rules: List[Rule] = []
        self.relations: List[Rule] = []
        self.is_complete = False
        for lhs, rhs in relations:
            self.add_relation(tuple(lhs), tuple(rhs))

    # --- words -------------------------------------------------------------

    def key(self, word: Word) -> Tuple[int, Tuple[int, ...]]:
        return len(word), tuple(self.rank[g] for g in word)

    def orient(self, a: Word, b: Word) -> Rule:
        return (a, b) if self.key(a) > self.key(b) else (b, a)

    def endpoints(self, word: Word, start: Optional[str] = None) -> Tuple[str, str]:
        """(source, target) of a word; empty words need start"""
        if not word:
            if start is None:
                raise InvalidWord("empty word has no object")
            return start, start
        current = self.generators[word[0]].source if start is None else start
        source = current
        for name in word:
            if name not in self.generators:
                raise InvalidWord(f"unknown generator {name}")
            generator = self.generators[name]
            if generator.source != current:
                raise InvalidWord(f"{name} does not start at {current}")
            current = generator.target
        return source, current

    def add_relation(self, lhs: Word, rhs: Word) -> None:
        if lhs == rhs:
            return
        ends = {self.endpoints(word) for word in (lhs, rhs) if word}
        if len(ends) > 1:
            raise InvalidWord(f"relation {lhs} = {rhs} relates words that are not parallel")
        source, target = ends.pop()
        if (not lhs or not rhs) and source != target:
            raise InvalidWord(f"relation {lhs} = {rhs} equates a non-loop with an identity")
        self.relations.append((lhs, rhs))
        self.is_complete = False

    def _charge(self, units: int = 1) -> None:
        if self.is_complete:
            return
        self.consumed += units
        if self.consumed > self.budget:
            raise CompletionBudgetExceeded(
                f"completion used more than {self.budget} rewrite applications", self.consumed
            )

    def reduce(self, word: Word) -> Word:
        """Rewrite with the current rules until no left-hand side occurs"""
        word = tuple(word)
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rules:
                i = find_subword(word, lhs)
                if i >= 0:
                    word = word[:i] + rhs + word[i + len(lhs):]
                    self._charge()
                    changed = True
                    break
        return word

    # --- completion --------------------------------------------------------

    def _overlaps(self, first: Rule, second: Rule) -> Iterator[Rule]:
        """Critical pairs from a proper suffix of first's lhs equal to a prefix of second's"""
        l1, r1 = first
        l2, r2 = second
        for k in range(1, min(len(l1), len(l2))):
            if l1[-k:] == l2[:k]:
                yield r1 + l2[k:], l1[:-k] + r2

    def complete(self) -> bool:
        """Run completion until confluent; raises CompletionBudgetExceeded when the budget runs out"""
        if self.is_complete:
            return True
        pending = deque(self.relations)
        self.rules = []
        while pending:
            self._charge()
            a, b = pending.popleft()
            a, b = self.reduce(a), self.reduce(b)
            if a == b:
                continue
            lhs, rhs = self.orient(a, b)
            kept = []
            for rule in self.rules:
                if find_subword(rule[0], lhs) >= 0:
                    pending.append(rule)
                else:
                    kept.append(rule)
            new_rule = (lhs, rhs)
            self.rules = kept + [new_rule]
            self.rules = [(l, self.reduce(r)) for l, r in self.rules]
            new_rule = self.rules[-1]
            for rule in self.rules:
                pending.extend(self._overlaps(new_rule, rule))
                if rule != new_rule:
                    pending.extend(self._overlaps(rule, new_rule))
        self.rules.sort(key=lambda rule: self.key(rule[0]))
        self.is_complete = True
        logger.debug(f"completion finished: {len(self.rules)} rules, {self.consumed} units used")
        return True

    def normal_form(self, word: Word) -> Word:
        self.complete()
        return self.reduce(word)

    def equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    # --- irreducible words -------------------------------------------------

    def _automaton(self) -> Tuple[nx.DiGraph, Dict[str, Tuple]]:
        """
        States (object, last m-1 letters) of irreducible words, m the longest lhs
        A transition exists when appending the letter creates no lhs as a suffix.
        """
        self.complete()
        window = max((len(lhs) for lhs, _ in self.rules), default=1) - 1
        lhs_set = {lhs for lhs, _ in self.rules}
        outgoing: Dict[str, List[Generator]] = {o: [] for o in self.objects}
        for g in self.generators.values():
            outgoing[g.source].append(g)
        graph = nx.DiGraph()
        starts = {o: (o, ()) for o in self.objects}
        queue = deque(starts.values())
        graph.add_nodes_from(starts.values())
        while queue:
            state = queue.popleft()
            obj, tail = state
            for g in outgoing[obj]:
                extended = tail + (g.name,)
                if any(extended[-len(lhs):] == lhs for lhs in lhs_set if len(lhs) <= len(extended)):
                    continue
                nxt = (g.target, extended[-window:] if window else ())
                if nxt not in graph:
                    queue.append(nxt)
                graph.add_edge(state, nxt, letter=g.name)
        return graph, starts

    def infinite_homs(self) -> Set[Tuple[str, str]]:
        """Pairs (a, b) with infinitely many irreducible words from a to b"""
        graph, starts = self._automaton()
        cyclic = set()
        for component in nx.strongly_connected_components(graph):
            if len(component) > 1 or any(graph.has_edge(s, s) for s in component):
                cyclic |= component
        infinite = set()
        for a, start in starts.items():
            reachable = nx.descendants(graph, start) | {start}
            for state in cyclic & reachable:
                for later in nx.descendants(graph, state) | {state}:
                    infinite.add((a, later[0]))
        return infinite

    def is_finite(self) -> bool:
        return not self.infinite_homs()

    def irreducible_words(self, source: str, max_length: Optional[int] = None) -> Iterator[Tuple[str, Word]]:
        """(target, word) for every irreducible word out of source, shortest first"""
        graph, starts = self._automaton()
        frontier = [(starts[source], ())]
        yield source, ()
        length = 0
        while frontier and (max_length is None or length < max_length):
            length += 1
            next_frontier = []
            for state, word in frontier:
                for _, nxt, data in sorted(graph.out_edges(state, data=True), key=lambda e: self.rank[e[2]["letter"]]):
                    extended = word + (data["letter"],)
                    next_frontier.append((nxt, extended))
                    yield nxt[0], extended
            frontier = next_frontier
