"""Aho-Corasick automaton over arrow words, used to find and avoid forbidden factors."""

from __future__ import annotations

from collections import deque
from typing import Sequence

Word = tuple[int, ...]


class FactorAutomaton:
    """Recognises occurrences of any of ``patterns`` as factors of a word.

    State 0 is the root.  ``match[s]`` is the index of a pattern ending at
    state ``s`` (its own or one reached through failure links), or -1.
    Transitions are completed lazily and cached.
    """

    def __init__(self, patterns: Sequence[Word]):
        self.patterns = list(patterns)
        self.children: list[dict[int, int]] = [{}]
        self.fail: list[int] = [0]
        self.depth: list[int] = [0]
        own: list[int] = [-1]
        for idx, pat in enumerate(self.patterns):
            s = 0
            for a in pat:
                nxt = self.children[s].get(a)
                if nxt is None:
                    nxt = len(self.children)
                    self.children[s][a] = nxt
                    self.children.append({})
                    self.fail.append(0)
                    self.depth.append(self.depth[s] + 1)
                    own.append(-1)
                s = nxt
            if own[s] == -1:
                own[s] = idx
        self.own = own
        self.match = list(own)
        order = deque(self.children[0].values())
        while order:
            s = order.popleft()
            for a, t in self.children[s].items():
                f = self.fail[s]
                while f and a not in self.children[f]:
                    f = self.fail[f]
                cand = self.children[f].get(a, 0)
                self.fail[t] = cand if cand != t else 0
                if self.match[t] == -1:
                    self.match[t] = self.match[self.fail[t]]
                order.append(t)
        self._delta: dict[tuple[int, int], int] = {}

    @property
    def state_count(self) -> int:
        return len(self.children)

    def step(self, s: int, a: int) -> int:
        key = (s, a)
        cached = self._delta.get(key)
        if cached is not None:
            return cached
        t = s
        while True:
            nxt = self.children[t].get(a)
            if nxt is not None:
                break
            if t == 0:
                nxt = 0
                break
            t = self.fail[t]
        self._delta[key] = nxt
        return nxt

    def find(self, word: Word) -> tuple[int, int] | None:
        """First occurrence (by end position) as ``(start, pattern index)``."""
        s = 0
        for i, a in enumerate(word):
            s = self.step(s, a)
            m = self.match[s]
            if m != -1:
                return i + 1 - len(self.patterns[m]), m
        return None

    def find_all(self, word: Word) -> list[tuple[int, int]]:
        """Every occurrence ``(start, pattern index)`` of every pattern, sorted."""
        out = []
        s = 0
        for i, a in enumerate(word):
            s = self.step(s, a)
            t = s
            while t:
                m = self.own[t]
                if m != -1:
                    out.append((i + 1 - self.depth[t], m))
                t = self.fail[t]
        return sorted(out)
