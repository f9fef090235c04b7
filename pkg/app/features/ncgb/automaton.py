"""Aho-Corasick recognizer of the words avoiding a finite set of factors."""
from collections import deque
from typing import Dict, List, Sequence

import numpy as np

from app.features.freealg.models import Word


class NormalWordAutomaton:
    def __init__(self, forbidden: Sequence[Word], m: int):
        self.m = m
        self.goto: List[Dict[int, int]] = [{}]
        self.terminal: List[bool] = [False]
        for w in forbidden:
            self._insert(w)
        self.delta = self._build_transitions()
        self.live = [s for s in range(len(self.goto)) if not self.terminal[s]]

    def _insert(self, w: Word):
        state = 0
        for a in w:
            nxt = self.goto[state].get(a)
            if nxt is None:
                nxt = len(self.goto)
                self.goto[state][a] = nxt
                self.goto.append({})
                self.terminal.append(False)
            state = nxt
        self.terminal[state] = True

    def _build_transitions(self) -> List[List[int]]:
        n = len(self.goto)
        fail = [0] * n
        delta = [[0] * (self.m + 1) for _ in range(n)]
        queue = deque()
        for a in range(1, self.m + 1):
            nxt = self.goto[0].get(a, 0)
            delta[0][a] = nxt
            if nxt:
                queue.append(nxt)
        while queue:
            state = queue.popleft()
            # a state whose longest proper suffix is dead is dead too
            if self.terminal[fail[state]]:
                self.terminal[state] = True
            for a in range(1, self.m + 1):
                nxt = self.goto[state].get(a)
                if nxt is None:
                    delta[state][a] = delta[fail[state]][a]
                else:
                    fail[nxt] = delta[fail[state]][a]
                    delta[state][a] = nxt
                    queue.append(nxt)
        return delta

    def accepts(self, w: Word) -> bool:
        state = 0
        if self.terminal[state]:
            return False
        for a in w:
            state = self.delta[state][a]
            if self.terminal[state]:
                return False
        return True

    def transfer_matrix(self) -> np.ndarray:
        """Exact transition counts between live states (object dtype keeps Python ints)."""
        position = {s: k for k, s in enumerate(self.live)}
        matrix = np.zeros((len(self.live), len(self.live)), dtype=object)
        for s in self.live:
            for a in range(1, self.m + 1):
                t = self.delta[s][a]
                if t in position:
                    matrix[position[s], position[t]] += 1
        return matrix

    def path_counts(self, max_d: int) -> List[int]:
        """Number of accepted words of each length 0..max_d."""
        if self.terminal[0]:
            return [0] * (max_d + 1)
        matrix = self.transfer_matrix()
        vector = np.zeros(len(self.live), dtype=object)
        vector[self.live.index(0)] = 1
        counts = []
        for _ in range(max_d + 1):
            counts.append(int(vector.sum()))
            vector = vector.dot(matrix)
        return counts
