"""Framed links in the three-sphere given as braid closures.

Braid conventions: strands are numbered ``1..n`` from left to right and run
downwards.  The letter ``k`` (positive generator) crosses the strands at
positions ``k`` and ``k+1`` with the one coming from position ``k+1`` passing
over; this is a positive crossing.  The letter ``-k`` is its mirror, where
the strand from position ``k`` passes over.  The closure joins bottom
position ``p`` to top position ``p`` through an arc on the right.

Components are numbered by their leftmost top position.  The framing of a
component is its self-writhe in the closed diagram; :func:`framed_braid`
reaches a requested framing by Markov stabilizations, which add one curl each.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import InputError, InvalidBraidWord


@dataclass(frozen=True)
class PlanarLinkPresentation:
    strands: int
    word: tuple[int, ...]
    framings: tuple[int, ...]

    def __post_init__(self):
        check_braid(self.strands, self.word)
        n = len(components(self.strands, self.word))
        if len(self.framings) != n:
            raise InvalidBraidWord(f"{len(self.framings)} framings given for {n} components")

    @classmethod
    def from_json(cls, obj) -> "PlanarLinkPresentation":
        try:
            strands = int(obj["strands"])
            word = tuple(int(x) for x in obj.get("word", []))
            framings = obj.get("framings")
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidBraidWord(f"malformed link: {exc}") from exc
        check_braid(strands, word)
        if framings is None:
            framings = [0] * len(components(strands, word))
        return cls(strands, word, tuple(int(f) for f in framings))

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": list(self.word), "framings": list(self.framings)}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @property
    def n_components(self) -> int:
        return len(self.framings)


def check_braid(strands: int, word) -> None:
    if not isinstance(strands, int) or strands < 0:
        raise InvalidBraidWord("the strand count must be a non-negative integer")
    for letter in word:
        if letter == 0 or abs(letter) >= strands:
            raise InvalidBraidWord(f"letter {letter} is not a generator on {strands} strands")


def permutation(strands: int, word) -> list[int]:
    """``perm[p]`` is the bottom position (0-based) of the strand starting at top position ``p``."""
    pos = list(range(strands))  # pos[p] = current position of the strand from top p
    where = list(range(strands))  # where[q] = top index of the strand now at position q
    for letter in word:
        i = abs(letter) - 1
        a, b = where[i], where[i + 1]
        where[i], where[i + 1] = b, a
        pos[a], pos[b] = i + 1, i
    return pos


def components(strands: int, word) -> list[list[int]]:
    """Top positions of each component, components ordered by leftmost top position."""
    perm = permutation(strands, word)
    seen, comps = set(), []
    for p in range(strands):
        if p in seen:
            continue
        cyc, q = [], p
        while q not in seen:
            seen.add(q)
            cyc.append(q)
            q = perm[q]
        comps.append(cyc)
    return comps


def crossing_strands(strands: int, word) -> list[tuple[int, int]]:
    """For each letter, the top positions of (over strand, under strand)."""
    where = list(range(strands))
    out = []
    for letter in word:
        i = abs(letter) - 1
        left, right = where[i], where[i + 1]
        out.append((right, left) if letter > 0 else (left, right))
        where[i], where[i + 1] = right, left
    return out


def component_of_top(strands: int, word) -> list[int]:
    comp = [0] * strands
    for k, cyc in enumerate(components(strands, word)):
        for p in cyc:
            comp[p] = k
    return comp


def traverse(strands: int, word, start: int) -> list[tuple[int, str]]:
    """Walk a component from top position ``start`` once around.

    Returns ``(letter index, "over" | "under")`` in the order met, including
    both passes through self-crossings.
    """
    out = []
    p = start
    while True:
        for t, letter in enumerate(word):
            i = abs(letter) - 1
            if p == i:
                out.append((t, "under" if letter > 0 else "over"))
                p = i + 1
            elif p == i + 1:
                out.append((t, "over" if letter > 0 else "under"))
                p = i
        if p == start:
            return out


def closure_arcs_before(strands: int, word, start: int) -> list[int]:
    """For each entry of :func:`traverse`, the number of closure arcs passed since ``start``."""
    out = []
    p, arcs = start, 0
    while True:
        for letter in word:
            i = abs(letter) - 1
            if p in (i, i + 1):
                out.append(arcs)
                p = i + 1 if p == i else i
        arcs += 1
        if p == start:
            return out


def writhes(strands: int, word) -> list[int]:
    """Self-writhe of each component."""
    comp = component_of_top(strands, word)
    w = [0] * (max(comp) + 1 if comp else 0)
    for letter, (o, u) in zip(word, crossing_strands(strands, word)):
        if comp[o] == comp[u]:
            w[comp[o]] += 1 if letter > 0 else -1
    return w


def linking_matrix(P: PlanarLinkPresentation) -> list[list[int]]:
    """Framings on the diagonal, pairwise linking numbers off it."""
    comp = component_of_top(P.strands, P.word)
    n = P.n_components
    L = [[0] * n for _ in range(n)]
    twice = [[0] * n for _ in range(n)]
    for letter, (o, u) in zip(P.word, crossing_strands(P.strands, P.word)):
        a, b = comp[o], comp[u]
        if a != b:
            s = 1 if letter > 0 else -1
            twice[a][b] += s
            twice[b][a] += s
    for i in range(n):
        for j in range(n):
            L[i][j] = P.framings[i] if i == j else twice[i][j] // 2
    return L


@dataclass(frozen=True)
class FramedBraid:
    """A braid whose closure has blackboard framing equal to the requested one.

    ``labels[p]`` is the original component of top position ``p``;
    ``order`` lists, for each original component, its starting top position.
    """

    strands: int
    word: tuple[int, ...]
    labels: tuple[int, ...]

    @property
    def starts(self) -> list[int]:
        n = max(self.labels) + 1
        return [min(p for p, l in enumerate(self.labels) if l == c) for c in range(n)]

    def traversal(self, component: int) -> list[tuple[int, str]]:
        return traverse(self.strands, self.word, self.starts[component])

    def closure_arcs(self, component: int) -> list[int]:
        return closure_arcs_before(self.strands, self.word, self.starts[component])


def _label_writhes(strands, word, labels, n):
    w = [0] * n
    for letter, (o, u) in zip(word, crossing_strands(strands, word)):
        if labels[o] == labels[u]:
            w[labels[o]] += 1 if letter > 0 else -1
    return w


def framed_braid(P: PlanarLinkPresentation) -> FramedBraid:
    """Add curls by Markov stabilization until each self-writhe equals the framing.

    A component owning the last top position is curled by appending ``+-n`` on
    a new last strand; one owning the first top position by shifting the word
    one strand to the right and prepending ``+-1`` on a new first strand.  Any
    other component with rightmost top position ``k`` is first moved to the
    end by conjugating with ``s_(n-1) ... s_k``.
    """
    strands, word = P.strands, list(P.word)
    labels = component_of_top(strands, word)
    n = P.n_components
    while True:
        w = _label_writhes(strands, word, labels, n)
        todo = [c for c in range(n) if w[c] != P.framings[c]]
        if not todo:
            return FramedBraid(strands, tuple(word), tuple(labels))
        c = todo[0]
        sign = 1 if P.framings[c] > w[c] else -1
        if labels[0] == c and labels[strands - 1] != c:
            word = [sign] + [x + 1 if x > 0 else x - 1 for x in word]
            labels = [c] + labels
            strands += 1
            continue
        k = max(p for p in range(strands) if labels[p] == c) + 1  # 1-based
        if k < strands:
            gamma = list(range(strands - 1, k - 1, -1))  # s_(n-1) ... s_k
            gamma_inv = [-g for g in reversed(gamma)]
            perm = permutation(strands, gamma)
            labels = [labels[perm[p]] for p in range(strands)]
            word = gamma + word + gamma_inv
        word = word + [sign * strands]
        labels = labels + [labels[strands - 1]]
        strands += 1
