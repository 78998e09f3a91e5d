"""Finite groups given by multiplication tables."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError, NotAGroup


@dataclass(frozen=True)
class FiniteGroup:
    """``table[a][b]`` is the index of the product ``a*b``."""

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        check_group_table(self.table)

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> int:
        return _identity(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        e = self.identity
        return next(b for b in range(self.order) if self.table[a][b] == e)

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        r = self.identity
        for _ in range(n):
            r = self.table[r][a]
        return r

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def exponent(self) -> int:
        import math

        e = 1
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x, k = self.table[x][a], k + 1
            e = e * k // math.gcd(e, k)
        return e


def _identity(table) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            return e
    raise NotAGroup("no identity element")


def check_group_table(table):
    """Raise :class:`NotAGroup` with a witness if ``table`` is not a group."""
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    for a, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup(f"row {a} has length {len(row)}, expected {n}")
        for b, c in enumerate(row):
            if not isinstance(c, int) or not 0 <= c < n:
                raise NotAGroup(f"product ({a},{b}) = {c!r} is not an element")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup(f"associativity fails at ({a},{b},{c})")
    e = _identity(table)
    for a in range(n):
        if not any(table[a][b] == e for b in range(n)):
            raise NotAGroup(f"element {a} has no inverse")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError("cyclic group order must be positive")
    return FiniteGroup(
        tuple(str(i) for i in range(n)),
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
    )


def symmetric(n: int) -> FiniteGroup:
    """Permutations of ``0..n-1``; ``(p*q)(i) = p(q(i))``."""
    if n < 1:
        raise InputError("symmetric group degree must be positive")
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    labels = tuple("".join(str(i) for i in p) for p in perms)
    return FiniteGroup(labels, table)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(g.order) for b in range(h.order)]
    index = {p: k for k, p in enumerate(pairs)}
    table = tuple(
        tuple(index[(g.table[a][c], h.table[b][d])] for (c, d) in pairs) for (a, b) in pairs
    )
    labels = tuple(f"({g.labels[a]},{h.labels[b]})" for a, b in pairs)
    return FiniteGroup(labels, table)


def from_table(table, labels=None) -> FiniteGroup:
    table = tuple(tuple(row) for row in table)
    labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(len(table)))
    if len(labels) != len(table):
        raise NotAGroup("label count does not match table size")
    return FiniteGroup(labels, table)


def load_table(path) -> FiniteGroup:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read group table {path}: {exc}") from exc
    if isinstance(obj, list):
        return from_table(obj)
    if "table" not in obj:
        raise InputError("group table file needs a 'table' entry")
    return from_table(obj["table"], obj.get("labels"))


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse ``cyclic:n``, ``symmetric:n``, ``product:A,B`` or ``table:FILE``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "cyclic":
            return cyclic(int(arg))
        if kind == "symmetric":
            return symmetric(int(arg))
    except ValueError as exc:
        raise InputError(f"bad group spec {spec!r}") from exc
    if kind == "product":
        parts = arg.split(",")
        if len(parts) < 2:
            raise InputError("product needs at least two factors")
        g = parse_group_spec(parts[0])
        for p in parts[1:]:
            g = direct_product(g, parse_group_spec(p))
        return g
    if kind == "table":
        return load_table(arg)
    raise InputError(f"unknown group spec {spec!r}")
