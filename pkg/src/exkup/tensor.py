"""Exact sparse tensors and deterministic tensor-network contraction.

A :class:`Tensor` carries an ordered list of legs, each ``(direction, dim)``
with direction ``"in"`` or ``"out"``, and a sparse mapping from index tuples
to nonzero exact values.  Structure tensors built elsewhere in the package put
all in-legs before all out-legs, matching the usual (m, n) convention.

A :class:`TensorNetwork` joins an out-leg of one node to an in-leg of another
node (or the same node).  Unmatched legs are *free* and appear in the result
in a declared order.  :func:`plan_contraction` chooses a greedy order that
minimises the dense size of each intermediate; ties fall back to the smallest
(node id, leg index) so the plan is a pure function of the network.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from operator import itemgetter
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidPlan, LegMismatch, ShapeMismatch

IN = "in"
OUT = "out"


def _getter(positions: Sequence[int]):
    """Key extractor that always returns a tuple."""
    if not positions:
        return lambda idx: ()
    if len(positions) == 1:
        p = positions[0]
        return lambda idx: (idx[p],)
    return itemgetter(*positions)


class Tensor:
    """Sparse exact tensor with directed legs."""

    __slots__ = ("legs", "data")

    def __init__(self, legs: Iterable, data: dict | None = None, check: bool = True):
        self.legs = tuple((str(d), int(n)) for d, n in legs)
        self.data = {} if data is None else data
        if check:
            for d, n in self.legs:
                if d not in (IN, OUT) or n < 1:
                    raise ShapeMismatch(f"bad leg ({d!r}, {n})")
            rank = len(self.legs)
            dims = self.shape
            clean = {}
            for idx, v in self.data.items():
                idx = tuple(int(i) for i in idx)
                if len(idx) != rank or any(not 0 <= i < n for i, n in zip(idx, dims)):
                    raise ShapeMismatch(f"index {idx} outside shape {dims}")
                if v != 0:
                    clean[idx] = v
            self.data = clean

    # construction -----------------------------------------------------
    @classmethod
    def from_dense(cls, legs, array) -> "Tensor":
        arr = np.asarray(array, dtype=object)
        legs = tuple(legs)
        if arr.shape != tuple(n for _, n in legs):
            raise ShapeMismatch(f"dense shape {arr.shape} does not match legs {legs}")
        data = {}
        for idx in itertools.product(*(range(n) for _, n in legs)):
            v = arr[idx] if legs else arr[()]
            if v != 0:
                data[idx] = v
        return cls(legs, data, check=False)

    @classmethod
    def scalar_tensor(cls, value) -> "Tensor":
        return cls((), {(): value} if value != 0 else {}, check=False)

    @classmethod
    def mn(cls, ins: Sequence[int], outs: Sequence[int], data=None) -> "Tensor":
        """Tensor with the given in-dims followed by the given out-dims."""
        legs = [(IN, n) for n in ins] + [(OUT, n) for n in outs]
        return cls(legs, dict(data or {}))

    # inspection -------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return tuple(n for _, n in self.legs)

    @property
    def rank(self) -> int:
        return len(self.legs)

    @property
    def dense_size(self) -> int:
        return math.prod(self.shape)

    def in_positions(self):
        return [i for i, (d, _) in enumerate(self.legs) if d == IN]

    def out_positions(self):
        return [i for i, (d, _) in enumerate(self.legs) if d == OUT]

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        return self.data.get(idx, 0)

    def scalar(self):
        if self.legs:
            raise ShapeMismatch("tensor is not a scalar")
        return self.data.get((), 0)

    def to_dense(self) -> np.ndarray:
        arr = np.zeros(self.shape, dtype=object)
        if not self.legs:
            arr[()] = self.scalar()
            return arr
        for idx, v in self.data.items():
            arr[idx] = v
        return arr

    def items(self):
        return self.data.items()

    # algebra ----------------------------------------------------------
    def transpose(self, perm: Sequence[int]) -> "Tensor":
        """Reorder legs: new leg ``k`` is old leg ``perm[k]``."""
        if sorted(perm) != list(range(self.rank)):
            raise ShapeMismatch(f"{perm} is not a permutation of the legs")
        get = _getter(perm)
        return Tensor(
            [self.legs[p] for p in perm],
            {get(idx): v for idx, v in self.data.items()},
            check=False,
        )

    def scale(self, c) -> "Tensor":
        return Tensor(self.legs, {k: v * c for k, v in self.data.items() if v * c != 0}, check=False)

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.legs != other.legs:
            raise ShapeMismatch("adding tensors with different legs")
        data = dict(self.data)
        for k, v in other.data.items():
            s = data.get(k, 0) + v
            if s == 0:
                data.pop(k, None)
            else:
                data[k] = s
        return Tensor(self.legs, data, check=False)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.legs == other.legs and self.data == other.data

    __hash__ = None

    def first_difference(self, other: "Tensor"):
        """Smallest multi-index where two same-shaped tensors differ, or None."""
        if self.legs != other.legs:
            raise ShapeMismatch("comparing tensors with different legs")
        diff = [k for k in set(self.data) | set(other.data) if self[k] != other[k]]
        return min(diff) if diff else None

    def __repr__(self):
        return f"Tensor(legs={list(self.legs)}, nnz={len(self.data)})"


# ----------------------------------------------------------------------
# pairwise primitives


def contract_pair(a: Tensor, a_pos: Sequence[int], b: Tensor, b_pos: Sequence[int]) -> Tensor:
    """Contract legs ``a_pos`` of ``a`` with legs ``b_pos`` of ``b``.

    The result keeps ``a``'s remaining legs followed by ``b``'s remaining legs.
    Each contracted pair must be one out-leg and one in-leg of equal dimension.
    """
    if len(a_pos) != len(b_pos):
        raise LegMismatch("unequal numbers of contracted legs")
    for p, q in zip(a_pos, b_pos):
        (da, na), (db, nb) = a.legs[p], b.legs[q]
        if na != nb or da == db:
            raise LegMismatch(f"cannot join leg {a.legs[p]} with {b.legs[q]}")
    a_rest = [i for i in range(a.rank) if i not in a_pos]
    b_rest = [i for i in range(b.rank) if i not in b_pos]
    ka, ra = _getter(list(a_pos)), _getter(a_rest)
    kb, rb = _getter(list(b_pos)), _getter(b_rest)
    table: dict = {}
    for idx, v in b.data.items():
        table.setdefault(kb(idx), []).append((rb(idx), v))
    out: dict = {}
    get = out.get
    for idx, v in a.data.items():
        matches = table.get(ka(idx))
        if not matches:
            continue
        left = ra(idx)
        for right, w in matches:
            key = left + right
            out[key] = get(key, 0) + v * w
    out = {k: v for k, v in out.items() if v != 0}
    return Tensor([a.legs[i] for i in a_rest] + [b.legs[i] for i in b_rest], out, check=False)


def trace_pairs(t: Tensor, pairs: Sequence[tuple[int, int]]) -> Tensor:
    """Contract pairs of legs of a single tensor (each pair out/in)."""
    used = [p for pq in pairs for p in pq]
    for p, q in pairs:
        if t.legs[p][1] != t.legs[q][1] or t.legs[p][0] == t.legs[q][0]:
            raise LegMismatch(f"cannot trace leg {t.legs[p]} with {t.legs[q]}")
    rest = [i for i in range(t.rank) if i not in used]
    r = _getter(rest)
    out: dict = {}
    for idx, v in t.data.items():
        if all(idx[p] == idx[q] for p, q in pairs):
            key = r(idx)
            out[key] = out.get(key, 0) + v
    out = {k: v for k, v in out.items() if v != 0}
    return Tensor([t.legs[i] for i in rest], out, check=False)


def outer(a: Tensor, b: Tensor) -> Tensor:
    return contract_pair(a, (), b, ())


def tensor_compose(a: Tensor, a_out: int, b: Tensor, b_in: int) -> Tensor:
    """Feed the ``a_out``-th out-leg of ``a`` into the ``b_in``-th in-leg of ``b``.

    ``a_out`` and ``b_in`` count among out-legs and in-legs respectively.  The
    result is in (m, n) form.  In-legs: ``b``'s in-legs before the joined one,
    then all of ``a``'s in-legs, then ``b``'s remaining in-legs.  Out-legs:
    ``a``'s out-legs before the joined one, then all of ``b``'s out-legs, then
    ``a``'s remaining out-legs.  In other words ``a`` is substituted into the
    slot it feeds, on both sides.
    """
    a_outs, b_ins = a.out_positions(), b.in_positions()
    if not 0 <= a_out < len(a_outs) or not 0 <= b_in < len(b_ins):
        raise LegMismatch("leg number out of range")
    pa, pb = a_outs[a_out], b_ins[b_in]
    if a.legs[pa][1] != b.legs[pb][1]:
        raise LegMismatch(f"dimension {a.legs[pa][1]} does not match {b.legs[pb][1]}")
    raw = contract_pair(a, (pa,), b, (pb,))
    # positions in raw: a's legs without pa, then b's legs without pb
    a_keep = [i for i in range(a.rank) if i != pa]
    b_keep = [i for i in range(b.rank) if i != pb]
    pos_a = {old: k for k, old in enumerate(a_keep)}
    pos_b = {old: len(a_keep) + k for k, old in enumerate(b_keep)}
    a_in = [pos_a[i] for i in a.in_positions()]
    b_in_list = [pos_b[i] for i in b_ins if i != pb]
    b_in_before = [pos_b[i] for i in b_ins[:b_in]]
    b_in_after = [p for p in b_in_list if p not in b_in_before]
    a_out_list = [pos_a[i] for i in a_outs if i != pa]
    a_out_before = [pos_a[i] for i in a_outs[:a_out]]
    a_out_after = [p for p in a_out_list if p not in a_out_before]
    b_out = [pos_b[i] for i in b.out_positions()]
    perm = b_in_before + a_in + b_in_after + a_out_before + b_out + a_out_after
    return raw.transpose(perm)


# ----------------------------------------------------------------------
# networks


@dataclass(frozen=True)
class Edge:
    """Joins out-leg ``src_leg`` of node ``src`` to in-leg ``dst_leg`` of ``dst``."""

    src: int
    src_leg: int
    dst: int
    dst_leg: int

    @property
    def key(self):
        return (self.src, self.src_leg, self.dst, self.dst_leg)


class TensorNetwork:
    """Nodes (tensors) joined by directed edges."""

    def __init__(self):
        self.nodes: list[Tensor] = []
        self.labels: list[str | None] = []
        self.edges: list[Edge] = []
        self._used: set = set()
        self._free_order: list | None = None

    def add(self, tensor: Tensor, label: str | None = None) -> int:
        self.nodes.append(tensor)
        self.labels.append(label)
        return len(self.nodes) - 1

    def connect(self, src: int, src_leg: int, dst: int, dst_leg: int) -> Edge:
        a, b = self.nodes[src], self.nodes[dst]
        if not 0 <= src_leg < a.rank or not 0 <= dst_leg < b.rank:
            raise LegMismatch("leg index out of range")
        if a.legs[src_leg][0] != OUT or b.legs[dst_leg][0] != IN:
            raise LegMismatch(
                f"edge must run from an out-leg to an in-leg, got {a.legs[src_leg][0]} -> {b.legs[dst_leg][0]}"
            )
        if a.legs[src_leg][1] != b.legs[dst_leg][1]:
            raise LegMismatch(
                f"dimension mismatch {a.legs[src_leg][1]} vs {b.legs[dst_leg][1]}"
            )
        for end in ((src, src_leg), (dst, dst_leg)):
            if end in self._used:
                raise LegMismatch(f"leg {end} is already joined")
        self._used.update({(src, src_leg), (dst, dst_leg)})
        e = Edge(src, src_leg, dst, dst_leg)
        self.edges.append(e)
        return e

    def set_free_order(self, order: Sequence[tuple[int, int]]):
        order = [tuple(x) for x in order]
        if sorted(order) != sorted(self._default_free()):
            raise LegMismatch("declared free legs do not match the unjoined legs")
        self._free_order = order

    def _default_free(self):
        return [
            (n, l)
            for n, t in enumerate(self.nodes)
            for l in range(t.rank)
            if (n, l) not in self._used
        ]

    def free_legs(self) -> list[tuple[int, int]]:
        return list(self._free_order) if self._free_order is not None else self._default_free()

    def __repr__(self):
        return f"TensorNetwork(nodes={len(self.nodes)}, edges={len(self.edges)})"


@dataclass
class PlanStep:
    edges: tuple[int, ...]
    size: int


@dataclass
class ContractionPlan:
    """Ordered contraction steps.  Each step joins a set of edges that, at that
    moment, all run between the same two clusters (or inside one cluster)."""

    steps: list[PlanStep] = field(default_factory=list)

    @property
    def cost(self) -> int:
        return sum(s.size for s in self.steps)

    @property
    def order(self) -> list[int]:
        return [e for s in self.steps for e in s.edges]

    @classmethod
    def from_edge_order(cls, order: Sequence[int]) -> "ContractionPlan":
        """One edge per step; sizes are filled in when the plan runs."""
        return cls([PlanStep((e,), 0) for e in order])


class _Clusters:
    """Union of nodes tracked while planning or executing."""

    def __init__(self, net: TensorNetwork):
        self.net = net
        self.owner = list(range(len(net.nodes)))
        self.members = {i: [i] for i in range(len(net.nodes))}
        # open legs of each cluster as (node, leg), in tensor-leg order
        self.open = {i: [(i, l) for l in range(t.rank)] for i, t in enumerate(net.nodes)}

    def dim(self, node_leg):
        n, l = node_leg
        return self.net.nodes[n].legs[l][1]

    def size(self, c):
        return math.prod(self.dim(x) for x in self.open[c])

    def merge(self, c1, c2):
        for n in self.members[c2]:
            self.owner[n] = c1
        self.members[c1].extend(self.members.pop(c2))


def _group_edges(net: TensorNetwork, clusters: _Clusters, remaining: set[int]):
    groups: dict = {}
    for ei in remaining:
        e = net.edges[ei]
        a, b = clusters.owner[e.src], clusters.owner[e.dst]
        groups.setdefault((min(a, b), max(a, b)), []).append(ei)
    return groups


def plan_contraction(net: TensorNetwork) -> ContractionPlan:
    """Greedy plan minimising each intermediate's dense size."""
    clusters = _Clusters(net)
    remaining = set(range(len(net.edges)))
    steps = []
    while remaining:
        best = None
        for (a, b), eis in _group_edges(net, clusters, remaining).items():
            shrink = math.prod(clusters.dim((net.edges[ei].src, net.edges[ei].src_leg)) ** 2 for ei in eis)
            if a == b:
                size = clusters.size(a) // shrink
            else:
                size = clusters.size(a) * clusters.size(b) // shrink
            key = (size, min(net.edges[ei].key for ei in eis))
            if best is None or key < best[0]:
                best = (key, a, b, tuple(sorted(eis)))
        (size, _), a, b, eis = best
        _apply_step_shape(net, clusters, a, b, eis)
        remaining.difference_update(eis)
        steps.append(PlanStep(eis, size))
    return ContractionPlan(steps)


def _apply_step_shape(net, clusters, a, b, eis):
    ends = set()
    for ei in eis:
        e = net.edges[ei]
        ends.add((e.src, e.src_leg))
        ends.add((e.dst, e.dst_leg))
    if a == b:
        clusters.open[a] = [x for x in clusters.open[a] if x not in ends]
    else:
        clusters.open[a] = [x for x in clusters.open[a] if x not in ends] + [
            x for x in clusters.open.pop(b) if x not in ends
        ]
        clusters.merge(a, b)


def validate_plan(net: TensorNetwork, plan: ContractionPlan):
    order = plan.order
    if sorted(order) != list(range(len(net.edges))):
        raise InvalidPlan("plan must use every edge exactly once")


def contract(net: TensorNetwork, plan: ContractionPlan | None = None) -> Tensor:
    """Contract ``net`` fully; the result's legs follow the declared free-leg order."""
    if plan is None:
        plan = plan_contraction(net)
    validate_plan(net, plan)
    clusters = _Clusters(net)
    tensors = {i: t for i, t in enumerate(net.nodes)}
    for step in plan.steps:
        ends = [(net.edges[ei]) for ei in step.edges]
        owners = {clusters.owner[e.src] for e in ends} | {clusters.owner[e.dst] for e in ends}
        if len(owners) > 2:
            raise InvalidPlan(f"step {step.edges} spans more than two clusters")
        if len(owners) == 1:
            (c,) = owners
            pos = {x: k for k, x in enumerate(clusters.open[c])}
            pairs = [(pos[(e.src, e.src_leg)], pos[(e.dst, e.dst_leg)]) for e in ends]
            tensors[c] = trace_pairs(tensors[c], pairs)
            used = {p for pq in pairs for p in pq}
            clusters.open[c] = [x for k, x in enumerate(clusters.open[c]) if k not in used]
        else:
            a, b = sorted(owners)
            pos_a = {x: k for k, x in enumerate(clusters.open[a])}
            pos_b = {x: k for k, x in enumerate(clusters.open[b])}
            pa, pb = [], []
            for e in ends:
                s, d = (e.src, e.src_leg), (e.dst, e.dst_leg)
                if s in pos_a:
                    pa.append(pos_a[s])
                    pb.append(pos_b[d])
                else:
                    pa.append(pos_a[d])
                    pb.append(pos_b[s])
            tensors[a] = contract_pair(tensors[a], pa, tensors.pop(b), pb)
            used_a, used_b = set(pa), set(pb)
            clusters.open[a] = [x for k, x in enumerate(clusters.open[a]) if k not in used_a] + [
                x for k, x in enumerate(clusters.open.pop(b)) if k not in used_b
            ]
            clusters.merge(a, b)
        step.size = math.prod(n for _, n in tensors[min(owners)].legs)
    # remaining disconnected clusters: outer products in node order
    roots = sorted(tensors)
    if not roots:
        return Tensor.scalar_tensor(1)
    result, legs = tensors[roots[0]], list(clusters.open[roots[0]])
    for r in roots[1:]:
        result = outer(result, tensors[r])
        legs += clusters.open[r]
    want = net.free_legs()
    where = {x: k for k, x in enumerate(legs)}
    return result.transpose([where[x] for x in want])


def contract_scalar(net: TensorNetwork, plan: ContractionPlan | None = None):
    return contract(net, plan).scalar()
