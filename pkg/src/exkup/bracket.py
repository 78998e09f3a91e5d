"""Tensor networks of Heegaard-Link diagrams and their brackets.

* Each alpha curve is the cointegral followed by a chain of coproduct nodes,
  one output per crossing in curve order.
* Each beta curve is a chain of product nodes, inputs in curve order, closed
  by the integral.
* An alpha-beta crossing joins the two, through the antipode if negative.
* A link component is a ring of three-leg slot nodes, one per crossing, closed
  by the trace weight node.  Matrices multiply in the order met from the base
  point.  An alpha-link slot takes ``A[h]`` of the incoming element ``h``; a
  beta-link slot emits ``sum_b B[b*]`` with ``b`` sent to the beta curve.
  Negative crossings put the antipode on the joining edge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import AlgebraMismatch, IncompleteColoring, LinkPresent
from .heegaard.diagram import HeegaardLinkDiagram
from .hopf import HopfAlgebraData, IntegralPair, solve_integrals
from .reps import DoubleRep
from .tensor import IN, OUT, ContractionPlan, Tensor, TensorNetwork, contract_scalar


def _structure_nodes(H: HopfAlgebraData):
    return H.M, H.Delta, H.S


class _Builder:
    def __init__(self, H: HopfAlgebraData, integrals: IntegralPair):
        self.H = H
        self.net = TensorNetwork()
        self.d = H.dim
        self.e = integrals.e_tensor(H.dim)
        self.mu = integrals.mu_tensor(H.dim)

    def add(self, t, label):
        return self.net.add(t, label)

    def join(self, src, dst, eta=0):
        """Connect an out-port to an in-port, through ``S^eta``."""
        if eta % 2:
            s = self.add(self.H.S, "S")
            self.net.connect(src[0], src[1], s, 0)
            src = (s, 1)
        self.net.connect(src[0], src[1], dst[0], dst[1])

    def alpha_ports(self, cid, seq):
        n = len(seq)
        e = self.add(self.e, f"e[{cid}]")
        if n == 0:
            eps = self.add(self.H.counit, f"eps[{cid}]")
            self.net.connect(e, 0, eps, 0)
            return {}
        ports, cur = {}, (e, 0)
        for k in range(n - 1):
            delta = self.add(self.H.Delta, f"Delta[{cid}]")
            self.net.connect(cur[0], cur[1], delta, 0)
            ports[seq[k]] = (delta, 1)
            cur = (delta, 2)
        ports[seq[-1]] = cur
        return ports

    def beta_ports(self, cid, seq):
        n = len(seq)
        mu = self.add(self.mu, f"mu[{cid}]")
        if n == 0:
            one = self.add(self.H.unit, f"1[{cid}]")
            self.net.connect(one, 0, mu, 0)
            return {}
        if n == 1:
            return {seq[0]: (mu, 0)}
        ports = {}
        m = self.add(self.H.M, f"M[{cid}]")
        ports[seq[0]], ports[seq[1]] = (m, 0), (m, 1)
        cur = (m, 2)
        for k in range(2, n):
            m = self.add(self.H.M, f"M[{cid}]")
            self.net.connect(cur[0], cur[1], m, 0)
            ports[seq[k]] = (m, 1)
            cur = (m, 2)
        self.net.connect(cur[0], cur[1], mu, 0)
        return ports


def _slot_tensor(mats, n: int, d: int, slot_dir: str) -> Tensor:
    data = {}
    for b, m in enumerate(mats):
        for i, j, v in m.entries():
            data[(i, b, j)] = v
    return Tensor([(IN, n), (slot_dir, d), (OUT, n)], data, check=False)


def assemble(E: HeegaardLinkDiagram, H: HopfAlgebraData, integrals: IntegralPair | None = None,
             colors: Mapping[str, DoubleRep] | None = None) -> TensorNetwork:
    """Build the closed tensor network of a diagram."""
    E.validate()
    if integrals is None:
        integrals = solve_integrals(H)
    colors = dict(colors or {})
    for L in E.links:
        if L.id not in colors:
            raise IncompleteColoring(f"link component {L.id} has no representation")
        if colors[L.id].factor_dim != H.dim:
            raise AlgebraMismatch(
                f"representation for {L.id} is indexed by {colors[L.id].factor_dim} basis elements, algebra has {H.dim}"
            )
    b = _Builder(H, integrals)
    a_ports, b_ports = {}, {}
    for c in E.alpha:
        a_ports.update(b.alpha_ports(c.id, c.seq))
    for c in E.beta:
        b_ports.update(b.beta_ports(c.id, c.seq))
    slot_in, slot_out = {}, {}
    for L in E.links:
        rep = colors[L.id]
        n = rep.dimV
        wdata = {(k, i): v for k, i, v in rep.trace.W.entries()}
        w = b.add(Tensor([(IN, n), (OUT, n)], wdata, check=False), f"T[{L.id}]")
        prev = (w, 1)
        cache = {}
        for cid in L.seq:
            kind = E.crossing(cid).kind
            if kind not in cache:
                cache[kind] = (
                    _slot_tensor(rep.A, n, H.dim, IN) if kind == "aL" else _slot_tensor(rep.B, n, H.dim, OUT)
                )
            node = b.add(cache[kind], f"rho[{L.id}:{cid}]")
            b.net.connect(prev[0], prev[1], node, 0)
            (slot_in if kind == "aL" else slot_out)[cid] = (node, 1)
            prev = (node, 2)
        b.net.connect(prev[0], prev[1], w, 0)
    for cid, cr in E.crossings.items():
        if cr.kind == "ab":
            b.join(a_ports[cid], b_ports[cid], cr.eta)
        elif cr.kind == "aL":
            b.join(a_ports[cid], slot_in[cid], cr.eta)
        else:
            b.join(slot_out[cid], b_ports[cid], cr.eta)
    return b.net


def uniform_colors(E: HeegaardLinkDiagram, rep: DoubleRep) -> dict:
    return {L.id: rep for L in E.links}


def bracket(E: HeegaardLinkDiagram, H: HopfAlgebraData, colors, integrals: IntegralPair | None = None,
            plan: ContractionPlan | None = None):
    """The bracket of a diagram; ``colors`` maps link ids to representations
    (a single representation colors every component)."""
    if isinstance(colors, DoubleRep):
        colors = uniform_colors(E, colors)
    return contract_scalar(assemble(E, H, integrals, colors), plan)


def kuperberg(E: HeegaardLinkDiagram, H: HopfAlgebraData, integrals: IntegralPair | None = None):
    """Kuperberg's invariant of a link-free diagram."""
    if E.links:
        raise LinkPresent("the diagram has link components; use bracket() instead")
    return contract_scalar(assemble(E, H, integrals, {}))


@dataclass
class StateSum:
    total: object
    terms: dict  # coloring (tuple of palette indices) -> bracket


def colored_state_sum(E: HeegaardLinkDiagram, H: HopfAlgebraData, palette: Sequence[DoubleRep],
                      integrals: IntegralPair | None = None) -> StateSum:
    """Sum of brackets over every way of coloring the link components from ``palette``."""
    if integrals is None:
        integrals = solve_integrals(H)
    ids = E.link_ids()
    terms = {}
    total = 0
    for coloring in itertools.product(range(len(palette)), repeat=len(ids)):
        val = bracket(E, H, {cid: palette[k] for cid, k in zip(ids, coloring)}, integrals)
        terms[coloring] = val
        total = total + val
    return StateSum(total, terms)
