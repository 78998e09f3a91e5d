"""Hennings-Kauffman-Radford brackets of framed braid closures.

Every crossing of the framed braid (see
:func:`exkup.heegaard.planar.framed_braid`) carries a copy of the R-matrix: a
positive crossing puts ``(S (x) id) R`` with the first leg on the over strand,
a negative crossing puts ``R`` in the same way.  Walking each component from
its base point multiplies the decorations in the order met, and the integral
closes the product.  Curls are ordinary crossings of the stabilized braid, so
no separate ribbon-element insertion is needed.

The antipode power attached to a decoration is ``-w`` with ``w`` twice the
number of closure arcs passed; every ``w`` is even, so for an involutory
algebra the power is trivial.  It is still tracked and applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .double import RibbonData
from .errors import NormalizationUnavailable, NotSymmetric
from .heegaard.planar import FramedBraid, PlanarLinkPresentation, framed_braid, linking_matrix
from .hopf import vclean
from .tensor import IN, OUT, ContractionPlan, Tensor, TensorNetwork, contract_scalar


def decoration_windings(F: FramedBraid, component: int) -> list[int]:
    """``w`` for each decoration on ``component``: +2 per closure arc passed."""
    return [2 * k for k in F.closure_arcs(component)]


def hkr_network(P: PlanarLinkPresentation, ribbon: RibbonData) -> TensorNetwork:
    H = ribbon.H
    d = H.dim
    F = framed_braid(P)
    net = TensorNetwork()
    R_pos = Tensor([(OUT, d), (OUT, d)], dict(ribbon.Q.R_inv))
    R_neg = Tensor([(OUT, d), (OUT, d)], dict(ribbon.Q.R))
    r_nodes = [net.add(R_pos if letter > 0 else R_neg, f"R[{t}]") for t, letter in enumerate(F.word)]
    mu = ribbon.integrals.mu_tensor(d)
    for c in range(P.n_components):
        ports = []
        for (t, role), w in zip(F.traversal(c), decoration_windings(F, c)):
            port = (r_nodes[t], 0 if role == "over" else 1)
            for _ in range(w % 2):  # S^(-w) is the identity on involutory algebras when w is even
                s = net.add(Tensor([(IN, d), (OUT, d)], {(b, a): v for a, r in H.S_inverse_table.items() for b, v in r.items()}), "S^-1")
                net.connect(port[0], port[1], s, 0)
                port = (s, 1)
            ports.append(port)
        closing = net.add(mu, f"mu[{c}]")
        if not ports:
            one = net.add(H.unit, f"1[{c}]")
            net.connect(one, 0, closing, 0)
            continue
        cur = ports[0]
        for p in ports[1:]:
            m = net.add(H.M, f"M[{c}]")
            net.connect(cur[0], cur[1], m, 0)
            net.connect(p[0], p[1], m, 1)
            cur = (m, 2)
        net.connect(cur[0], cur[1], closing, 0)
    return net


def hkr_bracket(P: PlanarLinkPresentation, ribbon: RibbonData, plan: ContractionPlan | None = None):
    """The unnormalised bracket of a framed link."""
    return contract_scalar(hkr_network(P, ribbon), plan)


def signature(matrix) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalisation."""
    n = len(matrix)
    A = [[Fraction(x) for x in row] for row in matrix]
    if any(len(r) != n for r in A):
        raise NotSymmetric("matrix is not square")
    if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise NotSymmetric("matrix is not symmetric")
    pos = neg = 0
    live = list(range(n))
    while live:
        k = next((i for i in live if A[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in live for j in live if i < j and A[i][j] != 0), None)
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # hyperbolic block: replace row/column i by i + j, making the diagonal 2 A[i][j]
            for r in range(n):
                A[i][r] += A[j][r]
            for r in range(n):
                A[r][i] += A[r][j]
            k = i
        piv = A[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        live.remove(k)
        for i in live:
            f = A[i][k] / piv
            if f:
                for r in range(n):
                    A[i][r] -= f * A[k][r]
        for i in live:
            A[i][k] = A[k][i] = Fraction(0)
    return pos - neg


@dataclass
class HKRResult:
    bracket: object
    value: object
    components: int
    signature: int

    def to_json(self, fmt=str) -> dict:
        return {
            "bracket": fmt(self.bracket),
            "value": fmt(self.value),
            "components": self.components,
            "signature": self.signature,
        }


def hkr_invariant(P: PlanarLinkPresentation, ribbon: RibbonData) -> HKRResult:
    """HKR invariant of surgery on ``P`` with the normalisation ``omega(v) = 1``.

    This needs ``mu(v) = mu(v^-1) = 1``; then the invariant equals the bracket.
    """
    if ribbon.mu_v != 1 or ribbon.mu_v_inv != 1:
        raise NormalizationUnavailable(
            f"mu(v) = {ribbon.mu_v} and mu(v^-1) = {ribbon.mu_v_inv}; the unit normalisation needs both equal to 1"
        )
    br = hkr_bracket(P, ribbon)
    return HKRResult(br, br, P.n_components, signature(linking_matrix(P)))
