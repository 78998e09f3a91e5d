"""Representations of Drinfeld doubles in factorized form.

A representation of ``D(H)`` on ``V`` is stored as two families of matrices,
``A[b]`` for the basis of ``H`` and ``B[f]`` for the dual basis, with
``rho(f x) = B[f] A[x]``.  A trace-like functional is stored as a weight
matrix ``W`` with ``T(X) = sum_ij W[j, i] X[i, j]``.

Matrices act on column vectors: column ``j`` of ``A[b]`` is the image of the
``j``-th basis vector of ``V``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .double import DoubleAlgebra, QuasitriangularData
from .errors import MissingRootsOfUnity, NotAbelian, RepCheckFailure, ShapeMismatch
from .groups import FiniteGroup
from .hopf import AxiomReport, AxiomResult, HopfAlgebraData, IntegralPair, vclean
from .linalg import Mat, lincomb


@dataclass
class TraceFunctional:
    W: Mat

    @classmethod
    def usual(cls, n: int, one=1) -> "TraceFunctional":
        return cls(Mat.identity(n, one))

    def __call__(self, X: Mat):
        s = 0
        for i, row in X.rows.items():
            for j, v in row.items():
                w = self.W[j, i]
                if w != 0:
                    s = s + w * v
        return s


@dataclass
class DoubleRep:
    dimV: int
    A: list
    B: list
    trace: TraceFunctional
    name: str = "rep"

    def __post_init__(self):
        if len(self.A) != len(self.B):
            raise ShapeMismatch("A and B families must have one matrix per basis element")
        for m in list(self.A) + list(self.B) + [self.trace.W]:
            if (m.n, m.m) != (self.dimV, self.dimV):
                raise ShapeMismatch(f"matrix of shape {m.n}x{m.m} in a rep of dimension {self.dimV}")

    @property
    def factor_dim(self) -> int:
        return len(self.A)

    def a_of(self, x: dict) -> Mat:
        return lincomb(((c, self.A[b]) for b, c in x.items()), self.dimV, self.dimV)

    def b_of(self, f: dict) -> Mat:
        return lincomb(((c, self.B[i]) for i, c in f.items()), self.dimV, self.dimV)

    def rho_basis(self, i: int, j: int) -> Mat:
        return self.B[i] @ self.A[j]

    def __repr__(self):
        return f"DoubleRep({self.name}, dimV={self.dimV})"


def _left_mult(H: HopfAlgebraData, y: dict) -> Mat:
    entries = []
    for b in range(H.dim):
        for c, v in H.mul(y, H.basis(b)).items():
            entries.append((c, b, v))
    return Mat.from_entries(H.dim, H.dim, entries)


def _as_double(D) -> DoubleAlgebra:
    if isinstance(D, DoubleAlgebra):
        return D
    return DoubleAlgebra(D, materialize_limit=0)


def check_double_rep(D, rep: DoubleRep) -> AxiomReport:
    """Check that the A family is an algebra map from H, the B family an algebra
    map from the dual, and that the pair satisfies the cross relation."""
    D = _as_double(D)
    H = D.base
    d, n = H.dim, rep.dimV
    if rep.factor_dim != d:
        raise ShapeMismatch(f"rep has {rep.factor_dim} basis matrices, algebra has dimension {d}")
    I = Mat.identity(n, H.field.one)
    report = AxiomReport(involutory=H.is_involutory())

    def add(name, witness):
        report.results.append(AxiomResult(name, witness is None, witness))

    def first(pred, *ranges):
        for idx in itertools.product(*(range(r) for r in ranges)):
            if not pred(*idx):
                return idx
        return None

    add("A multiplicative", first(lambda b, c: rep.A[b] @ rep.A[c] == rep.a_of(H.mul_basis(b, c)), d, d))
    add("A unital", None if rep.a_of(H.one()) == I else (0,))
    add("B multiplicative", first(lambda b, c: rep.B[b] @ rep.B[c] == rep.b_of(D.dual_mul({b: 1}, {c: 1})), d, d))
    add("B unital", None if rep.b_of(D.dual_one) == I else (0,))

    def straight(x, c):
        rhs = lincomb(((w, rep.B[t] @ rep.A[q]) for (t, q), w in D.cross(x, c).items()), n, n)
        return rep.A[x] @ rep.B[c] == rhs

    add("cross relation", first(straight, d, d))
    return report


def verify_double_rep(D, rep: DoubleRep) -> AxiomReport:
    r = check_double_rep(D, rep)
    if not r.ok:
        raise RepCheckFailure(f"{rep!r} is not a representation:\n{r}", r)
    return r


def check_trace(D, rep: DoubleRep) -> AxiomReport:
    """Trace property on the image and antipode invariance.

    ``T(P Y) = T(Y P)`` is tested for ``P`` running over the image of the
    double's basis and ``Y`` over the generators ``A[b]``, ``B[f]``; by
    induction on word length this gives the trace property on the whole image.
    """
    D = _as_double(D)
    H = D.base
    d = H.dim
    T = rep.trace
    report = AxiomReport(involutory=H.is_involutory())
    gens = list(rep.A) + list(rep.B)
    witness = None
    for i, j in itertools.product(range(d), range(d)):
        P = rep.rho_basis(i, j)
        for k, Y in enumerate(gens):
            if T(P @ Y) != T(Y @ P):
                witness = (i, j, k)
                break
        if witness:
            break
    report.results.append(AxiomResult("trace property", witness is None, witness))
    witness = None
    for i, j in itertools.product(range(d), range(d)):
        # S(f_i x_j) = S(x_j) (f_i o S^-1)
        f_sinv = vclean({m: r.get(i, 0) for m, r in H.S_inverse_table.items()})
        lhs = T(rep.a_of(H.antipode(H.basis(j))) @ rep.b_of(f_sinv))
        if lhs != T(rep.rho_basis(i, j)):
            witness = (i, j)
            break
    report.results.append(AxiomResult("antipode invariance", witness is None, witness))
    return report


def make_regular_rep(D: DoubleAlgebra, base_integrals: IntegralPair | None = None) -> DoubleRep:
    """Left regular representation of the double with ``T(X) = lambda(X 1)``."""
    hopf = D._need_hopf()
    if base_integrals is None:
        base_integrals = D.base_integrals
    lam = D.integrals_from(base_integrals).mu
    d = D.factor_dim
    A = [_left_mult(hopf, D.embed_base(D.base.basis(b))) for b in range(d)]
    B = [_left_mult(hopf, D.embed_dual({i: D.field.one})) for i in range(d)]
    one = hopf.one()
    W = Mat.from_entries(D.dim, D.dim, ((k, i, c * l) for k, c in one.items() for i, l in lam.items()))
    return DoubleRep(D.dim, A, B, TraceFunctional(W), name="regular")


def make_rho_R(Q: QuasitriangularData, integrals: IntegralPair) -> DoubleRep:
    """The representation of D(H) on H with ``f x`` acting as ``h -> f(R') R'' x h``.

    The trace is ``X -> mu(X 1)``.
    """
    H = Q.H
    d = H.dim
    L = [_left_mult(H, H.basis(b)) for b in range(d)]
    B = []
    for c in range(d):
        B.append(lincomb(((v, L[q]) for (p, q), v in Q.R.items() if p == c), d, d))
    one = H.one()
    W = Mat.from_entries(d, d, ((k, i, c * m) for k, c in one.items() for i, m in integrals.mu.items()))
    return DoubleRep(d, L, B, TraceFunctional(W), name="rho_R")


def trivial_rep(H: HopfAlgebraData) -> DoubleRep:
    """The one-dimensional rep ``f x -> f(1) eps(x)`` with the usual trace."""
    one = H.one()
    A = [Mat.from_entries(1, 1, [(0, 0, H._eps.get(b, 0))]) for b in range(H.dim)]
    B = [Mat.from_entries(1, 1, [(0, 0, one.get(c, 0))]) for c in range(H.dim)]
    return DoubleRep(1, A, B, TraceFunctional.usual(1, H.field.one), name="trivial")


def group_characters(G: FiniteGroup, field) -> list[tuple]:
    """All homomorphisms from an abelian group into the multiplicative group of ``field``."""
    if not G.is_abelian():
        raise NotAbelian("characters are only enumerated for abelian groups")
    n = G.exponent()
    roots = _roots_of_unity(n, field)
    if roots is None:
        raise MissingRootsOfUnity(f"{field!r} lacks the {n}-th roots of unity")
    # greedy generating set
    gens, span = [], {G.identity}
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            span = _generated(G, gens)
    chars = []
    for images in itertools.product(roots, repeat=len(gens)):
        chi = _extend(G, gens, images, field)
        if chi is not None and chi not in chars:
            chars.append(chi)
    if len(chars) != G.order:
        raise MissingRootsOfUnity(f"found {len(chars)} characters, expected {G.order}")
    return chars


def _generated(G, gens):
    span = {G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.mul(x, g)
            if y not in span:
                span.add(y)
                frontier.append(y)
    return span


def _extend(G, gens, images, field):
    chi = {G.identity: field.one}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for g, im in zip(gens, images):
            y = G.mul(x, g)
            val = chi[x] * im
            if y in chi:
                if chi[y] != val:
                    return None
            else:
                chi[y] = val
                frontier.append(y)
    for a in range(G.order):
        for b in range(G.order):
            if chi[G.mul(a, b)] != chi[a] * chi[b]:
                return None
    return tuple(chi[g] for g in range(G.order))


def _roots_of_unity(n: int, field):
    if field.characteristic == 0:
        if n > 2:
            return None
        return [1] if n == 1 else [1, -1]
    p = field.characteristic
    if (p - 1) % n:
        return None
    roots = sorted({pow(x, (p - 1) // n, p) for x in range(1, p)})
    return [field(r) for r in roots]


def abelian_double_irreps(G: FiniteGroup, H: HopfAlgebraData) -> list[DoubleRep]:
    """The |G|^2 one-dimensional irreps of D(k[G]) for abelian ``G``.

    Rep ``(a, chi)`` sends ``b`` to ``chi(b)`` and the dual basis vector at
    ``g`` to ``[g = a]``.  The field must contain the needed roots of unity.
    """
    if H.dim != G.order:
        raise ShapeMismatch("group and algebra dimensions differ")
    chars = group_characters(G, H.field)
    reps = []
    for a in range(G.order):
        for k, chi in enumerate(chars):
            A = [Mat.from_entries(1, 1, [(0, 0, chi[b])]) for b in range(G.order)]
            B = [Mat.from_entries(1, 1, [(0, 0, H.field.one)]) if g == a else Mat(1, 1) for g in range(G.order)]
            reps.append(DoubleRep(1, A, B, TraceFunctional.usual(1, H.field.one), name=f"({G.labels[a]},chi{k})"))
    return reps
