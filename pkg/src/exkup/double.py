"""Drinfeld doubles, quasitriangular structures and ribbon data.

The double of ``H`` is ``H* (x) H`` as a vector space.  Its basis vector
``(i, j)``, the dual basis functional ``i`` next to basis element ``j``, has
index ``i * dim(H) + j``.  Conventions:

* the dual factor multiplies as ``(f g)(h) = f(h_(1)) g(h_(2))`` and
  comultiplies oppositely, ``Delta(f)(a (x) b) = f(b a)``;
* the cross relation is ``x f = f(S^-1(x_(3)) ? x_(1)) x_(2)``, which for a group
  algebra reads ``x delta_g = delta_(x g x^-1) x``;
* ``R = sum_b (eps (x) b) (x) (b* (x) 1)``, the first leg lying in ``H``;
* the antipode is ``S(f x) = S(x) (f o S^-1)``.

Every one of these is re-verified when a double is built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InputError, VerificationFailure
from .hopf import (
    AxiomReport,
    AxiomResult,
    HopfAlgebraData,
    IntegralPair,
    check_axioms,
    check_integrals,
    vaxpy,
    vclean,
    vscale,
)
from .linalg import Mat, solve
from .tensor import IN, OUT, Tensor

MATERIALIZE_LIMIT = 64


@dataclass
class QuasitriangularData:
    """A Hopf algebra with a universal R-matrix, stored as ``{(a, b): coef}``."""

    H: HopfAlgebraData
    R: dict
    R_inv: dict

    def R_tensor(self) -> Tensor:
        d = self.H.dim
        return Tensor([(OUT, d), (OUT, d)], dict(self.R))


def tensor_square_one(H) -> dict:
    one = H.one()
    return {(a, b): u * w for a, u in one.items() for b, w in one.items()}


def _embed(R: dict, slots: tuple[int, int], H) -> dict:
    """Place a two-leg element into the given slots of ``H^(x)3`` (unit elsewhere)."""
    one = H.one()
    out: dict = {}
    (free,) = {0, 1, 2} - set(slots)
    for (a, b), v in R.items():
        for c, w in one.items():
            key = [0, 0, 0]
            key[slots[0]], key[slots[1]], key[free] = a, b, c
            key = tuple(key)
            out[key] = out.get(key, 0) + v * w
    return vclean(out)


def flip(x: dict) -> dict:
    return {(b, a): v for (a, b), v in x.items()}


def check_quasitriangular(Q: QuasitriangularData) -> AxiomReport:
    H, R, Ri = Q.H, Q.R, Q.R_inv
    rep = AxiomReport()
    one2 = tensor_square_one(H)
    ok = H.mul2(R, Ri) == one2 and H.mul2(Ri, R) == one2
    rep.results.append(AxiomResult("R invertible", ok, None if ok else (0,)))
    left: dict = {}
    for (a, b), v in R.items():
        for (p, q), w in H.comul_basis(a).items():
            left[(p, q, b)] = left.get((p, q, b), 0) + v * w
    ok = vclean(left) == H.mul3(_embed(R, (0, 2), H), _embed(R, (1, 2), H))
    rep.results.append(AxiomResult("(Delta x id)R = R13 R23", ok, None if ok else (0,)))
    right: dict = {}
    for (a, b), v in R.items():
        for (p, q), w in H.comul_basis(b).items():
            right[(a, p, q)] = right.get((a, p, q), 0) + v * w
    ok = vclean(right) == H.mul3(_embed(R, (0, 2), H), _embed(R, (0, 1), H))
    rep.results.append(AxiomResult("(id x Delta)R = R13 R12", ok, None if ok else (0,)))
    witness = None
    for x in range(H.dim):
        dx = H.comul_basis(x)
        if H.mul2(R, dx) != H.mul2(flip(dx), R):
            witness = (x,)
            break
    rep.results.append(AxiomResult("R Delta(x) = Delta_op(x) R", witness is None, witness))
    rep.involutory = H.is_involutory()
    return rep


def drinfeld_element(Q: QuasitriangularData) -> tuple[dict, dict]:
    """Return ``u = sum S(R'') R'`` and its inverse."""
    H = Q.H
    u: dict = {}
    for (a, b), v in Q.R.items():
        vaxpy(u, v, H.mul(H.antipode(H.basis(b)), H.basis(a)))
    u = vclean(u)
    return u, invert_element(H, u)


def invert_element(H: HopfAlgebraData, x: dict) -> dict:
    """Two-sided inverse of ``x`` by solving ``x y = 1``."""
    d = H.dim
    rows = [dict() for _ in range(d)]
    for b in range(d):
        for c, v in H.mul(x, H.basis(b)).items():
            rows[c][b] = rows[c].get(b, 0) + v
    one = H.one()
    y = solve(rows, [one.get(c, 0) for c in range(d)], d, H.field)
    if y is None or H.mul(y, x) != one:
        raise VerificationFailure("element is not invertible")
    return vclean(y)


def check_drinfeld_element(Q: QuasitriangularData, u: dict, u_inv: dict) -> AxiomReport:
    H = Q.H
    rep = AxiomReport()
    ok = H.mul(u, u_inv) == H.one() == H.mul(u_inv, u)
    rep.results.append(AxiomResult("u invertible", ok, None if ok else (0,)))
    ok = H.antipode(u) == u
    rep.results.append(AxiomResult("S(u) = u", ok, None if ok else (0,)))
    witness = None
    for x in range(H.dim):
        bx = H.basis(x)
        if H.antipode(H.antipode(bx)) != H.mul_many(u, bx, u_inv):
            witness = (x,)
            break
    rep.results.append(AxiomResult("S^2(x) = u x u^-1", witness is None, witness))
    rep.involutory = H.is_involutory()
    return rep


def check_ribbon(Q: QuasitriangularData, v: dict) -> AxiomReport:
    """Ribbon axioms for a candidate element ``v``."""
    H = Q.H
    rep = AxiomReport()

    def add(name, ok, witness=(0,)):
        rep.results.append(AxiomResult(name, ok, None if ok else witness))

    witness = next((x for x in range(H.dim) if H.mul(v, H.basis(x)) != H.mul(H.basis(x), v)), None)
    add("v central", witness is None, (witness,))
    u, _ = drinfeld_element(Q)
    add("v^2 = u S(u)", H.mul(v, v) == H.mul(u, H.antipode(u)))
    add("S(v) = v", H.antipode(v) == v)
    add("eps(v) = 1", H.counit_of(v) == 1)
    # Delta(v) (R21 R) = v (x) v
    q = H.mul2(flip(Q.R), Q.R)
    vv = {(a, b): x * y for a, x in v.items() for b, y in v.items()}
    add("Delta(v) = (v x v)(R21 R)^-1", H.mul2(H.comul(v), q) == vv)
    rep.involutory = H.is_involutory()
    return rep


# ----------------------------------------------------------------------


@dataclass
class RibbonData:
    """Quasitriangular Hopf algebra with ribbon element and two-sided integral."""

    Q: QuasitriangularData
    v: dict
    v_inv: dict
    integrals: IntegralPair

    @property
    def H(self) -> HopfAlgebraData:
        return self.Q.H

    @cached_property
    def mu_v(self):
        return self.H.pair(self.integrals.mu, self.v)

    @cached_property
    def mu_v_inv(self):
        return self.H.pair(self.integrals.mu, self.v_inv)


class DoubleAlgebra:
    """The Drinfeld double of ``base``.

    When the double has dimension at most ``MATERIALIZE_LIMIT`` its structure
    tensors are built as a :class:`HopfAlgebraData` (``self.hopf``);
    otherwise products are computed on demand through the cross relation.
    """

    def __init__(self, base: HopfAlgebraData, materialize_limit: int = MATERIALIZE_LIMIT):
        self.base = base
        self.field = base.field
        self.factor_dim = base.dim
        self.dim = base.dim**2
        d = base.dim
        H = base
        # dual-factor product (f_a f_b) = sum_c Delta[c; a, b] f_c and its unit eps
        self._dual_mul: dict = {}
        for (c, a, b), v in H.Delta.data.items():
            self._dual_mul.setdefault((a, b), {})[c] = v
        self.dual_one = {c: v for c, v in H._eps.items()}
        self._cross: dict = {}
        self.hopf: HopfAlgebraData | None = None
        if self.dim <= materialize_limit:
            self.hopf = self._materialize()

    # indices -----------------------------------------------------------
    def index(self, i: int, j: int) -> int:
        return i * self.factor_dim + j

    def split(self, k: int) -> tuple[int, int]:
        return divmod(k, self.factor_dim)

    def from_parts(self, f: dict, x: dict) -> dict:
        """The element ``f (x) x`` for a functional ``f`` and element ``x`` of the base."""
        return vclean({self.index(i, j): a * b for i, a in f.items() for j, b in x.items()})

    def embed_base(self, x: dict) -> dict:
        return self.from_parts(self.dual_one, x)

    def embed_dual(self, f: dict) -> dict:
        return self.from_parts(f, self.base.one())

    # products -----------------------------------------------------------
    def dual_mul(self, f: dict, g: dict) -> dict:
        out: dict = {}
        for a, fa in f.items():
            for b, gb in g.items():
                r = self._dual_mul.get((a, b))
                if r:
                    vaxpy(out, fa * gb, r)
        return vclean(out)

    def cross(self, x: int, c: int) -> dict:
        """``b_x f_c`` written as ``sum (t, q) -> coef`` meaning ``f_t b_q``."""
        key = (x, c)
        hit = self._cross.get(key)
        if hit is not None:
            return hit
        H = self.base
        out: dict = {}
        for (p, rest), v1 in H.comul_basis(x).items():
            for (q, r), v2 in H.comul_basis(rest).items():
                coef = v1 * v2
                sinv_r = H.antipode_inv(H.basis(r))
                for t in range(H.dim):
                    w = H.mul_many(sinv_r, H.basis(t), H.basis(p)).get(c)
                    if w:
                        out[(t, q)] = out.get((t, q), 0) + coef * w
        out = vclean(out)
        self._cross[key] = out
        return out

    def mul(self, X: dict, Y: dict) -> dict:
        """Product of two elements of the double given on the double basis."""
        if self.hopf is not None:
            return self.hopf.mul(X, Y)
        return self._mul_lazy(X, Y)

    def _mul_lazy(self, X: dict, Y: dict) -> dict:
        H, d = self.base, self.factor_dim
        out: dict = {}
        for kx, cx in X.items():
            a, x = divmod(kx, d)
            for ky, cy in Y.items():
                c, y = divmod(ky, d)
                for (t, q), w in self.cross(x, c).items():
                    fg = self._dual_mul.get((a, t))
                    if not fg:
                        continue
                    xy = H.mul_basis(q, y)
                    if not xy:
                        continue
                    coef = cx * cy * w
                    for i, fi in fg.items():
                        for j, xj in xy.items():
                            k = i * d + j
                            out[k] = out.get(k, 0) + coef * fi * xj
        return vclean(out)

    def _materialize(self) -> HopfAlgebraData:
        H, d, n = self.base, self.factor_dim, self.dim
        F = self.field
        M = {}
        for kx in range(n):
            for ky in range(n):
                for k, v in self._mul_lazy({kx: F.one}, {ky: F.one}).items():
                    M[(kx, ky, k)] = v
        unit = {(k,): v for k, v in self.from_parts(self.dual_one, H.one()).items()}
        counit = {}
        for i, ui in H.one().items():
            for j, ej in H._eps.items():
                counit[(self.index(i, j),)] = ui * ej
        Delta = {}
        for (a, b, k), m in H.M.data.items():
            # coproduct of f_k on the dual factor, taken opposite: f_b (x) f_a
            for x in range(d):
                for (p, q), w in H.comul_basis(x).items():
                    key = (self.index(k, x), self.index(b, p), self.index(a, q))
                    Delta[key] = Delta.get(key, 0) + m * w
        # antipode: S(f_k x) = (eps (x) S x)(f_k o S^-1 (x) 1)
        S = {}
        for k in range(d):
            fk_sinv = vclean({m: r.get(k, 0) for m, r in H.S_inverse_table.items()})
            right = self.from_parts(fk_sinv, H.one())
            for x in range(d):
                left = self.from_parts(self.dual_one, H.antipode(H.basis(x)))
                for j, v in self._mul_lazy(left, right).items():
                    S[(self.index(k, x), j)] = v
        labels = [f"{H.labels[i]}*|{H.labels[j]}" for i in range(d) for j in range(d)]
        return HopfAlgebraData(
            n,
            Tensor([(IN, n), (IN, n), (OUT, n)], M),
            Tensor([(OUT, n)], unit),
            Tensor([(IN, n), (OUT, n), (OUT, n)], vclean(Delta)),
            Tensor([(IN, n)], counit),
            Tensor([(IN, n), (OUT, n)], S),
            field=F,
            labels=labels,
            name=f"D({H.name})" if H.name else "D(H)",
        )

    # quasitriangular structure -------------------------------------------
    @cached_property
    def R(self) -> dict:
        H = self.base
        out: dict = {}
        for b in range(H.dim):
            left = self.embed_base(H.basis(b))
            right = self.embed_dual({b: self.field.one})
            for k1, v1 in left.items():
                for k2, v2 in right.items():
                    out[(k1, k2)] = out.get((k1, k2), 0) + v1 * v2
        return vclean(out)

    @cached_property
    def R_inv(self) -> dict:
        """``(S (x) id) R``."""
        hopf = self._need_hopf()
        out: dict = {}
        for (a, b), v in self.R.items():
            for s, w in hopf.antipode(hopf.basis(a)).items():
                out[(s, b)] = out.get((s, b), 0) + v * w
        return vclean(out)

    def _need_hopf(self) -> HopfAlgebraData:
        if self.hopf is None:
            raise InputError(
                f"the double has dimension {self.dim}, above the materialisation limit; "
                "only cross-relation products are available"
            )
        return self.hopf

    @cached_property
    def quasitriangular(self) -> QuasitriangularData:
        return QuasitriangularData(self._need_hopf(), self.R, self.R_inv)

    @cached_property
    def drinfeld(self) -> tuple[dict, dict]:
        return drinfeld_element(self.quasitriangular)

    @property
    def u(self) -> dict:
        return self.drinfeld[0]

    @property
    def u_inv(self) -> dict:
        return self.drinfeld[1]

    def integrals_from(self, base_integrals: IntegralPair) -> IntegralPair:
        """``lambda = e (x) mu`` as a functional and ``ell = mu (x) e`` as an element."""
        mu, e = base_integrals.mu, base_integrals.e
        lam = vclean({self.index(i, j): e.get(i, 0) * m for j, m in mu.items() for i in range(self.factor_dim)})
        ell = self.from_parts(mu, e)
        return IntegralPair(lam, ell)

    def ribbon(self, base_integrals: IntegralPair) -> RibbonData:
        return RibbonData(self.quasitriangular, self.u, self.u_inv, self.integrals_from(base_integrals))

    def __repr__(self):
        return f"DoubleAlgebra(dim={self.dim}, materialized={self.hopf is not None})"


@dataclass
class DoubleReport:
    axioms: AxiomReport | None
    quasitriangular: AxiomReport | None
    drinfeld: AxiomReport | None
    ribbon: AxiomReport | None
    integrals_ok: bool
    lambda_of_ell: object = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        parts = [self.axioms, self.quasitriangular, self.drinfeld, self.ribbon]
        return self.integrals_ok and all(p is None or p.ok for p in parts)

    def __str__(self):
        out = []
        for title, part in [
            ("Hopf axioms", self.axioms),
            ("quasitriangular", self.quasitriangular),
            ("Drinfeld element", self.drinfeld),
            ("ribbon (v = u)", self.ribbon),
        ]:
            if part is not None:
                out.append(f"[{title}]\n{part}")
        out.append(f"[integrals] two-sided and lambda(ell) = {self.lambda_of_ell}: {'ok' if self.integrals_ok else 'FAILS'}")
        out.extend(self.notes)
        return "\n".join(out)


def verify_double(D: DoubleAlgebra, base_integrals: IntegralPair) -> DoubleReport:
    if D.hopf is None:
        return DoubleReport(None, None, None, None, True, notes=["not materialised: only cross-relation products were built"])
    Q = D.quasitriangular
    ax = check_axioms(D.hopf)
    qt = check_quasitriangular(Q)
    dr = check_drinfeld_element(Q, D.u, D.u_inv)
    rb = check_ribbon(Q, D.u)
    ip = D.integrals_from(base_integrals)
    lam_ell = D.hopf.pair(ip.mu, ip.e)
    ok = check_integrals(D.hopf, ip) and D.hopf.pair(ip.mu, D.u) == 1 and D.hopf.pair(ip.mu, D.u_inv) == 1
    return DoubleReport(ax, qt, dr, rb, ok, lam_ell)


def drinfeld_double(H: HopfAlgebraData, base_integrals: IntegralPair | None = None, verify: bool = True,
                    materialize_limit: int = MATERIALIZE_LIMIT) -> DoubleAlgebra:
    """Build the double of ``H`` and, by default, re-verify everything about it."""
    from .hopf import solve_integrals

    D = DoubleAlgebra(H, materialize_limit)
    if base_integrals is None:
        base_integrals = solve_integrals(H)
    D.base_integrals = base_integrals
    if verify:
        rep = verify_double(D, base_integrals)
        D.report = rep
        if not rep.ok:
            raise VerificationFailure(f"double failed verification:\n{rep}", rep)
    return D
