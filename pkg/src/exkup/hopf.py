"""Finite-dimensional Hopf algebras given by structure constants.

Structure tensors follow the (m, n) convention with in-legs first:

* ``M``      (2,1)  ``M[a, b, c]`` = coefficient of basis ``c`` in ``b_a b_b``
* ``unit``   (0,1)  coefficients of the unit
* ``Delta``  (1,2)  ``Delta[a, b, c]`` = coefficient of ``b_b (x) b_c`` in the coproduct of ``b_a``
* ``counit`` (1,0)
* ``S``      (1,1)  ``S[a, b]`` = coefficient of ``b_b`` in the antipode of ``b_a``

Elements are sparse dicts ``{basis index: coefficient}``; functionals use the
same representation on the dual basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from .errors import InputError, NotNormalizable, NotTwoSided, ShapeMismatch, VerificationFailure
from .groups import FiniteGroup, from_table
from .linalg import Mat, inverse, nullspace, rref
from .scalars import QQ
from .tensor import IN, OUT, Tensor

# ----------------------------------------------------------------------
# sparse vector helpers


def vclean(v: dict) -> dict:
    return {k: x for k, x in v.items() if x != 0}


def vadd(*vs: dict) -> dict:
    out: dict = {}
    for v in vs:
        for k, x in v.items():
            out[k] = out.get(k, 0) + x
    return vclean(out)


def vscale(v: dict, c) -> dict:
    return vclean({k: x * c for k, x in v.items()})


def vaxpy(acc: dict, c, v: dict):
    """In place ``acc += c * v`` (zeros are left for the caller to clean)."""
    for k, x in v.items():
        acc[k] = acc.get(k, 0) + c * x


def basis_vec(i: int, one=1) -> dict:
    return {i: one}


class HopfAlgebraData:
    """A Hopf algebra over an exact field, stored as sparse structure tensors."""

    def __init__(self, dim, M, unit, Delta, counit, S, field=QQ, labels=None, name=None):
        self.dim = int(dim)
        self.field = field
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.dim))
        self.name = name
        d = self.dim
        shapes = {
            "M": (M, [(IN, d), (IN, d), (OUT, d)]),
            "unit": (unit, [(OUT, d)]),
            "Delta": (Delta, [(IN, d), (OUT, d), (OUT, d)]),
            "counit": (counit, [(IN, d)]),
            "S": (S, [(IN, d), (OUT, d)]),
        }
        for nm, (t, legs) in shapes.items():
            if list(t.legs) != legs:
                raise ShapeMismatch(f"{nm} has legs {list(t.legs)}, expected {legs}")
        if len(self.labels) != d:
            raise ShapeMismatch("label count does not match dimension")
        coerce = field
        self.M = Tensor(M.legs, {k: coerce(v) for k, v in M.data.items()})
        self.unit = Tensor(unit.legs, {k: coerce(v) for k, v in unit.data.items()})
        self.Delta = Tensor(Delta.legs, {k: coerce(v) for k, v in Delta.data.items()})
        self.counit = Tensor(counit.legs, {k: coerce(v) for k, v in counit.data.items()})
        self.S = Tensor(S.legs, {k: coerce(v) for k, v in S.data.items()})
        self._mul: dict = {}
        for (a, b, c), v in self.M.data.items():
            self._mul.setdefault((a, b), {})[c] = v
        self._co: dict = {}
        for (a, b, c), v in self.Delta.data.items():
            self._co.setdefault(a, {})[(b, c)] = v
        self._S: dict = {}
        for (a, b), v in self.S.data.items():
            self._S.setdefault(a, {})[b] = v
        self._eps = {a: v for (a,), v in self.counit.data.items()}
        self._one = {a: v for (a,), v in self.unit.data.items()}

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"HopfAlgebraData{nm}(dim={self.dim}, field={self.field!r})"

    # element operations ---------------------------------------------
    def one(self) -> dict:
        return dict(self._one)

    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    def mul_basis(self, a: int, b: int) -> dict:
        return self._mul.get((a, b), {})

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, xa in x.items():
            for b, yb in y.items():
                r = self._mul.get((a, b))
                if r:
                    c = xa * yb
                    for k, v in r.items():
                        out[k] = out.get(k, 0) + c * v
        return vclean(out)

    def mul_many(self, *xs: dict) -> dict:
        acc = self.one()
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def comul_basis(self, a: int) -> dict:
        return self._co.get(a, {})

    def comul(self, x: dict) -> dict:
        out: dict = {}
        for a, xa in x.items():
            for k, v in self._co.get(a, {}).items():
                out[k] = out.get(k, 0) + xa * v
        return vclean(out)

    def counit_of(self, x: dict):
        s = 0
        for a, xa in x.items():
            e = self._eps.get(a)
            if e is not None:
                s = s + xa * e
        return s

    def antipode(self, x: dict) -> dict:
        out: dict = {}
        for a, xa in x.items():
            for b, v in self._S.get(a, {}).items():
                out[b] = out.get(b, 0) + xa * v
        return vclean(out)

    @cached_property
    def S_matrix(self) -> Mat:
        """Column convention: column ``a`` holds the antipode of ``b_a``."""
        return Mat.from_entries(self.dim, self.dim, ((b, a, v) for (a, b), v in self.S.data.items()))

    @cached_property
    def S_inverse_table(self) -> dict:
        inv = inverse(self.S_matrix, self.field)
        if inv is None:
            raise VerificationFailure("antipode is not invertible")
        table: dict = {}
        for i, j, v in inv.entries():
            table.setdefault(j, {})[i] = v
        return table

    def antipode_inv(self, x: dict) -> dict:
        out: dict = {}
        for a, xa in x.items():
            for b, v in self.S_inverse_table.get(a, {}).items():
                out[b] = out.get(b, 0) + xa * v
        return vclean(out)

    def antipode_power(self, x: dict, k: int) -> dict:
        f = self.antipode if k >= 0 else self.antipode_inv
        for _ in range(abs(k)):
            x = f(x)
        return x

    def pair(self, f: dict, x: dict):
        """Evaluate a functional (dual-basis coefficients) on an element."""
        s = 0
        for a, xa in x.items():
            fa = f.get(a)
            if fa is not None:
                s = s + fa * xa
        return s

    # tensor-product elements (dicts keyed by index tuples)
    def mul2(self, x: dict, y: dict) -> dict:
        """Product in ``H (x) H``."""
        out: dict = {}
        for (a1, a2), xv in x.items():
            for (b1, b2), yv in y.items():
                r1 = self._mul.get((a1, b1))
                if not r1:
                    continue
                r2 = self._mul.get((a2, b2))
                if not r2:
                    continue
                c = xv * yv
                for k1, v1 in r1.items():
                    for k2, v2 in r2.items():
                        key = (k1, k2)
                        out[key] = out.get(key, 0) + c * v1 * v2
        return vclean(out)

    def mul3(self, x: dict, y: dict) -> dict:
        """Product in ``H (x) H (x) H``."""
        out: dict = {}
        for a, xv in x.items():
            for b, yv in y.items():
                rs = [self._mul.get((a[i], b[i])) for i in range(3)]
                if not all(rs):
                    continue
                c = xv * yv
                for (k1, v1), (k2, v2), (k3, v3) in itertools.product(*(r.items() for r in rs)):
                    key = (k1, k2, k3)
                    out[key] = out.get(key, 0) + c * v1 * v2 * v3
        return vclean(out)

    def is_involutory(self) -> bool:
        return all(self.antipode(self.antipode(self.basis(a))) == self.basis(a) for a in range(self.dim))


# ----------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomResult:
    name: str
    ok: bool
    witness: tuple | None = None

    def __str__(self):
        if self.ok:
            return f"{self.name}: ok"
        return f"{self.name}: FAILS at basis indices {self.witness}"


@dataclass
class AxiomReport:
    results: list[AxiomResult] = field(default_factory=list)
    involutory: bool = False

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.ok]

    def get(self, name: str) -> AxiomResult:
        return next(r for r in self.results if r.name == name)

    def __str__(self):
        lines = [str(r) for r in self.results]
        lines.append(f"involutory: {'yes' if self.involutory else 'no'}")
        return "\n".join(lines)


def _first(check: Callable, ranges: Sequence[int]):
    for idx in itertools.product(*(range(n) for n in ranges)):
        if not check(*idx):
            return idx
    return None


def check_axioms(H: HopfAlgebraData) -> AxiomReport:
    """Check the Hopf algebra axioms on basis elements, recording a witness per failure."""
    d = H.dim
    b = H.basis
    one = H.one()
    rep = AxiomReport()

    def add(name, witness):
        rep.results.append(AxiomResult(name, witness is None, witness))

    add("associativity", _first(lambda x, y, z: H.mul(H.mul(b(x), b(y)), b(z)) == H.mul(b(x), H.mul(b(y), b(z))), (d, d, d)))
    add("unit", _first(lambda x: H.mul(one, b(x)) == b(x) == H.mul(b(x), one), (d,)))

    def coassoc(x):
        left: dict = {}
        right: dict = {}
        for (p, q), v in H.comul_basis(x).items():
            for (p1, p2), w in H.comul_basis(p).items():
                left[(p1, p2, q)] = left.get((p1, p2, q), 0) + v * w
            for (q1, q2), w in H.comul_basis(q).items():
                right[(p, q1, q2)] = right.get((p, q1, q2), 0) + v * w
        return vclean(left) == vclean(right)

    add("coassociativity", _first(coassoc, (d,)))

    def counit(x):
        left: dict = {}
        right: dict = {}
        for (p, q), v in H.comul_basis(x).items():
            vaxpy(left, v * H.counit_of(b(p)), {q: 1})
            vaxpy(right, v * H.counit_of(b(q)), {p: 1})
        return vclean(left) == b(x) == vclean(right)

    add("counit", _first(counit, (d,)))
    add(
        "comultiplicativity",
        _first(lambda x, y: H.comul(H.mul(b(x), b(y))) == H.mul2(H.comul(b(x)), H.comul(b(y))), (d, d)),
    )
    add("coproduct of unit", None if H.comul(one) == {(i, j): u * w for i, u in one.items() for j, w in one.items()} else (0,))
    add(
        "counit multiplicative",
        _first(lambda x, y: H.counit_of(H.mul(b(x), b(y))) == H.counit_of(b(x)) * H.counit_of(b(y)), (d, d)),
    )
    add("counit of unit", None if H.counit_of(one) == 1 else (0,))

    def antipode(x):
        left: dict = {}
        right: dict = {}
        for (p, q), v in H.comul_basis(x).items():
            vaxpy(left, v, H.mul(H.antipode(b(p)), b(q)))
            vaxpy(right, v, H.mul(b(p), H.antipode(b(q))))
        target = vscale(one, H.counit_of(b(x)))
        return vclean(left) == target == vclean(right)

    add("antipode", _first(antipode, (d,)))
    add(
        "antipode anti-multiplicative",
        _first(lambda x, y: H.antipode(H.mul(b(x), b(y))) == H.mul(H.antipode(b(y)), H.antipode(b(x))), (d, d)),
    )
    add("antipode of unit", None if H.antipode(one) == one else (0,))
    add("counit of antipode", _first(lambda x: H.counit_of(H.antipode(b(x))) == H.counit_of(b(x)), (d,)))
    add("antipode invertible", None if inverse(H.S_matrix, H.field) is not None else (0,))
    rep.involutory = H.is_involutory()
    rep.results.extend(check_ladders(H, rep.involutory))
    return rep


# the four ladders x (x) y -> x t(y_(i)) (x) y_(j): (twist t, which coproduct factor enters M)
LADDERS = (("id", 1), ("S", 1), ("id", 2), ("S", 2))


def ladder(H: HopfAlgebraData, twist: str, into_m: int, x: int, y: int) -> dict:
    """Image of ``b_x (x) b_y`` under a ladder, as ``{(a, b): coef}``."""
    out: dict = {}
    for (p, q), v in H.comul_basis(y).items():
        fed, kept = (p, q) if into_m == 1 else (q, p)
        t = H.basis(fed) if twist == "id" else H.antipode(H.basis(fed))
        for a, w in H.mul(H.basis(x), t).items():
            out[(a, kept)] = out.get((a, kept), 0) + v * w
    return vclean(out)


def _apply_ladder(H, twist, into_m, vec: dict) -> dict:
    out: dict = {}
    for (x, y), c in vec.items():
        vaxpy(out, c, ladder(H, twist, into_m, x, y))
    return vclean(out)


def check_ladders(H: HopfAlgebraData, involutory: bool | None = None) -> list[AxiomResult]:
    """Invertibility of the four ladder maps on ``H (x) H``.

    With an involutory antipode the ladder twisted by ``S`` inverts the
    untwisted one feeding the same factor, and both compositions are checked
    on every basis pair.  Otherwise the rank of each ladder matrix is computed.
    """
    d = H.dim
    if involutory is None:
        involutory = H.is_involutory()
    results = []
    for twist, into_m in LADDERS:
        fed = f"S(y_{into_m})" if twist == "S" else f"y_{into_m}"
        name = f"ladder x.{fed} (x) y_{3 - into_m} invertible"
        witness = None
        if involutory:
            partner = "S" if twist == "id" else "id"
            for x, y in itertools.product(range(d), range(d)):
                one = {(x, y): H.field.one}
                there = _apply_ladder(H, twist, into_m, one)
                back = _apply_ladder(H, partner, into_m, there)
                if back != one or _apply_ladder(H, twist, into_m, _apply_ladder(H, partner, into_m, one)) != one:
                    witness = (x, y)
                    break
        else:
            rows = [dict() for _ in range(d * d)]
            for x, y in itertools.product(range(d), range(d)):
                for (a, b), v in ladder(H, twist, into_m, x, y).items():
                    rows[a * d + b][x * d + y] = v
            _, piv = rref(rows, d * d, H.field)
            if len(piv) != d * d:
                witness = (len(piv),)
        results.append(AxiomResult(name, witness is None, witness))
    return results


def verify_hopf(H: HopfAlgebraData) -> AxiomReport:
    rep = check_axioms(H)
    if not rep.ok:
        raise VerificationFailure(f"{H!r} is not a Hopf algebra:\n{rep}", rep)
    return rep


# ----------------------------------------------------------------------
# integrals


@dataclass
class IntegralPair:
    """Two-sided integral ``mu`` (a functional) and cointegral ``e`` (an element), with ``mu(e) = 1``."""

    mu: dict
    e: dict

    def mu_tensor(self, dim: int) -> Tensor:
        return Tensor([(IN, dim)], {(k,): v for k, v in self.mu.items()})

    def e_tensor(self, dim: int) -> Tensor:
        return Tensor([(OUT, dim)], {(k,): v for k, v in self.e.items()})


def _functional_equations(H: HopfAlgebraData, side: str):
    """Rows for ``sum mu(x_(2)) x_(1) = mu(x) 1`` (side 'left') or the mirror."""
    rows = []
    for x in range(H.dim):
        for c in range(H.dim):
            r: dict = {}
            for (p, q), v in H.comul_basis(x).items():
                if side == "left" and p == c:
                    r[q] = r.get(q, 0) + v
                if side == "right" and q == c:
                    r[p] = r.get(p, 0) + v
            u = H._one.get(c)
            if u:
                r[x] = r.get(x, 0) - u
            r = vclean(r)
            if r:
                rows.append(r)
    return rows


def _element_equations(H: HopfAlgebraData, side: str):
    """Rows for ``x e = eps(x) e`` (side 'left') or ``e x = eps(x) e``."""
    rows = []
    for x in range(H.dim):
        eps = H._eps.get(x, 0)
        for c in range(H.dim):
            r: dict = {}
            for y in range(H.dim):
                prod = H.mul_basis(x, y) if side == "left" else H.mul_basis(y, x)
                v = prod.get(c)
                if v:
                    r[y] = r.get(y, 0) + v
            if eps:
                r[c] = r.get(c, 0) - eps
            r = vclean(r)
            if r:
                rows.append(r)
    return rows


def _unique_line(H, left_rows, right_rows, what):
    both = nullspace(left_rows + right_rows, H.dim, H.field)
    if not both:
        one_sided = nullspace(left_rows, H.dim, H.field) or nullspace(right_rows, H.dim, H.field)
        if one_sided:
            raise NotTwoSided(f"{H!r} has only one-sided {what}s")
        raise NotTwoSided(f"{H!r} has no {what}")
    if len(both) > 1:
        raise VerificationFailure(f"{what} space of {H!r} has dimension {len(both)}")
    v = both[0]
    lead = v[min(v)]
    return vscale(v, H.field.inv(lead))


def solve_integrals(H: HopfAlgebraData) -> IntegralPair:
    """Find the two-sided integral and cointegral, normalised so ``mu(e) = 1``.

    The integral is scaled to have leading coefficient 1 and the cointegral is
    then rescaled.  Raises :class:`NotTwoSided` when only one-sided solutions
    exist and :class:`NotNormalizable` when ``mu(e) = 0`` or when the
    characteristic rules out semisimplicity, detected as ``eps(e) = 0`` or
    ``mu(1) = 0``.
    """
    mu = _unique_line(H, _functional_equations(H, "left"), _functional_equations(H, "right"), "integral")
    e = _unique_line(H, _element_equations(H, "left"), _element_equations(H, "right"), "cointegral")
    pairing = H.pair(mu, e)
    if pairing == 0:
        raise NotNormalizable(f"integral and cointegral of {H!r} pair to zero")
    e = vscale(e, H.field.inv(pairing))
    # Maschke and its dual: the invariants need a semisimple, cosemisimple algebra.
    if H.counit_of(e) == 0 or H.pair(mu, H.one()) == 0:
        raise NotNormalizable(
            f"{H!r} is not semisimple and cosemisimple over {H.field!r} "
            "(counit of the cointegral or integral of the unit vanishes)"
        )
    return IntegralPair(mu, e)


def check_integrals(H: HopfAlgebraData, ip: IntegralPair) -> bool:
    """Independent check of the defining identities and the normalisation."""
    for x in range(H.dim):
        bx = H.basis(x)
        xe = H.mul(bx, ip.e)
        ex = H.mul(ip.e, bx)
        target = vscale(ip.e, H.counit_of(bx))
        if xe != target or ex != target:
            return False
        left: dict = {}
        right: dict = {}
        for (p, q), v in H.comul_basis(x).items():
            vaxpy(left, v * ip.mu.get(q, 0), {p: 1})
            vaxpy(right, v * ip.mu.get(p, 0), {q: 1})
        t = vscale(H.one(), ip.mu.get(x, 0))
        if vclean(left) != t or vclean(right) != t:
            return False
    return H.pair(ip.mu, ip.e) == 1


# ----------------------------------------------------------------------
# constructions


def _tensor(legs, data: dict, field) -> Tensor:
    return Tensor(legs, {k: field(v) for k, v in data.items()})


def build_group_algebra(group, field=QQ) -> HopfAlgebraData:
    """The group algebra k[G] with the group elements as basis."""
    if not isinstance(group, FiniteGroup):
        group = from_table(group)
    n = group.order
    inv = [group.inv(g) for g in range(n)]
    return HopfAlgebraData(
        n,
        _tensor([(IN, n), (IN, n), (OUT, n)], {(a, b, group.mul(a, b)): 1 for a in range(n) for b in range(n)}, field),
        _tensor([(OUT, n)], {(group.identity,): 1}, field),
        _tensor([(IN, n), (OUT, n), (OUT, n)], {(g, g, g): 1 for g in range(n)}, field),
        _tensor([(IN, n)], {(g,): 1 for g in range(n)}, field),
        _tensor([(IN, n), (OUT, n)], {(g, inv[g]): 1 for g in range(n)}, field),
        field=field,
        labels=group.labels,
        name=f"k[G] (|G|={n})",
    )


def dual(H: HopfAlgebraData) -> HopfAlgebraData:
    """The dual Hopf algebra on the dual basis: every structure map reverses."""
    d = H.dim
    return HopfAlgebraData(
        d,
        Tensor([(IN, d), (IN, d), (OUT, d)], {(b, c, a): v for (a, b, c), v in H.Delta.data.items()}),
        Tensor([(OUT, d)], dict(H.counit.data)),
        Tensor([(IN, d), (OUT, d), (OUT, d)], {(c, a, b): v for (a, b, c), v in H.M.data.items()}),
        Tensor([(IN, d)], dict(H.unit.data)),
        Tensor([(IN, d), (OUT, d)], {(b, a): v for (a, b), v in H.S.data.items()}),
        field=H.field,
        labels=tuple(f"{l}*" for l in H.labels),
        name=f"dual of {H.name}" if H.name else None,
    )


def _s_inverse_tensor(H):
    d = H.dim
    return Tensor([(IN, d), (OUT, d)], {(a, b): v for a, r in H.S_inverse_table.items() for b, v in r.items()})


def opposite(H: HopfAlgebraData) -> HopfAlgebraData:
    """Opposite multiplication; the antipode becomes its inverse."""
    d = H.dim
    return HopfAlgebraData(
        d,
        Tensor(H.M.legs, {(b, a, c): v for (a, b, c), v in H.M.data.items()}),
        H.unit,
        H.Delta,
        H.counit,
        _s_inverse_tensor(H),
        field=H.field,
        labels=H.labels,
    )


def coopposite(H: HopfAlgebraData) -> HopfAlgebraData:
    """Opposite comultiplication; the antipode becomes its inverse."""
    return HopfAlgebraData(
        H.dim,
        H.M,
        H.unit,
        Tensor(H.Delta.legs, {(a, c, b): v for (a, b, c), v in H.Delta.data.items()}),
        H.counit,
        _s_inverse_tensor(H),
        field=H.field,
        labels=H.labels,
    )


def power_tensor(H: HopfAlgebraData, which: str, n: int) -> Tensor:
    """Iterated product (``which='M'``, an (n,1) tensor) or coproduct (``'Delta'``, a (1,n) tensor).

    For ``n = 0`` these are the unit and counit; for ``n = 1`` the identity.
    Higher powers are built by repeated nesting, which is well defined by (co)associativity.
    """
    d = H.dim
    if n < 0:
        raise InputError("power must be non-negative")
    if which == "M":
        if n == 0:
            return H.unit
        cur = {(a, a): H.field.one for a in range(d)}  # (inputs..., output)
        for _ in range(n - 1):
            nxt: dict = {}
            for idx, v in cur.items():
                *ins, o = idx
                for b in range(d):
                    for c, w in H.mul_basis(o, b).items():
                        key = (*ins, b, c)
                        nxt[key] = nxt.get(key, 0) + v * w
            cur = vclean(nxt)
        return Tensor([(IN, d)] * n + [(OUT, d)], cur)
    if which == "Delta":
        if n == 0:
            return H.counit
        cur = {(a, a): H.field.one for a in range(d)}  # (input, outputs...)
        for _ in range(n - 1):
            nxt = {}
            for idx, v in cur.items():
                i, *outs = idx
                last = outs[-1]
                for (p, q), w in H.comul_basis(last).items():
                    key = (i, *outs[:-1], p, q)
                    nxt[key] = nxt.get(key, 0) + v * w
            cur = vclean(nxt)
        return Tensor([(IN, d)] + [(OUT, d)] * n, cur)
    raise InputError(f"unknown power type {which!r}")
