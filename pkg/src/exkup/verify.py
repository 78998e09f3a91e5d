"""Pipeline comparisons for surgery presentations over group algebras.

Every job rebuilds and re-verifies its algebraic inputs before evaluating
anything: the group algebra's axioms and integrals, the double's full
quasitriangular ribbon structure, and each representation and trace used.

Jobs:

``t4``
    bracket of the link diagram colored by the double's regular
    representation versus Kuperberg's invariant of the surgered diagram.
``t2``
    HKR invariant over the double versus Kuperberg's invariant of the
    surgered diagram.
``t3``
    bracket over ``H' = D(k[G])`` colored by the representation on ``H'``
    built from its R-matrix versus the HKR invariant over ``H'``.
``corollary``
    all three routes for the surgered manifold at once: Kuperberg of the
    surgered diagram, regular-rep bracket and HKR.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bracket import bracket, kuperberg
from .double import DoubleAlgebra, drinfeld_double
from .errors import InputError, RepCheckFailure, VerificationFailure
from .groups import FiniteGroup
from .heegaard import PlanarLinkPresentation, from_planar_link, surgery_all
from .hennings import hkr_invariant
from .hopf import HopfAlgebraData, IntegralPair, build_group_algebra, check_integrals, solve_integrals, verify_hopf
from .reps import DoubleRep, check_trace, make_regular_rep, make_rho_R, verify_double_rep
from .scalars import format_rational

JOBS = ("t2", "t3", "t4", "corollary")


@dataclass
class Outcome:
    """Values computed by each route of a job."""

    job: str
    values: dict  # route name -> scalar, in evaluation order
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        vals = list(self.values.values())
        return all(v == vals[0] for v in vals)

    @property
    def value(self):
        return next(iter(self.values.values()))

    def line(self) -> str:
        names = list(self.values)
        if self.holds:
            return " = ".join(names) + f" = {format_rational(self.value)}"
        return ", ".join(f"{k} = {format_rational(v)}" for k, v in self.values.items())


def _verified_base(G: FiniteGroup, field=None) -> tuple[HopfAlgebraData, IntegralPair]:
    H = build_group_algebra(G) if field is None else build_group_algebra(G, field)
    verify_hopf(H)
    ip = solve_integrals(H)
    if not check_integrals(H, ip):
        raise VerificationFailure("integrals of the group algebra failed their check")
    return H, ip


def _verified_double(H: HopfAlgebraData, ip: IntegralPair) -> DoubleAlgebra:
    return drinfeld_double(H, ip, verify=True)


def _verified_rep(D, rep: DoubleRep) -> DoubleRep:
    verify_double_rep(D, rep)
    tr = check_trace(D, rep)
    if not tr.ok:
        raise RepCheckFailure(f"trace of {rep!r} fails:\n{tr}", tr)
    return rep


def regular_bracket(P: PlanarLinkPresentation, H: HopfAlgebraData, D: DoubleAlgebra, ip: IntegralPair):
    rep = _verified_rep(D, make_regular_rep(D, ip))
    return bracket(from_planar_link(P), H, rep, ip)


def surgery_kuperberg(P: PlanarLinkPresentation, H: HopfAlgebraData, ip: IntegralPair):
    return kuperberg(surgery_all(from_planar_link(P)), H, ip)


def hkr_value(P: PlanarLinkPresentation, D: DoubleAlgebra, ip: IntegralPair):
    return hkr_invariant(P, D.ribbon(ip)).value


def rho_R_bracket(P: PlanarLinkPresentation, D: DoubleAlgebra, ip: IntegralPair):
    """Bracket over ``H' = D`` colored by the representation built from D's R-matrix."""
    Hp = D._need_hopf()
    ipp = D.integrals_from(ip)
    rep = _verified_rep(Hp, make_rho_R(D.quasitriangular, ipp))
    return bracket(from_planar_link(P), Hp, rep, ipp)


def run_job(job: str, P: PlanarLinkPresentation, G: FiniteGroup) -> Outcome:
    if job not in JOBS:
        raise InputError(f"unknown verification job {job!r}; choose from {', '.join(JOBS)}")
    H, ip = _verified_base(G)
    D = _verified_double(H, ip)
    if job == "t4":
        values = {"lhs": regular_bracket(P, H, D, ip), "rhs": surgery_kuperberg(P, H, ip)}
    elif job == "t2":
        values = {"lhs": hkr_value(P, D, ip), "rhs": surgery_kuperberg(P, H, ip)}
    elif job == "t3":
        values = {"lhs": rho_R_bracket(P, D, ip), "rhs": hkr_value(P, D, ip)}
    else:
        values = {
            "kuperberg": surgery_kuperberg(P, H, ip),
            "bracket": regular_bracket(P, H, D, ip),
            "hkr": hkr_value(P, D, ip),
        }
    return Outcome(job, values)
