"""JSON file formats.

Every value is serialized as a canonical rational string (``"p/q"``, or
``"p"`` when the denominator is 1); prime-field values are written as their
representative in ``0..p-1``.  Floats are rejected on input.

Formats:

* tensor  ``{"legs": [{"dir", "dim"}...], "entries": [{"idx", "val"}...]}``
* Hopf algebra  ``{"dim", "labels", "M", "unit", "Delta", "counit", "S", "field"}``
* double  Hopf JSON plus ``{"R", "u", "lambda", "ell", "factor_dim"}``
* representation  ``{"dimV", "A", "B", "trace_W"}`` with dense matrices
* diagram and planar link  (see :mod:`exkup.heegaard`)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .double import (
    DoubleAlgebra,
    QuasitriangularData,
    RibbonData,
    check_drinfeld_element,
    check_quasitriangular,
    check_ribbon,
    drinfeld_element,
    invert_element,
)
from .errors import InputError, VerificationFailure
from .heegaard import HeegaardLinkDiagram, PlanarLinkPresentation
from .hopf import AxiomReport, AxiomResult, HopfAlgebraData, IntegralPair, check_axioms, check_integrals, vclean
from .linalg import Mat
from .reps import DoubleRep, TraceFunctional
from .scalars import QQ, field_from_json
from .tensor import IN, OUT, Tensor

# ----------------------------------------------------------------------
# files


def read_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _reject_float(s):
    raise InputError(f"floating-point number {s} found; write exact values as strings \"p/q\"")


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# ----------------------------------------------------------------------
# tensors


def tensor_to_json(t: Tensor, field=QQ) -> dict:
    return {
        "legs": [{"dir": d, "dim": n} for d, n in t.legs],
        "entries": [{"idx": list(idx), "val": field.format(v)} for idx, v in sorted(t.data.items())],
    }


def tensor_from_json(obj, field=QQ) -> Tensor:
    try:
        legs = [(leg["dir"], int(leg["dim"])) for leg in obj["legs"]]
        data = {}
        for e in obj.get("entries", []):
            idx = tuple(int(i) for i in e["idx"])
            if idx in data:
                raise InputError(f"tensor entry {list(idx)} listed twice")
            data[idx] = field(e["val"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed tensor: {exc}") from exc
    return Tensor(legs, data)


def _vector_to_json(v: dict, dim: int, field, direction: str) -> dict:
    return tensor_to_json(Tensor([(direction, dim)], {(k,): x for k, x in v.items()}), field)


def _vector_from_json(obj, dim: int, field, direction: str, name: str) -> dict:
    t = tensor_from_json(obj, field)
    if list(t.legs) != [(direction, dim)]:
        raise InputError(f"{name} must have the single leg ({direction}, {dim}), got {list(t.legs)}")
    return {k: v for (k,), v in t.data.items()}


# ----------------------------------------------------------------------
# Hopf algebras


def hopf_to_json(H: HopfAlgebraData) -> dict:
    F = H.field
    return {
        "dim": H.dim,
        "labels": list(H.labels),
        "field": F.to_json(),
        "M": tensor_to_json(H.M, F),
        "unit": tensor_to_json(H.unit, F),
        "Delta": tensor_to_json(H.Delta, F),
        "counit": tensor_to_json(H.counit, F),
        "S": tensor_to_json(H.S, F),
    }


def hopf_from_json(obj) -> HopfAlgebraData:
    if not isinstance(obj, dict):
        raise InputError("a Hopf algebra file must hold a JSON object")
    field = field_from_json(obj.get("field"))
    try:
        dim = int(obj["dim"])
        parts = {k: tensor_from_json(obj[k], field) for k in ("M", "unit", "Delta", "counit", "S")}
    except KeyError as exc:
        raise InputError(f"Hopf algebra file is missing {exc}") from exc
    return HopfAlgebraData(dim, field=field, labels=obj.get("labels"), **parts)


# ----------------------------------------------------------------------
# doubles


@dataclass
class DoubleFile:
    """A double read back from disk: the Hopf structure plus R, u and integrals."""

    hopf: HopfAlgebraData
    R: dict
    u: dict
    integrals: IntegralPair
    factor_dim: int

    @cached_property
    def quasitriangular(self) -> QuasitriangularData:
        H = self.hopf
        R_inv: dict = {}
        for (a, b), v in self.R.items():
            for s, w in H.antipode(H.basis(a)).items():
                R_inv[(s, b)] = R_inv.get((s, b), 0) + v * w
        return QuasitriangularData(H, vclean(dict(self.R)), vclean(R_inv))

    @cached_property
    def u_inv(self) -> dict:
        return invert_element(self.hopf, self.u)

    @property
    def ribbon(self) -> RibbonData:
        return RibbonData(self.quasitriangular, self.u, self.u_inv, self.integrals)

    def check(self) -> AxiomReport:
        """Re-verify everything the file claims; the report lists every check."""
        H = self.hopf
        report = AxiomReport(involutory=H.is_involutory())
        report.results.extend(check_axioms(H).results)
        Q = self.quasitriangular
        report.results.extend(check_quasitriangular(Q).results)
        u_expected, _ = drinfeld_element(Q)
        report.results.append(AxiomResult("u = sum S(R'') R'", self.u == u_expected, None if self.u == u_expected else (0,)))
        try:
            u_inv = self.u_inv
        except VerificationFailure:
            report.results.append(AxiomResult("u invertible", False, (0,)))
            return report
        report.results.extend(check_drinfeld_element(Q, self.u, u_inv).results)
        report.results.extend(check_ribbon(Q, self.u).results)
        ok = check_integrals(H, self.integrals)
        report.results.append(AxiomResult("lambda, ell two-sided integrals", ok, None if ok else (0,)))
        val = H.pair(self.integrals.mu, self.integrals.e)
        report.results.append(AxiomResult("lambda(ell) = 1", val == 1, None if val == 1 else (0,)))
        return report


def double_to_json(D: DoubleAlgebra, base_integrals: IntegralPair | None = None) -> dict:
    hopf = D._need_hopf()
    F = D.field
    n = D.dim
    ip = D.integrals_from(base_integrals if base_integrals is not None else D.base_integrals)
    obj = hopf_to_json(hopf)
    obj.update(
        {
            "R": tensor_to_json(Tensor([(OUT, n), (OUT, n)], dict(D.R)), F),
            "u": _vector_to_json(D.u, n, F, OUT),
            "lambda": _vector_to_json(ip.mu, n, F, IN),
            "ell": _vector_to_json(ip.e, n, F, OUT),
            "factor_dim": D.factor_dim,
        }
    )
    return obj


def double_from_json(obj) -> DoubleFile:
    H = hopf_from_json(obj)
    F, n = H.field, H.dim
    try:
        R = tensor_from_json(obj["R"], F)
        u = _vector_from_json(obj["u"], n, F, OUT, "u")
        lam = _vector_from_json(obj["lambda"], n, F, IN, "lambda")
        ell = _vector_from_json(obj["ell"], n, F, OUT, "ell")
        factor_dim = int(obj["factor_dim"])
    except KeyError as exc:
        raise InputError(f"double file is missing {exc}") from exc
    if list(R.legs) != [(OUT, n), (OUT, n)]:
        raise InputError(f"R must have two out-legs of dimension {n}")
    if factor_dim * factor_dim != n:
        raise InputError(f"factor_dim {factor_dim} does not square to the dimension {n}")
    return DoubleFile(H, dict(R.data), u, IntegralPair(lam, ell), factor_dim)


def is_double_json(obj) -> bool:
    return isinstance(obj, dict) and "R" in obj


# ----------------------------------------------------------------------
# representations


def _mat_to_json(m: Mat, field) -> list:
    return [[field.format(x) for x in row] for row in m.to_dense()]


def _mat_from_json(rows, n: int, field, name: str) -> Mat:
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InputError(f"{name} must be a {n}x{n} matrix")
    return Mat.from_entries(n, n, ((i, j, field(v)) for i, r in enumerate(rows) for j, v in enumerate(r)))


def rep_to_json(rep: DoubleRep, field=QQ) -> dict:
    return {
        "dimV": rep.dimV,
        "A": [_mat_to_json(m, field) for m in rep.A],
        "B": [_mat_to_json(m, field) for m in rep.B],
        "trace_W": _mat_to_json(rep.trace.W, field),
    }


def rep_from_json(obj, field=QQ, name="rep") -> DoubleRep:
    try:
        n = int(obj["dimV"])
        A = [_mat_from_json(m, n, field, f"A[{k}]") for k, m in enumerate(obj["A"])]
        B = [_mat_from_json(m, n, field, f"B[{k}]") for k, m in enumerate(obj["B"])]
        W = _mat_from_json(obj["trace_W"], n, field, "trace_W")
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed representation: {exc}") from exc
    return DoubleRep(n, A, B, TraceFunctional(W), name=name)


# ----------------------------------------------------------------------
# diagrams and links


def diagram_from_json(obj) -> HeegaardLinkDiagram:
    return HeegaardLinkDiagram.from_json(obj)


def diagram_to_json(E: HeegaardLinkDiagram) -> dict:
    return E.to_json()


def planar_from_json(obj) -> PlanarLinkPresentation:
    return PlanarLinkPresentation.from_json(obj)


def planar_to_json(P: PlanarLinkPresentation) -> dict:
    return P.to_json()


def load_hopf(path) -> HopfAlgebraData:
    return hopf_from_json(read_json(path))


def load_double(path) -> DoubleFile:
    return double_from_json(read_json(path))


def load_diagram(path) -> HeegaardLinkDiagram:
    return diagram_from_json(read_json(path))


def load_planar(path) -> PlanarLinkPresentation:
    return planar_from_json(read_json(path))
