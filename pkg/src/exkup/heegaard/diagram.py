"""Combinatorial Heegaard-Link diagrams.

A diagram has ``genus`` alpha curves, ``genus`` beta curves and any number of
link curves.  Each curve is an oriented closed curve with a base point, stored
as the cyclic sequence of crossing ids met after the base point.  Crossings
have a kind and a sign:

* ``"ab"`` joins an alpha and a beta curve, sign taken in the order (alpha, beta);
* ``"aL"`` joins an alpha and a link curve, order (alpha, link);
* ``"bL"`` joins a link and a beta curve, order (link, beta).

Diagrams are treated as values: every operation returns a new diagram.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import InputError, InvalidDiagram

KINDS = ("ab", "aL", "bL")
# curve families meeting at each crossing kind, in sign order
KIND_FAMILIES = {"ab": ("alpha", "beta"), "aL": ("alpha", "link"), "bL": ("link", "beta")}


@dataclass(frozen=True)
class Crossing:
    id: str
    kind: str
    sign: int

    @property
    def eta(self) -> int:
        """Exponent of the antipode placed on this crossing: 0 if positive, 1 if negative."""
        return 0 if self.sign > 0 else 1


@dataclass(frozen=True)
class Curve:
    id: str
    seq: tuple[str, ...] = ()


@dataclass(frozen=True)
class HeegaardLinkDiagram:
    genus: int
    alpha: tuple[Curve, ...]
    beta: tuple[Curve, ...]
    links: tuple[Curve, ...] = ()
    crossings: dict = field(default_factory=dict, compare=True, hash=False)

    # lookups ----------------------------------------------------------
    def family(self, curve_id: str) -> str:
        for fam in ("alpha", "beta", "links"):
            if any(c.id == curve_id for c in getattr(self, fam)):
                return "link" if fam == "links" else fam
        raise InputError(f"no curve {curve_id!r}")

    def curve(self, curve_id: str) -> Curve:
        for c in self.all_curves():
            if c.id == curve_id:
                return c
        raise InputError(f"no curve {curve_id!r}")

    def all_curves(self) -> tuple[Curve, ...]:
        return self.alpha + self.beta + self.links

    def crossing(self, cid: str) -> Crossing:
        try:
            return self.crossings[cid]
        except KeyError:
            raise InputError(f"no crossing {cid!r}") from None

    def endpoints(self, cid: str) -> list[tuple[str, int]]:
        """``(curve id, position)`` for each curve through the crossing."""
        return [(c.id, i) for c in self.all_curves() for i, x in enumerate(c.seq) if x == cid]

    def curves_of(self, cid: str) -> tuple[str, str]:
        """The two curves through a crossing, in the crossing's sign order."""
        kind = self.crossing(cid).kind
        first, second = KIND_FAMILIES[kind]
        ends = [c for c, _ in self.endpoints(cid)]
        if len(ends) != 2:
            raise InvalidDiagram(f"crossing {cid} lies on {len(ends)} curves")
        a, b = ends
        return (a, b) if self.family(a) == first else (b, a)

    def other_curve(self, cid: str, curve_id: str) -> str:
        a, b = self.curves_of(cid)
        return b if a == curve_id else a

    def link_ids(self) -> list[str]:
        return [c.id for c in self.links]

    # updates ----------------------------------------------------------
    def replace(self, curves: dict | None = None, crossings: dict | None = None, **kw) -> "HeegaardLinkDiagram":
        curves = curves or {}

        def upd(fam):
            return tuple(Curve(c.id, tuple(curves[c.id])) if c.id in curves else c for c in fam)

        return HeegaardLinkDiagram(
            kw.get("genus", self.genus),
            kw.get("alpha", upd(self.alpha)),
            kw.get("beta", upd(self.beta)),
            kw.get("links", upd(self.links)),
            dict(self.crossings if crossings is None else crossings),
        )

    def fresh_id(self, prefix: str, taken: set | None = None) -> str:
        used = set(self.crossings) | {c.id for c in self.all_curves()} | (taken or set())
        k = 0
        while f"{prefix}{k}" in used:
            k += 1
        return f"{prefix}{k}"

    # validation -------------------------------------------------------
    def validate(self) -> "HeegaardLinkDiagram":
        if self.genus < 0:
            raise InvalidDiagram("negative genus")
        if len(self.alpha) != self.genus or len(self.beta) != self.genus:
            raise InvalidDiagram(
                f"genus {self.genus} needs that many alpha and beta curves, got {len(self.alpha)} and {len(self.beta)}"
            )
        ids = [c.id for c in self.all_curves()]
        if len(set(ids)) != len(ids):
            raise InvalidDiagram("curve ids are not unique")
        seen: dict = {}
        for fam_name, fam in (("alpha", self.alpha), ("beta", self.beta), ("link", self.links)):
            for c in fam:
                if len(set(c.seq)) != len(c.seq):
                    twice = next(x for x in c.seq if c.seq.count(x) > 1)
                    raise InvalidDiagram(f"curve {c.id} lists crossing {twice} twice")
                for x in c.seq:
                    if x not in self.crossings:
                        raise InvalidDiagram(f"curve {c.id} references unknown crossing {x!r}")
                    seen.setdefault(x, []).append(fam_name)
        for cid, cr in self.crossings.items():
            if cr.id != cid:
                raise InvalidDiagram(f"crossing key {cid!r} does not match id {cr.id!r}")
            if cr.kind not in KINDS:
                raise InvalidDiagram(f"crossing {cid} has unknown kind {cr.kind!r}")
            if cr.sign not in (1, -1):
                raise InvalidDiagram(f"crossing {cid} has sign {cr.sign!r}")
            fams = seen.get(cid, [])
            if sorted(fams) != sorted(KIND_FAMILIES[cr.kind]):
                raise InvalidDiagram(f"crossing {cid} of kind {cr.kind} lies on curves of type {fams}")
        return self

    # serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "alpha": [{"id": c.id, "seq": list(c.seq)} for c in self.alpha],
            "beta": [{"id": c.id, "seq": list(c.seq)} for c in self.beta],
            "links": [{"id": c.id, "seq": list(c.seq)} for c in self.links],
            "crossings": [{"id": x.id, "kind": x.kind, "sign": x.sign} for x in self.crossings.values()],
        }

    @classmethod
    def from_json(cls, obj) -> "HeegaardLinkDiagram":
        try:
            curves = {
                fam: tuple(Curve(str(c["id"]), tuple(str(x) for x in c["seq"])) for c in obj.get(fam, []))
                for fam in ("alpha", "beta", "links")
            }
            crossings = {}
            for x in obj.get("crossings", []):
                cid = str(x["id"])
                if cid in crossings:
                    raise InvalidDiagram(f"crossing {cid} listed twice")
                crossings[cid] = Crossing(cid, str(x["kind"]), int(x["sign"]))
            genus = int(obj["genus"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidDiagram(f"malformed diagram: {exc}") from exc
        return cls(genus, curves["alpha"], curves["beta"], curves["links"], crossings).validate()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def summary(self) -> str:
        kinds = {k: sum(1 for x in self.crossings.values() if x.kind == k) for k in KINDS}
        return (
            f"genus {self.genus}, {len(self.links)} link component(s), "
            f"crossings: {kinds['ab']} alpha-beta, {kinds['aL']} alpha-link, {kinds['bL']} beta-link"
        )


def s3_diagram() -> HeegaardLinkDiagram:
    """Genus-one diagram of the three-sphere: one positive alpha-beta crossing."""
    return HeegaardLinkDiagram(1, (Curve("a0", ("x0",)),), (Curve("b0", ("x0",)),), (), {"x0": Crossing("x0", "ab", 1)})


def s1xs2_diagram() -> HeegaardLinkDiagram:
    """Genus-one diagram with disjoint alpha and beta curves."""
    return HeegaardLinkDiagram(1, (Curve("a0"),), (Curve("b0"),), (), {})


def lens_space_diagram(p: int) -> HeegaardLinkDiagram:
    """Genus-one diagram of L(p,1): alpha meets beta in ``p`` positive crossings in the same order."""
    if p < 0:
        raise InputError("p must be non-negative")
    ids = tuple(f"x{k}" for k in range(p))
    return HeegaardLinkDiagram(
        1, (Curve("a0", ids),), (Curve("b0", ids),), (), {x: Crossing(x, "ab", 1) for x in ids}
    )
