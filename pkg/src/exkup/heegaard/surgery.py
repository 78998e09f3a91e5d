"""From framed braid closures to Heegaard-Link diagrams, and surgery on link curves.

:func:`from_planar_link` starts from the genus-one diagram of the three-sphere
and adds one bridge gadget per crossing: a new alpha/beta pair ``A``, ``B``
meeting once, with the over-strand crossing ``A`` and the under-strand
crossing ``B``.  All three gadget crossings are positive for a positive
planar crossing; for a negative one the under-strand/``B`` crossing is
negative instead.

:func:`surgery` replaces a link component whose crossings are sorted (all
beta-link crossings, then all alpha-link crossings) by a new beta curve
through its alpha-link crossings and a new alpha curve through its beta-link
crossings.
"""

from __future__ import annotations

from ..errors import NoSuchComponent, NotSorted
from .diagram import Crossing, Curve, HeegaardLinkDiagram, s3_diagram
from .moves import basepoint, three_point, two_point_create
from .planar import PlanarLinkPresentation, framed_braid


def from_planar_link(P: PlanarLinkPresentation) -> HeegaardLinkDiagram:
    F = framed_braid(P)
    base = s3_diagram()
    alpha, beta = list(base.alpha), list(base.beta)
    crossings = dict(base.crossings)
    for t, letter in enumerate(F.word):
        p, o, u = f"p{t}", f"o{t}", f"u{t}"
        crossings[p] = Crossing(p, "ab", 1)
        crossings[o] = Crossing(o, "aL", 1)
        crossings[u] = Crossing(u, "bL", 1 if letter > 0 else -1)
        alpha.append(Curve(f"a{t + 1}", (p, o)))
        beta.append(Curve(f"b{t + 1}", (p, u)))
    links = []
    for c in range(P.n_components):
        seq = tuple(f"o{t}" if role == "over" else f"u{t}" for t, role in F.traversal(c))
        links.append(Curve(f"L{c}", seq))
    return HeegaardLinkDiagram(len(alpha), tuple(alpha), tuple(beta), tuple(links), crossings).validate()


def _link(E: HeegaardLinkDiagram, component) -> str:
    ids = E.link_ids()
    if isinstance(component, int):
        if not 0 <= component < len(ids):
            raise NoSuchComponent(f"no link component {component}")
        return ids[component]
    if component not in ids:
        raise NoSuchComponent(f"no link component {component!r}")
    return component


def _kinds(E, seq):
    return [E.crossing(c).kind for c in seq]


def is_sorted(E: HeegaardLinkDiagram, component) -> bool:
    """True when, read cyclically, the beta-link crossings form one block and the alpha-link ones another."""
    kinds = _kinds(E, E.curve(_link(E, component)).seq)
    changes = sum(1 for i in range(len(kinds)) if kinds[i] != kinds[i - 1])
    return changes <= 2


def _rotate_sorted(E, cid):
    seq = E.curve(cid).seq
    kinds = _kinds(E, seq)
    if len(set(kinds)) < 2:
        return E
    # start at the first beta-link crossing that follows an alpha-link one
    start = next(i for i in range(len(kinds)) if kinds[i] == "bL" and kinds[i - 1] == "aL")
    return basepoint(E, cid, start)


def sort_link_crossings(E: HeegaardLinkDiagram, component) -> HeegaardLinkDiagram:
    """Rearrange a link component into sorted form using only diagram moves.

    Each adjacent pair (alpha-link ``a`` then beta-link ``b``) is swapped by a
    finger move creating a bigon between the alpha curve through ``a`` and the
    beta curve through ``b``, followed by a triangle move.  Each swap costs two
    new alpha-beta crossings.
    """
    cid = _link(E, component)
    if is_sorted(E, cid):
        return _rotate_sorted(E, cid)
    while True:
        seq = E.curve(cid).seq
        kinds = _kinds(E, seq)
        i = next((k for k in range(len(seq) - 1) if kinds[k] == "aL" and kinds[k + 1] == "bL"), None)
        if i is None:
            return E
        a, b = seq[i], seq[i + 1]
        al, be = E.other_curve(a, cid), E.other_curve(b, cid)
        sa, sb = E.crossing(a).sign, E.crossing(b).sign
        a_pos = E.curve(al).seq.index(a) + 1
        b_idx = E.curve(be).seq.index(b)
        if sa == sb:
            E, (x, _) = two_point_create(E, al, a_pos, be, b_idx, sign=sb, order="reversed")
        else:
            E, (x, _) = two_point_create(E, al, a_pos, be, b_idx + 1, sign=sb, order="same")
        E = three_point(E, x, a, b)


def surgery(E: HeegaardLinkDiagram, component) -> HeegaardLinkDiagram:
    """Do surgery along a sorted link component (framing = blackboard framing)."""
    cid = _link(E, component)
    if not is_sorted(E, cid):
        raise NotSorted(f"link component {cid} is not sorted")
    E = _rotate_sorted(E, cid)
    seq = E.curve(cid).seq
    to_beta = tuple(c for c in seq if E.crossing(c).kind == "aL")
    to_alpha = tuple(c for c in seq if E.crossing(c).kind == "bL")
    new_a = E.fresh_id("a")
    new_b = E.fresh_id("b", {new_a})
    crossings = dict(E.crossings)
    for c in seq:
        x = crossings[c]
        crossings[c] = Crossing(x.id, "ab", x.sign)
    return HeegaardLinkDiagram(
        E.genus + 1,
        E.alpha + (Curve(new_a, to_alpha),),
        E.beta + (Curve(new_b, to_beta),),
        tuple(l for l in E.links if l.id != cid),
        crossings,
    ).validate()


def surgery_all(E: HeegaardLinkDiagram) -> HeegaardLinkDiagram:
    """Sort and do surgery on every link component in turn."""
    for cid in E.link_ids():
        E = surgery(sort_link_crossings(E, cid), cid)
    return E
