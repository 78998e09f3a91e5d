"""Moves on Heegaard-Link diagrams.

Each move checks its combinatorial preconditions, raising
:class:`PreconditionViolated` with the reason, and returns a new diagram.
Moves that create crossings or curves also return the new ids.
"""

from __future__ import annotations

import json

from ..errors import InputError, PreconditionViolated
from .diagram import KIND_FAMILIES, Crossing, Curve, HeegaardLinkDiagram


def _kind_for(fam_p: str, fam_q: str) -> str:
    for kind, fams in KIND_FAMILIES.items():
        if set(fams) == {fam_p, fam_q}:
            return kind
    raise PreconditionViolated(f"curves of type {fam_p} and {fam_q} cannot cross")


def _follows(seq, a, b) -> bool:
    """True if ``b`` comes right after ``a`` in the cyclic sequence."""
    n = len(seq)
    i = seq.index(a)
    return n > 1 and seq[(i + 1) % n] == b


def _adjacent(seq, a, b) -> bool:
    return _follows(seq, a, b) or _follows(seq, b, a)


def _raw_sign(E: HeegaardLinkDiagram, cid: str, first: str, second: str) -> int:
    """Sign of the crossing measured in the order (first, second)."""
    a, _ = E.curves_of(cid)
    s = E.crossing(cid).sign
    return s if a == first else -s


def _common_curve(E, c1, c2):
    common = set(E.curves_of(c1)) & set(E.curves_of(c2))
    if len(common) != 1:
        raise PreconditionViolated(f"crossings {c1} and {c2} must share exactly one curve")
    return common.pop()


# ----------------------------------------------------------------------


def basepoint(E: HeegaardLinkDiagram, curve: str, offset: int) -> HeegaardLinkDiagram:
    """Move the base point of ``curve`` forward past ``offset`` crossings."""
    seq = E.curve(curve).seq
    if not seq:
        return E
    k = offset % len(seq)
    return E.replace({curve: seq[k:] + seq[:k]})


def reverse(E: HeegaardLinkDiagram, curve: str) -> HeegaardLinkDiagram:
    """Reverse the orientation of a curve; every crossing on it changes sign."""
    seq = E.curve(curve).seq
    crossings = dict(E.crossings)
    for cid in seq:
        c = crossings[cid]
        crossings[cid] = Crossing(c.id, c.kind, -c.sign)
    return E.replace({curve: tuple(reversed(seq))}, crossings)


def two_point_create(E: HeegaardLinkDiagram, p: str, p_pos: int, q: str, q_pos: int, sign: int = 1,
                     order: str = "reversed"):
    """Finger move: create two crossings between curves ``p`` and ``q``.

    They are inserted into ``p`` at ``p_pos`` as ``(c1, c2)`` and into ``q`` at
    ``q_pos`` as ``(c2, c1)`` (``order="reversed"``) or ``(c1, c2)``
    (``order="same"``); ``c1`` gets ``sign`` and ``c2`` its opposite.
    Returns the new diagram and ``(c1, c2)``.
    """
    if p == q:
        raise PreconditionViolated("a curve cannot cross itself")
    if sign not in (1, -1):
        raise PreconditionViolated("sign must be +1 or -1")
    if order not in ("reversed", "same"):
        raise PreconditionViolated("order must be 'reversed' or 'same'")
    kind = _kind_for(E.family(p), E.family(q))
    sp, sq = E.curve(p).seq, E.curve(q).seq
    if not (0 <= p_pos <= len(sp) and 0 <= q_pos <= len(sq)):
        raise PreconditionViolated("insertion position out of range")
    c1 = E.fresh_id("x")
    c2 = E.fresh_id("x", {c1})
    crossings = dict(E.crossings)
    # the sign convention is in the kind's order; flip if p is the second curve
    first = KIND_FAMILIES[kind][0]
    s1 = sign if E.family(p) == first else -sign
    crossings[c1] = Crossing(c1, kind, s1)
    crossings[c2] = Crossing(c2, kind, -s1)
    new_q = (c2, c1) if order == "reversed" else (c1, c2)
    E2 = E.replace({p: sp[:p_pos] + (c1, c2) + sp[p_pos:], q: sq[:q_pos] + new_q + sq[q_pos:]}, crossings)
    return E2, (c1, c2)


def two_point_cancel(E: HeegaardLinkDiagram, c1: str, c2: str) -> HeegaardLinkDiagram:
    """Remove a bigon: two crossings between the same pair of curves, adjacent
    on both and of opposite sign."""
    if c1 == c2:
        raise PreconditionViolated("need two distinct crossings")
    pair1, pair2 = set(E.curves_of(c1)), set(E.curves_of(c2))
    if pair1 != pair2:
        raise PreconditionViolated(f"{c1} and {c2} do not join the same two curves")
    if E.crossing(c1).sign == E.crossing(c2).sign:
        raise PreconditionViolated(f"{c1} and {c2} have the same sign")
    for cur in pair1:
        if not _adjacent(E.curve(cur).seq, c1, c2):
            raise PreconditionViolated(f"{c1} and {c2} are not adjacent on {cur}")
    crossings = {k: v for k, v in E.crossings.items() if k not in (c1, c2)}
    return E.replace({cur: tuple(x for x in E.curve(cur).seq if x not in (c1, c2)) for cur in pair1}, crossings)


def _orders(seq, first, second):
    """Possible values of s: +1 if ``first`` is met right before ``second``,
    -1 if right after (both when the curve meets only these two)."""
    out = []
    if _follows(seq, first, second):
        out.append(1)
    if _follows(seq, second, first):
        out.append(-1)
    return out


def three_point(E: HeegaardLinkDiagram, x: str, y: str, z: str) -> HeegaardLinkDiagram:
    """Pass one curve across the crossing of two others (a triangle move).

    ``x`` joins curves A and B, ``y`` joins A and C, ``z`` joins B and C, and
    the three form an empty triangle: each pair is adjacent on its common
    curve.  The move reverses the three adjacencies and keeps all signs.  The
    signs must be those of a genuine planar triangle for the given orders.
    """
    if len({x, y, z}) != 3:
        raise PreconditionViolated("need three distinct crossings")
    A = _common_curve(E, x, y)
    B = _common_curve(E, x, z)
    C = _common_curve(E, y, z)
    if len({A, B, C}) != 3:
        raise PreconditionViolated("the three crossings must lie on three distinct curves")
    sA = _orders(E.curve(A).seq, y, x)
    sB = _orders(E.curve(B).seq, x, z)
    sC = _orders(E.curve(C).seq, y, z)
    if not (sA and sB and sC):
        raise PreconditionViolated("the crossings are not pairwise adjacent along their common curves")
    rx = _raw_sign(E, x, A, B)
    ry = _raw_sign(E, y, A, C)
    rz = _raw_sign(E, z, B, C)
    # directions along the triangle's sides: d_A ~ sA (x - y), d_B ~ sB (z - x),
    # d_C ~ sC (z - y); orientation o of the triangle gives
    # rx = sA sB o, ry = sA sC o, rz = -sB sC o.
    if not any(ry == b * c * rx and rz == -a * c * rx for a in sA for b in sB for c in sC):
        raise PreconditionViolated("crossing signs do not fit a planar triangle with these orders")

    def swap(seq, u, v):
        seq = list(seq)
        i, j = seq.index(u), seq.index(v)
        seq[i], seq[j] = seq[j], seq[i]
        return tuple(seq)

    return E.replace(
        {A: swap(E.curve(A).seq, x, y), B: swap(E.curve(B).seq, x, z), C: swap(E.curve(C).seq, y, z)}
    )


def handle_slide(E: HeegaardLinkDiagram, slider: str, over: str, position: int):
    """Slide ``slider`` over ``over``: splice a parallel copy of ``over`` into ``slider``.

    Allowed: alpha over alpha, beta over beta, and a link over an alpha or beta
    curve that meets no link.  For every crossing ``c`` of ``over`` (in order
    from its base point) a copy ``c'`` with the same sign is created between
    ``slider`` and the curve ``K`` through ``c``.  On ``K`` the copy sits just
    after ``c`` when ``c`` is positive and just before it when negative; on
    ``slider`` the copies form one block at ``position``.
    Returns the new diagram and the list of new crossing ids.
    """
    if slider == over:
        raise PreconditionViolated("a curve cannot slide over itself")
    fs, fo = E.family(slider), E.family(over)
    if fo == "link":
        raise PreconditionViolated("cannot slide over a link component")
    if fs == "link":
        if any(E.crossing(c).kind != "ab" for c in E.curve(over).seq):
            raise PreconditionViolated(f"{over} meets a link component")
    elif fs != fo:
        raise PreconditionViolated("alpha curves slide over alpha curves and beta over beta")
    sseq = E.curve(slider).seq
    if not 0 <= position <= len(sseq):
        raise PreconditionViolated("insertion position out of range")
    crossings = dict(E.crossings)
    curves = {c.id: list(c.seq) for c in E.all_curves()}
    taken: set = set()
    block = []
    for c in E.curve(over).seq:
        K = E.other_curve(c, over)
        cr = E.crossing(c)
        new = E.fresh_id("x", taken)
        taken.add(new)
        kind = _kind_for(E.family(K), fs)
        # same geometric direction as ``over``: measure the sign in (K, over)
        # order and transfer it to (K, slider)
        raw = _raw_sign(E, c, K, over)
        first = KIND_FAMILIES[kind][0]
        sign = raw if E.family(K) == first else -raw
        crossings[new] = Crossing(new, kind, sign)
        kseq = curves[K]
        i = kseq.index(c)
        kseq.insert(i + 1 if cr.sign > 0 else i, new)
        block.append(new)
    curves[slider] = list(sseq[:position]) + block + list(sseq[position:])
    E2 = E.replace({k: tuple(v) for k, v in curves.items()}, crossings)
    return E2, block


def stabilize(E: HeegaardLinkDiagram):
    """Add a new alpha/beta pair meeting once positively.  Returns (diagram, (alpha, beta, crossing))."""
    a = E.fresh_id("a")
    b = E.fresh_id("b", {a})
    x = E.fresh_id("x", {a, b})
    crossings = dict(E.crossings)
    crossings[x] = Crossing(x, "ab", 1)
    E2 = HeegaardLinkDiagram(
        E.genus + 1, E.alpha + (Curve(a, (x,)),), E.beta + (Curve(b, (x,)),), E.links, crossings
    )
    return E2, (a, b, x)


def destabilize(E: HeegaardLinkDiagram, a: str, b: str) -> HeegaardLinkDiagram:
    """Remove an alpha/beta pair that meet exactly once and meet nothing else."""
    if E.family(a) != "alpha" or E.family(b) != "beta":
        raise PreconditionViolated("need an alpha curve and a beta curve")
    sa, sb = E.curve(a).seq, E.curve(b).seq
    if len(sa) != 1 or sa != sb:
        raise PreconditionViolated(f"{a} and {b} must meet exactly once and meet nothing else")
    crossings = {k: v for k, v in E.crossings.items() if k != sa[0]}
    return HeegaardLinkDiagram(
        E.genus - 1,
        tuple(c for c in E.alpha if c.id != a),
        tuple(c for c in E.beta if c.id != b),
        E.links,
        crossings,
    )


# ----------------------------------------------------------------------


def parse_move(spec: str) -> dict:
    """Parse a move given as JSON or as ``name:arg:arg...``."""
    spec = spec.strip()
    if spec.startswith("{"):
        try:
            obj = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad move JSON: {exc}") from exc
        if "move" not in obj:
            raise InputError("move JSON needs a 'move' key")
        return obj
    name, *args = spec.split(":")
    try:
        if name == "basepoint":
            return {"move": name, "curve": args[0], "offset": int(args[1])}
        if name == "reverse":
            return {"move": name, "curve": args[0]}
        if name == "two_point_create":
            out = {"move": name, "p": args[0], "p_pos": int(args[1]), "q": args[2], "q_pos": int(args[3])}
            if len(args) > 4:
                out["sign"] = int(args[4])
            if len(args) > 5:
                out["order"] = args[5]
            return out
        if name == "two_point_cancel":
            return {"move": name, "c1": args[0], "c2": args[1]}
        if name == "three_point":
            return {"move": name, "x": args[0], "y": args[1], "z": args[2]}
        if name == "handle_slide":
            return {"move": name, "slider": args[0], "over": args[1], "position": int(args[2])}
        if name == "stabilize":
            return {"move": name}
        if name == "destabilize":
            return {"move": name, "a": args[0], "b": args[1]}
    except (IndexError, ValueError) as exc:
        raise InputError(f"bad arguments for move {name!r}") from exc
    raise InputError(f"unknown move {name!r}")


def apply_move(E: HeegaardLinkDiagram, move) -> HeegaardLinkDiagram:
    """Apply a move given as a dict (see :func:`parse_move`) or a spec string."""
    if isinstance(move, str):
        move = parse_move(move)
    m = dict(move)
    name = m.pop("move")
    if name == "basepoint":
        return basepoint(E, m["curve"], m["offset"])
    if name == "reverse":
        return reverse(E, m["curve"])
    if name == "two_point_create":
        return two_point_create(E, **m)[0]
    if name == "two_point_cancel":
        return two_point_cancel(E, m["c1"], m["c2"])
    if name == "three_point":
        return three_point(E, m["x"], m["y"], m["z"])
    if name == "handle_slide":
        return handle_slide(E, m["slider"], m["over"], m["position"])[0]
    if name == "stabilize":
        return stabilize(E)[0]
    if name == "destabilize":
        return destabilize(E, m["a"], m["b"])
    raise InputError(f"unknown move {name!r}")
