"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line naming its criterion, then
asserts.  Run directly with ``python3 tests/test_acceptance.py`` or through
pytest.
"""

import itertools
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from exkup.bracket import assemble, bracket, colored_state_sum, kuperberg
from exkup.double import check_quasitriangular, drinfeld_double
from exkup.errors import NotNormalizable
from exkup.groups import cyclic
from exkup.heegaard import (
    PlanarLinkPresentation,
    from_planar_link,
    lens_space_diagram,
    s1xs2_diagram,
    s3_diagram,
    stabilize,
    surgery_all,
)
from exkup.hennings import hkr_invariant, signature
from exkup.hopf import (
    HopfAlgebraData,
    build_group_algebra,
    check_axioms,
    check_integrals,
    dual,
    solve_integrals,
)
from exkup.reps import (
    abelian_double_irreps,
    check_double_rep,
    check_trace,
    group_characters,
    make_regular_rep,
    make_rho_R,
    trivial_rep,
)
from exkup.scalars import PrimeField
from exkup.tensor import IN, OUT, ContractionPlan, Tensor, TensorNetwork, contract, plan_contraction

from conftest import FLEET, double_of, group, group_algebra, integrals
from movegen import KINDS, prepare_cancel, try_move
from oracles import (
    brute_contract,
    count_pth_roots,
    hopf_link_table_oracle,
    presentation_hom_count,
    sturm_signature,
)


@pytest.fixture()
def report(capsys):
    def emit(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else "")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def planar(strands, word, framings):
    return PlanarLinkPresentation(strands, tuple(word), tuple(framings))


UNLINK_FRAMINGS = [0, 1, -1, 2]
LINKS = (
    [("unknot", planar(1, [], [f])) for f in (0, 1, -1)]
    + [("unlink", planar(2, [], [p, q])) for p in (0, 1, -1, 2) for q in (0, 1, -1, 2)]
    + [("hopf", planar(2, [1, 1], [0, 0])), ("trefoil", planar(2, [1, 1, 1], [1]))]
)


def _label(kind, P):
    return f"{kind}{list(P.framings)}"


# ----------------------------------------------------------------------
# 1


def _corrupt_antipode(H):
    d = H.dim
    wrong = {(a, (b + 1) % d): v for (a, b), v in H.S.data.items()}
    return HopfAlgebraData(d, H.M, H.unit, H.Delta, H.counit, Tensor(H.S.legs, wrong), labels=H.labels)


def test_criterion_1_hopf_axioms(report):
    failures = []
    for name in FLEET:
        H = group_algebra(name)
        for label, A in (("k[G]", H), ("dual", dual(H)), ("double", double_of(name).hopf)):
            if not check_axioms(A).ok:
                failures.append(f"{name} {label}")
        mutant = check_axioms(_corrupt_antipode(H))
        anti = mutant.get("antipode")
        if mutant.ok or anti.ok or anti.witness is None:
            failures.append(f"{name} mutant not caught")
    report(1, "Hopf axioms for k[G], duals, doubles; antipode mutants caught", not failures, ", ".join(failures))


# ----------------------------------------------------------------------
# 2


def test_criterion_2_integrals(report):
    failures = []
    for name in FLEET:
        H, ip = group_algebra(name), integrals(name)
        if H.pair(ip.mu, ip.e) != 1 or not check_integrals(H, ip):
            failures.append(f"{name} mu(e)")
        D = double_of(name)
        ipD = D.integrals_from(ip)
        if D.hopf.pair(ipD.mu, ipD.e) != 1 or not check_integrals(D.hopf, ipD):
            failures.append(f"{name} lambda_D(ell_D)")
    try:
        solve_integrals(build_group_algebra(cyclic(2), PrimeField(2)))
        failures.append("GF(2) did not raise")
    except NotNormalizable:
        pass
    report(2, "mu(e) = 1, lambda_D(ell_D) = 1, GF(2) NotNormalizable", not failures, ", ".join(failures))


# ----------------------------------------------------------------------
# 3


def test_criterion_3_quasitriangular_ribbon(report):
    failures = []
    for name in FLEET:
        D = double_of(name)
        H = D.hopf
        if not check_quasitriangular(D.quasitriangular).ok:
            failures.append(f"{name} R axioms")
        u, u_inv = D.u, D.u_inv
        if H.mul(u, u_inv) != H.one() or H.antipode(u) != u:
            failures.append(f"{name} u")
        for x in range(H.dim):
            s2 = H.antipode(H.antipode(H.basis(x)))
            if H.mul_many(u, H.basis(x), u_inv) != s2:
                failures.append(f"{name} S^2 at {x}")
                break
        ipD = D.integrals_from(integrals(name))
        if H.pair(ipD.mu, u) != 1 or H.pair(ipD.mu, u_inv) != 1:
            failures.append(f"{name} mu_D(u)")
    report(3, "R_D axioms, u = S(u), S^2 = conjugation by u, mu_D(u^+-1) = 1", not failures, ", ".join(failures))


# ----------------------------------------------------------------------
# 4


def _move_algebras():
    out = []
    for label, H in (("k[Z/3]", group_algebra("Z3")), ("k^S3", dual(group_algebra("S3")))):
        ip = solve_integrals(H)
        D = drinfeld_double(H, ip)
        out.append((label, H, ip, [("regular", make_regular_rep(D, ip)), ("trivial", trivial_rep(H))]))
    return out


def test_criterion_4_move_invariance(report):
    algebras = _move_algebras()

    def values(E):
        return [bracket(E, H, rep, ip) for _, H, ip, reps in algebras for _, rep in reps]

    bases = [planar(2, [1, 1], [0, 0]), planar(2, [1, 1, 1], [0]), planar(1, [], [1]), planar(2, [1, -1], [1, 0])]
    counts = {k: 0 for k in KINDS}
    failures = []
    rng = random.Random(2024)
    for kind in KINDS:
        attempt = 0
        while counts[kind] < 3 and attempt < 60:
            E = from_planar_link(bases[attempt % len(bases)])
            attempt += 1
            warm = try_move(E, rng.choice(["two_point_create", "handle_slide", "basepoint"]), rng)
            if warm:
                E = warm[1]
            if kind == "two_point_cancel":
                E, _ = prepare_cancel(E, rng)
            if kind == "destabilize":
                E, _ = stabilize(E)
            r = try_move(E, kind, rng)
            if r is None:
                continue
            desc, E2 = r
            E2.validate()
            if values(E2) != values(E):
                failures.append(desc)
            counts[kind] += 1
    short = [k for k, n in counts.items() if n < 3]
    detail = ", ".join(f"{k}={n}" for k, n in counts.items())
    ok = not failures and not short
    report(4, "bracket invariant under >= 3 instances of every move, 2 algebras x 2 colorings", ok,
           detail + ("; changed: " + ", ".join(failures) if failures else ""))


# ----------------------------------------------------------------------
# 5


def test_criterion_5_kuperberg_values(report):
    failures = []
    for name in FLEET:
        G, H, ip = group(name), group_algebra(name), integrals(name)
        cases = [("S3", s3_diagram(), 1), ("S1xS2", s1xs2_diagram(), G.order)]
        cases += [(f"L({p},1)", lens_space_diagram(p), count_pth_roots(G, p)) for p in range(2, 8)]
        for label, E, expected in cases:
            oracle = presentation_hom_count(E.to_json(), G)
            value = kuperberg(E, H, ip)
            if not (value == expected == oracle):
                failures.append(f"{name} {label}: {value} vs {expected}/{oracle}")
    report(5, "Kuperberg of S3, S1xS2, L(p,1) p=2..7 vs exhaustive enumeration", not failures, "; ".join(failures))


# ----------------------------------------------------------------------
# 6, 7, 8


@lru_cache(maxsize=None)
def _regular_bracket(name, idx):
    P = LINKS[idx][1]
    H, ip = group_algebra(name), integrals(name)
    return bracket(from_planar_link(P), H, make_regular_rep(double_of(name), ip), ip)


@lru_cache(maxsize=None)
def _surgery_kuperberg(name, idx):
    P = LINKS[idx][1]
    return kuperberg(surgery_all(from_planar_link(P)), group_algebra(name), integrals(name))


@lru_cache(maxsize=None)
def _hkr(name, idx):
    return hkr_invariant(LINKS[idx][1], double_of(name).ribbon(integrals(name))).value


def test_criterion_6_regular_bracket_is_surgery_kuperberg(report):
    failures = []
    for name in ("Z2", "Z3", "S3"):
        G = group(name)
        for idx, (kind, P) in enumerate(LINKS):
            lhs, rhs = _regular_bracket(name, idx), _surgery_kuperberg(name, idx)
            if lhs != rhs:
                failures.append(f"{name} {_label(kind, P)}: {lhs} != {rhs}")
            if kind == "unlink":
                oracle = count_pth_roots(G, P.framings[0]) * count_pth_roots(G, P.framings[1])
                if lhs != oracle:
                    failures.append(f"{name} {_label(kind, P)}: {lhs} != hom count {oracle}")
    report(6, "regular-rep bracket = Kuperberg of surgery (unlinks also = hom count)", not failures, "; ".join(failures))


def test_criterion_7_hkr_matches_both_routes(report):
    failures = []
    for name in ("Z2", "Z3", "S3"):
        for idx, (kind, P) in enumerate(LINKS):
            vals = (_regular_bracket(name, idx), _surgery_kuperberg(name, idx), _hkr(name, idx))
            if len(set(vals)) != 1:
                failures.append(f"{name} {_label(kind, P)}: bracket, kuperberg, hkr = {vals}")
    report(7, "regular-rep bracket = surgery Kuperberg = HKR over D(k[G])", not failures, "; ".join(failures))


def test_criterion_8_rho_r_bracket_is_hkr(report):
    failures = []
    for name in ("Z2", "Z3"):
        D = double_of(name)
        Hp = D.hopf
        ipp = D.integrals_from(integrals(name))
        rep = make_rho_R(D.quasitriangular, ipp)
        if not check_double_rep(Hp, rep).ok or not check_trace(Hp, rep).ok:
            failures.append(f"{name} rho_R fails its checks")
            continue
        for idx, (kind, P) in enumerate(LINKS):
            lhs = bracket(from_planar_link(P), Hp, rep, ipp)
            rhs = _hkr(name, idx)
            if lhs != rhs:
                failures.append(f"{name} {_label(kind, P)}: {lhs} != {rhs}")
    report(8, "rho_R bracket over D(k[G]) = HKR over D(k[G]), G = Z/2, Z/3", not failures, "; ".join(failures))


# ----------------------------------------------------------------------
# 9


def test_criterion_9_state_sum(report):
    failures = []
    unknot = from_planar_link(planar(1, [], [0]))
    setups = [("Z/2", cyclic(2), group_algebra("Z2")), ("Z/3", cyclic(3), build_group_algebra(cyclic(3), PrimeField(7)))]
    for label, G, H in setups:
        ip = solve_integrals(H)
        D = drinfeld_double(H, ip)
        for rep in abelian_double_irreps(G, H):
            if not check_double_rep(D, rep).ok or not check_trace(D, rep).get("trace property").ok:
                failures.append(f"{label} {rep.name} fails its checks")
            elif bracket(unknot, H, rep, ip) != 1:
                failures.append(f"{label} unknot {rep.name}")
    G, H, ip = group("Z2"), group_algebra("Z2"), integrals("Z2")
    chars = group_characters(G, H.field)
    table = hopf_link_table_oracle(G, chars)
    state = colored_state_sum(from_planar_link(planar(2, [1, 1], [0, 0])), H, abelian_double_irreps(G, H), ip)
    k = len(chars)
    for (i, j), val in state.terms.items():
        a, ka = divmod(i, k)
        b, kb = divmod(j, k)
        if val != table[(a, ka, b, kb)]:
            failures.append(f"Hopf link ({i},{j}): {val} != {table[(a, ka, b, kb)]}")
    if len(state.terms) != 16:
        failures.append("Hopf link table is not 4x4")
    report(9, "colored unknot = 1 for every 1-dim irrep (Z/2, Z/3); Hopf link table over D(k[Z/2])",
           not failures, "; ".join(failures))


# ----------------------------------------------------------------------
# 10


def test_criterion_10_signature(report):
    rng = random.Random(10)
    failures = []
    for _ in range(100):
        n = rng.randint(1, 6)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-5, 5)
        if signature(m) != sturm_signature(m):
            failures.append(str(m))
    exact = [
        ([[1, 0], [0, -1]], 0),
        ([[3, 0, 0], [0, 2, 0], [0, 0, -1]], 1),
        ([[0, 1], [1, 0]], 0),
        ([[0, 2, 0, 0], [2, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]], 0),
        ([[2, 1], [1, 2]], 2),
    ]
    for m, expected in exact:
        if signature(m) != expected:
            failures.append(f"{m} expected {expected}")
    report(10, "signature vs Sturm oracle on 100 random matrices; diagonal and hyperbolic cases", not failures,
           "; ".join(failures[:3]))


# ----------------------------------------------------------------------
# 11


def _random_network(rng, max_edges=6):
    while True:
        n_nodes = rng.randint(1, 4)
        legs = [[(rng.choice([IN, OUT]), rng.randint(1, 3)) for _ in range(rng.randint(0, 4))] for _ in range(n_nodes)]
        outs = [(n, l) for n, ls in enumerate(legs) for l, (d, _) in enumerate(ls) if d == OUT]
        ins = [(n, l) for n, ls in enumerate(legs) for l, (d, _) in enumerate(ls) if d == IN]
        rng.shuffle(outs)
        edges, used = [], set()
        for o in outs:
            cands = [i for i in ins if i not in used and legs[i[0]][i[1]][1] == legs[o[0]][o[1]][1]]
            if cands and len(edges) < max_edges and rng.random() < 0.8:
                i = rng.choice(cands)
                used.add(i)
                edges.append((o, i))
        if edges:
            break
    tensors = []
    for ls in legs:
        data = {}
        for idx in itertools.product(*(range(n) for _, n in ls)):
            if rng.random() < 0.7:
                data[idx] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        tensors.append(Tensor(ls, data))
    net = TensorNetwork()
    for t in tensors:
        net.add(t)
    for o, i in edges:
        net.connect(o[0], o[1], i[0], i[1])
    return net, tensors, edges


def _invariant_networks():
    H, ip = group_algebra("Z2"), integrals("Z2")
    rep = make_regular_rep(double_of("Z2"), ip)
    nets = [assemble(E, H, ip) for E in (s3_diagram(), s1xs2_diagram(), lens_space_diagram(2))]
    nets.append(assemble(from_planar_link(planar(1, [], [0])), H, ip, {"L0": rep}))
    return [n for n in nets if len(n.edges) <= 6]


def test_criterion_11_contraction_engine(report):
    rng = random.Random(11)
    failures = []
    checked = orders = 0
    cases = [_random_network(rng) for _ in range(40)]
    for net, tensors, edges in cases:
        oracle = brute_contract([(t.shape, t.data) for t in tensors], edges, net.free_legs())
        for perm in itertools.permutations(range(len(net.edges))):
            orders += 1
            if contract(net, ContractionPlan.from_edge_order(perm)).data != oracle:
                failures.append(f"network {checked} order {perm}")
                break
        checked += 1
    for net in _invariant_networks():
        ref = contract(net).scalar()
        for perm in itertools.permutations(range(len(net.edges))):
            orders += 1
            if contract(net, ContractionPlan.from_edge_order(perm)).scalar() != ref:
                failures.append(f"invariant network {checked} order {perm}")
                break
        checked += 1
    big = assemble(surgery_all(from_planar_link(planar(2, [1, 1, 1], [1]))), group_algebra("S3"), integrals("S3"))
    reference = plan_contraction(big).order
    with ThreadPoolExecutor(max_workers=8) as pool:
        plans = list(pool.map(lambda _: plan_contraction(big).order, range(8)))
        values = list(pool.map(lambda _: contract(big).scalar(), range(8)))
    if any(p != reference for p in plans):
        failures.append("plans differ across threads")
    if len(set(values)) != 1:
        failures.append("values differ across threads")
    report(11, "every edge order agrees on networks with <= 6 edges; plans identical across 8 threads",
           not failures, f"{checked} networks, {orders} orders" + ("; " + "; ".join(failures) if failures else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
