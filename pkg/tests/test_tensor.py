import itertools
import threading
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from exkup.errors import InvalidPlan, LegMismatch, ShapeMismatch
from exkup.tensor import (
    IN,
    OUT,
    ContractionPlan,
    Tensor,
    TensorNetwork,
    contract,
    contract_pair,
    contract_scalar,
    outer,
    plan_contraction,
    tensor_compose,
    trace_pairs,
)
from oracles import brute_contract

values = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def random_tensor(draw, legs):
    shape = [n for _, n in legs]
    data = {}
    for idx in itertools.product(*(range(n) for n in shape)):
        if draw(st.booleans()):
            data[idx] = draw(values)
    return Tensor(legs, data)


@st.composite
def networks(draw, max_edges=6):
    """Random closed or open networks with at most ``max_edges`` edges."""
    n_nodes = draw(st.integers(1, 4))
    nodes = []
    for _ in range(n_nodes):
        legs = [(draw(st.sampled_from([IN, OUT])), draw(st.integers(1, 2))) for _ in range(draw(st.integers(0, 3)))]
        nodes.append(legs)
    outs = [(n, l) for n, legs in enumerate(nodes) for l, (d, _) in enumerate(legs) if d == OUT]
    ins = [(n, l) for n, legs in enumerate(nodes) for l, (d, _) in enumerate(legs) if d == IN]
    edges = []
    used = set()
    for o in draw(st.permutations(outs)):
        if len(edges) >= max_edges:
            break
        cands = [i for i in ins if i not in used and nodes[i[0]][i[1]][1] == nodes[o[0]][o[1]][1]]
        if cands and draw(st.booleans()):
            i = draw(st.sampled_from(cands))
            used.add(i)
            edges.append((o, i))
    tensors = [random_tensor(draw, legs) for legs in nodes]
    net = TensorNetwork()
    for t in tensors:
        net.add(t)
    for (o, i) in edges:
        net.connect(o[0], o[1], i[0], i[1])
    return net, tensors, edges


def as_oracle(tensors, edges, free):
    nodes = [(t.shape, t.data) for t in tensors]
    return brute_contract(nodes, [(o, i) for o, i in edges], free)


@given(networks())
def test_contract_matches_brute_force(case):
    net, tensors, edges = case
    got = contract(net)
    assert got.data == as_oracle(tensors, edges, net.free_legs())


@given(networks(max_edges=5))
def test_plan_independence_random(case):
    net, _, _ = case
    base = contract(net)
    for order in itertools.islice(itertools.permutations(range(len(net.edges))), 30):
        assert contract(net, ContractionPlan.from_edge_order(order)) == base


@given(networks(), st.randoms(use_true_random=False))
def test_declared_free_order_is_respected(case, rnd):
    net, tensors, edges = case
    free = net.free_legs()
    rnd.shuffle(free)
    net.set_free_order(free)
    got = contract(net)
    assert got.data == as_oracle(tensors, edges, free)


def test_empty_network():
    net = TensorNetwork()
    plan = plan_contraction(net)
    assert plan.steps == [] and plan.cost == 0
    assert contract_scalar(net) == 1


def test_single_edge_plan():
    net = TensorNetwork()
    a = net.add(Tensor([(OUT, 2)], {(0,): 1, (1,): 2}))
    b = net.add(Tensor([(IN, 2)], {(0,): 3, (1,): 4}))
    net.connect(a, 0, b, 0)
    plan = plan_contraction(net)
    assert len(plan.steps) == 1
    assert contract_scalar(net, plan) == 11


def _chain(dims, seed=0):
    rng = np.random.default_rng(seed)
    net = TensorNetwork()
    ids = []
    for p, q in zip(dims, dims[1:]):
        arr = rng.integers(-2, 3, size=(p, q))
        ids.append(net.add(Tensor.from_dense([(IN, p), (OUT, q)], arr)))
    for a, b in zip(ids, ids[1:]):
        net.connect(a, 1, b, 0)
    return net


def _max_intermediate(net, order):
    plan = ContractionPlan.from_edge_order(order)
    contract(net, plan)
    return max(s.size for s in plan.steps)


def test_matrix_chain_plan_is_no_worse_than_best_order():
    net = _chain([2, 8, 8, 2])
    plan = plan_contraction(net)
    best = min(_max_intermediate(net, o) for o in itertools.permutations(range(len(net.edges))))
    assert max(s.size for s in plan.steps) <= best
    dense = np.ones((1, 1), dtype=object)
    for t in net.nodes:
        dense = dense @ t.to_dense() if dense.shape != (1, 1) else t.to_dense()
    assert contract(net).to_dense().tolist() == dense.tolist()


def test_plan_is_deterministic_under_threads():
    net = _chain([2, 3, 4, 3, 2, 5, 2], seed=3)
    ref = [(s.edges, s.size) for s in plan_contraction(net).steps]
    results = [None] * 8

    def work(i):
        results[i] = [(s.edges, s.size) for s in plan_contraction(net).steps]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == ref for r in results)


def test_leg_mismatch_direction_and_dimension():
    net = TensorNetwork()
    a = net.add(Tensor([(OUT, 2)]))
    b = net.add(Tensor([(OUT, 2)]))
    c = net.add(Tensor([(IN, 3)]))
    with pytest.raises(LegMismatch):
        net.connect(a, 0, b, 0)
    with pytest.raises(LegMismatch):
        net.connect(a, 0, c, 0)


def test_leg_cannot_be_joined_twice():
    net = TensorNetwork()
    a = net.add(Tensor([(OUT, 2)]))
    b = net.add(Tensor([(IN, 2), (IN, 2)]))
    net.connect(a, 0, b, 0)
    with pytest.raises(LegMismatch):
        net.connect(a, 0, b, 1)


def test_invalid_plan_rejected():
    net = _chain([2, 2, 2, 2])
    with pytest.raises(InvalidPlan):
        contract(net, ContractionPlan.from_edge_order([0]))
    with pytest.raises(InvalidPlan):
        contract(net, ContractionPlan.from_edge_order([0, 0, 1]))


def test_shape_checks():
    with pytest.raises(ShapeMismatch):
        Tensor([(IN, 2)], {(2,): 1})
    with pytest.raises(ShapeMismatch):
        Tensor([("sideways", 2)])
    with pytest.raises(ShapeMismatch):
        Tensor.from_dense([(IN, 2)], [1, 2, 3])


def test_dense_round_trip_and_zero_pruning():
    arr = np.array([[Fraction(1, 2), 0], [0, -3]], dtype=object)
    t = Tensor.from_dense([(IN, 2), (OUT, 2)], arr)
    assert t.data == {(0, 0): Fraction(1, 2), (1, 1): -3}
    assert t.to_dense().tolist() == arr.tolist()


def test_trace_and_outer():
    t = Tensor.from_dense([(IN, 2), (OUT, 2)], [[1, 2], [3, 4]])
    assert trace_pairs(t, [(1, 0)]).scalar() == 5
    o = outer(Tensor([(OUT, 2)], {(0,): 2}), Tensor([(IN, 3)], {(2,): 5}))
    assert o.data == {(0, 2): 10}


def test_contract_pair_matches_matrix_product():
    A = [[1, 2], [3, 4]]
    B = [[0, 1], [1, Fraction(1, 3)]]
    a = Tensor.from_dense([(IN, 2), (OUT, 2)], A)
    b = Tensor.from_dense([(IN, 2), (OUT, 2)], B)
    ab = contract_pair(a, [1], b, [0])
    assert ab.to_dense().tolist() == (np.array(A, dtype=object) @ np.array(B, dtype=object)).tolist()


def test_tensor_compose_leg_order():
    # a: (3,1) with labelled entries; b: (3,2)
    a = Tensor([(IN, 2)] * 3 + [(OUT, 2)], {(i, j, k, l): 1 + i + 2 * j + 4 * k + 8 * l
                                             for i in range(2) for j in range(2) for k in range(2) for l in range(2)})
    b = Tensor([(IN, 2)] * 3 + [(OUT, 2)] * 2, {(i, j, k, l, m): 1 + i + 3 * j + 5 * k + 7 * l + 11 * m
                                                  for i in range(2) for j in range(2) for k in range(2)
                                                  for l in range(2) for m in range(2)})
    c = tensor_compose(a, 0, b, 1)
    assert [d for d, _ in c.legs] == [IN] * 5 + [OUT] * 2
    for idx in itertools.product(range(2), repeat=7):
        b0, a0, a1, a2, b2, o0, o1 = idx
        want = sum(a.data[(a0, a1, a2, s)] * b.data[(b0, s, b2, o0, o1)] for s in range(2))
        assert c.data.get(idx, 0) == want


def test_tensor_compose_rejects_bad_legs():
    a = Tensor([(IN, 2), (OUT, 2)])
    b = Tensor([(IN, 3), (OUT, 2)])
    with pytest.raises(LegMismatch):
        tensor_compose(a, 0, b, 0)
    with pytest.raises(LegMismatch):
        tensor_compose(a, 1, b, 0)
