import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from enclosure import _jit
from enclosure._kernels import max_flow


def forward_network(draw_caps, nv):
    cap = np.zeros((nv, nv), dtype=np.int64)
    for (u, v), c in draw_caps.items():
        cap[min(u, v), max(u, v)] = c
    return cap


networks = st.integers(2, 9).flatmap(lambda nv: st.tuples(
    st.just(nv),
    st.dictionaries(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)).filter(lambda p: p[0] != p[1]),
                    st.integers(0, 5), max_size=30)))


@settings(max_examples=150, deadline=None)
@given(networks)
def test_max_flow_matches_scipy(data):
    nv, caps = data
    cap = forward_network(caps, nv)
    value, flow = max_flow(cap, 0, nv - 1)
    assert value == maximum_flow(csr_matrix(cap.astype(np.int32)), 0, nv - 1).flow_value
    assert (flow >= 0).all() and (flow <= cap).all()
    net = flow.sum(axis=0) - flow.sum(axis=1)
    assert net[nv - 1] == value and net[0] == -value
    assert (net[1:nv - 1] == 0).all()


def test_max_flow_small_network():
    cap = np.array([[0, 3, 2, 0], [0, 0, 1, 2], [0, 0, 0, 3], [0, 0, 0, 0]], dtype=np.int64)
    value, flow = max_flow(cap, 0, 3)
    assert value == 5
    assert flow[0, 1] + flow[0, 2] == 5


@pytest.mark.skipif(not _jit.USE_NUMBA, reason="numba disabled")
def test_compiled_and_python_max_flow_agree():
    rng = np.random.default_rng(0)
    for _ in range(20):
        cap = np.triu(rng.integers(0, 4, size=(7, 7)), 1).astype(np.int64)
        a = max_flow(cap, 0, 6)
        b = max_flow.py_func(cap, 0, 6)
        assert a[0] == b[0] and np.array_equal(a[1], b[1])


def test_flag_disables_numba():
    code = "from enclosure import _jit, _kernels; print(_jit.USE_NUMBA, hasattr(_kernels.max_flow, 'py_func'))"
    env = dict(os.environ, ENCLOSE_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "False"]


ORACLE_SCRIPT = """
import json
from enclosure.decomp import Decomposition
from enclosure.graphcore import Multigraph
from enclosure.oracle import oracle_exists
cases = json.loads(input())
out = []
for n, classes, mu, m, mode in cases:
    a = Decomposition([Multigraph.from_edges(n, c) for c in classes])
    r = oracle_exists(a, mu, m, mode)
    out.append([r.verdict.value, r.nodes, r.witness.edge_lists() if r.witness else None])
print(json.dumps(out))
"""


def test_oracle_same_with_and_without_numba():
    cases = [
        [3, [[[0, 1]], [[1, 2]], [[0, 2]]], 2, 1, "hamiltonian"],
        [3, [[[0, 1], [1, 2]], [[0, 2]], []], 2, 1, "hamiltonian"],
        [4, [[[0, 1], [1, 2], [2, 3], [0, 3]], [[0, 2]], [[1, 3]], [], []], 2, 2, "twofactor"],
    ]
    results = []
    for flag in ("0", "1"):
        env = dict(os.environ, ENCLOSE_NUMBA=flag)
        proc = subprocess.run([sys.executable, "-c", ORACLE_SCRIPT], input=json.dumps(cases), env=env,
                              capture_output=True, text=True, check=True, timeout=300)
        results.append(json.loads(proc.stdout))
    assert results[0] == results[1]
    assert [r[0] for r in results[0]] == ["yes", "yes", "yes"]
