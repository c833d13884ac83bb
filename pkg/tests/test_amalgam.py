import numpy as np
import pytest

from enclosure.amalgam import DetachmentPlan, build_H, check_Y, detach, hub_plan, restrict, verify_detachment
from enclosure.decomp import ClassKind, Decomposition
from enclosure.enclose import enclose
from enclosure.graphcore import Multigraph, complete_multigraph, component_count

from _support import decomposition, k4_cycle_instance, two_k3_paths


def triangle_and_singles():
    """2K_3 as a triangle plus three single edges (a valid input for m=2)."""
    return decomposition(3, [(0, 1), (1, 2), (0, 2)], [(0, 1)], [(1, 2)], [(0, 2)])


def test_check_Y_passes_for_paths():
    assert check_Y(two_k3_paths(), 1, 2)


def test_check_Y_too_many_paths():
    b = decomposition(4, [(0, 1), (2, 3)], [(0, 2), (1, 3), (1, 2)], [(0, 3)])
    rep = check_Y(b, 1, 1)
    assert any(f.startswith("Y2: class 0") for f in rep.failures)


def test_check_Y_class_count():
    b = decomposition(3, [(0, 1), (1, 2)], [(1, 2), (0, 2)], [(0, 2), (0, 1)], [])
    rep = check_Y(b, 1, 2)
    assert not rep and any(f.startswith("Y1") for f in rep.failures)


def test_build_H_paths():
    h = build_H(two_k3_paths(), 1, 2)
    assert (h.hub.sum(axis=1) == 2).all()
    assert (h.loops == 0).all()
    assert h.cycle_free == 3
    assert (h.graph().degrees()[:3] == 6).all() and h.graph().degree(3) == 6


def test_build_H_cycle_class_gets_loops():
    h = build_H(triangle_and_singles(), 2, 2)
    assert h.hub[0].sum() == 0 and h.loops[0] == 2
    assert list(h.loops) == [2, 0, 0, 0]
    assert h.loops.sum() == 2 * 1


def test_build_H_rejects_bad_input():
    with pytest.raises(ValueError):
        build_H(decomposition(3, [(0, 1)], [(1, 2)], [(0, 2)]), 1, 2)


def test_detach_single_vertex_is_identity():
    h = build_H(two_k3_paths(), 1, 2)
    g = detach(h)
    assert g.n == 4
    assert g.base == complete_multigraph(4, 2)
    assert all(k is ClassKind.HAMILTONIAN_CYCLE for k in g.kinds())
    assert all(c.edge_count() == 4 for c in g.classes)
    assert verify_detachment(g, h, exact=True)
    assert restrict(g, 3) == two_k3_paths()


def test_detach_two_vertices_turns_loops_into_parallel_edges():
    h = build_H(triangle_and_singles(), 2, 2)
    g = detach(h)
    assert g.base.multiplicity(3, 4) == 2
    assert g.base.is_loopless()
    rep = verify_detachment(g, h, hub_plan(3, 2), exact=True)
    assert rep, rep.failures
    assert all(k.is_two_factor for k in g.kinds())


def test_x3_violation_reported():
    h = build_H(triangle_and_singles(), 2, 2)
    classes = [c.copy() for c in detach(h).classes]
    classes[1].add_edge(3, 4)
    rep = verify_detachment(Decomposition(classes), h)
    assert any(f.startswith("X3") for f in rep.failures)


def _split_cycle(c: Multigraph, a: int, b: int) -> Multigraph:
    """Re-attach hub ends between split vertices ``a`` and ``b`` so the
    class falls apart; the amalgamated class is unchanged."""
    ends_a = [x for x in range(c.n) if x not in (a, b) for _ in range(c.multiplicity(a, x))]
    ends_b = [x for x in range(c.n) if x not in (a, b) for _ in range(c.multiplicity(b, x))]
    for x in ends_a:
        for y in ends_b:
            t = c.copy()
            t.remove_edge(a, x)
            t.remove_edge(b, y)
            t.add_edge(a, y)
            t.add_edge(b, x)
            if component_count(t) > component_count(c):
                return t
    raise AssertionError("no splitting swap")


def test_x5_violation_reported():
    cert = enclose(k4_cycle_instance(), 2, 2, "twofactor")
    g, h = cert.output, cert.amalgam
    j = next(i for i, c in enumerate(g.classes) if component_count(c) == 1 and c.multiplicity(4, 5) == 0)
    broken = Decomposition([_split_cycle(c, 4, 5) if i == j else c for i, c in enumerate(g.classes)])
    rep = verify_detachment(broken, h)
    assert any(f.startswith(f"X5: class {j}") for f in rep.failures)
    assert not any(f.startswith("class") for f in rep.failures)


def test_unsupported_plan():
    h = build_H(two_k3_paths(), 1, 2)
    with pytest.raises(ValueError):
        detach(h, DetachmentPlan(sigma=[2, 1, 1, 1], phi_map=[0, 0, 1, 2, 3]))


def test_hub_plan():
    plan = hub_plan(3, 2)
    assert plan.sigma == [1, 1, 1, 2]
    assert plan.preimage(3) == [3, 4]
    assert np.array_equal(plan.phi_map, [0, 1, 2, 3, 3])
