"""Array kernels: integral max-flow and the resumable oracle search.

Everything here takes and returns plain int64 arrays so the same source runs
under numba or as ordinary Python (see ``_jit``).
"""

import numpy as np

from ._jit import jit

SEARCH_EXHAUSTED = 0
SEARCH_FOUND = 1
SEARCH_PAUSED = 2


@jit
def max_flow(cap, s, t):
    """Edmonds-Karp on a dense capacity matrix.

    Returns ``(value, flow)`` where ``flow[u, v]`` is the integral flow on the
    arc ``u -> v``. BFS scans neighbours in index order, so results are
    deterministic. Networks must not contain antiparallel arc pairs.
    """
    nv = cap.shape[0]
    res = cap.copy()
    parent = np.empty(nv, dtype=np.int64)
    queue = np.empty(nv, dtype=np.int64)
    value = 0
    while True:
        for i in range(nv):
            parent[i] = -1
        parent[s] = s
        head = 0
        tail = 1
        queue[0] = s
        while head < tail and parent[t] < 0:
            u = queue[head]
            head += 1
            for v in range(nv):
                if parent[v] < 0 and res[u, v] > 0:
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
        if parent[t] < 0:
            break
        push = res[parent[t], t]
        v = t
        while v != s:
            u = parent[v]
            if res[u, v] < push:
                push = res[u, v]
            v = u
        v = t
        while v != s:
            u = parent[v]
            res[u, v] -= push
            res[v, u] += push
            v = u
        value += push
    flow = cap - res
    for u in range(nv):
        for v in range(nv):
            if flow[u, v] < 0:
                flow[u, v] = 0
    return value, flow


@jit
def path_join(c, u, v, n_total, ham, deg, other_end, psize, undo, d):
    """Try to add edge ``uv`` to class ``c``; record undo data in ``undo[d]``.

    Classes are tracked as disjoint paths: ``other_end`` maps a path endpoint
    to the opposite endpoint and ``psize`` holds the vertex count there.
    Closing a path into a cycle is allowed except in Hamiltonian mode, where
    only a cycle through all ``n_total`` vertices may close.
    """
    if deg[c, u] >= 2 or deg[c, v] >= 2:
        return False
    if other_end[c, u] == v:
        if ham and psize[c, u] != n_total:
            return False
        undo[d, 0] = 1
    else:
        a = other_end[c, u]
        b = other_end[c, v]
        undo[d, 0] = 0
        undo[d, 1] = a
        undo[d, 2] = b
        undo[d, 3] = other_end[c, a]
        undo[d, 4] = other_end[c, b]
        undo[d, 5] = psize[c, a]
        undo[d, 6] = psize[c, b]
        size = psize[c, u] + psize[c, v]
        other_end[c, a] = b
        other_end[c, b] = a
        psize[c, a] = size
        psize[c, b] = size
    deg[c, u] += 1
    deg[c, v] += 1
    return True


@jit
def path_unjoin(c, u, v, deg, other_end, psize, undo, d):
    deg[c, u] -= 1
    deg[c, v] -= 1
    if undo[d, 0] == 0:
        a = undo[d, 1]
        b = undo[d, 2]
        other_end[c, b] = undo[d, 4]
        psize[c, b] = undo[d, 6]
        other_end[c, a] = undo[d, 3]
        psize[c, a] = undo[d, 5]


@jit
def oracle_search(slot_u, slot_v, n_total, k, ham, deg, other_end, psize,
                  assigned, signature, colour, undo, state, node_limit):
    """Depth-first colouring of the free edge slots; resumable.

    ``state[0]`` is the current depth and ``state[1]`` the running node count.
    Slots are ordered so parallel copies are adjacent; their colours are kept
    nondecreasing, and among untouched classes with equal ``signature`` only
    the lowest index is tried. Both cuts keep the lexicographically least
    solution reachable.
    """
    n_slots = slot_u.shape[0]
    d = state[0]
    nodes = state[1]
    stop = nodes + node_limit
    while True:
        if d == n_slots:
            state[0] = d
            state[1] = nodes
            return SEARCH_FOUND
        if d < 0:
            state[0] = d
            state[1] = nodes
            return SEARCH_EXHAUSTED
        if nodes >= stop:
            state[0] = d
            state[1] = nodes
            return SEARCH_PAUSED
        u = slot_u[d]
        v = slot_v[d]
        c = colour[d]
        if c >= 0:
            path_unjoin(c, u, v, deg, other_end, psize, undo, d)
            assigned[c] -= 1
            start = c + 1
        else:
            start = 0
            if d > 0 and slot_u[d - 1] == u and slot_v[d - 1] == v:
                start = colour[d - 1]
        chosen = -1
        for cc in range(start, k):
            if assigned[cc] == 0:
                twin = False
                for c2 in range(cc):
                    if assigned[c2] == 0 and signature[c2] == signature[cc]:
                        twin = True
                        break
                if twin:
                    continue
            if path_join(cc, u, v, n_total, ham, deg, other_end, psize, undo, d):
                chosen = cc
                break
        if chosen < 0:
            colour[d] = -1
            d -= 1
            continue
        assigned[chosen] += 1
        colour[d] = chosen
        nodes += 1
        d += 1
        if d < n_slots:
            colour[d] = -1
