"""Resumable DSATUR search over flat arrays.

The same function body runs interpreted (lists) or compiled with numba
(numpy arrays); both produce identical node counts.  All search state lives
in the arrays passed in, so a call that stops on its node quota can be
resumed by calling again with the same arrays.

state = [depth, phase, nodes, n_uncolored, used]
phase 0: entering a new search node at ``depth``
phase 1: trying the remaining colours of the vertex at ``depth``
"""

RUNNING = 0
SAT = 1
UNSAT = 2

try:  # pragma: no cover - exercised implicitly
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


def dsatur_kernel(indptr, indices, deg, k, color, count, mask, sat, sv, sc, su, state, quota):
    n = len(deg)
    full = (1 << k) - 1
    depth = state[0]
    phase = state[1]
    nodes = state[2]
    n_unc = state[3]
    used = state[4]
    stop_at = nodes + quota
    result = RUNNING
    while True:
        if phase == 0:
            if n_unc == 0:
                result = SAT
                break
            if nodes >= stop_at:
                break
            nodes += 1
            # most saturated, then highest degree, then lowest index
            best = -1
            bs = -1
            bd = -1
            for v in range(n):
                if color[v] < 0:
                    s = sat[v]
                    if s > bs or (s == bs and deg[v] > bd):
                        best = v
                        bs = s
                        bd = deg[v]
            sv[depth] = best
            sc[depth] = 0
            su[depth] = used
            phase = 1
        # phase 1: next colour for the vertex at this depth
        v = sv[depth]
        lim = su[depth] + 1
        if lim > k:
            lim = k
        c = sc[depth]
        descended = False
        while c < lim:
            if (mask[v] >> c) & 1:
                c += 1
                continue
            # assign v := c
            color[v] = c
            n_unc -= 1
            ok = True
            bit = 1 << c
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                idx = u * k + c
                count[idx] += 1
                if count[idx] == 1:
                    mask[u] |= bit
                    sat[u] += 1
                    if color[u] < 0 and mask[u] == full:
                        ok = False
            if ok:
                sc[depth] = c + 1
                used = su[depth]
                if c + 1 > used:
                    used = c + 1
                depth += 1
                phase = 0
                descended = True
                break
            # undo v := c
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                idx = u * k + c
                count[idx] -= 1
                if count[idx] == 0:
                    mask[u] &= ~bit
                    sat[u] -= 1
            color[v] = -1
            n_unc += 1
            c += 1
        if descended:
            continue
        # all colours failed at this depth: backtrack
        if depth == 0:
            result = UNSAT
            break
        depth -= 1
        v = sv[depth]
        c = sc[depth] - 1
        bit = 1 << c
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            idx = u * k + c
            count[idx] -= 1
            if count[idx] == 0:
                mask[u] &= ~bit
                sat[u] -= 1
        color[v] = -1
        n_unc += 1
        phase = 1
    state[0] = depth
    state[1] = phase
    state[2] = nodes
    state[3] = n_unc
    state[4] = used
    return result


dsatur_kernel_jit = njit(cache=True)(dsatur_kernel) if njit is not None else None
