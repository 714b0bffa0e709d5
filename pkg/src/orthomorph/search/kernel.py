"""Compiled depth-first search cores.

Both cores walk positions in a fixed order and pick a value class for
each one. ``img[i, c]`` is the combined value produced when position
``i`` takes class ``c`` (``-1`` when the pair was filtered out); each
class may be used ``cap[c]`` times and each combined value at most once.

``dfs_mask`` packs the used combined values into a uint64 and needs
every value below 64. ``dfs_array`` keeps a boolean array instead.
"""
import numpy as np
from numba import njit

_ONE = np.uint64(1)


@njit(cache=True, nogil=True)
def _viable(img, capl, used, depth):
    # forward check: every later position still has a free (class, value)
    P, C = img.shape
    for q in range(depth + 1, P):
        ok = False
        for d in range(C):
            z = img[q, d]
            if z >= 0 and capl[d] > 0 and (used >> np.uint64(z)) & _ONE == 0:
                ok = True
                break
        if not ok:
            return False
    return True


@njit(cache=True, nogil=True)
def _viable_array(img, capl, used, depth):
    P, C = img.shape
    for q in range(depth + 1, P):
        ok = False
        for d in range(C):
            z = img[q, d]
            if z >= 0 and capl[d] > 0 and not used[z]:
                ok = True
                break
        if not ok:
            return False
    return True


@njit(cache=True, nogil=True)
def _grow(store, n_stored):
    bigger = np.empty((max(1, 2 * store.shape[0]), store.shape[1]), np.int64)
    bigger[:n_stored] = store[:n_stored]
    return bigger


@njit(cache=True, nogil=True)
def dfs_mask(img, cap, root_ok, stop_after, max_store, node_budget, forward_check, stop):
    """Returns (count, nodes, complete, store, n_stored)."""
    P, C = img.shape
    choice = np.full(P, -1, np.int64)
    capl = cap.copy()
    used = np.uint64(0)
    store = np.empty((min(max_store, 1024) if max_store > 0 else 0, P), np.int64)
    n_stored = 0
    count = 0
    nodes = 0
    depth = 0
    complete = True
    steps = 0
    if P == 0:
        return 1, 0, True, store, 0
    while depth >= 0:
        if depth == P:
            count += 1
            if n_stored < max_store:
                if n_stored == store.shape[0]:
                    store = _grow(store, n_stored)
                store[n_stored] = choice
                n_stored += 1
            if stop_after > 0 and count >= stop_after:
                complete = False
                stop[0] = 1
                break
            depth -= 1
            continue
        c = choice[depth]
        if c >= 0:
            capl[c] += 1
            used ^= _ONE << np.uint64(img[depth, c])
        c += 1
        found = False
        while c < C:
            y = img[depth, c]
            if y >= 0 and capl[c] > 0 and (used >> np.uint64(y)) & _ONE == 0:
                if depth > 0 or root_ok[c]:
                    nodes += 1
                    capl[c] -= 1
                    used |= _ONE << np.uint64(y)
                    if not forward_check or _viable(img, capl, used, depth):
                        found = True
                        break
                    capl[c] += 1
                    used ^= _ONE << np.uint64(y)
            c += 1
        steps += 1
        if nodes > node_budget or ((steps & 4095) == 0 and stop[0] != 0):
            complete = False
            break
        if found:
            choice[depth] = c
            depth += 1
            if depth < P:
                choice[depth] = -1
        else:
            choice[depth] = -1
            depth -= 1
    return count, nodes, complete, store, n_stored


@njit(cache=True, nogil=True)
def dfs_array(img, cap, root_ok, stop_after, max_store, node_budget, forward_check, stop, n):
    P, C = img.shape
    choice = np.full(P, -1, np.int64)
    capl = cap.copy()
    used = np.zeros(n, np.bool_)
    store = np.empty((min(max_store, 1024) if max_store > 0 else 0, P), np.int64)
    n_stored = 0
    count = 0
    nodes = 0
    depth = 0
    complete = True
    steps = 0
    if P == 0:
        return 1, 0, True, store, 0
    while depth >= 0:
        if depth == P:
            count += 1
            if n_stored < max_store:
                if n_stored == store.shape[0]:
                    store = _grow(store, n_stored)
                store[n_stored] = choice
                n_stored += 1
            if stop_after > 0 and count >= stop_after:
                complete = False
                stop[0] = 1
                break
            depth -= 1
            continue
        c = choice[depth]
        if c >= 0:
            capl[c] += 1
            used[img[depth, c]] = False
        c += 1
        found = False
        while c < C:
            y = img[depth, c]
            if y >= 0 and capl[c] > 0 and not used[y]:
                if depth > 0 or root_ok[c]:
                    nodes += 1
                    capl[c] -= 1
                    used[y] = True
                    if not forward_check or _viable_array(img, capl, used, depth):
                        found = True
                        break
                    capl[c] += 1
                    used[y] = False
            c += 1
        steps += 1
        if nodes > node_budget or ((steps & 4095) == 0 and stop[0] != 0):
            complete = False
            break
        if found:
            choice[depth] = c
            depth += 1
            if depth < P:
                choice[depth] = -1
        else:
            choice[depth] = -1
            depth -= 1
    return count, nodes, complete, store, n_stored
