# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: bit-identical twins of the functions in ``pure.py``.

The random stream is the same SplitMix64 as ``.._rng.RandomStream``, redone
here in C so the hot loops never call back into Python.  Any change to the
pure versions must be mirrored exactly; the parity tests compare outputs
element-for-element across seeds.
"""

import numpy as np

from libc.stdint cimport int32_t, uint8_t, uint64_t

BACKEND_NAME = "compiled"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15UL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9UL
cdef uint64_t MIX2 = 0x94D049BB133111EBUL

cdef int DR[4]
cdef int DC[4]
DR[0] = -1; DR[1] = 1; DR[2] = 0; DR[3] = 0
DC[0] = 0; DC[1] = 0; DC[2] = 1; DC[3] = -1


cdef inline uint64_t _next_u64(uint64_t *state) noexcept nogil:
    cdef uint64_t z
    state[0] = state[0] + GOLDEN
    z = state[0]
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline uint64_t _below(uint64_t *state, uint64_t n) noexcept nogil:
    # Rejection sampling; draw-for-draw identical to RandomStream.below.
    cdef uint64_t rem, limit, u
    if n == 1:
        return 0
    rem = (0 - n) % n
    if rem == 0:
        return _next_u64(state) % n
    limit = 0 - rem
    while True:
        u = _next_u64(state)
        if u < limit:
            return u % n


cdef inline bint _blocked(const uint8_t[:, ::1] vwalls, const uint8_t[:, ::1] hwalls,
                          int r, int c, int d, int width, int height) noexcept nogil:
    cdef int nr = r + DR[d]
    cdef int nc = c + DC[d]
    if nr < 0 or nr >= height or nc < 0 or nc >= width:
        return True
    if d == 0:
        return hwalls[nr, c] != 0
    if d == 1:
        return hwalls[r, c] != 0
    if d == 2:
        return vwalls[r, c] != 0
    return vwalls[r, nc] != 0


cdef inline void _shuffle4(uint64_t *state, int *dirs) noexcept nogil:
    cdef int i, j, tmp
    for i in range(3, 0, -1):
        j = <int>_below(state, <uint64_t>(i + 1))
        tmp = dirs[i]
        dirs[i] = dirs[j]
        dirs[j] = tmp


def generate_perfect(int width, int height, object seed):
    """Carve a spanning tree by randomized depth-first search."""
    cdef uint64_t state = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    vwalls_arr = np.ones((height, width - 1), dtype=np.uint8)
    hwalls_arr = np.ones((height - 1, width), dtype=np.uint8)
    cdef uint8_t[:, ::1] vwalls = vwalls_arr
    cdef uint8_t[:, ::1] hwalls = hwalls_arr
    cdef int n = width * height
    visited_arr = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] visited = visited_arr

    cells_arr = np.empty(n, dtype=np.int32)
    dirs_arr = np.empty(4 * n, dtype=np.int32)
    cursor_arr = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] cells = cells_arr
    cdef int32_t[::1] dirs = dirs_arr
    cdef int32_t[::1] cursor = cursor_arr

    cdef int top = 0
    cdef int start = <int>_below(&state, <uint64_t>n)
    cdef int frame4[4]
    cdef int cell, r, c, d, nr, nc, nxt, k
    cdef bint advanced

    visited[start] = 1
    cells[0] = start
    frame4[0] = 0; frame4[1] = 1; frame4[2] = 2; frame4[3] = 3
    _shuffle4(&state, frame4)
    for k in range(4):
        dirs[k] = frame4[k]
    cursor[0] = 0

    while top >= 0:
        cell = cells[top]
        r = cell // width
        c = cell % width
        advanced = False
        while cursor[top] < 4:
            d = dirs[4 * top + cursor[top]]
            cursor[top] += 1
            # Walls are all up during carving; only the border limits moves.
            nr = r + DR[d]
            nc = c + DC[d]
            if nr < 0 or nr >= height or nc < 0 or nc >= width:
                continue
            nxt = nr * width + nc
            if visited[nxt]:
                continue
            if d == 0:
                hwalls[r - 1, c] = 0
            elif d == 1:
                hwalls[r, c] = 0
            elif d == 2:
                vwalls[r, c] = 0
            else:
                vwalls[r, c - 1] = 0
            visited[nxt] = 1
            top += 1
            cells[top] = nxt
            frame4[0] = 0; frame4[1] = 1; frame4[2] = 2; frame4[3] = 3
            _shuffle4(&state, frame4)
            for k in range(4):
                dirs[4 * top + k] = frame4[k]
            cursor[top] = 0
            advanced = True
            break
        if not advanced and cursor[top] >= 4:
            top -= 1
    return vwalls_arr, hwalls_arr


def bfs_tree(vwalls_in, hwalls_in, int source_r, int source_c):
    """Breadth-first distances and discovery parents from one source tile."""
    vwalls_arr = np.ascontiguousarray(vwalls_in, dtype=np.uint8)
    hwalls_arr = np.ascontiguousarray(hwalls_in, dtype=np.uint8)
    cdef const uint8_t[:, ::1] vwalls = vwalls_arr
    cdef const uint8_t[:, ::1] hwalls = hwalls_arr
    cdef int height = vwalls.shape[0]
    cdef int width = hwalls.shape[1]
    cdef int n = width * height
    dist_arr = np.full(n, -1, dtype=np.int32)
    parent_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] dist = dist_arr
    cdef int32_t[::1] parent = parent_arr
    cdef int32_t[::1] queue = queue_arr
    cdef int head = 0, tail = 0
    cdef int src = source_r * width + source_c
    cdef int cell, r, c, d, nxt
    cdef int32_t base

    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        cell = queue[head]
        head += 1
        r = cell // width
        c = cell % width
        base = dist[cell] + 1
        for d in range(4):
            if _blocked(vwalls, hwalls, r, c, d, width, height):
                continue
            nxt = (r + DR[d]) * width + (c + DC[d])
            if dist[nxt] < 0:
                dist[nxt] = base
                parent[nxt] = cell
                queue[tail] = nxt
                tail += 1
    return dist_arr.reshape(height, width), parent_arr.reshape(height, width)


def enumerate_paths(vwalls_in, hwalls_in, int sr, int sc, int tr, int tc, object cap):
    """All simple paths from source to target in depth-first emission order."""
    vwalls_arr = np.ascontiguousarray(vwalls_in, dtype=np.uint8)
    hwalls_arr = np.ascontiguousarray(hwalls_in, dtype=np.uint8)
    cdef const uint8_t[:, ::1] vwalls = vwalls_arr
    cdef const uint8_t[:, ::1] hwalls = hwalls_arr
    cdef int height = vwalls.shape[0]
    cdef int width = hwalls.shape[1]
    cdef int n = width * height
    cdef unsigned long long limit = <unsigned long long>(int(cap) + 1)
    on_path_arr = np.zeros(n, dtype=np.uint8)
    path_arr = np.empty(n, dtype=np.int32)
    next_dir_arr = np.empty(n, dtype=np.int32)
    cdef uint8_t[::1] on_path = on_path_arr
    cdef int32_t[::1] path = path_arr
    cdef int32_t[::1] next_dir = next_dir_arr
    cdef int src = sr * width + sc
    cdef int tgt = tr * width + tc
    cdef int top = 0
    cdef int cell, r, c, d, nxt
    cdef bint hit_cap = False
    paths = []

    path[0] = src
    next_dir[0] = 0
    on_path[src] = 1
    while top >= 0:
        cell = path[top]
        if cell == tgt:
            paths.append(np.array(path_arr[: top + 1], dtype=np.int32))
            if <unsigned long long>len(paths) >= limit:
                hit_cap = True
                break
            on_path[cell] = 0
            top -= 1
            continue
        d = next_dir[top]
        if d == 4:
            on_path[cell] = 0
            top -= 1
            continue
        next_dir[top] = d + 1
        r = cell // width
        c = cell % width
        if _blocked(vwalls, hwalls, r, c, d, width, height):
            continue
        nxt = (r + DR[d]) * width + (c + DC[d])
        if on_path[nxt]:
            continue
        on_path[nxt] = 1
        top += 1
        path[top] = nxt
        next_dir[top] = 0
    return paths, hit_cap


def count_paths_up_to(vwalls_in, hwalls_in, int sr, int sc, int tr, int tc, object limit):
    """Count simple source-to-target paths, stopping early at limit."""
    vwalls_arr = np.ascontiguousarray(vwalls_in, dtype=np.uint8)
    hwalls_arr = np.ascontiguousarray(hwalls_in, dtype=np.uint8)
    cdef const uint8_t[:, ::1] vwalls = vwalls_arr
    cdef const uint8_t[:, ::1] hwalls = hwalls_arr
    cdef int height = vwalls.shape[0]
    cdef int width = hwalls.shape[1]
    cdef int n = width * height
    cdef long long bound = <long long>int(limit)
    on_path_arr = np.zeros(n, dtype=np.uint8)
    path_arr = np.empty(n, dtype=np.int32)
    next_dir_arr = np.empty(n, dtype=np.int32)
    cdef uint8_t[::1] on_path = on_path_arr
    cdef int32_t[::1] path = path_arr
    cdef int32_t[::1] next_dir = next_dir_arr
    cdef int src = sr * width + sc
    cdef int tgt = tr * width + tc
    cdef int top = 0
    cdef int cell, r, c, d, nxt
    cdef long long count = 0

    path[0] = src
    next_dir[0] = 0
    on_path[src] = 1
    while top >= 0:
        cell = path[top]
        if cell == tgt:
            count += 1
            if count >= bound:
                break
            on_path[cell] = 0
            top -= 1
            continue
        d = next_dir[top]
        if d == 4:
            on_path[cell] = 0
            top -= 1
            continue
        next_dir[top] = d + 1
        r = cell // width
        c = cell % width
        if _blocked(vwalls, hwalls, r, c, d, width, height):
            continue
        nxt = (r + DR[d]) * width + (c + DC[d])
        if on_path[nxt]:
            continue
        on_path[nxt] = 1
        top += 1
        path[top] = nxt
        next_dir[top] = 0
    return int(count)
