# cython: language_level=3
"""Compiled raster kernels. Must stay behaviourally identical to
``_pykernels.py``."""
import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef int RING_DX[8]
cdef int RING_DY[8]
RING_DX[:] = [-1, -1, 0, 1, 1, 1, 0, -1]
RING_DY[:] = [0, -1, -1, -1, 0, 1, 1, 1]


def label_components(mask):
    cdef const cnp.uint8_t[:, ::1] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t h = m.shape[0], w = m.shape[1]
    labels_arr = np.zeros((h, w), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] labels = labels_arr
    queue_arr = np.empty(max(h * w, 1), dtype=np.intp)
    cdef Py_ssize_t[::1] queue = queue_arr
    cdef Py_ssize_t head, tail, y, x, cy, cx, ny, nx, idx
    cdef int count = 0
    with nogil:
        for y in range(h):
            for x in range(w):
                if m[y, x] == 0 or labels[y, x] != 0:
                    continue
                count += 1
                labels[y, x] = count
                head = 0
                tail = 0
                queue[tail] = y * w + x
                tail += 1
                while head < tail:
                    idx = queue[head]
                    head += 1
                    cy = idx // w
                    cx = idx - cy * w
                    for ny in range(cy - 1, cy + 2):
                        if ny < 0 or ny >= h:
                            continue
                        for nx in range(cx - 1, cx + 2):
                            if nx < 0 or nx >= w:
                                continue
                            if m[ny, nx] != 0 and labels[ny, nx] == 0:
                                labels[ny, nx] = count
                                queue[tail] = ny * w + nx
                                tail += 1
    return labels_arr, count


cdef inline bint _fg(const cnp.uint8_t[:, ::1] m, Py_ssize_t x, Py_ssize_t y,
                     Py_ssize_t w, Py_ssize_t h) nogil:
    return 0 <= x < w and 0 <= y < h and m[y, x] != 0


cdef inline int _ring_index(Py_ssize_t dx, Py_ssize_t dy) nogil:
    cdef int k
    for k in range(8):
        if RING_DX[k] == dx and RING_DY[k] == dy:
            return k
    return -1


cdef inline bint _step(const cnp.uint8_t[:, ::1] m, Py_ssize_t w, Py_ssize_t h,
                       Py_ssize_t px, Py_ssize_t py, int back,
                       Py_ssize_t* qx, Py_ssize_t* qy, int* qback) nogil:
    cdef int i, k, prev
    cdef Py_ssize_t cx, cy
    for i in range(1, 9):
        k = (back + i) % 8
        cx = px + RING_DX[k]
        cy = py + RING_DY[k]
        if _fg(m, cx, cy, w, h):
            prev = (back + i - 1) % 8
            qx[0] = cx
            qy[0] = cy
            qback[0] = _ring_index(px + RING_DX[prev] - cx, py + RING_DY[prev] - cy)
            return True
    return False


def trace_boundary(mask, Py_ssize_t sy, Py_ssize_t sx):
    cdef const cnp.uint8_t[:, ::1] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t h = m.shape[0], w = m.shape[1]
    cdef Py_ssize_t limit = 8 * h * w + 8
    out_arr = np.empty((limit, 2), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t n = 0, px, py, fx, fy, nx_, ny_
    cdef int back, nback, fback
    out[0, 0] = sx
    out[0, 1] = sy
    n = 1
    if not _step(m, w, h, sx, sy, 0, &fx, &fy, &fback):
        return out_arr[:1].copy()
    px = fx
    py = fy
    back = fback
    with nogil:
        while n < limit:
            if px == sx and py == sy:
                _step(m, w, h, px, py, back, &nx_, &ny_, &nback)
                if nx_ == fx and ny_ == fy:
                    break
            out[n, 0] = px
            out[n, 1] = py
            n += 1
            _step(m, w, h, px, py, back, &nx_, &ny_, &nback)
            px = nx_
            py = ny_
            back = nback
    return out_arr[:n].copy()


def hysteresis(weak, strong):
    strong_b = np.asarray(strong, dtype=bool)
    cand_arr = np.ascontiguousarray(np.asarray(weak, dtype=bool) | strong_b, dtype=np.uint8)
    seeds = np.flatnonzero(strong_b).astype(np.intp)
    cdef cnp.uint8_t[:, ::1] cand = cand_arr
    cdef Py_ssize_t h = cand.shape[0], w = cand.shape[1]
    out_arr = np.zeros((h, w), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] out = out_arr
    queue_arr = np.empty(max(h * w, 1), dtype=np.intp)
    cdef Py_ssize_t[::1] queue = queue_arr
    cdef Py_ssize_t[::1] sv = seeds
    cdef Py_ssize_t head = 0, tail = 0, i, idx, cy, cx, ny, nx
    with nogil:
        for i in range(sv.shape[0]):
            idx = sv[i]
            cy = idx // w
            cx = idx - cy * w
            if out[cy, cx] == 0:
                out[cy, cx] = 1
                queue[tail] = idx
                tail += 1
        while head < tail:
            idx = queue[head]
            head += 1
            cy = idx // w
            cx = idx - cy * w
            for ny in range(cy - 1, cy + 2):
                if ny < 0 or ny >= h:
                    continue
                for nx in range(cx - 1, cx + 2):
                    if nx < 0 or nx >= w:
                        continue
                    if cand[ny, nx] != 0 and out[ny, nx] == 0:
                        out[ny, nx] = 1
                        queue[tail] = ny * w + nx
                        tail += 1
    return out_arr.view(bool)
