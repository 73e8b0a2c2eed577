# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Needleman-Wunsch kernel.

Same contract and tie-break order as the pure-Python kernel in _nw_py:
match +1, mismatch -1, gap -1; traceback prefers diagonal > up > left.
"""

import numpy as np

cimport numpy as cnp

MOVE_DIAG = 0
MOVE_UP = 1
MOVE_LEFT = 2

DEF C_MATCH = 1
DEF C_MISMATCH = -1
DEF C_GAP = -1


def nw_align_ids(a_list, b_list):
    """Align two id sequences; return (optimal score, forward move list)."""
    cdef cnp.ndarray[cnp.int32_t, ndim=1] a = np.asarray(a_list, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] b = np.asarray(b_list, dtype=np.int32)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    cdef Py_ssize_t width = m + 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] f = np.zeros((n + 1) * width, dtype=np.int32)
    cdef cnp.int32_t[::1] fv = f
    cdef cnp.int32_t[::1] av = a
    cdef cnp.int32_t[::1] bv = b

    cdef Py_ssize_t i, j, row, prev_row
    cdef cnp.int32_t ai, diag, up, left, best

    for i in range(1, n + 1):
        fv[i * width] = <cnp.int32_t> (-i)
    for j in range(1, m + 1):
        fv[j] = <cnp.int32_t> (-j)

    for i in range(1, n + 1):
        ai = av[i - 1]
        row = i * width
        prev_row = row - width
        for j in range(1, m + 1):
            diag = fv[prev_row + j - 1] + (C_MATCH if ai == bv[j - 1] else C_MISMATCH)
            up = fv[prev_row + j] + C_GAP
            left = fv[row + j - 1] + C_GAP
            best = diag
            if up > best:
                best = up
            if left > best:
                best = left
            fv[row + j] = best

    moves = []
    i = n
    j = m
    cdef cnp.int32_t cur
    while i > 0 or j > 0:
        cur = fv[i * width + j]
        if i > 0 and j > 0:
            diag = fv[(i - 1) * width + j - 1] + (
                C_MATCH if av[i - 1] == bv[j - 1] else C_MISMATCH
            )
            if cur == diag:
                moves.append(MOVE_DIAG)
                i -= 1
                j -= 1
                continue
        if i > 0 and cur == fv[(i - 1) * width + j] + C_GAP:
            moves.append(MOVE_UP)
            i -= 1
            continue
        moves.append(MOVE_LEFT)
        j -= 1

    moves.reverse()
    return int(fv[n * width + m]), moves
