"""Pure-Python Needleman-Wunsch kernel.

Reference implementation of the dynamic program; byte-compatible with the
compiled kernel. Scores: match +1, mismatch -1, gap -1. Traceback ties break
diagonal > up (delete) > left (insert) so output is deterministic.
"""

from __future__ import annotations

MOVE_DIAG = 0
MOVE_UP = 1  # consume original token (delete)
MOVE_LEFT = 2  # consume candidate token (insert)

MATCH = 1
MISMATCH = -1
GAP = -1


def nw_align_ids(a: list[int], b: list[int]) -> tuple[int, list[int]]:
    """Align two id sequences; return (optimal score, forward move list)."""
    n, m = len(a), len(b)
    width = m + 1
    # Flat DP table, row-major.
    f = [0] * ((n + 1) * width)
    for i in range(1, n + 1):
        f[i * width] = -i
    for j in range(1, m + 1):
        f[j] = -j

    for i in range(1, n + 1):
        ai = a[i - 1]
        row = i * width
        prev_row = row - width
        for j in range(1, m + 1):
            diag = f[prev_row + j - 1] + (MATCH if ai == b[j - 1] else MISMATCH)
            up = f[prev_row + j] + GAP
            left = f[row + j - 1] + GAP
            best = diag
            if up > best:
                best = up
            if left > best:
                best = left
            f[row + j] = best

    moves: list[int] = []
    i, j = n, m
    while i > 0 or j > 0:
        cur = f[i * width + j]
        if i > 0 and j > 0:
            diag = f[(i - 1) * width + j - 1] + (MATCH if a[i - 1] == b[j - 1] else MISMATCH)
            if cur == diag:
                moves.append(MOVE_DIAG)
                i -= 1
                j -= 1
                continue
        if i > 0 and cur == f[(i - 1) * width + j] + GAP:
            moves.append(MOVE_UP)
            i -= 1
            continue
        moves.append(MOVE_LEFT)
        j -= 1

    moves.reverse()
    return f[n * width + m], moves
