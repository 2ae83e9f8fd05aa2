"""Exact all-source BFS eccentricities on a CSR adjacency structure.

The hot path is a numba kernel (per-source BFS with an epoch-stamp array so
there is no O(n) reset between sources); a pure-Python fallback keeps the
package usable without a working numba install. Both produce identical
integer results, so thread scheduling cannot change any output.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False


if _HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _ecc_kernel(indptr, indices, sources, out):  # pragma: no cover - jitted
        n = indptr.size - 1
        dist = np.empty(n, np.int32)
        mark = np.full(n, -1, np.int64)
        queue = np.empty(n, np.int64)
        for si in range(sources.size):
            s = sources[si]
            mark[s] = si
            dist[s] = 0
            queue[0] = s
            head = 0
            tail = 1
            far = 0
            while head < tail:
                v = queue[head]
                head += 1
                dv = dist[v]
                if dv > far:
                    far = dv
                for ei in range(indptr[v], indptr[v + 1]):
                    u = indices[ei]
                    if mark[u] != si:
                        mark[u] = si
                        dist[u] = dv + 1
                        queue[tail] = u
                        tail += 1
            if tail < n:
                out[si] = -1  # source does not reach the whole structure
            else:
                out[si] = far


def _ecc_python(indptr, indices, sources, out):
    n = indptr.size - 1
    for si, s in enumerate(sources):
        dist = {s: 0}
        queue = deque([s])
        far = 0
        while queue:
            v = queue.popleft()
            dv = dist[v]
            if dv > far:
                far = dv
            for ei in range(indptr[v], indptr[v + 1]):
                u = indices[ei]
                if u not in dist:
                    dist[u] = dv + 1
                    queue.append(u)
        out[si] = far if len(dist) == n else -1


def all_eccentricities(indptr, indices, threads: int = 1) -> np.ndarray:
    """Eccentricity of every node of a connected CSR graph.

    Entries are -1 where a source fails to reach every node, which callers
    treat as a disconnected-input error.
    """
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    n = indptr.size - 1
    out = np.empty(n, np.int32)
    if n == 0:
        return out
    kernel = _ecc_kernel if _HAVE_NUMBA else _ecc_python
    sources = np.arange(n, dtype=np.int64)
    if threads <= 1 or n < 256:
        kernel(indptr, indices, sources, out)
        return out

    chunks = np.array_split(sources, threads * 4)
    chunks = [c for c in chunks if c.size]

    def work(chunk):
        res = np.empty(chunk.size, np.int32)
        kernel(indptr, indices, chunk, res)
        return chunk, res

    with ThreadPoolExecutor(max_workers=threads) as pool:
        for chunk, res in pool.map(work, chunks):
            out[chunk[0] : chunk[-1] + 1] = res
    return out
