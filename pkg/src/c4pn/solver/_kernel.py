"""Compiled search kernel for RRC(C4, Pn, H, v, e).

Graphs are arrays of 16 row bitmasks (one int64 per vertex).  A position key
packs the degree-sorted position two bits per vertex pair: pair ``(p, q)``
with ``p > q`` has index ``p*(p-1)/2 + q``; bit ``2*index`` is set for a
blue edge (the lower triangle) and bit ``2*index + 1`` for a red edge (the
upper triangle).  The 240 bits of a 16-vertex board span four uint64 words,
word 0 holding the lowest bits; boards of at most 14 vertices need three.

The search mirrors the reference construct/colour recursion move for move so
that tables, statistics and emitted books are reproducible.
"""

from __future__ import annotations

import numpy as np
from numba import boolean, float64, int16, int64, njit, uint64
from numba.experimental import jitclass

VMAX = 16
MAX_DEPTH = 64

PAIR_BASE = np.array([p * (p - 1) // 2 for p in range(VMAX)], dtype=np.int64)
POPCOUNT = np.array([bin(i).count("1") for i in range(1 << VMAX)], dtype=np.int64)

_M1 = np.uint64(0x9E3779B97F4A7C15)
_M2 = np.uint64(0xC2B2AE3D27D4EB4F)
_M3 = np.uint64(0x165667B19E3779F9)
_M4 = np.uint64(0x27D4EB2F165667C5)
_S = np.uint64(31)
_EMPTY = np.int16(-1)


@jitclass(
    [
        ("k0", uint64[:]),
        ("k1", uint64[:]),
        ("k2", uint64[:]),
        ("k3", uint64[:]),
        ("vals", int16[:]),
        ("size", int64),
        ("mask", int64),
        ("wide", boolean),
        ("max_load", float64),
    ]
)
class Table:
    """Open-addressing map from a key to an int16 move entry.

    Keys of boards with at most 14 vertices fit in three words; the fourth
    word is stored only for ``wide`` tables.
    """

    def __init__(self, log2_capacity, wide, max_load):
        cap = 1 << log2_capacity
        self.wide = wide
        self.max_load = max_load
        self.k0 = np.zeros(cap, np.uint64)
        self.k1 = np.zeros(cap, np.uint64)
        self.k2 = np.zeros(cap, np.uint64)
        self.k3 = np.zeros(cap if wide else 1, np.uint64)
        self.vals = np.full(cap, -1, np.int16)
        self.size = 0
        self.mask = cap - 1

    def _home(self, a, b, c, d):
        h = a * _M1
        h ^= (b * _M2) ^ (h >> _S)
        h ^= (c * _M3) ^ (h >> _S)
        h ^= (d * _M4) ^ (h >> _S)
        h ^= h >> _S
        return int64(h & np.uint64(self.mask))

    def _find(self, a, b, c, d):
        # triangular probing visits every slot of a power-of-two table
        i = self._home(a, b, c, d)
        step = 0
        while True:
            if self.vals[i] == _EMPTY:
                return i
            if self.k0[i] == a and self.k1[i] == b and self.k2[i] == c:
                if not self.wide or self.k3[i] == d:
                    return i
            step += 1
            i = (i + step) & self.mask

    def get(self, a, b, c, d):
        """Stored entry, or -1 when the key is absent."""
        return self.vals[self._find(a, b, c, d)]

    def put(self, a, b, c, d, val):
        i = self._find(a, b, c, d)
        if self.vals[i] == _EMPTY:
            self.size += 1
            self.k0[i] = a
            self.k1[i] = b
            self.k2[i] = c
            if self.wide:
                self.k3[i] = d
        self.vals[i] = val
        if self.size > self.max_load * (self.mask + 1):
            self._grow()

    def _grow(self):
        o0, o1, o2, o3, ov = self.k0, self.k1, self.k2, self.k3, self.vals
        cap = 2 * (self.mask + 1)
        self.k0 = np.zeros(cap, np.uint64)
        self.k1 = np.zeros(cap, np.uint64)
        self.k2 = np.zeros(cap, np.uint64)
        self.k3 = np.zeros(cap if self.wide else 1, np.uint64)
        self.vals = np.full(cap, -1, np.int16)
        self.mask = cap - 1
        for s in range(ov.shape[0]):
            if ov[s] != _EMPTY:
                d = o3[s] if self.wide else np.uint64(0)
                i = self._find(o0[s], o1[s], o2[s], d)
                self.k0[i] = o0[s]
                self.k1[i] = o1[s]
                self.k2[i] = o2[s]
                if self.wide:
                    self.k3[i] = d
                self.vals[i] = ov[s]


@jitclass(
    [
        ("n", int64),
        ("vcap", int64),
        ("e", int64),
        ("eb", int64),
        ("er", int64),
        ("table", Table.class_type.instance_type),
        ("prev", Table.class_type.instance_type),
        ("has_prev", boolean),
        ("use_tt", boolean),
        ("use_budget_prune", boolean),
        ("use_spare", boolean),
        ("total", int64),
        ("unique", int64),
        ("order", int64[:, :]),
        ("inv", int64[:, :]),
        ("checked", int64[:, :]),
    ]
)
class SearchState:
    """Parameters, tables and per-depth scratch of one game's search."""

    def __init__(self, n, vcap, e, table, prev, has_prev, use_tt, use_budget_prune, use_spare):
        self.n = n
        self.vcap = vcap
        self.e = e
        self.eb = 0
        self.er = 0
        self.table = table
        self.prev = prev
        self.has_prev = has_prev
        self.use_tt = use_tt
        self.use_budget_prune = use_budget_prune
        self.use_spare = use_spare
        self.total = 0
        self.unique = 0
        self.order = np.zeros((MAX_DEPTH, VMAX + 2), np.int64)
        self.inv = np.zeros((MAX_DEPTH, VMAX + 2), np.int64)
        self.checked = np.zeros((MAX_DEPTH, VMAX), np.int64)


@njit(cache=True)
def has_c4(red, i, j):
    """True iff red (already containing i-j) has a 4-cycle through i-j."""
    nj = red[j] & ~(int64(1) << i)
    ri = red[i]
    while nj:
        low = nj & -nj
        k = POPCOUNT[low - 1]
        if POPCOUNT[ri & red[k]] > 1:
            return True
        nj ^= low
    return False


@njit(cache=True)
def has_only_paths(blue, i, j):
    """True iff adding blue i-j keeps the blue graph a union of disjoint paths."""
    d1 = POPCOUNT[blue[i]]
    d2 = POPCOUNT[blue[j]]
    if d1 > 1 or d2 > 1:
        return False
    if d1 == 0 or d2 == 0:
        return True
    prev = -1
    cur = i
    while True:
        nb = blue[cur]
        if prev >= 0:
            nb &= ~(int64(1) << prev)
        if nb == 0:
            break
        prev = cur
        cur = POPCOUNT[(nb & -nb) - 1]
    return cur != j


@njit(cache=True)
def is_target_path(blue, eb, n, vcap):
    """Exact test: the blue graph is a single path on n vertices."""
    if eb != n - 1:
        return False
    start = -1
    for x in range(vcap):
        if POPCOUNT[blue[x]] == 1:
            start = x
            break
    if start < 0:
        return False
    length = 0
    prev = -1
    cur = start
    while True:
        nb = blue[cur]
        if prev >= 0:
            nb &= ~(int64(1) << prev)
        if nb == 0:
            break
        prev = cur
        cur = POPCOUNT[(nb & -nb) - 1]
        length += 1
    return length == eb


@njit(cache=True)
def canon(blue, red, v, order, inv):
    """Key words of the degree-sorted position; fills order (sorted->orig) and inv."""
    score = np.empty(v, np.int64)
    for x in range(v):
        score[x] = -(POPCOUNT[blue[x]] * 4194304 + POPCOUNT[red[x]] * 65536)
        order[x] = x
    # insertion sort on (score, original index); v <= 16
    for a in range(1, v):
        x = order[a]
        sx = score[x]
        b = a - 1
        while b >= 0 and (score[order[b]] > sx or (score[order[b]] == sx and order[b] > x)):
            order[b + 1] = order[b]
            b -= 1
        order[b + 1] = x
    for p in range(v):
        inv[order[p]] = p
    w0 = np.uint64(0)
    w1 = np.uint64(0)
    w2 = np.uint64(0)
    w3 = np.uint64(0)
    for a in range(v):
        pa = inv[a]
        both = blue[a] | red[a]
        while both:
            low = both & -both
            pb = inv[POPCOUNT[low - 1]]
            # each unordered pair is visited from its higher sorted end only
            if pb < pa:
                idx = 2 * (PAIR_BASE[pa] + pb)
                if red[a] & low:
                    idx += 1
                bit = np.uint64(1) << np.uint64(idx & 63)
                w = idx >> 6
                if w == 0:
                    w0 |= bit
                elif w == 1:
                    w1 |= bit
                elif w == 2:
                    w2 |= bit
                else:
                    w3 |= bit
            both ^= low
    return w0, w1, w2, w3


@njit(cache=True)
def _add(g, i, j):
    g[i] |= int64(1) << j
    g[j] |= int64(1) << i


@njit(cache=True)
def _remove(g, i, j):
    g[i] &= ~(int64(1) << j)
    g[j] &= ~(int64(1) << i)


@njit(cache=True)
def colour(st, blue, red, v, i, j):
    """True iff every Painter reply to Builder's edge i-j loses for Painter."""
    if not has_only_paths(blue, i, j):
        return False
    # with v = n every vertex ends up on the path, so no spare is needed
    if st.use_spare and st.vcap > st.n:
        _add(blue, i, j)
        spare = False
        for x in range(st.vcap - 1, -1, -1):
            if blue[x] == 0:
                spare = True
                break
        _remove(blue, i, j)
        if not spare:
            return False
    _add(red, i, j)
    st.er += 1
    if not (st.er >= 3 and has_c4(red, i, j)):
        if not construct(st, blue, red, v):
            _remove(red, i, j)
            st.er -= 1
            return False
    _remove(red, i, j)
    st.er -= 1
    _add(blue, i, j)
    st.eb += 1
    ok = True
    if not is_target_path(blue, st.eb, st.n, st.vcap):
        ok = construct(st, blue, red, v)
    _remove(blue, i, j)
    st.eb -= 1
    return ok


@njit(cache=True)
def construct(st, blue, red, v):
    """True iff Builder, to move, has a winning move; records it in st.table."""
    n = st.n
    if st.use_budget_prune and (st.eb >= n or st.er > st.e - n + 1):
        return False
    depth = st.eb + st.er
    order = st.order[depth]
    inv = st.inv[depth]
    k0, k1, k2, k3 = canon(blue, red, v, order, inv)
    st.total += 1
    if st.use_tt:
        hit = st.table.get(k0, k1, k2, k3)
        if hit >= 0:
            return hit != 0
    st.unique += 1
    if depth == st.e:
        return False
    order[v] = v
    order[v + 1] = v + 1
    checked = st.checked[depth]
    for x in range(VMAX):
        checked[x] = blue[x] | red[x]
    if st.has_prev and (st.prev.wide or k3 == 0):
        hint = st.prev.get(k0, k1, k2, k3)
        if hint > 0:
            v1 = order[hint >> 8]
            v2 = order[hint & 255]
            vv = max(v, v1 + 1, v2 + 1)
            if colour(st, blue, red, vv, v1, v2):
                if st.use_tt:
                    st.table.put(k0, k1, k2, k3, hint)
                return True
            checked[v1] |= int64(1) << v2
            checked[v2] |= int64(1) << v1
    for i in range(v - 1, -1, -1):
        if POPCOUNT[blue[i]] <= 1:
            for j in range(v - 1, i, -1):
                if not (checked[i] >> j) & 1 and POPCOUNT[blue[j]] <= 1:
                    if colour(st, blue, red, v, i, j):
                        if st.use_tt:
                            st.table.put(k0, k1, k2, k3, int16((inv[i] << 8) + inv[j]))
                        return True
                    checked[i] |= int64(1) << j
                    checked[j] |= int64(1) << i
    if v < st.vcap:
        for i in range(v):
            if POPCOUNT[blue[i]] <= 1 and not (checked[i] >> v) & 1:
                if colour(st, blue, red, v + 1, i, v):
                    if st.use_tt:
                        st.table.put(k0, k1, k2, k3, int16((inv[i] << 8) + v))
                    return True
    if v == 0 and colour(st, blue, red, 2, 0, 1):
        if st.use_tt:
            st.table.put(k0, k1, k2, k3, int16(1))
        return True
    if st.use_tt:
        st.table.put(k0, k1, k2, k3, int16(0))
    return False


@njit(cache=True)
def solve_from(st, blue, red, v):
    """Run construct on a start position, syncing the edge counters first."""
    eb = 0
    er = 0
    for x in range(VMAX):
        eb += POPCOUNT[blue[x]]
        er += POPCOUNT[red[x]]
    st.eb = eb // 2
    st.er = er // 2
    return construct(st, blue, red, v)


@njit(cache=True)
def lookup(table, blue, red, v):
    """(entry, order) for a position: entry is -1 if absent; order maps sorted->board."""
    order = np.zeros(VMAX + 2, np.int64)
    inv = np.zeros(VMAX + 2, np.int64)
    k0, k1, k2, k3 = canon(blue, red, v, order, inv)
    order[v] = v
    order[v + 1] = v + 1
    return table.get(k0, k1, k2, k3), order


@njit(cache=True)
def probe(table, blue, red, v):
    """(entry, order, key words) for a position, as lookup plus the key."""
    order = np.zeros(VMAX + 2, np.int64)
    inv = np.zeros(VMAX + 2, np.int64)
    k0, k1, k2, k3 = canon(blue, red, v, order, inv)
    order[v] = v
    order[v + 1] = v + 1
    return table.get(k0, k1, k2, k3), order, k0, k1, k2, k3


@njit(cache=True)
def key_of(blue, red, v):
    order = np.zeros(VMAX + 2, np.int64)
    inv = np.zeros(VMAX + 2, np.int64)
    return canon(blue, red, v, order, inv)
