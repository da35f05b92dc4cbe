# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same names, signatures and results as ``_pycore``.

Rows are held as ``unsigned int`` bitmasks (n <= 32). Functions that take or
return edge codes pack them into 64 bits and so need n(n-1)/2 <= 64; the
backend selector only routes such n here. Rank uses 64-bit Bareiss
elimination up to n = 16 and defers to the Python kernel beyond that.
"""

from libc.stdlib cimport malloc, realloc, free, qsort
from libc.string cimport memcpy, memset

from switchlab import _pycore as _py
from switchlab._pycore import (
    MAX_N, FILTERS,
    KIND_T, KIND_F, KIND_U, KIND_P,
    R_T_PATH_AB_CD, R_T_PATH_BA_DC, R_T_NO_PATH,
    R_F_DIFFERENT_COMPONENTS, R_F_SAME_COMPONENT_TREE, R_F_SAME_COMPONENT_BROKEN,
    R_U_FOREST_EDGES_KEEP, R_U_FOREST_EDGES_BREAK, R_U_MIXED, R_U_SHORT_CYCLE,
    R_U_CYCLE_SPLIT, R_U_CYCLE_KEPT,
    R_P_SPLIT_TREES_KEEP, R_P_SPLIT_TREES_BREAK, R_P_SHARED_TREE_KEEP,
    R_P_SHARED_TREE_BREAK, R_P_CROSS_KEEP, R_P_CROSS_BREAK, R_P_OTHER,
    P_MATCHING, P_INDEPENDENCE, P_CLIQUE, P_DOMINATION, P_COMPONENTS,
    P_PATH_COVER, P_ZERO_FORCING, P_CHROMATIC, P_RANK, P_DIAMETER,
    edge_index, rows_to_code, code_to_rows, forcing_closure, pseudoforests,
    _graphical, _make_trimmable,
)

ctypedef unsigned int u32
ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    int popc "__builtin_popcount"(unsigned int) nogil
    int ctz "__builtin_ctz"(unsigned int) nogil

cdef enum:
    NMAX = 32
    RANK_NMAX = 16
    PAIRS_MAX = 496  # NMAX * (NMAX - 1) / 2

# C-level mirrors of the shared codes
cdef enum:
    CK_T = 0
    CK_F = 1
    CK_U = 2
    CK_P = 3

cdef enum:
    C_T_AB_CD = 1
    C_T_BA_DC = 2
    C_T_NONE = 3
    C_F_DIFF = 4
    C_F_TREE = 5
    C_F_BROKEN = 6
    C_U_KEEP = 7
    C_U_BREAK = 8
    C_U_MIXED = 9
    C_U_SHORT = 10
    C_U_SPLIT = 11
    C_U_KEPT = 12
    C_P_SPLIT_KEEP = 13
    C_P_SPLIT_BREAK = 14
    C_P_SHARED_KEEP = 15
    C_P_SHARED_BREAK = 16
    C_P_CROSS_KEEP = 17
    C_P_CROSS_BREAK = 18
    C_P_OTHER = 19

assert (KIND_T, KIND_F, KIND_U, KIND_P) == (CK_T, CK_F, CK_U, CK_P)
assert R_P_OTHER == C_P_OTHER and R_T_NO_PATH == C_T_NONE


cdef inline u32 full_mask(int n) noexcept nogil:
    return <u32>(((<u64>1) << n) - 1)


cdef inline u32 bit(int v) noexcept nogil:
    return (<u32>1) << v


cdef inline bint single(u32 x) noexcept nogil:
    return x != 0 and (x & (x - 1)) == 0


cdef int load_rows(int n, rows, u32* out) except -1:
    cdef int i
    if n > NMAX:
        raise ValueError(f"n={n} exceeds {NMAX}")
    for i in range(n):
        out[i] = <u32>rows[i]
    return 0


cdef list dump_rows(int n, const u32* rows):
    return [rows[i] for i in range(n)]


# ---------------------------------------------------------------- codes


cdef void edge_table(int n, int* table) noexcept nogil:
    cdef int i, j, k = 0
    for i in range(n):
        for j in range(i + 1, n):
            table[i * NMAX + j] = k
            table[j * NMAX + i] = k
            k += 1


cdef void decode(int n, u64 code, u32* rows) noexcept nogil:
    cdef int i, j, k = 0
    memset(rows, 0, n * sizeof(u32))
    for i in range(n):
        for j in range(i + 1, n):
            if (code >> k) & 1:
                rows[i] |= bit(j)
                rows[j] |= bit(i)
            k += 1


cdef u64 encode(int n, const u32* rows) noexcept nogil:
    cdef int i, j, k = 0
    cdef u64 code = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i] >> j) & 1:
                code |= (<u64>1) << k
            k += 1
    return code


cdef int check_code_n(int n) except -1:
    if n * (n - 1) // 2 > 64:
        raise ValueError(f"edge codes on {n} vertices do not fit in 64 bits")
    return 0


# ---------------------------------------------------------------- structure


cdef u32 reach(const u32* rows, int start, u32 allowed) noexcept nogil:
    cdef u32 comp = bit(start)
    cdef u32 frontier = comp
    cdef u32 nxt, f
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= rows[ctz(f)]
            f &= f - 1
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


cdef int comp_masks(int n, const u32* rows, u32* out) noexcept nogil:
    cdef u32 seen = 0
    cdef u32 full = full_mask(n)
    cdef u32 c
    cdef int s, k = 0
    for s in range(n):
        if (seen >> s) & 1:
            continue
        c = reach(rows, s, full)
        seen |= c
        out[k] = c
        k += 1
    return k


cdef int edges_within(const u32* rows, u32 mask) noexcept nogil:
    cdef int tot = 0
    cdef u32 m = mask
    while m:
        tot += popc(rows[ctz(m)] & mask)
        m &= m - 1
    return tot // 2


cdef bint bipartite(const u32* rows, const u32* comps, int k) noexcept nogil:
    cdef int q, parity
    cdef u32 side[2]
    cdef u32 layer, seen, nxt, f, s
    for q in range(k):
        side[0] = 0
        side[1] = 0
        layer = comps[q] & (~comps[q] + 1)
        seen = layer
        parity = 0
        while layer:
            side[parity] |= layer
            nxt = 0
            f = layer
            while f:
                nxt |= rows[ctz(f)]
                f &= f - 1
            nxt &= ~seen
            seen |= nxt
            layer = nxt
            parity ^= 1
        for parity in range(2):
            s = side[parity]
            f = s
            while f:
                if rows[ctz(f)] & s:
                    return False
                f &= f - 1
    return True


cdef void stats(int n, const u32* rows, int* out) noexcept nogil:
    """out = kappa, trees, unicyclic, heavier, bipartite"""
    cdef u32 comps[NMAX]
    cdef int k = comp_masks(n, rows, comps)
    cdef int q, excess
    out[0] = k
    out[1] = 0
    out[2] = 0
    out[3] = 0
    for q in range(k):
        excess = edges_within(rows, comps[q]) - popc(comps[q])
        if excess == -1:
            out[1] += 1
        elif excess == 0:
            out[2] += 1
        else:
            out[3] += 1
    out[4] = bipartite(rows, comps, k)


cdef u32 core2(int n, const u32* rows) noexcept nogil:
    cdef u32 alive = full_mask(n)
    cdef u32 f
    cdef int v
    cdef bint changed = True
    while changed:
        changed = False
        f = alive
        while f:
            v = ctz(f)
            f &= f - 1
            if popc(rows[v] & alive) <= 1:
                alive &= ~bit(v)
                changed = True
    return alive


cdef int diam(int n, const u32* rows) noexcept nogil:
    cdef u32 full = full_mask(n)
    cdef u32 seen, frontier, nxt, f
    cdef int s, ecc, best = 0
    for s in range(n):
        seen = bit(s)
        frontier = seen
        ecc = 0
        while True:
            nxt = 0
            f = frontier
            while f:
                nxt |= rows[ctz(f)]
                f &= f - 1
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
            ecc += 1
        if seen != full:
            return -1
        if ecc > best:
            best = ecc
    return best


cdef bint filter_ok(int n, const u32* rows, int fcode) noexcept nogil:
    cdef int st[5]
    if fcode == 0:
        return True
    stats(n, rows, st)
    if fcode == 1:
        return st[2] == 0 and st[3] == 0
    if fcode == 2:
        return st[0] == 1
    if fcode == 3:
        return st[0] == 1 and st[2] == 1
    if fcode == 4:
        return st[3] == 0
    if fcode == 5:
        return st[4] != 0
    return st[4] == 0


def component_masks(int n, rows):
    cdef u32 r[NMAX]
    cdef u32 out[NMAX]
    load_rows(n, rows, r)
    cdef int k = comp_masks(n, r, out)
    return [out[i] for i in range(k)]


def struct_stats(int n, rows):
    cdef u32 r[NMAX]
    cdef int st[5]
    load_rows(n, rows, r)
    stats(n, r, st)
    return st[0], st[1], st[2], st[3], bool(st[4])


def two_core(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return core2(n, r)


def diameter(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return diam(n, r)


# ---------------------------------------------------------------- parameters


cdef int mm(const u32* rows, u32 avail, int cur, int best) noexcept nogil:
    cdef int v = -1
    cdef u32 nb = 0
    cdef u32 rest, f
    while avail:
        v = ctz(avail)
        nb = rows[v] & avail
        if nb:
            break
        avail &= ~bit(v)
    if not avail:
        return cur if cur > best else best
    if cur + popc(avail) // 2 <= best:
        return best
    rest = avail & ~bit(v)
    if single(nb):
        return mm(rows, rest & ~nb, cur + 1, best)
    f = nb
    while f:
        best = mm(rows, rest & ~bit(ctz(f)), cur + 1, best)
        f &= f - 1
    return mm(rows, rest, cur, best)


cdef int mis(const u32* rows, u32 avail, int cur, int best) noexcept nogil:
    cdef int v, deg, vmax = -1, dmax = -1
    cdef u32 f
    if not avail:
        return cur if cur > best else best
    if cur + popc(avail) <= best:
        return best
    f = avail
    while f:
        v = ctz(f)
        f &= f - 1
        deg = popc(rows[v] & avail)
        if deg <= 1:
            return mis(rows, avail & ~(rows[v] | bit(v)), cur + 1, best)
        if deg > dmax:
            vmax = v
            dmax = deg
    best = mis(rows, avail & ~(rows[vmax] | bit(vmax)), cur + 1, best)
    return mis(rows, avail & ~bit(vmax), cur, best)


cdef int clique(int n, const u32* rows) noexcept nogil:
    cdef u32 comp[NMAX]
    cdef u32 full = full_mask(n)
    cdef int v
    for v in range(n):
        comp[v] = full & ~rows[v] & ~bit(v)
    return mis(comp, full, 0, 0)


cdef inline u64 next_subset(u64 x) noexcept nogil:
    # Gosper's hack: next integer with the same popcount
    cdef u64 c = x & (~x + 1)
    cdef u64 r = x + c
    return (((r ^ x) >> 2) // c) | r


cdef int domination(int n, const u32* rows) noexcept nogil:
    cdef u32 closed[NMAX]
    cdef u32 full = full_mask(n)
    cdef u32 cover, f
    cdef u64 s, limit = (<u64>1) << n
    cdef int v, k
    for v in range(n):
        closed[v] = rows[v] | bit(v)
    if n == 0:
        return 0
    for k in range(1, n + 1):
        s = ((<u64>1) << k) - 1
        while s < limit:
            cover = 0
            f = <u32>s
            while f:
                cover |= closed[ctz(f)]
                f &= f - 1
            if cover == full:
                return k
            s = next_subset(s)
    return n


cdef u32 closure(const u32* rows, u32 infected) noexcept nogil:
    cdef bint changed = True
    cdef u32 f, fresh
    while changed:
        changed = False
        f = infected
        while f:
            fresh = rows[ctz(f)] & ~infected
            f &= f - 1
            if single(fresh):
                infected |= fresh
                changed = True
    return infected


cdef int zero_forcing(int n, const u32* rows) noexcept nogil:
    cdef u32 full = full_mask(n)
    cdef u64 s, limit = (<u64>1) << n
    cdef int k
    if n == 0:
        return 0
    for k in range(1, n + 1):
        s = ((<u64>1) << k) - 1
        while s < limit:
            if closure(rows, <u32>s) == full:
                return k
            s = next_subset(s)
    return n


cdef struct PathCover:
    int m
    int target
    int best
    int eu[PAIRS_MAX]
    int ev[PAIRS_MAX]
    int deg[NMAX]
    int end[NMAX]


cdef void pc_rec(PathCover* s, int k, int cur) noexcept nogil:
    cdef int q, u, v, eu, ev
    if cur > s.best:
        s.best = cur
    if s.best == s.target or cur + s.m - k <= s.best:
        return
    for q in range(k, s.m):
        if cur + s.m - q <= s.best:
            return
        u = s.eu[q]
        v = s.ev[q]
        if s.deg[u] >= 2 or s.deg[v] >= 2 or s.end[u] == v:
            continue
        eu = s.end[u]
        ev = s.end[v]
        s.deg[u] += 1
        s.deg[v] += 1
        s.end[eu] = ev
        s.end[ev] = eu
        pc_rec(s, q + 1, cur + 1)
        s.end[eu] = u
        s.end[ev] = v
        s.deg[u] -= 1
        s.deg[v] -= 1
        if s.best == s.target:
            return


cdef int path_cover(int n, const u32* rows) noexcept nogil:
    cdef PathCover s
    cdef u32 comps[NMAX]
    cdef u32 f
    cdef int i
    s.m = 0
    for i in range(n):
        f = rows[i] >> (i + 1) if i + 1 < 32 else 0
        while f:
            s.eu[s.m] = i
            s.ev[s.m] = i + 1 + ctz(f)
            s.m += 1
            f &= f - 1
        s.deg[i] = 0
        s.end[i] = i
    s.target = n - comp_masks(n, rows, comps)
    s.best = 0
    pc_rec(&s, 0, 0)
    return n - s.best


cdef bint color_rec(int n, const u32* rows, int k, u32* classes, int v, int used) noexcept nogil:
    cdef int c, top
    if v == n:
        return True
    top = used + 1 if used + 1 < k else k
    for c in range(top):
        if rows[v] & classes[c]:
            continue
        classes[c] |= bit(v)
        if color_rec(n, rows, k, classes, v + 1, used if used > c + 1 else c + 1):
            return True
        classes[c] &= ~bit(v)
    return False


cdef int chromatic(int n, const u32* rows) noexcept nogil:
    cdef u32 classes[NMAX]
    cdef int k = 1
    cdef int v
    if n == 0:
        return 0
    for v in range(n):
        if rows[v]:
            k = 2
            break
    while True:
        memset(classes, 0, sizeof(classes))
        if color_rec(n, rows, k, classes, 0, 0):
            return k
        k += 1


cdef int rank64(int n, const u32* rows) noexcept nogil:
    cdef i64 m[RANK_NMAX][RANK_NMAX]
    cdef i64 tmp, p, f, prev = 1
    cdef int i, j, col, piv, r = 0
    for i in range(n):
        for j in range(n):
            m[i][j] = (rows[i] >> j) & 1
    for col in range(n):
        piv = -1
        for i in range(r, n):
            if m[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = m[r][j]
                m[r][j] = m[piv][j]
                m[piv][j] = tmp
        p = m[r][col]
        for i in range(r + 1, n):
            f = m[i][col]
            for j in range(col + 1, n):
                m[i][j] = (p * m[i][j] - f * m[r][j]) // prev
            m[i][col] = 0
        prev = p
        r += 1
        if r == n:
            break
    return r


cdef int param_c(int n, const u32* rows, int pcode) noexcept nogil:
    cdef u32 comps[NMAX]
    if pcode == 0:
        return mm(rows, full_mask(n), 0, 0)
    if pcode == 1:
        return mis(rows, full_mask(n), 0, 0)
    if pcode == 2:
        return clique(n, rows)
    if pcode == 3:
        return domination(n, rows)
    if pcode == 4:
        return comp_masks(n, rows, comps)
    if pcode == 5:
        return path_cover(n, rows)
    if pcode == 6:
        return zero_forcing(n, rows)
    if pcode == 7:
        return chromatic(n, rows)
    if pcode == 8:
        return rank64(n, rows)
    if pcode == 9:
        return diam(n, rows)
    return -2


def matching_number(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return mm(r, full_mask(n), 0, 0)


def independence_number(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return mis(r, full_mask(n), 0, 0)


def clique_number(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return clique(n, r)


def domination_number(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return domination(n, r)


def path_cover_number(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return path_cover(n, r)


def zero_forcing_number(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return zero_forcing(n, r)


def chromatic_number(int n, rows):
    cdef u32 r[NMAX]
    load_rows(n, rows, r)
    return chromatic(n, r)


def adjacency_rank(int n, rows):
    cdef u32 r[NMAX]
    if n > RANK_NMAX:
        return _py.adjacency_rank(n, rows)
    load_rows(n, rows, r)
    return rank64(n, r)


def param_value(int n, rows, int pcode):
    cdef u32 r[NMAX]
    if not 0 <= pcode <= 9:
        raise ValueError(f"unknown parameter code {pcode}")
    if pcode == P_RANK and n > RANK_NMAX:
        return _py.adjacency_rank(n, rows)
    load_rows(n, rows, r)
    return param_c(n, r, pcode)


def param_values(int n, codes, int pcode):
    cdef u32 r[NMAX]
    cdef u64 c
    if not 0 <= pcode <= 9:
        raise ValueError(f"unknown parameter code {pcode}")
    check_code_n(n)
    out = []
    for code in codes:
        c = code
        decode(n, c, r)
        out.append(param_c(n, r, pcode))
    return out


# ---------------------------------------------------------------- switches


cdef inline void apply_c(u32* rows, int a, int b, int c, int d) noexcept nogil:
    rows[a] ^= bit(b) | bit(c)
    rows[b] ^= bit(a) | bit(d)
    rows[c] ^= bit(d) | bit(a)
    rows[d] ^= bit(c) | bit(b)


cdef int cmp_u32(const void* x, const void* y) noexcept nogil:
    cdef u32 p = (<const u32*>x)[0]
    cdef u32 q = (<const u32*>y)[0]
    return (p > q) - (p < q)


cdef Py_ssize_t switch_list(int n, const u32* rows, u32** buf, Py_ssize_t* cap) noexcept nogil:
    """Packed a<<24|b<<16|c<<8|d switches, unsorted. Returns -1 on allocation failure."""
    cdef int eu[PAIRS_MAX]
    cdef int ev[PAIRS_MAX]
    cdef int m = 0
    cdef int i, p, q, a, b, c, d
    cdef u32 f, touch
    cdef Py_ssize_t k = 0
    cdef u32* grown
    for i in range(n):
        f = rows[i] >> (i + 1) if i + 1 < 32 else 0
        while f:
            eu[m] = i
            ev[m] = i + 1 + ctz(f)
            m += 1
            f &= f - 1
    for p in range(m):
        a = eu[p]
        b = ev[p]
        touch = bit(a) | bit(b)
        for q in range(p + 1, m):
            c = eu[q]
            d = ev[q]
            if (touch >> c) & 1 or (touch >> d) & 1:
                continue
            if k + 2 > cap[0]:
                grown = <u32*>realloc(buf[0], 2 * (cap[0] + 2) * sizeof(u32))
                if grown == NULL:
                    return -1
                buf[0] = grown
                cap[0] = 2 * (cap[0] + 2)
            if not (rows[a] >> c) & 1 and not (rows[b] >> d) & 1:
                buf[0][k] = (<u32>a << 24) | (<u32>b << 16) | (<u32>c << 8) | <u32>d
                k += 1
            if not (rows[a] >> d) & 1 and not (rows[b] >> c) & 1:
                buf[0][k] = (<u32>a << 24) | (<u32>b << 16) | (<u32>d << 8) | <u32>c
                k += 1
    return k


def switches(int n, rows):
    cdef u32 r[NMAX]
    cdef u32* buf = NULL
    cdef Py_ssize_t cap = 0, k, i
    cdef u32 w
    load_rows(n, rows, r)
    k = switch_list(n, r, &buf, &cap)
    try:
        if k < 0:
            raise MemoryError()
        qsort(buf, k, sizeof(u32), cmp_u32)
        out = []
        for i in range(k):
            w = buf[i]
            out.append((<int>(w >> 24), <int>((w >> 16) & 255), <int>((w >> 8) & 255), <int>(w & 255)))
        return out
    finally:
        free(buf)


def apply_switch(rows, int a, int b, int c, int d):
    out = list(rows)
    out[a] ^= 1 << b | 1 << c
    out[b] ^= 1 << a | 1 << d
    out[c] ^= 1 << d | 1 << a
    out[d] ^= 1 << c | 1 << b
    return out


cdef int tree_path(int n, const u32* rows, int src, int dst, int* path) noexcept nogil:
    """BFS path src..dst written to ``path``; returns its vertex count or 0."""
    cdef int parent[NMAX]
    cdef int queue[NMAX]
    cdef int head = 0, tail = 0, v, u, L, x
    cdef u32 seen = bit(src)
    cdef u32 f
    parent[src] = -1
    queue[tail] = src
    tail += 1
    while head < tail and not (seen >> dst) & 1:
        v = queue[head]
        head += 1
        f = rows[v] & ~seen
        while f:
            u = ctz(f)
            f &= f - 1
            seen |= bit(u)
            parent[u] = v
            queue[tail] = u
            tail += 1
    if not (seen >> dst) & 1:
        return 0
    L = 0
    x = dst
    while x != -1:
        path[L] = x
        L += 1
        x = parent[x]
    # reverse in place
    for v in range(L // 2):
        u = path[v]
        path[v] = path[L - 1 - v]
        path[L - 1 - v] = u
    return L


cdef int t_reason(int n, const u32* rows, int a, int b, int c, int d) noexcept nogil:
    cdef int path[NMAX]
    cdef int L = tree_path(n, rows, a, d, path)
    if L >= 2 and path[1] == b and path[L - 2] == c:
        return C_T_AB_CD
    L = tree_path(n, rows, b, c, path)
    if L >= 2 and path[1] == a and path[L - 2] == d:
        return C_T_BA_DC
    return C_T_NONE


cdef inline void drop(u32* rows, int u, int v) noexcept nogil:
    rows[u] &= ~bit(v)
    rows[v] &= ~bit(u)


cdef bint t_on_all_cuts(int n, const u32* rows, u32 cyc, int a, int b, int c, int d) noexcept nogil:
    cdef u32 cut[NMAX]
    cdef u32 f, g
    cdef int u, v
    f = cyc
    while f:
        u = ctz(f)
        f &= f - 1
        g = rows[u] & cyc
        while g:
            v = ctz(g)
            g &= g - 1
            if u < v:
                memcpy(cut, rows, n * sizeof(u32))
                drop(cut, u, v)
                if t_reason(n, cut, a, b, c, d) == C_T_NONE:
                    return False
    return True


cdef inline bint acyclic_side(const u32* cut, int v, u32 span, u32 core) noexcept nogil:
    return not (reach(cut, v, span) & core)


cdef int classify_c(int kind, int n, const u32* rows, int a, int b, int c, int d,
                    bint* keep) noexcept nogil:
    cdef int r
    cdef u32 full = full_mask(n)
    cdef u32 core, comp_ab, comp_cd, cyc, k, span
    cdef u32 ring[NMAX]
    cdef u32 cut[NMAX]
    cdef bint ab_cyc, cd_cyc
    cdef int v
    if kind == CK_T:
        r = t_reason(n, rows, a, b, c, d)
        keep[0] = r != C_T_NONE
        return r
    if kind == CK_F:
        if not (reach(rows, a, full) >> c) & 1:
            keep[0] = True
            return C_F_DIFF
        if t_reason(n, rows, a, b, c, d) == C_T_NONE:
            keep[0] = False
            return C_F_BROKEN
        keep[0] = True
        return C_F_TREE
    core = core2(n, rows)
    ab_cyc = (core >> a) & 1 and (core >> b) & 1
    cd_cyc = (core >> c) & 1 and (core >> d) & 1
    if kind == CK_U:
        if ab_cyc and cd_cyc:
            if popc(core) <= 5:
                keep[0] = True
                return C_U_SHORT
            for v in range(n):
                ring[v] = rows[v] & core
            apply_c(ring, a, b, c, d)
            if reach(ring, a, core) == core:
                keep[0] = True
                return C_U_KEPT
            keep[0] = False
            return C_U_SPLIT
        if ab_cyc or cd_cyc:
            keep[0] = True
            return C_U_MIXED
        if t_on_all_cuts(n, rows, core, a, b, c, d):
            keep[0] = True
            return C_U_KEEP
        keep[0] = False
        return C_U_BREAK
    # pseudoforest
    comp_ab = reach(rows, a, full)
    comp_cd = comp_ab if (comp_ab >> c) & 1 else reach(rows, c, full)
    keep[0] = True
    if ab_cyc or cd_cyc:
        return C_P_OTHER
    if comp_ab == comp_cd:
        cyc = comp_ab & core
        if not cyc:
            return C_P_OTHER
        for v in range(n):
            ring[v] = rows[v] & ~cyc if (cyc >> v) & 1 else rows[v]
        if not (reach(ring, a, comp_ab) >> c) & 1:
            if t_on_all_cuts(n, rows, cyc, a, b, c, d):
                return C_P_SPLIT_KEEP
            keep[0] = False
            return C_P_SPLIT_BREAK
        memcpy(cut, rows, n * sizeof(u32))
        drop(cut, a, b)
        drop(cut, c, d)
        k = reach(cut, ctz(cyc), comp_ab)
        if ((k >> a) & 1 and (k >> c) & 1) or ((k >> b) & 1 and (k >> d) & 1):
            keep[0] = False
            return C_P_SHARED_BREAK
        return C_P_SHARED_KEEP
    if not (comp_ab & core) or not (comp_cd & core):
        return C_P_OTHER
    memcpy(cut, rows, n * sizeof(u32))
    drop(cut, a, b)
    drop(cut, c, d)
    span = comp_ab | comp_cd
    if (acyclic_side(cut, b, span, core) and acyclic_side(cut, c, span, core)) or \
            (acyclic_side(cut, a, span, core) and acyclic_side(cut, d, span, core)):
        return C_P_CROSS_KEEP
    keep[0] = False
    return C_P_CROSS_BREAK


cdef bint predicate(int kind, int n, const u32* rows) noexcept nogil:
    cdef int st[5]
    stats(n, rows, st)
    if kind == CK_T:
        return st[0] == 1 and st[2] == 0 and st[3] == 0
    if kind == CK_F:
        return st[2] == 0 and st[3] == 0
    if kind == CK_U:
        return st[0] == 1 and st[2] == 1
    return st[3] == 0


def classify(int kind, int n, rows, int a, int b, int c, int d):
    """Return (preserves, reason_code) for a switch already known valid."""
    cdef u32 r[NMAX]
    cdef bint keep = False
    cdef int code
    if not 0 <= kind <= 3:
        raise ValueError(f"unknown kind {kind}")
    load_rows(n, rows, r)
    code = classify_c(kind, n, r, a, b, c, d, &keep)
    return bool(keep), code


# ---------------------------------------------------------------- transition


cdef int make_trimmable_c(int n, const u32* f, const u32* g, u32 alive, int* tau) noexcept nogil:
    cdef int path[NMAX]
    cdef int ell = -1, u = -1, v, w, L, first_leaf = -1
    cdef u32 it
    cdef bint all_leaves = True
    it = alive
    while it:
        v = ctz(it)
        it &= it - 1
        if single(f[v]) and first_leaf < 0:
            first_leaf = v
        if g[v] & (g[v] - 1):
            all_leaves = False
    if all_leaves:
        ell = first_leaf
        v = ctz(f[ell])
        u = ctz(g[ell])
        w = ctz(f[u])
        tau[0] = ell
        tau[1] = v
        tau[2] = u
        tau[3] = w
        return 0
    it = alive
    while it:
        v = ctz(it)
        it &= it - 1
        if not single(f[v]):
            continue
        ell = v
        u = ctz(g[ell])
        if g[u] & (g[u] - 1):
            break
    v = ctz(f[ell])
    L = tree_path(n, f, ell, u, path)
    if L == 0:
        w = ctz(f[u])
    else:
        w = ctz(f[u] & ~bit(path[L - 2]))
    tau[0] = ell
    tau[1] = v
    tau[2] = u
    tau[3] = w
    return 0


cdef inline int gain_c(const u32* g, int a, int b, int c, int d) noexcept nogil:
    return (<int>((g[a] >> c) & 1) + <int>((g[b] >> d) & 1)
            - <int>((g[a] >> b) & 1) - <int>((g[c] >> d) & 1))


cdef bint stays_forest(int n, const u32* rows, int a, int b, int c, int d) noexcept nogil:
    cdef u32 cut[NMAX]
    memcpy(cut, rows, n * sizeof(u32))
    drop(cut, a, b)
    drop(cut, c, d)
    if reach(cut, a, full_mask(n)) & bit(c):
        return False
    cut[a] |= bit(c)
    cut[c] |= bit(a)
    return not (reach(cut, b, full_mask(n)) & bit(d))


cdef int transition_step_c(int n, const u32* f, const u32* g, u32 alive, int* tau) noexcept nogil:
    """Mirror of the Python transition step."""
    cdef int path[NMAX]
    cdef u32 trims[NMAX * NMAX]
    cdef int nt = 0, ell, u, v, w, L, target, q
    cdef u32 it, cand, t
    cdef bint all_leaves = True
    cdef u32* buf = NULL
    cdef Py_ssize_t cap = 0, k, i, no = 0
    it = alive
    while it:
        v = ctz(it)
        it &= it - 1
        if g[v] & (g[v] - 1):
            all_leaves = False
    if all_leaves:
        return make_trimmable_c(n, f, g, alive, tau)
    it = alive
    while it:
        ell = ctz(it)
        it &= it - 1
        if not single(f[ell]):
            continue
        u = ctz(g[ell])
        if not (g[u] & (g[u] - 1)):
            continue
        v = ctz(f[ell])
        L = tree_path(n, f, ell, u, path)
        cand = f[u] if L == 0 else f[u] & ~bit(path[L - 2])
        while cand:
            w = ctz(cand)
            cand &= cand - 1
            trims[nt] = (<u32>ell << 24) | (<u32>v << 16) | (<u32>u << 8) | <u32>w
            nt += 1
    k = switch_list(n, f, &buf, &cap)
    if k > 0:
        qsort(buf, k, sizeof(u32), cmp_u32)
    for i in range(k):
        t = buf[i]
        if stays_forest(n, f, (t >> 24) & 255, (t >> 16) & 255, (t >> 8) & 255, t & 255):
            buf[no] = t
            no += 1
    for target in range(2, 0, -1):
        for q in range(nt):
            t = trims[q]
            if gain_c(g, (t >> 24) & 255, (t >> 16) & 255, (t >> 8) & 255, t & 255) >= target:
                free(buf)
                unpack(t, tau)
                return 0
        for i in range(no):
            t = buf[i]
            if gain_c(g, (t >> 24) & 255, (t >> 16) & 255, (t >> 8) & 255, t & 255) >= target:
                free(buf)
                unpack(t, tau)
                return 0
    free(buf)
    return make_trimmable_c(n, f, g, alive, tau)


cdef inline void unpack(u32 t, int* tau) noexcept nogil:
    tau[0] = (t >> 24) & 255
    tau[1] = (t >> 16) & 255
    tau[2] = (t >> 8) & 255
    tau[3] = t & 255


cdef int forest_transition_c(int n, const u32* rows_f, const u32* rows_g, int* out) noexcept nogil:
    """Writes switches to out[4k..4k+3]; returns their count."""
    cdef u32 f[NMAX]
    cdef u32 g[NMAX]
    cdef u32 alive, lam
    cdef int v, ell, k = 0, x
    cdef bint same
    memcpy(f, rows_f, n * sizeof(u32))
    memcpy(g, rows_g, n * sizeof(u32))
    while True:
        same = True
        for v in range(n):
            if f[v] != g[v]:
                same = False
                break
        if same:
            return k
        alive = 0
        for v in range(n):
            if f[v]:
                alive |= bit(v)
        lam = trimmable_mask(f, g, alive)
        if not lam:
            if transition_step_c(n, f, g, alive, out + 4 * k) < 0:
                return -1
            apply_c(f, out[4 * k], out[4 * k + 1], out[4 * k + 2], out[4 * k + 3])
            k += 1
            lam = trimmable_mask(f, g, alive)
        while lam:
            ell = ctz(lam)
            lam &= lam - 1
            if f[ell]:
                x = ctz(f[ell])
                drop(f, ell, x)
                drop(g, ell, x)


cdef inline u32 trimmable_mask(const u32* f, const u32* g, u32 alive) noexcept nogil:
    cdef u32 out = 0
    cdef u32 it = alive
    cdef int v
    while it:
        v = ctz(it)
        it &= it - 1
        if f[v] == g[v] and single(f[v]):
            out |= bit(v)
    return out


def forest_transition(int n, rows_f, rows_g):
    """Transition between two forests with equal degrees, by leaf trimming."""
    cdef u32 f[NMAX]
    cdef u32 g[NMAX]
    cdef int buf[4 * NMAX * NMAX]
    cdef int k, i
    load_rows(n, rows_f, f)
    load_rows(n, rows_g, g)
    k = forest_transition_c(n, f, g, buf)
    if k < 0:
        raise AssertionError("no f-switch gains a shared edge")
    return [(buf[4 * i], buf[4 * i + 1], buf[4 * i + 2], buf[4 * i + 3]) for i in range(k)]


# ---------------------------------------------------------------- realizations


cdef bint graphical_c(const int* res, int len_) noexcept nogil:
    cdef int seq[NMAX]
    cdef int m = 0, i, j, x, k, total = 0
    cdef long lhs, rhs
    for i in range(len_):
        if res[i]:
            x = res[i]
            j = m
            while j > 0 and seq[j - 1] < x:
                seq[j] = seq[j - 1]
                j -= 1
            seq[j] = x
            m += 1
            total += x
    if total % 2:
        return False
    lhs = 0
    for k in range(1, m + 1):
        lhs += seq[k - 1]
        rhs = k * (k - 1)
        for i in range(k, m):
            rhs += seq[i] if seq[i] < k else k
        if lhs > rhs:
            return False
    return True


cdef struct Realizer:
    int n
    int fcode
    bint prune_forest
    bint prune_pseudo
    int res[NMAX]
    u32 rows[NMAX]
    int comp[NMAX]
    char cyc[NMAX]
    u64* out
    Py_ssize_t count
    Py_ssize_t cap
    Py_ssize_t limit
    bint failed


cdef void place(Realizer* s, int i) noexcept nogil:
    cdef u64* grown
    if s.count > s.limit or s.failed:
        return
    while i < s.n and s.res[i] == 0:
        i += 1
    if i == s.n:
        if filter_ok(s.n, s.rows, s.fcode):
            if s.count == s.cap:
                grown = <u64*>realloc(s.out, (2 * s.cap + 16) * sizeof(u64))
                if grown == NULL:
                    s.failed = True
                    return
                s.out = grown
                s.cap = 2 * s.cap + 16
            s.out[s.count] = encode(s.n, s.rows)
            s.count += 1
        return
    choose(s, i, i + 1, s.res[i])


cdef void choose(Realizer* s, int i, int start, int left) noexcept nogil:
    cdef int j, x, ci, cj
    cdef int saved_comp[NMAX]
    cdef char saved_cyc[NMAX]
    if s.count > s.limit or s.failed:
        return
    if left == 0:
        # res[i] has been spent down to zero by the choices above
        if graphical_c(s.res + i + 1, s.n - i - 1):
            place(s, i + 1)
        return
    for j in range(start, s.n):
        if s.n - j < left:
            break
        if s.res[j] <= 0:
            continue
        memcpy(saved_comp, s.comp, s.n * sizeof(int))
        memcpy(saved_cyc, s.cyc, s.n * sizeof(char))
        ci = s.comp[i]
        cj = s.comp[j]
        if ci == cj:
            if s.prune_forest or (s.prune_pseudo and s.cyc[ci]):
                continue
            s.cyc[ci] = 1
        else:
            if s.prune_pseudo and s.cyc[ci] and s.cyc[cj]:
                continue
            for x in range(s.n):
                if s.comp[x] == cj:
                    s.comp[x] = ci
            s.cyc[ci] = s.cyc[ci] or s.cyc[cj]
        s.res[j] -= 1
        s.res[i] -= 1
        s.rows[i] |= bit(j)
        s.rows[j] |= bit(i)
        choose(s, i, j + 1, left - 1)
        s.rows[i] &= ~bit(j)
        s.rows[j] &= ~bit(i)
        s.res[i] += 1
        s.res[j] += 1
        memcpy(s.comp, saved_comp, s.n * sizeof(int))
        memcpy(s.cyc, saved_cyc, s.n * sizeof(char))


def realizations(degrees, int fcode, limit):
    """Sorted edge codes of all labeled realizations passing the filter.

    Stops after ``limit + 1`` hits so the caller can report the overflow.
    """
    cdef Realizer s
    cdef int i, n = len(degrees)
    cdef Py_ssize_t k
    check_code_n(n)
    memset(&s, 0, sizeof(Realizer))
    s.n = n
    s.fcode = fcode
    s.prune_forest = fcode == 1
    s.prune_pseudo = fcode in (1, 3, 4)
    s.limit = limit
    for i in range(n):
        s.res[i] = degrees[i]
        s.comp[i] = i
    if sum(degrees) % 2 or not graphical_c(s.res, n):
        return []
    try:
        place(&s, 0)
        if s.failed:
            raise MemoryError()
        out = [s.out[k] for k in range(s.count)]
    finally:
        free(s.out)
    out.sort()
    return out


cdef Py_ssize_t find_code(const u64* codes, Py_ssize_t m, u64 key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = m, mid
    while lo < hi:
        mid = (lo + hi) // 2
        if codes[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    if lo < m and codes[lo] == key:
        return lo
    return -1


def rg_edges(int n, codes):
    """Switch edges i < j among the given sorted codes.

    Returns (src, dst, flat) where flat holds the 0-based switch taking
    codes[src[k]] to codes[dst[k]] at positions 4k..4k+3.
    """
    cdef Py_ssize_t m = len(codes), i, j, k, q
    cdef u64* arr
    cdef u32 rows[NMAX]
    cdef int table[NMAX * NMAX]
    cdef u32* buf = NULL
    cdef Py_ssize_t cap = 0
    cdef u32 w
    cdef int a, b, c, d
    cdef u64 image
    check_code_n(n)
    edge_table(n, table)
    arr = <u64*>malloc((m + 1) * sizeof(u64))
    if arr == NULL:
        raise MemoryError()
    src, dst, flat = [], [], []
    try:
        for i in range(m):
            arr[i] = codes[i]
        for i in range(m):
            decode(n, arr[i], rows)
            k = switch_list(n, rows, &buf, &cap)
            if k < 0:
                raise MemoryError()
            qsort(buf, k, sizeof(u32), cmp_u32)
            for q in range(k):
                w = buf[q]
                a = w >> 24
                b = (w >> 16) & 255
                c = (w >> 8) & 255
                d = w & 255
                image = arr[i] ^ (((<u64>1) << table[a * NMAX + b]) | ((<u64>1) << table[c * NMAX + d])
                                  | ((<u64>1) << table[a * NMAX + c]) | ((<u64>1) << table[b * NMAX + d]))
                j = find_code(arr, m, image)
                if j > i:
                    src.append(i)
                    dst.append(j)
                    flat.extend((a, b, c, d))
    finally:
        free(arr)
        free(buf)
    return src, dst, flat


# ---------------------------------------------------------------- sweeps


cdef struct Sweep:
    int n
    int npairs
    int pu[PAIRS_MAX]
    int pv[PAIRS_MAX]
    u32 rows[NMAX]
    int comp[NMAX]
    char cyc[NMAX]
    long long graphs[4]
    long long checks[4]
    long long bad[4]
    bint have_first
    int first_kind
    u32 first_rows[NMAX]
    int first_tau[4]
    u32* buf
    Py_ssize_t cap
    bint failed


cdef void sweep_graph(Sweep* s) noexcept nogil:
    cdef int st[5]
    cdef int kinds[3]
    cdef int nk = 0, q, kd, a, b, c, d
    cdef Py_ssize_t k, t
    cdef u32 image[NMAX]
    cdef u32 w
    cdef bint keep, got
    cdef int n = s.n
    stats(n, s.rows, st)
    kinds[nk] = CK_P
    nk += 1
    if st[2] == 0:
        kinds[nk] = CK_F
        nk += 1
        if st[0] == 1:
            kinds[nk] = CK_T
            nk += 1
    elif st[0] == 1:
        kinds[nk] = CK_U
        nk += 1
    for q in range(nk):
        s.graphs[kinds[q]] += 1
    k = switch_list(n, s.rows, &s.buf, &s.cap)
    if k < 0:
        s.failed = True
        return
    for t in range(k):
        w = s.buf[t]
        a = w >> 24
        b = (w >> 16) & 255
        c = (w >> 8) & 255
        d = w & 255
        memcpy(image, s.rows, n * sizeof(u32))
        apply_c(image, a, b, c, d)
        for q in range(nk):
            kd = kinds[q]
            s.checks[kd] += 1
            classify_c(kd, n, s.rows, a, b, c, d, &keep)
            got = predicate(kd, n, image)
            if keep != got:
                s.bad[kd] += 1
                if not s.have_first:
                    s.have_first = True
                    s.first_kind = kd
                    memcpy(s.first_rows, s.rows, n * sizeof(u32))
                    s.first_tau[0] = a
                    s.first_tau[1] = b
                    s.first_tau[2] = c
                    s.first_tau[3] = d


cdef void sweep_rec(Sweep* s, int k) noexcept nogil:
    cdef int u, v, cu, cv, x
    cdef int saved_comp[NMAX]
    cdef char saved_cyc[NMAX]
    if s.failed:
        return
    if k == s.npairs:
        sweep_graph(s)
        return
    sweep_rec(s, k + 1)
    u = s.pu[k]
    v = s.pv[k]
    cu = s.comp[u]
    cv = s.comp[v]
    if cu == cv and s.cyc[cu]:
        return
    if cu != cv and s.cyc[cu] and s.cyc[cv]:
        return
    memcpy(saved_comp, s.comp, s.n * sizeof(int))
    memcpy(saved_cyc, s.cyc, s.n * sizeof(char))
    if cu == cv:
        s.cyc[cu] = 1
    else:
        for x in range(s.n):
            if s.comp[x] == cv:
                s.comp[x] = cu
        s.cyc[cu] = s.cyc[cu] or s.cyc[cv]
    s.rows[u] |= bit(v)
    s.rows[v] |= bit(u)
    sweep_rec(s, k + 1)
    s.rows[u] &= ~bit(v)
    s.rows[v] &= ~bit(u)
    memcpy(s.comp, saved_comp, s.n * sizeof(int))
    memcpy(s.cyc, saved_cyc, s.n * sizeof(char))


def classifier_sweep(int n):
    """Check every classifier against apply-then-predicate on all pseudoforests.

    Returns (graph counts [trees, forests, unicyclic, pseudoforests],
    checks per kind, disagreements per kind, first disagreement or None).
    """
    cdef Sweep* s = <Sweep*>malloc(sizeof(Sweep))
    cdef int i, j
    if s == NULL:
        raise MemoryError()
    if n > 12:
        free(s)
        raise ValueError("exhaustive pseudoforest sweep is limited to n <= 12")
    memset(s, 0, sizeof(Sweep))
    s.n = n
    for i in range(n):
        s.comp[i] = i
        for j in range(i + 1, n):
            s.pu[s.npairs] = i
            s.pv[s.npairs] = j
            s.npairs += 1
    try:
        with nogil:
            sweep_rec(s, 0)
        if s.failed:
            raise MemoryError()
        first = None
        if s.have_first:
            first = (s.first_kind, tuple(s.first_rows[i] for i in range(n)),
                     tuple(s.first_tau[i] for i in range(4)))
        return ([s.graphs[i] for i in range(4)], [s.checks[i] for i in range(4)],
                [s.bad[i] for i in range(4)], first)
    finally:
        free(s.buf)
        free(s)


cdef bint trace_ok(int n, const u32* start, const u32* target, const int* taus, int k) noexcept nogil:
    cdef u32 cur[NMAX]
    cdef int st[5]
    cdef int q, a, b, c, d, v
    memcpy(cur, start, n * sizeof(u32))
    for q in range(k):
        a = taus[4 * q]
        b = taus[4 * q + 1]
        c = taus[4 * q + 2]
        d = taus[4 * q + 3]
        if not ((cur[a] >> b) & 1 and (cur[c] >> d) & 1):
            return False
        if (cur[a] >> c) & 1 or (cur[b] >> d) & 1:
            return False
        apply_c(cur, a, b, c, d)
        stats(n, cur, st)
        if st[2] or st[3]:
            return False
    for v in range(n):
        if cur[v] != target[v]:
            return False
    return True


def forest_transition_sweep(int n, codes):
    """Run the forest transition on every ordered pair of the given forests.

    Returns (flat row-major lengths, invalid trace count, first invalid pair).
    """
    cdef Py_ssize_t m = len(codes), i, j
    cdef u32* graphs
    cdef int* lengths
    cdef int buf[4 * NMAX * NMAX]
    cdef int k
    cdef long long invalid = 0
    cdef Py_ssize_t fi = -1, fj = -1
    check_code_n(n)
    graphs = <u32*>malloc((m * NMAX + 1) * sizeof(u32))
    lengths = <int*>malloc((m * m + 1) * sizeof(int))
    if graphs == NULL or lengths == NULL:
        free(graphs)
        free(lengths)
        raise MemoryError()
    try:
        for i in range(m):
            decode(n, <u64>codes[i], graphs + i * NMAX)
        with nogil:
            for i in range(m):
                for j in range(m):
                    k = forest_transition_c(n, graphs + i * NMAX, graphs + j * NMAX, buf)
                    lengths[i * m + j] = k
                    if k < 0 or not trace_ok(n, graphs + i * NMAX, graphs + j * NMAX, buf, k):
                        invalid += 1
                        if fi < 0:
                            fi = i
                            fj = j
        out = [lengths[i] for i in range(m * m)]
    finally:
        free(graphs)
        free(lengths)
    return out, invalid, None if fi < 0 else (fi, fj)
