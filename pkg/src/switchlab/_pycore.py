"""Pure-Python kernels.

Every function here has a twin with the same name and signature in the
compiled ``_core`` extension. Graphs are passed as ``(n, rows)`` where
``rows[i]`` is the neighbour bitmask of vertex ``i`` (0-based). Switches are
0-based 4-tuples ``(a, b, c, d)`` meaning: delete ab and cd, add ac and bd.

Callers are responsible for validating preconditions; kernels assume them.
"""

from itertools import combinations

MAX_N = 32

FILTERS = (
    "all",
    "forest",
    "connected",
    "unicyclic",
    "pseudoforest",
    "bipartite",
    "nonbipartite",
)

KIND_T, KIND_F, KIND_U, KIND_P = 0, 1, 2, 3

# reason codes shared with the compiled core; names live in switches.REASONS
R_T_PATH_AB_CD = 1
R_T_PATH_BA_DC = 2
R_T_NO_PATH = 3
R_F_DIFFERENT_COMPONENTS = 4
R_F_SAME_COMPONENT_TREE = 5
R_F_SAME_COMPONENT_BROKEN = 6
R_U_FOREST_EDGES_KEEP = 7
R_U_FOREST_EDGES_BREAK = 8
R_U_MIXED = 9
R_U_SHORT_CYCLE = 10
R_U_CYCLE_SPLIT = 11
R_U_CYCLE_KEPT = 12
R_P_SPLIT_TREES_KEEP = 13
R_P_SPLIT_TREES_BREAK = 14
R_P_SHARED_TREE_KEEP = 15
R_P_SHARED_TREE_BREAK = 16
R_P_CROSS_KEEP = 17
R_P_CROSS_BREAK = 18
R_P_OTHER = 19

P_MATCHING = 0
P_INDEPENDENCE = 1
P_CLIQUE = 2
P_DOMINATION = 3
P_COMPONENTS = 4
P_PATH_COVER = 5
P_ZERO_FORCING = 6
P_CHROMATIC = 7
P_RANK = 8
P_DIAMETER = 9


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _low(x):
    return (x & -x).bit_length() - 1


def edge_index(n, i, j):
    if i > j:
        i, j = j, i
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def rows_to_code(n, rows):
    code = 0
    for i in range(n):
        for j in _bits(rows[i] >> (i + 1)):
            code |= 1 << edge_index(n, i, i + 1 + j)
    return code


def code_to_rows(n, code):
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return rows


# ---------------------------------------------------------------- structure


def _reach(rows, start, allowed):
    comp = 1 << start
    frontier = comp
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def component_masks(n, rows):
    """Vertex masks of the connected components, ordered by least vertex."""
    full = (1 << n) - 1
    seen = 0
    out = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = _reach(rows, s, full)
        seen |= comp
        out.append(comp)
    return out


def _edges_within(rows, mask):
    return sum((rows[v] & mask).bit_count() for v in _bits(mask)) // 2


def _is_bipartite(rows, comps):
    for comp in comps:
        side = [0, 0]
        layer = comp & -comp
        seen = layer
        parity = 0
        while layer:
            side[parity] |= layer
            nxt = 0
            for v in _bits(layer):
                nxt |= rows[v]
            nxt &= ~seen
            seen |= nxt
            layer = nxt
            parity ^= 1
        for s in side:
            for v in _bits(s):
                if rows[v] & s:
                    return False
    return True


def struct_stats(n, rows):
    """Return (components, trees, unicyclic, heavier, bipartite).

    Components are classified by edge-minus-vertex excess: a tree has
    ||H|| = |H| - 1, a unicyclic component ||H|| = |H|, anything denser is
    counted as heavier (two or more cycles).
    """
    comps = component_masks(n, rows)
    trees = uni = heavy = 0
    for comp in comps:
        excess = _edges_within(rows, comp) - comp.bit_count()
        if excess == -1:
            trees += 1
        elif excess == 0:
            uni += 1
        else:
            heavy += 1
    return len(comps), trees, uni, heavy, _is_bipartite(rows, comps)


def two_core(n, rows):
    alive = (1 << n) - 1
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if (rows[v] & alive).bit_count() <= 1:
                alive &= ~(1 << v)
                changed = True
    return alive


def diameter(n, rows):
    """Longest shortest path; -1 when disconnected."""
    full = (1 << n) - 1
    best = 0
    for s in range(n):
        seen = 1 << s
        frontier = seen
        ecc = 0
        while True:
            nxt = 0
            for v in _bits(frontier):
                nxt |= rows[v]
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
            ecc += 1
        if seen != full:
            return -1
        best = max(best, ecc)
    return best


def _filter_ok(n, rows, fcode):
    if fcode == 0:
        return True
    kappa, trees, uni, heavy, bip = struct_stats(n, rows)
    if fcode == 1:
        return uni == 0 and heavy == 0
    if fcode == 2:
        return kappa == 1
    if fcode == 3:
        return kappa == 1 and uni == 1
    if fcode == 4:
        return heavy == 0
    if fcode == 5:
        return bip
    return not bip


# ---------------------------------------------------------------- parameters


def _mm(rows, avail, cur, best):
    while avail:
        v = _low(avail)
        nb = rows[v] & avail
        if nb:
            break
        avail &= ~(1 << v)
    else:
        return max(best, cur)
    if cur + avail.bit_count() // 2 <= best:
        return best
    rest = avail & ~(1 << v)
    if nb & (nb - 1) == 0:
        # a pendant vertex can always be matched to its only neighbour
        return _mm(rows, rest & ~nb, cur + 1, best)
    for u in _bits(nb):
        best = _mm(rows, rest & ~(1 << u), cur + 1, best)
    return _mm(rows, rest, cur, best)


def matching_number(n, rows):
    return _mm(rows, (1 << n) - 1, 0, 0)


def _mis(rows, avail, cur, best):
    if not avail:
        return max(best, cur)
    if cur + avail.bit_count() <= best:
        return best
    vmax = -1
    dmax = -1
    for v in _bits(avail):
        deg = (rows[v] & avail).bit_count()
        if deg <= 1:
            return _mis(rows, avail & ~(rows[v] | 1 << v), cur + 1, best)
        if deg > dmax:
            vmax, dmax = v, deg
    best = _mis(rows, avail & ~(rows[vmax] | 1 << vmax), cur + 1, best)
    return _mis(rows, avail & ~(1 << vmax), cur, best)


def independence_number(n, rows):
    return _mis(rows, (1 << n) - 1, 0, 0)


def clique_number(n, rows):
    full = (1 << n) - 1
    comp = [full & ~rows[v] & ~(1 << v) for v in range(n)]
    return _mis(comp, full, 0, 0)


def domination_number(n, rows):
    full = (1 << n) - 1
    closed = [rows[v] | 1 << v for v in range(n)]
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            cover = 0
            for v in combo:
                cover |= closed[v]
            if cover == full:
                return k
    return n


def path_cover_number(n, rows):
    edges = [(i, j) for i in range(n) for j in _bits(rows[i] >> (i + 1))]
    edges = [(i, i + 1 + j) for i, j in edges]
    target = n - len(component_masks(n, rows))
    deg = [0] * n
    end = list(range(n))
    best = 0

    def rec(k, cur):
        nonlocal best
        if cur > best:
            best = cur
        if best == target or cur + len(edges) - k <= best:
            return
        for q in range(k, len(edges)):
            if cur + len(edges) - q <= best:
                return
            u, v = edges[q]
            if deg[u] >= 2 or deg[v] >= 2 or end[u] == v:
                continue
            eu, ev = end[u], end[v]
            deg[u] += 1
            deg[v] += 1
            end[eu], end[ev] = ev, eu
            rec(q + 1, cur + 1)
            end[eu], end[ev] = u, v
            deg[u] -= 1
            deg[v] -= 1
            if best == target:
                return

    rec(0, 0)
    return n - best


def forcing_closure(rows, infected):
    changed = True
    while changed:
        changed = False
        for v in _bits(infected):
            fresh = rows[v] & ~infected
            if fresh and fresh & (fresh - 1) == 0:
                infected |= fresh
                changed = True
    return infected


def zero_forcing_number(n, rows):
    full = (1 << n) - 1
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            seed = 0
            for v in combo:
                seed |= 1 << v
            if forcing_closure(rows, seed) == full:
                return k
    return n


def _colorable(n, rows, k):
    classes = [0] * k

    def rec(v, used):
        if v == n:
            return True
        for c in range(min(used + 1, k)):
            if rows[v] & classes[c]:
                continue
            classes[c] |= 1 << v
            if rec(v + 1, max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
        return False

    return rec(0, 0)


def chromatic_number(n, rows):
    if n == 0:
        return 0
    k = 2 if any(rows) else 1
    while not _colorable(n, rows, k):
        k += 1
    return k


def adjacency_rank(n, rows):
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    m = [[rows[i] >> j & 1 for j in range(n)] for i in range(n)]
    r = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(r, n) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, n):
            f = m[i][col]
            row_i = m[i]
            row_r = m[r]
            for j in range(col + 1, n):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        r += 1
        if r == n:
            break
    return r


def param_value(n, rows, pcode):
    if pcode == P_MATCHING:
        return matching_number(n, rows)
    if pcode == P_INDEPENDENCE:
        return independence_number(n, rows)
    if pcode == P_CLIQUE:
        return clique_number(n, rows)
    if pcode == P_DOMINATION:
        return domination_number(n, rows)
    if pcode == P_COMPONENTS:
        return len(component_masks(n, rows))
    if pcode == P_PATH_COVER:
        return path_cover_number(n, rows)
    if pcode == P_ZERO_FORCING:
        return zero_forcing_number(n, rows)
    if pcode == P_CHROMATIC:
        return chromatic_number(n, rows)
    if pcode == P_RANK:
        return adjacency_rank(n, rows)
    if pcode == P_DIAMETER:
        return diameter(n, rows)
    raise ValueError(f"unknown parameter code {pcode}")


def param_values(n, codes, pcode):
    return [param_value(n, code_to_rows(n, c), pcode) for c in codes]


# ---------------------------------------------------------------- switches


def switches(n, rows):
    edges = [(i, i + 1 + j) for i in range(n) for j in _bits(rows[i] >> (i + 1))]
    out = []
    for p, (a, b) in enumerate(edges):
        touch = 1 << a | 1 << b
        for c, d in edges[p + 1:]:
            if touch >> c & 1 or touch >> d & 1:
                continue
            if not rows[a] >> c & 1 and not rows[b] >> d & 1:
                out.append((a, b, c, d))
            if not rows[a] >> d & 1 and not rows[b] >> c & 1:
                out.append((a, b, d, c))
    out.sort()
    return out


def apply_switch(rows, a, b, c, d):
    out = list(rows)
    out[a] ^= 1 << b | 1 << c
    out[b] ^= 1 << a | 1 << d
    out[c] ^= 1 << d | 1 << a
    out[d] ^= 1 << c | 1 << b
    return out


def _tree_path(rows, src, dst):
    parent = {src: -1}
    frontier = [src]
    while frontier and dst not in parent:
        nxt = []
        for v in frontier:
            for u in _bits(rows[v]):
                if u not in parent:
                    parent[u] = v
                    nxt.append(u)
        frontier = nxt
    if dst not in parent:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _t_reason(rows, a, b, c, d):
    path = _tree_path(rows, a, d)
    if path is not None and path[1] == b and path[-2] == c:
        return R_T_PATH_AB_CD
    path = _tree_path(rows, b, c)
    if path is not None and path[1] == a and path[-2] == d:
        return R_T_PATH_BA_DC
    return R_T_NO_PATH


def _drop(rows, u, v):
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)


def _cycle_edges(rows, cyc):
    return [(u, v) for u in _bits(cyc) for v in _bits(rows[u] & cyc) if u < v]


def _t_on_all_cuts(rows, cyc, a, b, c, d):
    """True when the switch is a t-switch on U - e for every cycle edge e."""
    for u, v in _cycle_edges(rows, cyc):
        cut = list(rows)
        _drop(cut, u, v)
        if _t_reason(cut, a, b, c, d) == R_T_NO_PATH:
            return False
    return True


def _component_of(rows, n, v):
    return _reach(rows, v, (1 << n) - 1)


def classify(kind, n, rows, a, b, c, d):
    """Return (preserves, reason_code) for a switch already known valid."""
    if kind == KIND_T:
        r = _t_reason(rows, a, b, c, d)
        return r != R_T_NO_PATH, r
    if kind == KIND_F:
        if not _component_of(rows, n, a) >> c & 1:
            return True, R_F_DIFFERENT_COMPONENTS
        if _t_reason(rows, a, b, c, d) == R_T_NO_PATH:
            return False, R_F_SAME_COMPONENT_BROKEN
        return True, R_F_SAME_COMPONENT_TREE
    core = two_core(n, rows)
    ab_cyc = core >> a & 1 and core >> b & 1
    cd_cyc = core >> c & 1 and core >> d & 1
    if kind == KIND_U:
        if ab_cyc and cd_cyc:
            if core.bit_count() <= 5:
                return True, R_U_SHORT_CYCLE
            ring = [rows[v] & core for v in range(n)]
            ring = apply_switch(ring, a, b, c, d)
            if _reach(ring, a, core) == core:
                return True, R_U_CYCLE_KEPT
            return False, R_U_CYCLE_SPLIT
        if ab_cyc or cd_cyc:
            return True, R_U_MIXED
        if _t_on_all_cuts(rows, core, a, b, c, d):
            return True, R_U_FOREST_EDGES_KEEP
        return False, R_U_FOREST_EDGES_BREAK
    # pseudoforest
    comp_ab = _component_of(rows, n, a)
    comp_cd = comp_ab if comp_ab >> c & 1 else _component_of(rows, n, c)
    if ab_cyc or cd_cyc:
        return True, R_P_OTHER
    if comp_ab == comp_cd:
        cyc = comp_ab & core
        if not cyc:
            return True, R_P_OTHER
        forest = [rows[v] & ~cyc if cyc >> v & 1 else rows[v] for v in range(n)]
        if not _reach(forest, a, comp_ab) >> c & 1:
            if _t_on_all_cuts(rows, cyc, a, b, c, d):
                return True, R_P_SPLIT_TREES_KEEP
            return False, R_P_SPLIT_TREES_BREAK
        # both edges hang in the same tree of For(U): the switch fails exactly
        # when a new edge closes a second cycle inside the cyclic remainder
        cut = list(rows)
        _drop(cut, a, b)
        _drop(cut, c, d)
        k = _reach(cut, _low(cyc), comp_ab)
        if (k >> a & 1 and k >> c & 1) or (k >> b & 1 and k >> d & 1):
            return False, R_P_SHARED_TREE_BREAK
        return True, R_P_SHARED_TREE_KEEP
    if not (comp_ab & core) or not (comp_cd & core):
        return True, R_P_OTHER
    cut = list(rows)
    _drop(cut, a, b)
    _drop(cut, c, d)
    span = comp_ab | comp_cd

    def acyclic_side(v):
        return not (_reach(cut, v, span) & core)

    if (acyclic_side(b) and acyclic_side(c)) or (acyclic_side(a) and acyclic_side(d)):
        return True, R_P_CROSS_KEEP
    return False, R_P_CROSS_BREAK


def _predicate(kind, n, rows):
    kappa, trees, uni, heavy, _ = struct_stats(n, rows)
    if kind == KIND_T:
        return kappa == 1 and uni == 0 and heavy == 0
    if kind == KIND_F:
        return uni == 0 and heavy == 0
    if kind == KIND_U:
        return kappa == 1 and uni == 1
    return heavy == 0


# ---------------------------------------------------------------- transition


def _trimmable(f, g, alive):
    return [v for v in _bits(alive) if f[v] == g[v] and f[v] & (f[v] - 1) == 0]


def _make_trimmable(n, f, g, alive):
    leaves = [v for v in _bits(alive) if f[v] & (f[v] - 1) == 0]
    if all(g[v] & (g[v] - 1) == 0 for v in _bits(alive)):
        ell = leaves[0]
        v = _low(f[ell])
        u = _low(g[ell])
        w = _low(f[u])
        return ell, v, u, w
    for ell in leaves:
        u = _low(g[ell])
        if g[u] & (g[u] - 1):
            break
    v = _low(f[ell])
    path = _tree_path(f, ell, u)
    if path is None:
        w = _low(f[u])
    else:
        w = _low(f[u] & ~(1 << path[-2]))
    return ell, v, u, w


def _gain(g, a, b, c, d):
    """Change in the number of edges shared with g when switching (a, b, c, d)."""
    return (g[a] >> c & 1) + (g[b] >> d & 1) - (g[a] >> b & 1) - (g[c] >> d & 1)


def _stays_forest(rows, a, b, c, d):
    cut = list(rows)
    _drop(cut, a, b)
    _drop(cut, c, d)
    if _tree_path(cut, a, c) is not None:
        return False
    cut[a] |= 1 << c
    cut[c] |= 1 << a
    return _tree_path(cut, b, d) is None


def _transition_step(n, f, g, alive):
    """Next switch of the forest transition.

    The switch should gain as many shared edges as possible. A leaf-trimming
    candidate gaining two is taken first, then any f-switch gaining two,
    then the same for a gain of one, then the plain trimming switch. While
    every step gains an edge the length stays within |E(F') - E(F)| - 1.
    """
    if all(g[v] & (g[v] - 1) == 0 for v in _bits(alive)):
        return _make_trimmable(n, f, g, alive)
    trims = []
    for ell in _bits(alive):
        if f[ell] & (f[ell] - 1):
            continue
        u = _low(g[ell])
        if not g[u] & (g[u] - 1):
            continue
        v = _low(f[ell])
        path = _tree_path(f, ell, u)
        cand = f[u] if path is None else f[u] & ~(1 << path[-2])
        trims.extend((ell, v, u, w) for w in _bits(cand))
    others = [t for t in switches(n, f) if _stays_forest(f, *t)]
    for target in (2, 1):
        for pool in (trims, others):
            for tau in pool:
                if _gain(g, *tau) >= target:
                    return tau
    return _make_trimmable(n, f, g, alive)


def forest_transition(n, rows_f, rows_g):
    """Transition between two forests with equal degrees, by leaf trimming."""
    f = list(rows_f)
    g = list(rows_g)
    out = []
    while f != g:
        alive = 0
        for v in range(n):
            if f[v]:
                alive |= 1 << v
        lam = _trimmable(f, g, alive)
        if not lam:
            tau = _transition_step(n, f, g, alive)
            f = apply_switch(f, *tau)
            out.append(tau)
            lam = _trimmable(f, g, alive)
        for ell in lam:
            if f[ell]:
                v = _low(f[ell])
                _drop(f, ell, v)
                _drop(g, ell, v)
    return out


# ---------------------------------------------------------------- realizations


def _graphical(res):
    seq = sorted((x for x in res if x), reverse=True)
    total = sum(seq)
    if total % 2:
        return False
    k_len = len(seq)
    lhs = 0
    for k in range(1, k_len + 1):
        lhs += seq[k - 1]
        rhs = k * (k - 1) + sum(min(x, k) for x in seq[k:])
        if lhs > rhs:
            return False
    return True


def realizations(degrees, fcode, limit):
    """Sorted edge codes of all labeled realizations passing the filter.

    Stops after ``limit + 1`` hits so the caller can report the overflow.
    """
    n = len(degrees)
    res = list(degrees)
    rows = [0] * n
    comp = list(range(n))
    cyc = [False] * n
    out = []
    prune_forest = fcode == 1
    prune_pseudo = fcode in (1, 3, 4)
    if sum(res) % 2 or not _graphical(res):
        return out

    def relabel(old, new):
        for x in range(n):
            if comp[x] == old:
                comp[x] = new

    def place(i):
        if len(out) > limit:
            return
        while i < n and res[i] == 0:
            i += 1
        if i == n:
            if _filter_ok(n, rows, fcode):
                out.append(rows_to_code(n, rows))
            return
        need = res[i]
        cands = [j for j in range(i + 1, n) if res[j] > 0]
        for combo in combinations(cands, need):
            saved_comp = list(comp)
            saved_cyc = list(cyc)
            ok = True
            for j in combo:
                ci, cj = comp[i], comp[j]
                if ci == cj:
                    if prune_forest or (prune_pseudo and cyc[ci]):
                        ok = False
                        break
                    cyc[ci] = True
                else:
                    if prune_pseudo and cyc[ci] and cyc[cj]:
                        ok = False
                        break
                    relabel(cj, ci)
                    cyc[ci] = cyc[ci] or cyc[cj]
            if ok:
                for j in combo:
                    res[j] -= 1
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                res[i] = 0
                if _graphical(res[i + 1:]):
                    place(i + 1)
                res[i] = need
                for j in combo:
                    res[j] += 1
                    rows[i] &= ~(1 << j)
                    rows[j] &= ~(1 << i)
            comp[:] = saved_comp
            cyc[:] = saved_cyc

    place(0)
    out.sort()
    return out


def rg_edges(n, codes):
    """Switch edges i < j among the given sorted codes.

    Returns (src, dst, flat) where flat holds the 0-based switch taking
    codes[src[k]] to codes[dst[k]] at positions 4k..4k+3.
    """
    index = {c: i for i, c in enumerate(codes)}
    src, dst, flat = [], [], []
    for i, code in enumerate(codes):
        rows = code_to_rows(n, code)
        for a, b, c, d in switches(n, rows):
            image = code ^ (
                1 << edge_index(n, a, b)
                | 1 << edge_index(n, c, d)
                | 1 << edge_index(n, a, c)
                | 1 << edge_index(n, b, d)
            )
            j = index.get(image)
            if j is not None and j > i:
                src.append(i)
                dst.append(j)
                flat.extend((a, b, c, d))
    return src, dst, flat


# ---------------------------------------------------------------- sweeps


def pseudoforests(n):
    """Yield the neighbour rows of every labeled pseudoforest on n vertices."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows = [0] * n
    comp = list(range(n))
    cyc = [False] * n

    def rec(k):
        if k == len(pairs):
            yield list(rows)
            return
        yield from rec(k + 1)
        u, v = pairs[k]
        cu, cv = comp[u], comp[v]
        if cu == cv and cyc[cu]:
            return
        if cu != cv and cyc[cu] and cyc[cv]:
            return
        saved_comp = list(comp)
        saved_cyc = list(cyc)
        if cu == cv:
            cyc[cu] = True
        else:
            for x in range(n):
                if comp[x] == cv:
                    comp[x] = cu
            cyc[cu] = cyc[cu] or cyc[cv]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        yield from rec(k + 1)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        comp[:] = saved_comp
        cyc[:] = saved_cyc

    yield from rec(0)


def classifier_sweep(n):
    """Check every classifier against apply-then-predicate on all pseudoforests.

    Returns (graph counts [trees, forests, unicyclic, pseudoforests],
    checks per kind, disagreements per kind, first disagreement or None).
    """
    graphs = [0, 0, 0, 0]
    checks = [0, 0, 0, 0]
    bad = [0, 0, 0, 0]
    first = None
    for rows in pseudoforests(n):
        kappa, trees, uni, heavy, _ = struct_stats(n, rows)
        kinds = [KIND_P]
        if uni == 0:
            kinds.append(KIND_F)
            if kappa == 1:
                kinds.append(KIND_T)
        elif kappa == 1:
            kinds.append(KIND_U)
        for kd in kinds:
            graphs[kd] += 1
        for tau in switches(n, rows):
            image = apply_switch(rows, *tau)
            for kd in kinds:
                checks[kd] += 1
                got, _ = classify(kd, n, rows, *tau)
                if got != _predicate(kd, n, image):
                    bad[kd] += 1
                    if first is None:
                        first = (kd, tuple(rows), tau)
    return graphs, checks, bad, first


def _trace_ok(n, start, target, taus):
    cur = list(start)
    for a, b, c, d in taus:
        if not (cur[a] >> b & 1 and cur[c] >> d & 1):
            return False
        if cur[a] >> c & 1 or cur[b] >> d & 1:
            return False
        cur = apply_switch(cur, a, b, c, d)
        _, _, uni, heavy, _ = struct_stats(n, cur)
        if uni or heavy:
            return False
    return cur == list(target)


def forest_transition_sweep(n, codes):
    """Run the forest transition on every ordered pair of the given forests.

    Returns (flat row-major lengths, invalid trace count, first invalid pair).
    """
    graphs = [code_to_rows(n, c) for c in codes]
    lengths = []
    invalid = 0
    first = None
    for i, f in enumerate(graphs):
        for j, g in enumerate(graphs):
            taus = forest_transition(n, f, g)
            lengths.append(len(taus))
            if not _trace_ok(n, f, g, taus):
                invalid += 1
                if first is None:
                    first = (i, j)
    return lengths, invalid, first
