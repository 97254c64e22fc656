"""Graph algorithms: SCCs, structural flags, emptiness, products,
Fin-removal and alternation removal.

Edges whose guard is the false label are never traversable, so every
algorithm here skips them.  Universal destination groups count each
member as a successor; algorithms that need a plain (nonalternating)
transition structure say so and reject inputs with universal branching.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field

from .acceptance import (BUCHI, COLORS_PER_WORD, TRUE, AccClass, AccFalse,
                         ColorSet, Fin, Inf, dnf_disjuncts, dual,
                         eval_acceptance, f_and, f_or, is_finless, make_class,
                         recognize, shift_colors, subst, used_colors)
from .graph import YES, Automaton, flag_checkers, get_or_compute_flag
from .guards import FALSE_GUARD, TRUE_GUARD


# ---------------------------------------------------------------------------
# Strongly connected components.

class SccInfo:
    """SCC decomposition of the part reachable from the initial designator.

    scc_of[s] is the component id of state s, or -1 when s is
    unreachable.  Components are numbered in reverse topological order:
    every edge between different components goes from a higher id to a
    lower one.  internal[i] lists the edge indices with source in
    component i and at least one destination member back in i; colors[i]
    is the union of their color sets.
    """

    def __init__(self, aut):
        self.aut = aut
        n = aut.num_states
        self.scc_of = [-1] * n
        self.members = []
        self.internal = []
        self.colors = []
        if n == 0:
            return

        index = [-1] * n
        low = [0] * n
        on_stack = [False] * n
        stack = []
        counter = 0

        def succs(v):
            for e in aut.out(v):
                if e.cond == FALSE_GUARD:
                    continue
                yield from aut.univ_dests(e)

        for root in aut.univ_dests(aut.init):
            if index[root] != -1:
                continue
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack[root] = True
            work = [(root, succs(root))]
            while work:
                v, it = work[-1]
                w = next(it, None)
                if w is None:
                    work.pop()
                    if work:
                        u = work[-1][0]
                        if low[v] < low[u]:
                            low[u] = low[v]
                    if low[v] == index[v]:
                        cid = len(self.members)
                        comp = []
                        while True:
                            x = stack.pop()
                            on_stack[x] = False
                            self.scc_of[x] = cid
                            comp.append(x)
                            if x == v:
                                break
                        self.members.append(comp)
                elif index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, succs(w)))
                elif on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]

        self.internal = [[] for _ in self.members]
        self.colors = [ColorSet(0, aut.nwords) for _ in self.members]
        for idx in range(1, len(aut.edges)):
            e = aut.edges[idx]
            if e.cond == FALSE_GUARD:
                continue
            cid = self.scc_of[e.src]
            if cid < 0:
                continue
            if any(self.scc_of[d] == cid for d in aut.univ_dests(e)):
                self.internal[cid].append(idx)
                self.colors[cid] = self.colors[cid] | e.acc

    @property
    def num(self):
        return len(self.members)

    def is_trivial(self, cid):
        return not self.internal[cid]

    def is_reachable(self, state):
        return self.scc_of[state] >= 0


def scc_info(aut):
    return SccInfo(aut)


def reachable_states(aut):
    """States reachable from the initial designator, in discovery order."""
    if aut.num_states == 0:
        return []
    seen = []
    seen_set = set()
    queue = deque()
    for s in aut.univ_dests(aut.init):
        if s not in seen_set:
            seen_set.add(s)
            seen.append(s)
            queue.append(s)
    while queue:
        s = queue.popleft()
        for e in aut.out(s):
            if e.cond == FALSE_GUARD:
                continue
            for d in aut.univ_dests(e):
                if d not in seen_set:
                    seen_set.add(d)
                    seen.append(d)
                    queue.append(d)
    return seen


# ---------------------------------------------------------------------------
# Structural flag checkers.

def _check_universal(aut):
    # no universal branching and, per state, pairwise disjoint guards
    if aut.has_universal_branches():
        return False
    for s in range(aut.num_states):
        union = FALSE_GUARD
        for e in aut.out(s):
            if e.cond == FALSE_GUARD:
                continue
            if aut.store.g_and(union, e.cond) != FALSE_GUARD:
                return False
            union = aut.store.g_or(union, e.cond)
    return True


def _check_complete(aut):
    if aut.num_states == 0:
        return False
    for s in range(aut.num_states):
        union = FALSE_GUARD
        for e in aut.out(s):
            union = aut.store.g_or(union, e.cond)
        if union != TRUE_GUARD:
            return False
    return True


def _check_weak(aut):
    # in each SCC, every internal edge carries the same colors, so all of
    # the component's cycles agree on acceptance
    info = scc_info(aut)
    for edges in info.internal:
        accs = {aut.edges[i].acc for i in edges}
        if len(accs) > 1:
            return False
    return True


def _check_very_weak(aut):
    info = scc_info(aut)
    if any(len(m) > 1 for m in info.members):
        return False
    return get_or_compute_flag(aut, "weak")


def _check_inherently_weak(aut):
    # no component may contain an accepting cycle and a rejecting cycle
    if aut.has_universal_branches():
        raise ValueError("inherently_weak needs a nonalternating automaton")
    info = scc_info(aut)
    rejecting = dual(aut.acceptance)
    for edges in info.internal:
        if not edges:
            continue
        if _search_edges(aut, edges, aut.acceptance) is None:
            continue
        if _search_edges(aut, edges, rejecting) is not None:
            return False
    return True


def _check_terminal(aut):
    # weak, and every accepting component is a complete sink
    if not get_or_compute_flag(aut, "weak"):
        return False
    info = scc_info(aut)
    for cid, members in enumerate(info.members):
        if not info.internal[cid]:
            continue
        if not eval_acceptance(aut.acceptance, info.colors[cid]):
            continue
        for s in members:
            union = FALSE_GUARD
            for e in aut.out(s):
                if e.cond == FALSE_GUARD:
                    continue
                if any(info.scc_of[d] != cid for d in aut.univ_dests(e)):
                    return False
                union = aut.store.g_or(union, e.cond)
            if union != TRUE_GUARD:
                return False
    return True


flag_checkers["universal"] = _check_universal
flag_checkers["complete"] = _check_complete
flag_checkers["weak"] = _check_weak
flag_checkers["very_weak"] = _check_very_weak
flag_checkers["inherently_weak"] = _check_inherently_weak
flag_checkers["terminal"] = _check_terminal


def is_universal(aut):
    return get_or_compute_flag(aut, "universal")


def is_complete(aut):
    return get_or_compute_flag(aut, "complete")


def is_weak(aut):
    return get_or_compute_flag(aut, "weak")


def is_very_weak(aut):
    return get_or_compute_flag(aut, "very_weak")


def is_inherently_weak(aut):
    return get_or_compute_flag(aut, "inherently_weak")


def is_terminal(aut):
    return get_or_compute_flag(aut, "terminal")


# ---------------------------------------------------------------------------
# Emptiness for arbitrary acceptance conditions.
#
# The search decomposes the graph into SCCs.  Colors absent from a
# component can only be seen finitely often there, which substitutes
# their atoms by constants.  A Fin-free residual formula is satisfied by
# a closed walk covering all of the component's edges.  Otherwise some
# Fin(c) with c present is picked and both ways of satisfying it are
# tried: delete the c-colored edges, or give up on it (Fin(c) := false,
# sound because the formula is monotone in its atoms).

def _subgraph_sccs(aut, edge_idxs):
    adj = {}
    nodes = []
    node_set = set()
    for i in edge_idxs:
        e = aut.edges[i]
        assert e.dst >= 0
        adj.setdefault(e.src, []).append(i)
        for v in (e.src, e.dst):
            if v not in node_set:
                node_set.add(v)
                nodes.append(v)

    index = {}
    low = {}
    on_stack = set()
    stack = []
    counter = 0
    out = []

    def succs(v):
        for i in adj.get(v, ()):
            yield aut.edges[i].dst

    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, succs(root))]
        while work:
            v, it = work[-1]
            w = next(it, None)
            if w is None:
                work.pop()
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    comp = set()
                    while True:
                        x = stack.pop()
                        on_stack.discard(x)
                        comp.add(x)
                        if x == v:
                            break
                    internal = [i for x in comp for i in adj.get(x, ())
                                if aut.edges[i].dst in comp]
                    out.append((comp, internal))
            elif w not in index:
                index[w] = low[w] = counter
                counter += 1
                stack.append(w)
                on_stack.add(w)
                work.append((w, succs(w)))
            elif w in on_stack:
                if index[w] < low[v]:
                    low[v] = index[w]
    return out


def _first_fin(formula):
    if isinstance(formula, Fin):
        return formula.color
    if hasattr(formula, "children"):
        for c in formula.children:
            got = _first_fin(c)
            if got is not None:
                return got
    return None


def _search_edges(aut, edge_idxs, formula):
    """A strongly connected edge set whose closed walks satisfy the
    formula, or None."""
    if isinstance(formula, AccFalse):
        return None
    for comp, internal in _subgraph_sccs(aut, edge_idxs):
        if not internal:
            continue
        present = ColorSet(0, aut.nwords)
        for i in internal:
            present = present | aut.edges[i].acc
        absent = [c for c in used_colors(formula).colors()
                  if not present.has(c)]
        g = subst(formula, {c: True for c in absent},
                  {c: False for c in absent})
        if isinstance(g, AccFalse):
            continue
        if is_finless(g):
            # a walk over all internal edges sees every present color
            return internal
        c = _first_fin(g)
        sub = [i for i in internal if not aut.edges[i].acc.has(c)]
        got = _search_edges(aut, sub, g)
        if got is not None:
            return got
        g2 = subst(g, {c: False}, {})
        got = _search_edges(aut, internal, g2)
        if got is not None:
            return got
    return None


def _accepting_edge_set(aut):
    if aut.has_universal_branches():
        raise ValueError("emptiness needs a nonalternating automaton")
    reach = set(reachable_states(aut))
    edges = [i for i in range(1, len(aut.edges))
             if aut.edges[i].cond != FALSE_GUARD
             and aut.edges[i].src in reach]
    return _search_edges(aut, edges, aut.acceptance)


def is_empty(aut):
    """True iff the automaton accepts no word."""
    return _accepting_edge_set(aut) is None


@dataclass
class Lasso:
    """An accepting run: a finite prefix into a repeated cycle.

    Both parts are lists of edge indices; the cycle is nonempty and
    returns to its starting state.
    """
    prefix: list = field(default_factory=list)
    cycle: list = field(default_factory=list)


def check_run(aut, run):
    """Validate that a Lasso really is an accepting run."""
    if not run.cycle:
        return False
    at = aut.init
    if at < 0:
        return False
    for i in run.prefix + [run.cycle[0]]:
        e = aut.edges[i]
        if e.src != at or e.dst < 0 or e.cond == FALSE_GUARD:
            return False
        at = e.dst
    start = aut.edges[run.cycle[0]].src
    at = start
    seen = ColorSet(0, aut.nwords)
    for i in run.cycle:
        e = aut.edges[i]
        if e.src != at or e.dst < 0 or e.cond == FALSE_GUARD:
            return False
        at = e.dst
        seen = seen | e.acc
    if at != start:
        return False
    return eval_acceptance(aut.acceptance, seen)


def _bfs_path(aut, sources, goals, allowed=None):
    """Shortest edge path from any source to any goal state.

    allowed restricts the usable edge indices; None means every
    non-false edge.  Returns a list of edge indices (may be empty when a
    source already is a goal)."""
    prev = {}
    queue = deque()
    for s in sources:
        if s in goals:
            return []
        prev[s] = None
        queue.append(s)
    while queue:
        v = queue.popleft()
        idxs = aut.out_indices(v) if allowed is None else \
            [i for i in allowed if aut.edges[i].src == v]
        for i in idxs:
            e = aut.edges[i]
            if e.cond == FALSE_GUARD or e.dst < 0:
                continue
            if e.dst in prev:
                continue
            prev[e.dst] = i
            if e.dst in goals:
                path = []
                at = e.dst
                while prev[at] is not None:
                    path.append(prev[at])
                    at = aut.edges[prev[at]].src
                path.reverse()
                return path
            queue.append(e.dst)
    return None


def accepting_run(aut):
    """An accepting Lasso, or None when the language is empty."""
    witness = _accepting_edge_set(aut)
    if witness is None:
        return None
    # `witness` is a strongly connected edge set; a closed walk covering
    # all of it sees exactly its colors, which satisfy the acceptance.
    by_src = {}
    for i in witness:
        by_src.setdefault(aut.edges[i].src, []).append(i)
    start = aut.edges[witness[0]].src
    prefix = _bfs_path(aut, list(aut.univ_dests(aut.init)), {start})
    assert prefix is not None

    cycle = []
    remaining = set(witness)
    at = start
    while remaining:
        goals = {aut.edges[i].src for i in remaining}
        path = _bfs_path(aut, [at], goals, allowed=witness)
        assert path is not None
        for i in path:
            remaining.discard(i)
        cycle.extend(path)
        at = aut.edges[path[-1]].dst if path else at
        pick = None
        for i in by_src.get(at, ()):
            if i in remaining:
                pick = i
                break
        if pick is not None:
            cycle.append(pick)
            remaining.discard(pick)
            at = aut.edges[pick].dst
    back = _bfs_path(aut, [at], {start}, allowed=witness)
    assert back is not None
    cycle.extend(back)
    run = Lasso(prefix, cycle)
    assert check_run(aut, run)
    return run


# ---------------------------------------------------------------------------
# Fin removal.

def remove_fin(aut):
    """An equivalent automaton whose acceptance has no Fin atom.

    Works disjunct by disjunct on the DNF.  For each disjunct a copy of
    the automaton is kept whose edges avoid that disjunct's Fin colors
    and stay inside one original SCC; the run may jump from the original
    part into any copy at any moment.  Every copy edge carries a fresh
    marker color, so staying in a copy forever is observable even for
    disjuncts with no Inf atoms.
    """
    if aut.has_universal_branches():
        raise ValueError("Fin removal needs a nonalternating automaton")
    if is_finless(aut.acceptance):
        return aut.clone(keep_flags=True)
    disjuncts = dnf_disjuncts(aut.acceptance)
    assert disjuncts is not None  # a formula with Fin atoms is not t
    info = scc_info(aut)
    n = aut.num_states

    marker = []
    inf_map = []
    next_color = 0
    for fins, infs in disjuncts:
        marker.append(next_color)
        next_color += 1
        inf_map.append({c: next_color + k for k, c in enumerate(sorted(infs))})
        next_color += len(infs)
    total = next_color
    nwords = max(1, (total + COLORS_PER_WORD - 1) // COLORS_PER_WORD)

    out = Automaton(aut.aps, nwords, aut.store)
    out.new_states(n * (1 + len(disjuncts)))
    for e in aut.edge_records():
        out.new_edge(e.src, e.dst, e.cond, None)
    for e in aut.edge_records():
        for d in range(len(disjuncts)):
            out.new_edge(e.src, n * (d + 1) + e.dst, e.cond, None)
    for d, (fins, infs) in enumerate(disjuncts):
        base = n * (d + 1)
        for e in aut.edge_records():
            if any(e.acc.has(c) for c in fins):
                continue
            cid = info.scc_of[e.src]
            if cid < 0 or info.scc_of[e.dst] != cid:
                continue
            colors = [marker[d]] + [inf_map[d][c] for c in infs
                                    if e.acc.has(c)]
            out.new_edge(base + e.src, base + e.dst, e.cond, colors)

    terms = []
    for d, (fins, infs) in enumerate(disjuncts):
        atoms = [Inf(marker[d])] + [Inf(inf_map[d][c]) for c in sorted(infs)]
        terms.append(f_and(atoms))
    out.set_acceptance(total, f_or(terms))
    if n:
        out.set_init(aut.init)
    return out


# ---------------------------------------------------------------------------
# Products.

def _translated(store, cache, other_store, gid, ap_map):
    if gid not in cache:
        cache[gid] = store.translate_from(other_store, gid, ap_map)
    return cache[gid]


def _weak_product_side(weak, other):
    # the optimization drops the weak side's colors entirely; it needs
    # the other acceptance to be Fin-free and to reject colorless cycles
    return (weak.get_flag("weak") is YES
            and is_finless(other.acceptance)
            and not eval_acceptance(other.acceptance, ColorSet(0, 1)))


def product(a, b):
    """Intersection product over the union of the AP lists.

    Runs are paired, so neither operand may use universal branching.
    When one operand is known weak and the other side's acceptance is
    Fin-free and rejects colorless cycles, the weak side contributes no
    colors: its accepting SCCs simply let the partner's colors through.
    """
    if a.has_universal_branches() or b.has_universal_branches():
        raise ValueError("product needs nonalternating automata")
    aps = list(a.aps)
    for p in b.aps:
        if p not in aps:
            aps.append(p)
    map_a = [aps.index(p) for p in a.aps]
    map_b = [aps.index(p) for p in b.aps]

    weak_a = _weak_product_side(a, b)
    weak_b = False if weak_a else _weak_product_side(b, a)
    if weak_a:
        num_sets = b.num_sets
        acceptance = b.acceptance
        gate_info = scc_info(a)
    elif weak_b:
        num_sets = a.num_sets
        acceptance = a.acceptance
        gate_info = scc_info(b)
    else:
        num_sets = a.num_sets + b.num_sets
        acceptance = f_and([a.acceptance,
                            shift_colors(b.acceptance, a.num_sets)])
        gate_info = None
    nwords = max(1, (num_sets + COLORS_PER_WORD - 1) // COLORS_PER_WORD)

    gate_ok = None
    if gate_info is not None:
        side = a if weak_a else b
        gate_ok = [bool(gate_info.internal[cid])
                   and eval_acceptance(side.acceptance, gate_info.colors[cid])
                   for cid in range(gate_info.num)]

    out = Automaton(aps, nwords)
    if a.num_states == 0 or b.num_states == 0:
        out.set_acceptance(num_sets, acceptance)
        out.set_named_prop("product-states", [])
        return out

    cache_a = {}
    cache_b = {}
    # colors beyond an operand's declared count are inert; mask them off
    mask_a = (1 << a.num_sets) - 1
    mask_b = (1 << b.num_sets) - 1
    pairs = [(a.init, b.init)]
    index = {pairs[0]: out.new_state()}
    queue = deque(pairs)
    while queue:
        s, t = queue.popleft()
        src = index[(s, t)]
        for ea in a.out(s):
            ga = _translated(out.store, cache_a, a.store, ea.cond, map_a)
            if ga == FALSE_GUARD:
                continue
            for eb in b.out(t):
                gb = _translated(out.store, cache_b, b.store, eb.cond, map_b)
                g = out.store.g_and(ga, gb)
                if g == FALSE_GUARD:
                    continue
                key = (ea.dst, eb.dst)
                if key not in index:
                    index[key] = out.new_state()
                    pairs.append(key)
                    queue.append(key)
                if weak_a:
                    bits = (eb.acc.bits & mask_b) \
                        if gate_ok[gate_info.scc_of[s]] else 0
                elif weak_b:
                    bits = (ea.acc.bits & mask_a) \
                        if gate_ok[gate_info.scc_of[t]] else 0
                else:
                    bits = (ea.acc.bits & mask_a) \
                        | ((eb.acc.bits & mask_b) << a.num_sets)
                out.new_edge(src, index[key], g, ColorSet(bits, nwords))
    out.set_acceptance(num_sets, acceptance)
    out.set_init(0)
    out.set_named_prop("product-states", pairs)
    return out


# ---------------------------------------------------------------------------
# Alternation removal.

def _macro_name(s, o=None):
    inner = ",".join(str(x) for x in s)
    if o is None:
        return "{%s}" % inner
    return "{%s}|{%s}" % (inner, ",".join(str(x) for x in o))


def _dealternate_buchi(aut):
    """Breakpoint construction for alternating automata with Inf(0).

    Macro states are pairs (S, O): the set of active states and the
    subset still owing a visit to color 0 since the last breakpoint.
    When every owed state delivers, the macro edge shows color 0 and the
    obligation restarts from the full successor set.  At most 3^n macro
    states.
    """
    out = Automaton(aut.aps, 1, aut.store)
    s0 = tuple(sorted(set(aut.univ_dests(aut.init))))
    start = (s0, s0)
    index = {start: out.new_state()}
    names = [_macro_name(*start)]
    queue = deque([start])
    while queue:
        S, O = queue.popleft()
        src = index[(S, O)]
        merged = {}
        for combo in itertools.product(
                *[list(aut.out_indices(s)) for s in S]):
            g = TRUE_GUARD
            for i in combo:
                g = aut.store.g_and(g, aut.edges[i].cond)
                if g == FALSE_GUARD:
                    break
            if g == FALSE_GUARD:
                continue
            succ = set()
            owing = set()
            for s, i in zip(S, combo):
                e = aut.edges[i]
                dests = list(aut.univ_dests(e))
                succ.update(dests)
                if s in O and not e.acc.has(0):
                    owing.update(dests)
            s_next = tuple(sorted(succ))
            if owing:
                key = (s_next, tuple(sorted(owing)), False)
            else:
                key = (s_next, s_next, True)
            merged[key] = aut.store.g_or(merged.get(key, FALSE_GUARD), g)
        for (s_next, o_next, hit), g in merged.items():
            key = (s_next, o_next)
            if key not in index:
                index[key] = out.new_state()
                names.append(_macro_name(*key))
                queue.append(key)
            out.new_edge(src, index[key], g, [0] if hit else None)
    out.set_acceptance(1, Inf(0))
    out.set_init(0)
    out.set_named_prop("state-names", names)
    return out


def _dealternate_weak(aut):
    """Subset construction for weak alternating automata.

    A branch of the run tree settles into one SCC; the word is accepted
    iff no branch settles into a rejecting one.  Rejecting singleton
    components are policed by one progress color each, marked whenever
    the state is absent or its chosen edge leaves it.  All multi-state
    rejecting components share a single breakpoint obligation set like
    the Buchi construction, with same-component successors inheriting
    the debt.  Very weak automata have no multi-state components, so
    their macro states are plain subsets (at most 2^n).
    """
    info = scc_info(aut)
    for edges in info.internal:
        if len({aut.edges[i].acc for i in edges}) > 1:
            raise ValueError("weak dealternation needs SCC-uniform colors")

    rejecting = [bool(info.internal[cid])
                 and not eval_acceptance(aut.acceptance, info.colors[cid])
                 for cid in range(info.num)]
    multi = set()
    singles = []
    for cid in range(info.num):
        if not rejecting[cid]:
            continue
        if len(info.members[cid]) > 1:
            multi.update(info.members[cid])
        else:
            singles.append(info.members[cid][0])
    singles.sort()
    use_break = bool(multi)
    bcolor = 0 if use_break else None
    pcolor = {q: (1 if use_break else 0) + k for k, q in enumerate(singles)}
    total = (1 if use_break else 0) + len(singles)
    nwords = max(1, (total + COLORS_PER_WORD - 1) // COLORS_PER_WORD)

    out = Automaton(aut.aps, nwords, aut.store)
    s0 = tuple(sorted(set(aut.univ_dests(aut.init))))
    o0 = tuple(s for s in s0 if s in multi)
    start = (s0, o0)
    index = {start: out.new_state()}
    names = [_macro_name(*start) if use_break else _macro_name(s0)]
    queue = deque([start])
    while queue:
        S, O = queue.popleft()
        src = index[(S, O)]
        merged = {}
        for combo in itertools.product(
                *[list(aut.out_indices(s)) for s in S]):
            g = TRUE_GUARD
            for i in combo:
                g = aut.store.g_and(g, aut.edges[i].cond)
                if g == FALSE_GUARD:
                    break
            if g == FALSE_GUARD:
                continue
            succ = set()
            owing = set()
            dests_of = {}
            for s, i in zip(S, combo):
                e = aut.edges[i]
                dests = set(aut.univ_dests(e))
                dests_of[s] = dests
                succ.update(dests)
                if s in O:
                    owing.update(d for d in dests
                                 if info.scc_of[d] == info.scc_of[s])
            colors = []
            s_next = tuple(sorted(succ))
            if use_break:
                if owing:
                    o_next = tuple(sorted(owing))
                else:
                    colors.append(bcolor)
                    o_next = tuple(s for s in s_next if s in multi)
            else:
                o_next = ()
            for q in singles:
                if not (q in dests_of and q in dests_of[q]):
                    colors.append(pcolor[q])
            key = (s_next, o_next, tuple(colors))
            merged[key] = aut.store.g_or(merged.get(key, FALSE_GUARD), g)
        for (s_next, o_next, colors), g in merged.items():
            key = (s_next, o_next)
            if key not in index:
                index[key] = out.new_state()
                names.append(_macro_name(*key) if use_break
                             else _macro_name(s_next))
                queue.append(key)
            out.new_edge(src, index[key], g, list(colors))
    out.set_acceptance(total, f_and([Inf(c) for c in range(total)]))
    out.set_init(0)
    out.set_named_prop("state-names", names)
    return out


def remove_alternation(aut):
    """An equivalent automaton without universal branching.

    Nonalternating inputs are copied.  A weak automaton (known or
    detected) goes through the subset construction with per-component
    policing; otherwise the acceptance must be Inf(0) and the breakpoint
    construction runs.  Anything else is rejected.
    """
    if not aut.has_universal_branches():
        return aut.clone(keep_flags=True)
    if aut.get_flag("weak") is YES:
        return _dealternate_weak(aut)
    if recognize(aut.acceptance, aut.num_sets) == BUCHI:
        return _dealternate_buchi(aut)
    if get_or_compute_flag(aut, "weak"):
        return _dealternate_weak(aut)
    raise ValueError(
        "alternation removal covers weak automata and Inf(0) acceptance")


# ---------------------------------------------------------------------------
# Random generation.

def random_acceptance(colors, rng):
    """A random positive formula using each of the colors exactly once."""
    if colors == 0:
        return TRUE
    atoms = [Fin(c) if rng.random() < 0.5 else Inf(c)
             for c in range(colors)]
    rng.shuffle(atoms)
    while len(atoms) > 1:
        i = rng.randrange(len(atoms) - 1)
        a = atoms.pop(i)
        b = atoms.pop(i)
        merged = f_and([a, b]) if rng.random() < 0.5 else f_or([a, b])
        atoms.insert(i, merged)
    return atoms[0]


def random_automaton(states, aps, density=0.5, colors=0, color_density=0.2,
                     acceptance=None, seed=None):
    """A reproducible random automaton.

    For every state and every letter (minterm), an edge toward a uniform
    random target exists with the given density, so density 1 yields a
    complete automaton.  A spanning edge into each state keeps everything
    reachable from state 0.  Each edge then picks up each color with
    probability color_density.

    acceptance may be None (a random formula over the colors), a formula
    node, or an AccClass whose canonical formula is taken.
    """
    if states < 1:
        raise ValueError("need at least one state")
    rng = random.Random(seed)
    names = ["p%d" % i for i in range(aps)] if isinstance(aps, int) \
        else list(aps)
    nminterms = 1 << len(names)
    nwords = max(1, (colors + COLORS_PER_WORD - 1) // COLORS_PER_WORD)
    aut = Automaton(names, nwords)
    aut.new_states(states)
    for s in range(states):
        targets = {}
        for m in range(nminterms):
            if rng.random() < density:
                t = rng.randrange(states)
                targets[t] = targets.get(t, 0) | (1 << m)
        for t in sorted(targets):
            aut.new_edge(s, t, aut.store.intern(targets[t]))
    for s in range(1, states):
        parent = rng.randrange(s)
        m = rng.randrange(nminterms)
        aut.new_edge(parent, s, aut.store.intern(1 << m))
    if colors:
        for e in aut.edge_records():
            bits = 0
            for c in range(colors):
                if rng.random() < color_density:
                    bits |= 1 << c
            e.acc = ColorSet(bits, nwords)
    if acceptance is None:
        formula = random_acceptance(colors, rng)
    elif isinstance(acceptance, AccClass):
        formula = make_class(acceptance)
    else:
        formula = acceptance
    aut.set_acceptance(colors, formula)
    aut.set_init(0)
    return aut
