"""Two-player games on automata, winning strategies, and circuits.

A game is an automaton with a "state-player" named property: 0 marks
states where player 0 (the environment, picking inputs) moves, 1 marks
player 1 (the controller, picking outputs).  A play follows edges
forever; player 1 wins the plays satisfying the acceptance condition.  A
player who cannot move loses immediately.

Solving attaches "state-winner" and "strategy" properties and returns
them as a Solution.  For synthesis games with bipartite input/output
structure, a winning player-1 strategy turns into a Mealy machine and
then into an and-inverter circuit in the AIGER ascii format.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .acceptance import (COLORS_PER_WORD, TRUE, AccTrue, ColorSet,
                         make_class, parity, parity_readings)
from .graph import Automaton
from .guards import FALSE_GUARD, TRUE_GUARD


def make_game(aut, players):
    """Mark the automaton as a game owned per-state by the given players."""
    players = [int(p) for p in players]
    if len(players) != aut.num_states:
        raise ValueError("ownership vector has %d entries for %d states"
                         % (len(players), aut.num_states))
    if any(p not in (0, 1) for p in players):
        raise ValueError("players must be 0 or 1")
    aut.set_named_prop("state-player", players)
    return aut


def state_players(aut):
    players = aut.get_named_prop("state-player", list)
    if players is None:
        raise ValueError("automaton carries no state-player property")
    if len(players) != aut.num_states:
        raise ValueError("ownership vector has %d entries for %d states"
                         % (len(players), aut.num_states))
    if any(p not in (0, 1) for p in players):
        raise ValueError("players must be 0 or 1")
    return list(players)


@dataclass
class Solution:
    """Per-state winners and a memoryless strategy.

    strategy[s] is the winning edge choice at s for the player owning s,
    and 0 where the owner loses at s (or no move is needed)."""
    winners: list
    strategy: list


def _playable(aut):
    out = []
    for s in range(aut.num_states):
        idxs = []
        for i in aut.out_indices(s):
            e = aut.edges[i]
            if e.cond == FALSE_GUARD:
                continue
            if e.dst < 0:
                raise ValueError("games need nonalternating automata")
            idxs.append(i)
        out.append(idxs)
    return out


def solve_safety(game):
    """Solve a game whose acceptance is t.

    Every infinite play is won by player 1, so player 0 wins exactly by
    forcing the play into a state where player 1 is stuck: the player-0
    attractor of player-1 deadlocks.
    """
    if not isinstance(game.acceptance, AccTrue):
        raise ValueError("safety solving needs acceptance t")
    players = state_players(game)
    playable = _playable(game)
    n = game.num_states

    rev = [[] for _ in range(n)]
    for s in range(n):
        for i in playable[s]:
            rev[game.edges[i].dst].append((s, i))

    attr = {s for s in range(n) if players[s] == 1 and not playable[s]}
    strat0 = {}
    cnt = {}
    queue = deque(attr)
    while queue:
        v = queue.popleft()
        for (u, i) in rev[v]:
            if u in attr:
                continue
            if players[u] == 0:
                attr.add(u)
                strat0[u] = i
                queue.append(u)
            else:
                if u not in cnt:
                    cnt[u] = len(playable[u])
                cnt[u] -= 1
                if cnt[u] == 0:
                    attr.add(u)
                    queue.append(u)

    winners = [0 if s in attr else 1 for s in range(n)]
    strategy = [0] * n
    for s in range(n):
        if winners[s] == 0 and players[s] == 0:
            strategy[s] = strat0.get(s, 0)
        elif winners[s] == 1 and players[s] == 1:
            for i in playable[s]:
                if game.edges[i].dst not in attr:
                    strategy[s] = i
                    break
    game.set_named_prop("state-winner", winners)
    game.set_named_prop("strategy", strategy)
    return Solution(winners, strategy)


def _max_odd_reading(formula):
    for mm, eo, count in parity_readings(formula):
        if mm == "max" and eo == "odd":
            return count
    return None


def colorize_parity(aut):
    """Give every edge exactly one color, keeping a max-odd acceptance.

    All colors shift up by two, which preserves both their order and
    their parity; uncolored edges take color 1, odd but lower than any
    original color, so it never changes the maximum of a mixed cycle and
    keeps all-uncolored cycles accepting, matching the empty-set reading
    of a max-odd condition.
    """
    n = _max_odd_reading(aut.acceptance)
    if n is None:
        raise ValueError("acceptance %s has no max-odd parity reading"
                         % aut.acceptance)
    total = n + 2
    nwords = max(aut.nwords, (total + COLORS_PER_WORD - 1) // COLORS_PER_WORD)
    out = aut.clone()
    for e in out.edge_records():
        # only the largest color on an edge can be the maximum of a
        # cycle, so the rest are inert and get dropped
        kept = [c for c in e.acc.colors() if c < n]
        new = max(kept) + 2 if kept else 1
        e.acc = ColorSet.of([new], nwords)
    out._nwords = nwords
    out.set_acceptance(total, make_class(parity("max", "odd", total)))
    return out


def solve_parity_max_odd(game):
    """Zielonka's algorithm for max-odd parity games.

    Every edge must carry exactly one color below the parity index count
    (colorize_parity arranges that).  Internally each edge is split
    through a midpoint vertex carrying the edge's color while original
    states carry color 0, and deadlocks get a virtual self-loop whose
    color makes the stuck player lose.
    """
    players = state_players(game)
    n_parity = _max_odd_reading(game.acceptance)
    if n_parity is None:
        raise ValueError("acceptance %s has no max-odd parity reading"
                         % game.acceptance)
    playable = _playable(game)
    n = game.num_states

    owner = []
    color = []
    succ = []   # per vertex: list of (target vertex, original edge or None)
    for s in range(n):
        owner.append(players[s])
        color.append(0)
        succ.append([])
    for s in range(n):
        for i in playable[s]:
            e = game.edges[i]
            cols = list(e.acc.colors())
            if len(cols) != 1 or cols[0] >= n_parity:
                raise ValueError(
                    "every edge needs exactly one color; colorize first")
            mid = len(owner)
            owner.append(0)
            color.append(cols[0])
            succ.append([(e.dst, None)])
            succ[s].append((mid, i))
    for s in range(n):
        if not playable[s]:
            # virtual self-loop that loses for the stuck player
            mid = len(owner)
            owner.append(0)
            color.append(1 if players[s] == 0 else 0)
            succ.append([(s, None)])
            succ[s].append((mid, None))

    nv = len(owner)
    rev = [[] for _ in range(nv)]
    for v in range(nv):
        for (t, tag) in succ[v]:
            rev[t].append((v, tag))

    def attract(p, target, region):
        attr = set(target)
        strat = {}
        cnt = {}
        queue = deque(target)
        while queue:
            v = queue.popleft()
            for (u, tag) in rev[v]:
                if u not in region or u in attr:
                    continue
                if owner[u] == p:
                    attr.add(u)
                    strat[u] = tag
                    queue.append(u)
                else:
                    if u not in cnt:
                        cnt[u] = sum(1 for (t, _) in succ[u] if t in region)
                    cnt[u] -= 1
                    if cnt[u] == 0:
                        attr.add(u)
                        queue.append(u)
        return attr, strat

    def zielonka(region):
        if not region:
            return set(), set(), {}
        d = max(color[v] for v in region)
        p = d & 1
        target = [v for v in region if color[v] == d]
        area, strat_a = attract(p, target, region)
        w0a, w1a, strata = zielonka(region - area)
        wopp = w0a if p == 1 else w1a
        if not wopp:
            wp = set(region)
            strat = dict(strata)
            strat.update(strat_a)
            for v in target:
                if owner[v] == p and v not in strat:
                    for (t, tag) in succ[v]:
                        if t in region:
                            strat[v] = tag
                            break
            return (set(), wp, strat) if p == 1 else (wp, set(), strat)
        opp = 1 - p
        barrier, strat_b = attract(opp, wopp, region)
        w0b, w1b, strat2 = zielonka(region - barrier)
        strat = dict(strat2)
        strat.update(strat_b)
        for v in wopp:
            if v in strata:
                strat[v] = strata[v]
        if opp == 1:
            return w0b, w1b | barrier, strat
        return w0b | barrier, w1b, strat

    w0, w1, strat = zielonka(set(range(nv)))
    winners = [1 if s in w1 else 0 for s in range(n)]
    strategy = [0] * n
    for s in range(n):
        if winners[s] == players[s]:
            tag = strat.get(s)
            strategy[s] = tag if tag is not None else 0
    game.set_named_prop("state-winner", winners)
    game.set_named_prop("strategy", strategy)
    return Solution(winners, strategy)


def solve_game(game):
    """Dispatch on the objective: t means safety, otherwise the
    acceptance must read as max-odd parity (recoloring edges first when
    they do not carry exactly one color each)."""
    if isinstance(game.acceptance, AccTrue):
        return solve_safety(game)
    n_parity = _max_odd_reading(game.acceptance)
    if n_parity is None:
        raise ValueError("unsupported game objective: %s" % game.acceptance)
    uniform = all(
        len(cols) == 1 and cols[0] < n_parity
        for e in game.edge_records()
        for cols in [list(e.acc.colors())])
    if uniform:
        return solve_parity_max_odd(game)
    sol = solve_parity_max_odd(colorize_parity(game))
    # the recolored clone shares state and edge numbering
    game.set_named_prop("state-winner", sol.winners)
    game.set_named_prop("strategy", sol.strategy)
    return sol


# ---------------------------------------------------------------------------
# Mealy machines.

@dataclass
class MealyMachine:
    """A reactive machine: reads the input APs, drives the output APs.

    edges[s] lists (input_guard, output_guard, destination); the input
    guards of a state should partition the input valuations.  Guards are
    ids into the shared store over the full AP list.
    """
    aps: list
    inputs: list
    outputs: list
    store: object
    num_states: int
    init: int
    edges: list
    origin: list = field(default=None)


def _infer_outputs(game, players):
    outs = set()
    for s in range(game.num_states):
        if players[s] != 1:
            continue
        for e in game.out(s):
            if e.cond == FALSE_GUARD:
                continue
            outs.update(game.store.support(e.cond))
    return sorted(outs)


def strategy_to_mealy(game, solution=None):
    """Compose a winning player-1 strategy into a Mealy machine.

    The game must be bipartite: player-0 states move on inputs into
    player-1 states, whose strategy edge answers with outputs.  Machine
    states are the reachable winning player-0 states.
    """
    players = state_players(game)
    if solution is None:
        winners = game.get_named_prop("state-winner", list)
        strategy = game.get_named_prop("strategy", list)
        if winners is None or strategy is None:
            raise ValueError("game is not solved; run solve_game first")
        solution = Solution(winners, strategy)
    winners = solution.winners
    strategy = solution.strategy

    if game.init < 0:
        raise ValueError("games need nonalternating automata")
    init = game.init
    if players[init] != 0:
        raise ValueError("the initial state must belong to player 0")
    if winners[init] != 1:
        raise ValueError("player 1 does not win from the initial state")

    outputs = game.get_named_prop("synthesis-outputs", list)
    if outputs is None:
        outputs = _infer_outputs(game, players)
    outputs = sorted(int(o) for o in outputs)
    inputs = [i for i in range(len(game.aps)) if i not in outputs]

    index = {init: 0}
    origin = [init]
    edges = [[]]
    queue = deque([init])
    while queue:
        s = queue.popleft()
        row = edges[index[s]]
        for e in game.out(s):
            if e.cond == FALSE_GUARD:
                continue
            mid = e.dst
            if mid < 0:
                raise ValueError("games need nonalternating automata")
            if players[mid] != 1:
                raise ValueError("game is not bipartite at state %d" % s)
            out_idx = strategy[mid]
            if out_idx == 0:
                raise ValueError("no strategy at state %d" % mid)
            eo = game.edges[out_idx]
            dst = eo.dst
            if players[dst] != 0:
                raise ValueError("game is not bipartite at state %d" % mid)
            if dst not in index:
                index[dst] = len(origin)
                origin.append(dst)
                edges.append([])
                queue.append(dst)
            row.append((e.cond, eo.cond, index[dst]))
    return MealyMachine(list(game.aps), inputs, outputs, game.store,
                        len(origin), 0, edges, origin)


def validate_mealy(m):
    """Check input-enabledness and determinism; raises ValueError."""
    inputs = set(m.inputs)
    outputs = set(m.outputs)
    for s in range(m.num_states):
        union = FALSE_GUARD
        for (gin, gout, dst) in m.edges[s]:
            if not set(m.store.support(gin)) <= inputs:
                raise ValueError(
                    "state %d: input guard reads an output AP" % s)
            if not set(m.store.support(gout)) <= outputs:
                raise ValueError(
                    "state %d: output guard drives an input AP" % s)
            if not m.store.is_sat(gout):
                raise ValueError("state %d: empty output choice" % s)
            if m.store.g_and(union, gin) != FALSE_GUARD:
                raise ValueError(
                    "state %d: overlapping input guards" % s)
            union = m.store.g_or(union, gin)
        if union != TRUE_GUARD:
            raise ValueError("state %d: not input-enabled" % s)
    return True


def _output_choice(store, gout, outputs, ap_count):
    """The pinned deterministic output valuation of an output guard:
    first cube of its projection onto the outputs, unmentioned outputs
    driven false."""
    others = [a for a in range(ap_count) if a not in outputs]
    g = store.exists(gout, others)
    cubes = store.to_cubes(g)
    cube = cubes[0]
    return {o: o in cube.positive for o in outputs}


def simulate_mealy(m, steps):
    """Run input rows ("10" per step, one bit per input AP in order)
    through the machine; returns the output rows."""
    s = m.init
    rows = []
    for step in steps:
        vals = [bool(int(ch)) for ch in step]
        if len(vals) != len(m.inputs):
            raise ValueError("expected %d input bits, got %r"
                             % (len(m.inputs), step))
        minterm = 0
        for ap, v in zip(m.inputs, vals):
            if v:
                minterm |= 1 << ap
        hits = [t for t in m.edges[s] if m.store.holds(t[0], minterm)]
        if len(hits) != 1:
            raise ValueError("state %d resolves input %r to %d edges"
                             % (s, step, len(hits)))
        gin, gout, dst = hits[0]
        choice = _output_choice(m.store, gout, m.outputs, len(m.aps))
        rows.append("".join("1" if choice[o] else "0" for o in m.outputs))
        s = dst
    return rows


def mealy_to_automaton(m):
    """The machine as an automaton: labels combine input and output
    guards, the controllable APs are recorded for serialization."""
    out = Automaton(m.aps, 1, m.store)
    out.new_states(m.num_states)
    for s in range(m.num_states):
        for (gin, gout, dst) in m.edges[s]:
            out.new_edge(s, dst, m.store.g_and(gin, gout), None)
    out.set_acceptance(0, TRUE)
    if m.num_states:
        out.set_init(m.init)
    out.set_named_prop("synthesis-outputs", list(m.outputs))
    return out


def automaton_to_mealy(aut):
    """Read a machine back from its automaton form.

    Requires the synthesis-outputs property; every label must split into
    an input part and an output part."""
    outputs = aut.get_named_prop("synthesis-outputs", list)
    if outputs is None:
        raise ValueError("automaton declares no outputs")
    outputs = sorted(int(o) for o in outputs)
    inputs = [i for i in range(len(aut.aps)) if i not in outputs]
    edges = []
    for s in range(aut.num_states):
        row = []
        for e in aut.out(s):
            if e.dst < 0:
                raise ValueError("machines have no universal branching")
            gin = aut.store.exists(e.cond, outputs)
            gout = aut.store.exists(e.cond, inputs)
            if aut.store.g_and(gin, gout) != e.cond:
                raise ValueError(
                    "label at state %d is not input-output separable" % s)
            row.append((gin, gout, e.dst))
        edges.append(row)
    init = aut.init
    if init < 0:
        raise ValueError("machines have no universal branching")
    return MealyMachine(list(aut.aps), inputs, outputs, aut.store,
                        aut.num_states, init, edges, None)


# ---------------------------------------------------------------------------
# AIGER circuits.

class Aig:
    """An and-inverter graph in AIGER ascii conventions.

    Literals are 2*var (positive) or 2*var+1 (negated); variable 0 is
    the constant false, then inputs, then latches, then and-gates.
    Structural hashing folds constants and repeated gates.
    """

    def __init__(self, num_inputs, num_latches):
        self.num_inputs = num_inputs
        self.num_latches = num_latches
        self.latch_next = [0] * num_latches
        self.outputs = []
        self.gates = []
        self.input_names = ["i%d" % i for i in range(num_inputs)]
        self.latch_names = ["l%d" % j for j in range(num_latches)]
        self.output_names = []
        self._cache = {}

    @property
    def maxvar(self):
        return self.num_inputs + self.num_latches + len(self.gates)

    def input_lit(self, i):
        return 2 * (1 + i)

    def latch_lit(self, j):
        return 2 * (1 + self.num_inputs + j)

    def lit_not(self, a):
        return a ^ 1

    def lit_and(self, a, b):
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        if a == b:
            return a
        if a ^ b == 1:
            return 0
        key = (min(a, b), max(a, b))
        if key in self._cache:
            return self._cache[key]
        lhs = 2 * (1 + self.maxvar)
        self.gates.append((lhs, key[1], key[0]))
        self._cache[key] = lhs
        return lhs

    def lit_or(self, a, b):
        return self.lit_not(self.lit_and(a ^ 1, b ^ 1))


def _guard_circuit(aig, store, gid, lit_of_ap):
    acc = 0
    for cube in store.to_cubes(gid):
        lit = 1
        for ap in sorted(cube.positive):
            lit = aig.lit_and(lit, lit_of_ap[ap])
        for ap in sorted(cube.negative):
            lit = aig.lit_and(lit, lit_of_ap[ap] ^ 1)
        acc = aig.lit_or(acc, lit)
    return acc


def mealy_to_aiger(m):
    """Encode the machine as a sequential circuit.

    State codes use the minimal latch count; the initial state takes
    code 0 so the all-zero reset matches it.  Output bits follow the
    pinned deterministic output choice of each edge.
    """
    num_inputs = len(m.inputs)
    nlatches = (m.num_states - 1).bit_length() if m.num_states > 1 else 0
    aig = Aig(num_inputs, nlatches)
    aig.input_names = [m.aps[a] for a in m.inputs]
    aig.latch_names = ["state%d" % j for j in range(nlatches)]
    aig.output_names = [m.aps[a] for a in m.outputs]

    order = [m.init] + [s for s in range(m.num_states) if s != m.init]
    code = {s: k for k, s in enumerate(order)}
    lit_of_ap = {ap: aig.input_lit(k) for k, ap in enumerate(m.inputs)}

    indicator = []
    for s in range(m.num_states):
        lit = 1
        for j in range(nlatches):
            bit = aig.latch_lit(j)
            if not (code[s] >> j) & 1:
                bit ^= 1
            lit = aig.lit_and(lit, bit)
        indicator.append(lit)

    out_fn = {o: 0 for o in m.outputs}
    next_fn = [0] * nlatches
    for s in range(m.num_states):
        for (gin, gout, dst) in m.edges[s]:
            cond = aig.lit_and(indicator[s],
                               _guard_circuit(aig, m.store, gin, lit_of_ap))
            if cond == 0:
                continue
            choice = _output_choice(m.store, gout, m.outputs, len(m.aps))
            for o in m.outputs:
                if choice[o]:
                    out_fn[o] = aig.lit_or(out_fn[o], cond)
            for j in range(nlatches):
                if (code[dst] >> j) & 1:
                    next_fn[j] = aig.lit_or(next_fn[j], cond)
    aig.latch_next = next_fn
    aig.outputs = [out_fn[o] for o in m.outputs]
    return aig


def print_aiger(aig):
    lines = ["aag %d %d %d %d %d"
             % (aig.maxvar, aig.num_inputs, aig.num_latches,
                len(aig.outputs), len(aig.gates))]
    for i in range(aig.num_inputs):
        lines.append(str(aig.input_lit(i)))
    for j in range(aig.num_latches):
        lines.append("%d %d" % (aig.latch_lit(j), aig.latch_next[j]))
    for lit in aig.outputs:
        lines.append(str(lit))
    for (lhs, r0, r1) in aig.gates:
        lines.append("%d %d %d" % (lhs, r0, r1))
    for i, name in enumerate(aig.input_names):
        lines.append("i%d %s" % (i, name))
    for j, name in enumerate(aig.latch_names):
        lines.append("l%d %s" % (j, name))
    for k, name in enumerate(aig.output_names):
        lines.append("o%d %s" % (k, name))
    return "\n".join(lines) + "\n"


def simulate_aig(aig, steps):
    """Drive input rows through the circuit; latches reset to 0.
    Returns the output rows, bits in declaration order."""
    table = [False] * (1 + aig.maxvar)
    latch_vals = [False] * aig.num_latches

    def value(lit):
        return table[lit >> 1] ^ bool(lit & 1)

    rows = []
    for step in steps:
        vals = [bool(int(ch)) for ch in step]
        if len(vals) != aig.num_inputs:
            raise ValueError("expected %d input bits, got %r"
                             % (aig.num_inputs, step))
        for i, v in enumerate(vals):
            table[1 + i] = v
        for j, v in enumerate(latch_vals):
            table[1 + aig.num_inputs + j] = v
        for (lhs, r0, r1) in aig.gates:
            table[lhs >> 1] = value(r0) and value(r1)
        rows.append("".join("1" if value(lit) else "0"
                            for lit in aig.outputs))
        latch_vals = [value(nl) for nl in aig.latch_next]
    return rows
