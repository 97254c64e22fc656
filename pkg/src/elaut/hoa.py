"""Reading and writing the Hanoi Omega-Automata (HOA) v1 text format.

Only explicitly-labeled bodies are supported: every edge either carries
its own [label] or inherits the label of a labeled State: line.  Headers
that start with an uppercase letter must be understood, so an unknown one
is an error; unknown lowercase headers are skipped.

Two extension headers are used: `spot-state-player:` carries the per-state
ownership vector of games, and `controllable-AP:` the output-AP indices of
synthesized machines.  Both are lowercase, so other tools can ignore
them.
"""

from __future__ import annotations

import re

from .acceptance import (FALSE, TRUE, acc_name, eval_acceptance,
                         parse_acceptance, AcceptanceParseError)
from .graph import MAYBE, NO, YES, Automaton, FLAG_NAMES
from .guards import LabelParseError, TRUE_GUARD

_IDENT_RE = re.compile(r"[a-zA-Z_][0-9a-zA-Z_-]*")

# properties: tokens for the trivalent flags (state_acc is special-cased)
_FLAG_TOKENS = (
    ("universal", "deterministic"),
    ("complete", "complete"),
    ("weak", "weak"),
    ("very_weak", "very-weak"),
    ("inherently_weak", "inherently-weak"),
    ("terminal", "terminal"),
    ("unambiguous", "unambiguous"),
    ("semi_deterministic", "semi-deterministic"),
    ("stutter_invariant", "stutter-invariant"),
)
_TOKEN_TO_FLAG = {tok: flag for flag, tok in _FLAG_TOKENS}


class HoaParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__("%d:%d: %s" % (line, col, message))
        self.line = line
        self.col = col


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self._pending = None

    def error(self, message, line=None, col=None):
        raise HoaParseError(message,
                            self.line if line is None else line,
                            self.col if col is None else col)

    def _advance(self, n):
        for ch in self.text[self.pos:self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def _skip_space(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isspace():
                self._advance(1)
            elif self.text.startswith("/*", self.pos):
                line, col = self.line, self.col
                depth = 1
                self._advance(2)
                while self.pos < len(self.text) and depth:
                    if self.text.startswith("/*", self.pos):
                        depth += 1
                        self._advance(2)
                    elif self.text.startswith("*/", self.pos):
                        depth -= 1
                        self._advance(2)
                    else:
                        self._advance(1)
                if depth:
                    self.error("unterminated comment", line, col)
            else:
                break

    def peek(self):
        if self._pending is None:
            self._pending = self._lex()
        return self._pending

    def next(self):
        tok = self.peek()
        self._pending = None
        return tok

    def raw_until(self, closing):
        """Consume raw text up to (and past) the given closing character."""
        assert self._pending is None
        line, col = self.line, self.col
        end = self.text.find(closing, self.pos)
        if end < 0:
            self.error("missing '%s'" % closing, line, col)
        raw = self.text[self.pos:end]
        self._advance(end + 1 - self.pos)
        return raw, line, col

    def _lex(self):
        self._skip_space()
        line, col = self.line, self.col
        if self.pos >= len(self.text):
            return ("eof", "", line, col)
        ch = self.text[self.pos]
        if self.text.startswith("--", self.pos):
            for word, kind in (("--BODY--", "body"), ("--END--", "end"),
                               ("--ABORT--", "abort")):
                if self.text.startswith(word, self.pos):
                    self._advance(len(word))
                    return (kind, word, line, col)
            self.error("stray '--'")
        if ch == '"':
            self._advance(1)
            out = []
            while True:
                if self.pos >= len(self.text):
                    self.error("unterminated string", line, col)
                c = self.text[self.pos]
                if c == "\\":
                    if self.pos + 1 >= len(self.text):
                        self.error("unterminated string", line, col)
                    out.append(self.text[self.pos + 1])
                    self._advance(2)
                elif c == '"':
                    self._advance(1)
                    return ("string", "".join(out), line, col)
                else:
                    out.append(c)
                    self._advance(1)
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self._advance(1)
            return ("int", int(self.text[start:self.pos]), line, col)
        m = _IDENT_RE.match(self.text, self.pos)
        if m:
            word = m.group()
            self._advance(len(word))
            if self.pos < len(self.text) and self.text[self.pos] == ":":
                self._advance(1)
                return ("header", word, line, col)
            return ("ident", word, line, col)
        if ch in "{}[]()&|!":
            self._advance(1)
            return ("punct", ch, line, col)
        self.error("unexpected character %r" % ch)


class _Parser:
    def __init__(self, text, min_nwords=1):
        self.lx = _Lexer(text)
        self.min_nwords = min_nwords

    def at_eof(self):
        return self.lx.peek()[0] == "eof"

    def expect_int(self, what):
        kind, val, line, col = self.lx.next()
        if kind != "int":
            raise HoaParseError("expected %s" % what, line, col)
        return val

    def expect_string(self, what):
        kind, val, line, col = self.lx.next()
        if kind != "string":
            raise HoaParseError("expected %s" % what, line, col)
        return val

    def parse_automaton(self):
        kind, val, line, col = self.lx.next()
        if kind != "header" or val != "HOA":
            raise HoaParseError("expected HOA: header", line, col)
        kind, val, line, col = self.lx.next()
        if kind != "ident" or val != "v1":
            raise HoaParseError("unsupported format version", line, col)

        h = {
            "states": None, "start": None, "aps": None,
            "num_sets": None, "acceptance": None, "name": None,
            "properties": [], "players": None, "controllable": None,
        }
        seen = set()

        while True:
            kind, val, line, col = self.lx.peek()
            if kind == "body":
                self.lx.next()
                break
            if kind == "eof":
                raise HoaParseError("missing --BODY--", line, col)
            if kind != "header":
                raise HoaParseError("expected a header", line, col)
            self.lx.next()
            if val in ("States", "Start", "AP", "Acceptance", "name",
                       "acc-name", "tool") and val in seen:
                raise HoaParseError("duplicate %s: header" % val, line, col)
            seen.add(val)
            if val == "States":
                h["states"] = self.expect_int("state count")
            elif val == "Start":
                h["start"] = [self.expect_int("initial state")]
                while self.lx.peek()[:2] == ("punct", "&"):
                    self.lx.next()
                    h["start"].append(self.expect_int("initial state"))
            elif val == "AP":
                n = self.expect_int("AP count")
                h["aps"] = [self.expect_string("AP name") for _ in range(n)]
            elif val == "Acceptance":
                h["num_sets"] = self.expect_int("acceptance set count")
                h["acceptance"] = self._acceptance_formula(
                    h["num_sets"], line, col)
            elif val == "name":
                h["name"] = self.expect_string("automaton name")
            elif val == "acc-name":
                while self.lx.peek()[0] in ("ident", "int"):
                    self.lx.next()
            elif val == "tool":
                while self.lx.peek()[0] == "string":
                    self.lx.next()
            elif val == "properties":
                while True:
                    kind2, val2, line2, col2 = self.lx.peek()
                    if kind2 == "ident":
                        self.lx.next()
                        h["properties"].append(val2)
                    elif (kind2, val2) == ("punct", "!"):
                        self.lx.next()
                        kind3, val3, line3, col3 = self.lx.next()
                        if kind3 != "ident":
                            raise HoaParseError("expected a property token",
                                                line3, col3)
                        h["properties"].append("!" + val3)
                    else:
                        break
            elif val == "spot-state-player":
                h["players"] = []
                while self.lx.peek()[0] == "int":
                    h["players"].append(self.lx.next()[1])
            elif val == "controllable-AP":
                h["controllable"] = []
                while self.lx.peek()[0] == "int":
                    h["controllable"].append(self.lx.next()[1])
            elif val[0].isupper():
                raise HoaParseError("unknown header %s: requires support"
                                    % val, line, col)
            else:
                # unknown lowercase header: skip its values
                while self.lx.peek()[0] in ("ident", "int", "string",
                                            "punct"):
                    self.lx.next()
        return self._parse_body(h)

    def _acceptance_formula(self, num_sets, line, col):
        parts = []
        while True:
            kind, val, _, _ = self.lx.peek()
            if kind in ("ident", "int"):
                parts.append(str(val))
                self.lx.next()
            elif kind == "punct" and val in "()&|":
                parts.append(val)
                self.lx.next()
            else:
                break
        try:
            return parse_acceptance(" ".join(parts), max_colors=num_sets)
        except AcceptanceParseError as exc:
            raise HoaParseError("bad acceptance condition: %s" % exc,
                                line, col) from exc

    def _parse_body(self, h):
        if h["num_sets"] is None:
            raise HoaParseError("missing Acceptance: header",
                                self.lx.line, self.lx.col)
        aps = h["aps"] if h["aps"] is not None else []
        nwords = max(self.min_nwords, (h["num_sets"] + 31) // 32, 1)
        aut = Automaton(aps, nwords=nwords)
        declared = h["states"]
        if declared is not None:
            aut.new_states(declared)

        def ensure_state(idx, line, col):
            if idx < aut.num_states:
                return idx
            if declared is not None:
                raise HoaParseError(
                    "state %d not below the declared count %d"
                    % (idx, declared), line, col)
            while aut.num_states <= idx:
                aut.new_state()
            return idx

        def parse_colors():
            # { int* } following a state or an edge
            colors = []
            self.lx.next()  # '{'
            while True:
                kind, val, line, col = self.lx.next()
                if (kind, val) == ("punct", "}"):
                    break
                if kind != "int":
                    raise HoaParseError("expected a color index", line, col)
                if val >= h["num_sets"]:
                    raise HoaParseError(
                        "color %d not below the declared count %d"
                        % (val, h["num_sets"]), line, col)
                colors.append(val)
            return colors

        def parse_label_guard():
            raw, line, col = self.lx.raw_until("]")
            try:
                return aut.store.parse_label(raw)
            except LabelParseError as exc:
                raise HoaParseError("bad label: %s" % exc, line, col) from exc

        def parse_dest(line, col):
            first = self.expect_int("a destination state")
            ensure_state(first, line, col)
            members = [first]
            while self.lx.peek()[:2] == ("punct", "&"):
                self.lx.next()
                nxt = self.expect_int("a destination state")
                ensure_state(nxt, line, col)
                members.append(nxt)
            if len(members) == 1:
                return members[0]
            return aut.new_univ_dest_group(members)

        cur_state = None
        cur_label = None
        cur_colors = ()
        names = {}
        saw_state_colors = False
        saw_edge_colors = False

        while True:
            kind, val, line, col = self.lx.peek()
            if kind == "end":
                self.lx.next()
                break
            if kind == "eof":
                raise HoaParseError("missing --END--", line, col)
            if kind == "abort":
                raise HoaParseError("aborted automaton", line, col)
            if kind == "header" and val == "State":
                self.lx.next()
                cur_label = None
                if self.lx.peek()[:2] == ("punct", "["):
                    self.lx.next()
                    cur_label = parse_label_guard()
                idx = self.expect_int("a state index")
                cur_state = ensure_state(idx, line, col)
                if self.lx.peek()[0] == "string":
                    names[cur_state] = self.lx.next()[1]
                cur_colors = ()
                if self.lx.peek()[:2] == ("punct", "{"):
                    cur_colors = tuple(parse_colors())
                    saw_state_colors = True
                continue
            if cur_state is None:
                raise HoaParseError("edge before any State:", line, col)
            if kind == "punct" and val == "[":
                self.lx.next()
                guard = parse_label_guard()
            elif kind == "int":
                if cur_label is None:
                    raise HoaParseError(
                        "implicit labels are not supported", line, col)
                guard = cur_label
            else:
                raise HoaParseError("expected an edge or --END--", line, col)
            dst = parse_dest(line, col)
            colors = list(cur_colors)
            if self.lx.peek()[:2] == ("punct", "{"):
                colors += parse_colors()
                saw_edge_colors = True
            aut.new_edge(cur_state, dst, guard, colors)

        # initial designator
        if h["start"] is not None:
            kind, val, line, col = self.lx.peek()
            for s in h["start"]:
                ensure_state(s, line, col)
            if len(h["start"]) == 1:
                aut.set_init(h["start"][0])
            else:
                aut.set_init(aut.new_univ_dest_group(h["start"]))

        if h["players"] is not None and len(h["players"]) != aut.num_states:
            raise HoaParseError(
                "spot-state-player lists %d entries for %d states"
                % (len(h["players"]), aut.num_states),
                self.lx.line, self.lx.col)
        if h["controllable"] is not None:
            for i in h["controllable"]:
                if i >= len(aut.aps):
                    raise HoaParseError(
                        "controllable-AP index %d out of range" % i,
                        self.lx.line, self.lx.col)

        aut.num_sets = h["num_sets"]
        aut.acceptance = h["acceptance"]
        if h["name"] is not None:
            aut.set_named_prop("automaton-name", h["name"])
        if names:
            aut.set_named_prop(
                "state-names",
                [names.get(s, "") for s in range(aut.num_states)])
        if h["players"] is not None:
            aut.set_named_prop("state-player", list(h["players"]))
        if h["controllable"] is not None:
            aut.set_named_prop("synthesis-outputs", list(h["controllable"]))

        aut.reset_flags()
        toks = h["properties"]
        if "state-acc" in toks:
            aut.set_flag("state_acc", YES)
        elif "trans-acc" in toks or "!state-acc" in toks:
            aut.set_flag("state_acc", NO)
        elif saw_state_colors and not saw_edge_colors:
            aut.set_flag("state_acc", YES)
        for tok in toks:
            neg = tok.startswith("!")
            flag = _TOKEN_TO_FLAG.get(tok[1:] if neg else tok)
            if flag is not None:
                aut.set_flag(flag, NO if neg else YES)
        return aut


def parse_hoa(text, min_nwords=1):
    """Parse one HOA automaton; trailing input is an error."""
    p = _Parser(text, min_nwords)
    aut = p.parse_automaton()
    if not p.at_eof():
        kind, val, line, col = p.lx.peek()
        raise HoaParseError("trailing input after --END--", line, col)
    return aut


def parse_hoa_stream(text, min_nwords=1):
    """Parse a stream of back-to-back HOA automata."""
    p = _Parser(text, min_nwords)
    out = []
    while not p.at_eof():
        out.append(p.parse_automaton())
    return out


# ---------------------------------------------------------------------------
# Printing.

def _quote(s):
    return '"%s"' % s.replace("\\", "\\\\").replace('"', '\\"')


def _word_str(aut, word):
    if word >= 0:
        return str(word)
    return "&".join(str(m) for m in aut.group_members(word))


def _colors_str(acc):
    return "{%s}" % " ".join(str(c) for c in acc.colors())


def _state_acc_of(aut, state):
    """The shared color set of a state's out-edges, for state-based output."""
    acc = None
    for e in aut.out(state):
        if acc is None:
            acc = e.acc
        elif e.acc != acc:
            raise ValueError(
                "state_acc is set but state %d has differing edge colors"
                % state)
    return acc


def print_hoa(aut):
    """Serialize to HOA v1 text; output is deterministic byte-for-byte."""
    lines = ["HOA: v1"]
    name = aut.get_named_prop("automaton-name", str)
    if name is not None:
        lines.append("name: " + _quote(name))
    lines.append("States: %d" % aut.num_states)
    if aut.num_states:
        lines.append("Start: " + _word_str(aut, aut.init))
    lines.append("AP: %d%s" % (len(aut.aps),
                               "".join(" " + _quote(a) for a in aut.aps)))
    an = acc_name(aut.acceptance, aut.num_sets)
    if an is not None:
        lines.append("acc-name: " + an)
    lines.append("Acceptance: %d %s" % (aut.num_sets, aut.acceptance))
    props = ["trans-labels", "explicit-labels"]
    sa = aut.get_flag("state_acc")
    if sa is YES:
        props.append("state-acc")
    elif sa is NO:
        props.append("trans-acc")
    if aut.has_universal_branches():
        props.append("univ-branch")
    for flag, token in _FLAG_TOKENS:
        v = aut.get_flag(flag)
        if v is YES:
            props.append(token)
        elif v is NO:
            props.append("!" + token)
    lines.append("properties: " + " ".join(props))
    players = aut.get_named_prop("state-player", list)
    if players is not None:
        lines.append("spot-state-player: "
                     + " ".join(str(int(p)) for p in players))
    outputs = aut.get_named_prop("synthesis-outputs", list)
    if outputs is not None:
        lines.append("controllable-AP: " + " ".join(str(i) for i in outputs))
    lines.append("--BODY--")
    names = aut.get_named_prop("state-names", list)
    state_based = sa is YES
    for s in range(aut.num_states):
        head = "State: %d" % s
        if names is not None and s < len(names) and names[s]:
            head += " " + _quote(names[s])
        if state_based:
            acc = _state_acc_of(aut, s)
            if acc:
                head += " " + _colors_str(acc)
        lines.append(head)
        for e in aut.out(s):
            part = "[%s] %s" % (aut.store.print_label(e.cond),
                                _word_str(aut, e.dst))
            if not state_based and e.acc:
                part += " " + _colors_str(e.acc)
            lines.append(part)
    lines.append("--END--")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Graphviz output.

_PALETTE = ("red", "green", "blue", "orange", "purple",
            "brown", "cyan", "magenta")


def _accepting_sink(aut, state):
    edges = list(aut.out(state))
    if not edges:
        return False
    cond_union = 0
    acc = edges[0].acc
    for e in edges:
        if e.dst != state or e.acc != acc:
            return False
        cond_union = aut.store.g_or(cond_union, e.cond)
    return cond_union == TRUE_GUARD and eval_acceptance(aut.acceptance, acc)


def print_dot(aut, hide_sinks=False):
    """Graphviz rendering.

    Understands the usual annotations: state-names, state-player (player 1
    drawn as diamonds), state-winner (green/red borders), strategy (bold
    green edges), highlight-states and highlight-edges (palette colors).
    With hide_sinks, a state whose true-labeled self-loops accept
    unconditionally is dropped and edges into it end in arrows to nowhere.
    """
    names = aut.get_named_prop("state-names", list)
    players = aut.get_named_prop("state-player", list)
    winners = aut.get_named_prop("state-winner", list)
    strategy = aut.get_named_prop("strategy", list)
    hi_states = aut.get_named_prop("highlight-states", dict)
    hi_edges = aut.get_named_prop("highlight-edges", dict)
    title = aut.get_named_prop("automaton-name", str)
    state_based = aut.get_flag("state_acc") is YES

    hidden = set()
    if hide_sinks:
        for s in range(aut.num_states):
            if _accepting_sink(aut, s):
                hidden.add(s)
        hidden -= set(aut.univ_dests(aut.init)) if aut.num_states else set()

    out = ["digraph automaton {", "  rankdir=LR"]
    if title:
        out.append('  label="%s"' % title.replace('"', '\\"'))
        out.append("  labelloc=t")
    out.append('  I [label="", style=invis, width=0]')

    def node_name(s):
        return str(s)

    groups_used = {}
    hole_count = [0]

    def dest_ref(word, extra):
        # returns the dot node to point at, materializing group nodes
        if word >= 0:
            if word in hidden:
                h = "h%d" % hole_count[0]
                hole_count[0] += 1
                extra.append('  %s [label="", style=invis, width=0]' % h)
                return h
            return node_name(word)
        off = ~word
        gname = "u%d" % off
        if off not in groups_used:
            groups_used[off] = gname
            extra.append("  %s [shape=point]" % gname)
            for m in aut.group_members(word):
                extra.append("  %s -> %s" % (gname, dest_ref(m, extra)))
        return gname

    extra = []
    init_ref = None
    if aut.num_states:
        init_ref = dest_ref(aut.init, extra)

    for s in range(aut.num_states):
        if s in hidden:
            continue
        label = names[s] if names and s < len(names) and names[s] \
            else str(s)
        if state_based:
            acc = _state_acc_of(aut, s)
            if acc:
                label += "\\n" + _colors_str(acc)
        attrs = ['label="%s"' % label.replace('"', '\\"')]
        if players is not None and s < len(players) and players[s]:
            attrs.append("shape=diamond")
        else:
            attrs.append("shape=circle")
        color = None
        if hi_states is not None and s in hi_states:
            color = _PALETTE[hi_states[s] % len(_PALETTE)]
        elif winners is not None and s < len(winners):
            color = "green" if winners[s] else "red"
        if color:
            attrs.append("color=%s" % color)
            attrs.append("penwidth=3")
        out.append("  %s [%s]" % (node_name(s), ", ".join(attrs)))

    out.extend(extra)
    extra = []
    if init_ref is not None:
        out.append("  I -> %s" % init_ref)

    for s in range(aut.num_states):
        if s in hidden:
            continue
        for idx in aut.out_indices(s):
            e = aut.edges[idx]
            label = aut.store.print_label(e.cond)
            if not state_based and e.acc:
                label += "\\n" + _colors_str(e.acc)
            attrs = ['label="%s"' % label.replace('"', '\\"')]
            if hi_edges is not None and idx in hi_edges:
                attrs.append("color=%s"
                             % _PALETTE[hi_edges[idx] % len(_PALETTE)])
                attrs.append("penwidth=3")
            elif strategy is not None and s < len(strategy) \
                    and strategy[s] == idx:
                attrs.append("color=green")
                attrs.append("penwidth=3")
            out.append("  %s -> %s [%s]"
                       % (node_name(s), dest_ref(e.dst, extra),
                          ", ".join(attrs)))
            out.extend(extra)
            extra = []
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Statistics.

def stats(aut, include_sccs=False):
    """Shape summary as a plain dict."""
    out = {
        "states": aut.num_states,
        "edges": aut.num_edges,
        "aps": len(aut.aps),
        "colors": aut.num_sets,
        "acceptance": str(aut.acceptance),
    }
    an = acc_name(aut.acceptance, aut.num_sets)
    if an is not None:
        out["acc-name"] = an
    flags = {name: aut.flags[name].value for name in FLAG_NAMES
             if aut.flags[name] is not MAYBE}
    if flags:
        out["flags"] = flags
    if include_sccs:
        from . import algorithms
        out["sccs"] = len(algorithms.scc_info(aut).members)
    return out
