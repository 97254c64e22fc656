"""Acceptance formulas: parsing, evaluation, classes, parity conversion."""

import random

import pytest

from elaut.acceptance import (AccClass, AcceptanceParseError, And, ColorSet,
                              FALSE, Fin, Inf, Or, TRUE, acc_name,
                              change_parity, class_colors, dnf_disjuncts,
                              dual, eval_acceptance, f_and, f_or,
                              generalized_buchi, generalized_co_buchi,
                              generalized_rabin, is_finless, make_class,
                              parity, parity_of, parity_readings,
                              parse_acceptance, print_acceptance, rabin,
                              recognize, shift_colors, streett, subst,
                              to_dnf, used_colors)
from elaut.hoa import parse_hoa, print_hoa


def cs(colors, nwords=1):
    return ColorSet.of(colors, nwords)


def ev(formula, colors):
    return eval_acceptance(formula, cs(colors))


# ---------------------------------------------------------------- ColorSet

def test_colorset_basics():
    a = cs([0, 3, 31])
    assert a.has(0) and a.has(3) and a.has(31)
    assert not a.has(1)
    assert a.count() == 3
    assert sorted(a.colors()) == [0, 3, 31]
    assert a.max_color() == 31
    b = cs([3, 4])
    assert sorted((a | b).colors()) == [0, 3, 4, 31]
    assert sorted((a & b).colors()) == [3]
    assert not cs([]).count()


def test_colorset_width():
    wide = ColorSet.of([63], 2)
    assert wide.has(63)
    with pytest.raises(ValueError):
        ColorSet.of([64], 2)
    with pytest.raises(ValueError):
        ColorSet.of([32], 1)
    assert cs([5]).widened(2).has(5)
    assert sorted(ColorSet.of([0, 40], 2).shifted(3).colors()) == [3, 43]


# ------------------------------------------------------------- construction

def test_builders_flatten_and_fold():
    f = f_and([Inf(0), f_and([Inf(1), Inf(2)])])
    assert isinstance(f, And) and len(f.children) == 3
    g = f_or([Fin(0), f_or([Fin(1)]), FALSE])
    assert isinstance(g, Or) and len(g.children) == 2
    assert f_and([]) is TRUE
    assert f_or([]) is FALSE
    assert f_and([Inf(3)]) == Inf(3)
    assert f_and([TRUE, Inf(1)]) == Inf(1)
    assert f_or([TRUE, Inf(1)]) is TRUE
    assert f_and([FALSE, Inf(1)]) is FALSE


# ---------------------------------------------------------------- parsing

def test_parse_examples():
    assert parse_acceptance("Inf(0)") == Inf(0)
    assert parse_acceptance("t") is TRUE
    assert parse_acceptance("f") is FALSE
    f = parse_acceptance("Fin(0) & Inf(1) | Fin(2) & Inf(3)")
    assert f == Or((And((Fin(0), Inf(1))), And((Fin(2), Inf(3)))))


def test_parse_precedence_and_parens():
    # & binds tighter than |
    f = parse_acceptance("Inf(0) | Inf(1) & Fin(2)")
    assert isinstance(f, Or)
    g = parse_acceptance("(Inf(0) | Inf(1)) & Fin(2)")
    assert isinstance(g, And)


def test_parse_errors_have_positions():
    for text in ["Inf", "Inf(", "Inf(x)", "Inf(0) &", "Fin(0) Inf(1)",
                 "", "Inf(0))", "Inf(-1)", "Inff(0)"]:
        with pytest.raises(AcceptanceParseError) as err:
            parse_acceptance(text)
        assert err.value.pos >= 0


def test_parse_color_width_limit():
    assert parse_acceptance("Inf(31)") == Inf(31)
    with pytest.raises(AcceptanceParseError):
        parse_acceptance("Inf(32)", max_colors=32)
    assert parse_acceptance("Inf(32)", max_colors=64) == Inf(32)


def test_print_parse_fixpoint_random():
    rng = random.Random(42)

    def rand_formula(depth):
        pick = rng.random()
        if depth == 0 or pick < 0.35:
            c = rng.randrange(6)
            return Fin(c) if rng.random() < 0.5 else Inf(c)
        kids = [rand_formula(depth - 1) for _ in range(rng.randrange(2, 4))]
        return f_and(kids) if pick < 0.7 else f_or(kids)

    for _ in range(300):
        f = rand_formula(3)
        text = print_acceptance(f)
        again = parse_acceptance(text)
        assert again == f
        assert print_acceptance(again) == text


# -------------------------------------------------------------- evaluation

def test_eval_basics():
    assert ev(TRUE, [])
    assert not ev(FALSE, [0, 1])
    assert ev(Inf(2), [2])
    assert not ev(Inf(2), [1])
    assert ev(Fin(2), [1])
    assert not ev(Fin(2), [2])


def test_eval_min_even_four_example():
    # minimum recurring color of {1, 2} is 1, which is odd
    f = make_class(parity("min", "even", 4))
    assert ev(f, [1, 2]) is False
    assert ev(f, [2]) is True
    assert ev(f, [0, 1, 2, 3]) is True
    assert ev(f, [3]) is False


def reference_parity_accepts(mm, eo, n, colors):
    """Extremum semantics, written independently of the formula builder:
    missing colors behave like n for min kinds and like -1 for max
    kinds."""
    relevant = [c for c in colors if c < n]
    if mm == "min":
        ext = min(relevant) if relevant else n
    else:
        ext = max(relevant) if relevant else -1
    return ext % 2 == (0 if eo == "even" else 1)


def test_parity_formulas_match_reference_semantics():
    for mm in ("min", "max"):
        for eo in ("even", "odd"):
            for n in range(1, 6):
                f = make_class(parity(mm, eo, n))
                for bits in range(1 << n):
                    colors = [c for c in range(n) if bits >> c & 1]
                    assert ev(f, colors) == \
                        reference_parity_accepts(mm, eo, n, colors), \
                        (mm, eo, n, colors)


def test_dual_negates_eval():
    rng = random.Random(88)

    def rand_formula(depth):
        pick = rng.random()
        if depth == 0 or pick < 0.4:
            c = rng.randrange(5)
            return Fin(c) if rng.random() < 0.5 else Inf(c)
        kids = [rand_formula(depth - 1) for _ in range(2)]
        return f_and(kids) if pick < 0.7 else f_or(kids)

    for _ in range(200):
        f = rand_formula(3)
        g = dual(f)
        for bits in range(32):
            colors = [c for c in range(5) if bits >> c & 1]
            assert ev(g, colors) == (not ev(f, colors))


def test_subst_and_shift():
    f = And((Fin(0), Inf(1)))
    assert subst(f, {0: True}, {}) == Inf(1)
    assert subst(f, {0: False}, {}) is FALSE
    assert subst(f, {}, {1: True}) == Fin(0)
    assert shift_colors(f, 2) == And((Fin(2), Inf(3)))
    assert used_colors(shift_colors(f, 2)).max_color() == 3


# ------------------------------------------------------------ normal forms

def test_dnf():
    f = And((Or((Fin(0), Inf(1))), Inf(2)))
    d = to_dnf(f)
    assert dnf_disjuncts(d) == [(frozenset([0]), frozenset([2])),
                                (frozenset(), frozenset([1, 2]))] or \
        dnf_disjuncts(d) == [(frozenset(), frozenset([1, 2])),
                             (frozenset([0]), frozenset([2]))]
    # contradictory Fin(i) & Inf(i) branches drop out
    g = And((Fin(0), Inf(0)))
    assert to_dnf(g) is FALSE
    assert dnf_disjuncts(TRUE) is None
    assert dnf_disjuncts(FALSE) == []


def test_dnf_preserves_semantics():
    rng = random.Random(4711)

    def rand_formula(depth):
        pick = rng.random()
        if depth == 0 or pick < 0.4:
            c = rng.randrange(4)
            return Fin(c) if rng.random() < 0.5 else Inf(c)
        kids = [rand_formula(depth - 1) for _ in range(2)]
        return f_and(kids) if pick < 0.7 else f_or(kids)

    for _ in range(200):
        f = rand_formula(3)
        d = to_dnf(f)
        for bits in range(16):
            colors = [c for c in range(4) if bits >> c & 1]
            assert ev(f, colors) == ev(d, colors)


# ----------------------------------------------------------------- classes

def test_class_colors():
    assert class_colors(AccClass("Buchi")) == 1
    assert class_colors(generalized_buchi(3)) == 3
    assert class_colors(rabin(2)) == 4
    assert class_colors(streett(3)) == 6
    assert class_colors(generalized_rabin([2, 0, 1])) == 6
    assert class_colors(parity("max", "odd", 5)) == 5
    assert class_colors(AccClass("Fin-less")) == 2


def test_make_class_shapes():
    assert make_class(AccClass("Buchi")) == Inf(0)
    assert make_class(AccClass("co-Buchi")) == Fin(0)
    assert make_class(generalized_buchi(2)) == And((Inf(0), Inf(1)))
    assert make_class(generalized_co_buchi(2)) == Or((Fin(0), Fin(1)))
    assert make_class(rabin(2)) == \
        Or((And((Fin(0), Inf(1))), And((Fin(2), Inf(3)))))
    assert make_class(streett(2)) == \
        And((Or((Inf(0), Fin(1))), Or((Inf(2), Fin(3)))))
    # Fin block first, then the Inf blocks
    assert make_class(generalized_rabin([2, 1])) == \
        Or((And((Fin(0), Inf(2), Inf(3))), And((Fin(1), Inf(4)))))
    # the Fin-less class has no single shape; its representative must
    # recognize back as Fin-less
    rep = make_class(AccClass("Fin-less"))
    assert is_finless(rep)
    assert recognize(rep) == AccClass("Fin-less")


def test_recognize_identity_nondegenerate():
    classes = [AccClass("Buchi"), AccClass("co-Buchi"),
               generalized_buchi(2), generalized_buchi(3),
               generalized_co_buchi(2), generalized_co_buchi(3),
               rabin(1), rabin(2), rabin(3),
               streett(1), streett(2), streett(3),
               generalized_rabin([2]), generalized_rabin([0, 1]),
               generalized_rabin([1, 1]), generalized_rabin([2, 0, 1])]
    for mm in ("min", "max"):
        for eo in ("even", "odd"):
            classes.append(parity(mm, eo, 3))
            classes.append(parity(mm, eo, 4))
    classes.append(parity("max", "even", 2))
    classes.append(parity("max", "odd", 2))
    for cls in classes:
        assert recognize(make_class(cls)) == cls, cls


def test_recognize_degenerate_collapse():
    # several classes share a formula; recognition returns the most
    # specific name
    collapse = [
        (generalized_buchi(1), AccClass("Buchi")),
        (generalized_co_buchi(1), AccClass("co-Buchi")),
        (parity("min", "even", 1), AccClass("Buchi")),
        (parity("max", "even", 1), AccClass("Buchi")),
        (parity("min", "odd", 1), AccClass("co-Buchi")),
        (parity("max", "odd", 1), AccClass("co-Buchi")),
        (parity("min", "even", 2), streett(1)),
        (parity("min", "odd", 2), rabin(1)),
        (generalized_rabin([1]), rabin(1)),
        (generalized_rabin([0]), AccClass("co-Buchi")),
        (generalized_rabin([0, 0]), generalized_co_buchi(2)),
    ]
    for cls, expect in collapse:
        assert recognize(make_class(cls)) == expect, cls


def test_recognize_rejects_near_misses():
    assert recognize(Inf(1)) == AccClass("Fin-less")
    assert recognize(And((Inf(0), Inf(2)))) == AccClass("Fin-less")
    assert recognize(Or((Fin(1), Fin(2)))) is None
    # matching ignores child order, so And(Inf(1), Fin(0)) is still the
    # Rabin pair; shifted colors are not
    assert recognize(And((Inf(1), Fin(0)))) == rabin(1)
    assert recognize(And((Fin(1), Inf(2)))) is None
    # the constants use no Fin atom, so they sit in the Fin-less class
    assert recognize(TRUE) == AccClass("Fin-less")
    assert recognize(FALSE) == AccClass("Fin-less")


def test_parity_readings():
    assert set(parity_readings(Inf(0))) == {("min", "even", 1),
                                            ("max", "even", 1)}
    assert set(parity_readings(Fin(0))) == {("min", "odd", 1),
                                            ("max", "odd", 1)}
    assert parity_readings(make_class(parity("min", "even", 4))) == \
        [("min", "even", 4)]
    assert parity_readings(Inf(1)) == []
    assert parity_readings(TRUE) == []
    assert parity_of(parity("max", "odd", 3)) == ("max", "odd", 3)
    assert parity_of(AccClass("Buchi")) is None


def test_acc_name():
    assert acc_name(TRUE, 0) == "all"
    assert acc_name(FALSE, 0) == "none"
    assert acc_name(Inf(0), 1) == "Buchi"
    assert acc_name(make_class(streett(2)), 4) == "Streett 2"
    assert acc_name(make_class(parity("min", "odd", 3)), 3) == \
        "parity min odd 3"
    assert acc_name(make_class(generalized_rabin([1, 2])), 5) is None
    assert acc_name(Inf(1), 2) is None


# ------------------------------------------------------- parity conversion

def edge_subset_statuses(aut, formula):
    """Acceptance status of every strongly-connected edge subset.

    Two same-graph automata have the same language iff these agree."""
    from elaut.algorithms import scc_info
    idxs = [i for i in range(1, len(aut.edges)) if aut.edges[i] is not None]
    statuses = {}
    for bits in range(1, 1 << len(idxs)):
        chosen = [idxs[k] for k in range(len(idxs)) if bits >> k & 1]
        nodes = set()
        for i in chosen:
            e = aut.edges[i]
            nodes.add(e.src)
            nodes.add(e.dst)
        # strong connectivity of the chosen edge subgraph
        adj = {v: [] for v in nodes}
        for i in chosen:
            adj[aut.edges[i].src].append(aut.edges[i].dst)
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != nodes:
            continue
        radj = {v: [] for v in nodes}
        for i in chosen:
            radj[aut.edges[i].dst].append(aut.edges[i].src)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in radj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != nodes:
            continue
        colors = set()
        for i in chosen:
            colors.update(aut.edges[i].acc.colors())
        statuses[bits] = eval_acceptance(
            formula, ColorSet.of(colors, aut.nwords))
    return statuses


def test_change_parity_identity():
    from elaut.algorithms import random_automaton
    aut = random_automaton(4, 1, density=0.6, colors=3, color_density=0.5,
                           acceptance=parity("min", "even", 3), seed=11)
    same = change_parity(aut, "min even")
    assert print_hoa(same) == print_hoa(aut)


def test_change_parity_all_pairs_preserve_language():
    from elaut.algorithms import random_automaton
    rng = random.Random(2024)
    kinds = [("min", "even"), ("min", "odd"), ("max", "even"), ("max", "odd")]
    for trial in range(40):
        n = rng.randrange(1, 5)
        src_mm, src_eo = kinds[trial % 4]
        aut = random_automaton(rng.randrange(2, 5), 1,
                               density=rng.uniform(0.3, 0.8), colors=n,
                               color_density=rng.uniform(0.2, 0.7),
                               acceptance=parity(src_mm, src_eo, n),
                               seed=rng.randrange(10 ** 6))
        before = edge_subset_statuses(aut, aut.acceptance)
        for tgt_mm, tgt_eo in kinds:
            out = change_parity(aut, "%s %s" % (tgt_mm, tgt_eo))
            got = parity_of(recognize(out.acceptance))
            if got is not None and (got[0], got[1]) != (tgt_mm, tgt_eo):
                # degenerate readings may recognize under another name,
                # but the requested reading must be available
                assert (tgt_mm, tgt_eo) in \
                    [(mm, eo) for (mm, eo, _) in
                     parity_readings(out.acceptance)]
            after = edge_subset_statuses(out, out.acceptance)
            assert after == before, (trial, tgt_mm, tgt_eo)


def test_change_parity_rejects_non_parity():
    from elaut.algorithms import random_automaton
    aut = random_automaton(3, 1, density=0.5, colors=4, color_density=0.3,
                           acceptance=rabin(2), seed=5)
    with pytest.raises(ValueError):
        change_parity(aut, "min even")


def test_change_parity_bad_target():
    from elaut.algorithms import random_automaton
    aut = random_automaton(2, 1, density=0.5, colors=1, color_density=0.5,
                           acceptance=AccClass("Buchi"), seed=5)
    with pytest.raises(ValueError):
        change_parity(aut, "sideways even")
