import pytest

from homaloidal.core import ROOT, HomaloidalCandidate, format_type, parse_type
from homaloidal.enumeration import noether_solutions, proper_types
from homaloidal.tree import (
    InadmissibleSeedError,
    InvariantError,
    NotProperError,
    Outcome,
    apply_seed_sequence,
    child,
    children,
    delta,
    hudson_test,
    is_admissible,
    lineage_to_root,
    parent,
    seed_of,
    star_descendant_sequences,
)

P = parse_type
X80 = P("(80;43,31,27,26,26,21,21,18,17,2,2,2,1)")


def names(types):
    return {format_type(t) for t in types}


class TestHudson:
    def test_degree_two(self):
        v = hudson_test(P("(2;1,1,1)"), want_trace=True)
        assert v.outcome is Outcome.PROPER and v.proper
        assert v.steps == 1
        assert v.trace == (P("(2;1^3)"), ROOT)

    def test_improper(self):
        v = hudson_test(P("(5;3,3,1,1,1,1,1,1)"), want_trace=True)
        assert v.outcome is Outcome.IMPROPER
        assert v.steps == 1
        assert min(v.negative_values) == -1

    def test_not_noether(self):
        assert hudson_test(P("(3;1,1,1)")).outcome is Outcome.NOT_NOETHER

    def test_root_is_proper(self):
        v = hudson_test(ROOT)
        assert v.proper and v.steps == 0

    def test_no_trace_by_default(self):
        assert hudson_test(P("(5;2^6)")).trace is None

    def test_trace_is_lineage(self):
        t = P("(6;4,2^4,1^3)")
        v = hudson_test(t, want_trace=True)
        assert v.trace == tuple(reversed(lineage_to_root(t).types))

    def test_degree_five_noether_solutions(self):
        verdicts = [hudson_test(HomaloidalCandidate(5, s)).outcome for s in noether_solutions(5)]
        assert len(verdicts) == 4
        assert verdicts.count(Outcome.IMPROPER) == 1


class TestParent:
    def test_delta(self):
        assert delta(P("(5;2^6)")) == 1
        assert delta(P("(2;1^3)")) == 1
        assert delta(X80) == 21

    def test_delta_root(self):
        with pytest.raises(ValueError):
            delta(ROOT)

    def test_parent_small(self):
        p, s = parent(P("(5;2^6)"))
        assert p == P("(4;2^3,1^3)")
        assert s.values == (1, 1, 1) and s.nabla == 1

    def test_parent_example_80(self):
        p, s = parent(X80)
        assert p == P("(59;26,26,22,21,21,18,17,10,6,2,2,2,1)")
        assert s.values == (22, 10, 6)

    def test_parent_degree_two(self):
        p, s = parent(P("(2;1^3)"))
        assert p == ROOT and s.values == (0, 0, 0) and s.nabla == 1
        assert s.star

    def test_parent_of_improper(self):
        with pytest.raises(NotProperError):
            parent(P("(5;3^2,1^6)"))

    def test_degree_six_parents(self):
        assert parent(P("(6;4,2^4,1^3)"))[0] == P("(4;2^3,1^3)")
        assert parent(P("(6;3^3,2,1^4)"))[0] == P("(3;2,1^4)")


class TestChildren:
    def test_admissibility(self):
        t = P("(2;1^3)")
        assert not is_admissible(t, (1, 1, 1))
        assert is_admissible(t, (1, 0, 0))
        assert is_admissible(t, (0, 0, 0))
        # order of the triple does not matter
        assert is_admissible(t, (0, 1, 0))

    def test_admissibility_needs_available_values(self):
        with pytest.raises(InadmissibleSeedError):
            is_admissible(P("(2;1^3)"), (2, 0, 0))
        with pytest.raises(InadmissibleSeedError):
            is_admissible(P("(3;2,1^4)"), (2, 2, 0))
        with pytest.raises(InadmissibleSeedError):
            is_admissible(ROOT, (1, 0, 0))

    def test_child(self):
        assert child(ROOT, (0, 0, 0)) == P("(2;1,1,1)")
        assert child(P("(2;1^3)"), (1, 0, 0)) == P("(3;2,1^4)")
        assert child(P("(4;2^3,1^3)"), (1, 1, 1)) == P("(5;2^6)")

    def test_child_rejects(self):
        with pytest.raises(InadmissibleSeedError):
            child(P("(2;1^3)"), (1, 1, 1))

    def test_children_root(self):
        kids = children(ROOT)
        assert [c for _, c in kids] == [P("(2;1^3)")]

    def test_children_degree_two(self):
        assert names(c for _, c in children(P("(2;1^3)"))) == {"(3;2,1^4)", "(4;2^3,1^3)"}

    def test_children_example(self):
        kids = [c for _, c in children(P("(3;2,1^4)")) if c.degree <= 6]
        assert names(kids) == {"(4;3,1^6)", "(5;3,2^3,1^3)", "(6;3^3,2,1^4)"}
        assert names(c for _, c in children(P("(3;2,1^4)"), max_degree=6)) == names(kids)

    def test_seed_annotations(self):
        for s, c in children(P("(3;2,1^4)")):
            assert c.degree == 3 + s.nabla
            assert s.star == (s.values[0] == 2)
            assert seed_of(P("(3;2,1^4)"), s.values) == s

    def test_children_match_brute_force(self, types_to_12):
        # every value triple drawn from the zero-padded multiset
        for t in types_to_12:
            pool = t.padded(t.r + 3)
            triples = {tuple(sorted((pool[i], pool[j], pool[k]), reverse=True))
                       for i in range(len(pool)) for j in range(i + 1, len(pool))
                       for k in range(j + 1, len(pool))}
            expected = {tr for tr in triples if is_admissible(t, tr)}
            got = [s.values for s, _ in children(t)]
            assert len(got) == len(set(got))
            assert set(got) == expected

    def test_distinct_children(self, types_to_12):
        for t in types_to_12:
            kids = [c for _, c in children(t)]
            assert len(kids) == len(set(kids))


class TestRoundTrip:
    def test_child_of_parent(self, types_to_12):
        for t in types_to_12:
            if t.degree < 2:
                continue
            p, s = parent(t)
            assert child(p, s.values) == t
            assert s.nabla == delta(t)

    def test_parent_of_child(self, types_to_12):
        for t in types_to_12:
            for s, c in children(t):
                p, back = parent(c)
                assert p == t and back.values == s.values and back.nabla == s.nabla


class TestLineage:
    def test_degree_two(self):
        lin = lineage_to_root(P("(2;1^3)"))
        assert lin.types == (ROOT, P("(2;1^3)"))

    def test_red_path(self):
        lin = lineage_to_root(P("(5;2^6)"))
        assert names(lin.types) == {"(1;0)", "(2;1^3)", "(4;2^3,1^3)", "(5;2^6)"}
        assert [t.degree for t in lin.types] == [1, 2, 4, 5]

    def test_through(self):
        assert P("(4;2^3,1^3)") in lineage_to_root(P("(6;4,2^4,1^3)")).types

    def test_improper(self):
        with pytest.raises(NotProperError):
            lineage_to_root(P("(5;3^2,1^6)"))

    def test_apply_seeds(self):
        assert apply_seed_sequence(ROOT, [(0, 0, 0)]).last == P("(2;1^3)")
        assert apply_seed_sequence(P("(2;1^3)"), [(1, 0, 0), (2, 0, 0)]).last == P("(4;3,1^6)")
        # repeating (1,0,0) uses a non-star seed the second time
        assert apply_seed_sequence(P("(2;1^3)"), [(1, 0, 0), (1, 0, 0)]).last == P("(5;3,2^3,1^3)")

    def test_apply_seeds_reports_step(self):
        with pytest.raises(InadmissibleSeedError) as err:
            apply_seed_sequence(P("(2;1^3)"), [(1, 0, 0), (5, 0, 0)])
        assert err.value.index == 1

    def test_apply_seeds_empty(self):
        lin = apply_seed_sequence(P("(2;1^3)"), [])
        assert lin.types == (P("(2;1^3)"),) and lin.seeds == ()

    @pytest.mark.parametrize("text", ["(2;1^3)", "(3;2,1^4)", "(6;3^2,2^4,1)"])
    def test_uniform_moves(self, text):
        x = P(text)
        d = x.degree
        end = apply_seed_sequence(x, [(0, 0, 0), (0, 0, 0), (d, d, d)]).last
        assert end == HomaloidalCandidate.from_values(5 * d, [2 * d] * 6 + list(x.multiplicities))

    def test_lineage_roundtrip(self, types_to_12):
        for t in types_to_12:
            lin = lineage_to_root(t)
            again = apply_seed_sequence(ROOT, [s.values for s in lin.seeds])
            assert again == lin


class TestStarSequences:
    def test_example_80(self):
        seqs = star_descendant_sequences(X80)
        lowers = sorted(tuple(s.values[1:] for s in seq) for seq in seqs)
        # seven sequences are easy to list by hand; (*,2,2),(*,1,0) is the eighth,
        # since (1,0) is still in the tail after (*,2,2)
        listed = [
            ((2, 2), (2, 1)), ((2, 2), (2, 0)), ((2, 2),), ((2, 1),), ((2, 0),), ((1, 0),), (),
        ]
        assert set(listed) <= set(lowers)
        assert sorted(set(lowers) - set(listed)) == [((2, 2), (1, 0))]
        assert len(seqs) == 8

    def test_example_80_second_type(self):
        seq = [(X80.m(1), 2, 2)]
        assert apply_seed_sequence(X80, seq).last == P("(113;76,35,35,31,27,26,26,21,21,18,17,2,1)")

    def test_empty_tail(self):
        assert star_descendant_sequences(P("(4;2^3,1^3)")) == [[]]
        assert star_descendant_sequences(P("(2;1^3)")) == [[]]

    def test_all_star_and_admissible(self, types_to_12):
        for t in types_to_12:
            if t.degree < 2:
                continue
            for seq in star_descendant_sequences(t):
                lin = apply_seed_sequence(t, [s.values for s in seq])
                assert all(s.star for s in lin.seeds)

    def test_root(self):
        with pytest.raises(ValueError):
            star_descendant_sequences(ROOT)


def test_proper_iff_reachable():
    reachable = {t for t in proper_types(20)}
    for d in range(2, 21):
        proper = {HomaloidalCandidate(d, s) for s in noether_solutions(d)
                  if hudson_test(HomaloidalCandidate(d, s)).proper}
        assert proper == {t for t in reachable if t.degree == d}


def test_invariant_error_is_runtime_error():
    assert issubclass(InvariantError, RuntimeError)
