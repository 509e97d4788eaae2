import json

import numpy as np
import pytest

from homaloidal.core import ROOT, dimension, parse_type, seedbed
from homaloidal.enumeration import (
    CountReport,
    count_by_filter,
    count_by_tree,
    enumerate_types,
    filter_report,
    frontier_tasks,
    histogram,
    noether_solutions,
    proper_types,
)
from homaloidal.tree import hudson_test

N_TO_15 = [1, 1, 1, 2, 3, 4, 5, 9, 10, 17, 19, 29, 34, 51, 63]
S_TO_15 = [1, 1, 1, 2, 4, 5, 9, 16, 25, 42, 64, 107, 165, 256, 402]


def test_tree_small_table():
    r = count_by_tree(15)
    assert [r.counts[d] for d in range(1, 16)] == N_TO_15
    assert sum(r.counts[d] for d in range(1, 7)) == 12


def test_tree_small_max_degree():
    r = count_by_tree(1)
    assert r.counts == {1: 1}
    r = count_by_tree(3, frontier=8)
    assert r.counts == {1: 1, 2: 1, 3: 1}


def test_tree_rejects_degree_zero():
    with pytest.raises(ValueError):
        count_by_tree(0)


def test_filter_examples():
    assert count_by_filter(5) == (4, 3)
    assert count_by_filter(15) == (402, 63)
    assert count_by_filter(2) == (1, 1)
    assert count_by_filter(1) == (1, 1)


def test_filter_report():
    r = filter_report(15)
    assert [r.counts[d] for d in range(1, 16)] == N_TO_15
    assert [r.solutions[d] for d in range(1, 16)] == S_TO_15
    assert all(r.counts[d] <= r.solutions[d] for d in r.counts)


def test_noether_solutions_are_solutions():
    for d in range(2, 16):
        sols = list(noether_solutions(d))
        assert len(sols) == len(set(sols))
        for m in sols:
            assert list(m) == sorted(m, reverse=True) and m[-1] >= 1
            assert sum(m) == 3 * d - 3 and sum(v * v for v in m) == d * d - 1


def test_noether_solutions_brute_force():
    # independent generator of non-increasing partitions of 3d-3
    def partitions(n, cap):
        if n == 0:
            yield ()
            return
        for v in range(min(n, cap), 0, -1):
            for rest in partitions(n - v, v):
                yield (v,) + rest

    for d in range(2, 10):
        brute = {p for p in partitions(3 * d - 3, d - 1) if sum(v * v for v in p) == d * d - 1}
        assert brute == set(noether_solutions(d))


def test_prune_sound():
    for d in range(2, 21):
        assert count_by_filter(d, prune=True)[1] == count_by_filter(d)[1]
        assert count_by_filter(d, prune=True)[0] is None


def test_tree_equals_filter_to_20():
    tree = count_by_tree(20)
    for d in range(1, 21):
        assert tree.counts[d] == count_by_filter(d)[1]


@pytest.mark.parametrize("workers", [2, 3])
def test_workers_identical(workers):
    base = count_by_tree(30, workers=1)
    other = count_by_tree(30, workers=workers)
    assert other.counts == base.counts
    assert other.seedbed_max == base.seedbed_max
    assert other.workers == workers


@pytest.mark.parametrize("frontier", [2, 5, 8, 12])
def test_frontier_does_not_change_counts(frontier):
    assert count_by_tree(24, frontier=frontier).counts == count_by_tree(24).counts


def test_frontier_tasks_are_beyond_frontier():
    tasks = frontier_tasks(30, 8)
    assert tasks and all(t.degree > 8 for t in tasks)
    assert len(tasks) == len(set(tasks))
    assert frontier_tasks(30, 8) == tasks


def test_seedbed_max():
    r = count_by_tree(12)
    best = {}
    enumerate_types(12, lambda t: best.__setitem__(t.degree, max(best.get(t.degree, 0), seedbed(t))))
    assert r.seedbed_max == best
    assert r.seedbed_max[6] == 3 and r.seedbed_max[2] == 1


def test_sampled_hudson_checks():
    assert count_by_tree(25, sample_every=1).counts == count_by_tree(25).counts


class TestCheckpoint:
    def test_resume_bit_exact(self, tmp_path):
        path = tmp_path / "run.ckpt"
        full = count_by_tree(30, checkpoint_path=path)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# homaloidal checkpoint max_degree=30 frontier=8")
        task_lines = [ln for ln in lines if ln.startswith("task ")]
        assert len(task_lines) == len(frontier_tasks(30, 8))
        # drop half of the records, as if the run had been killed
        path.write_text("\n".join([lines[0]] + task_lines[: len(task_lines) // 2]) + "\n")
        resumed = count_by_tree(30, checkpoint_path=path)
        assert resumed.counts == full.counts
        assert resumed.seedbed_max == full.seedbed_max
        again = [ln for ln in path.read_text().splitlines() if ln.startswith("task ")]
        assert sorted(again) == sorted(task_lines)

    def test_resume_all_done(self, tmp_path):
        path = tmp_path / "run.ckpt"
        full = count_by_tree(22, checkpoint_path=path)
        before = path.read_text()
        assert count_by_tree(22, checkpoint_path=path).counts == full.counts
        assert path.read_text() == before

    def test_other_run_rejected(self, tmp_path):
        path = tmp_path / "run.ckpt"
        count_by_tree(20, checkpoint_path=path)
        with pytest.raises(ValueError):
            count_by_tree(21, checkpoint_path=path)

    def test_malformed_rejected(self, tmp_path):
        path = tmp_path / "run.ckpt"
        count_by_tree(20, checkpoint_path=path)
        with path.open("a") as fh:
            fh.write("task 0 1 2 3\n")
        with pytest.raises(ValueError):
            count_by_tree(20, checkpoint_path=path)

    def test_no_histograms_with_checkpoint(self, tmp_path):
        with pytest.raises(ValueError):
            count_by_tree(20, histogram_degrees=[20], checkpoint_path=tmp_path / "x")

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(OSError):
            count_by_tree(20, checkpoint_path=tmp_path / "missing" / "x.ckpt")


class TestReports:
    def test_json_round_trip(self, tmp_path):
        r = count_by_tree(15)
        r.solutions = filter_report(15).solutions
        path = tmp_path / "r.json"
        r.write_json(path)
        payload = json.loads(path.read_text())
        assert payload["counts"][4] == {"d": 5, "N_d": "3", "S_d": "4", "s_d": "3"}
        back = CountReport.from_json(payload)
        assert back.counts == r.counts and back.solutions == r.solutions
        assert back.seedbed_max == r.seedbed_max
        assert back.to_json() == payload

    def test_csv(self, tmp_path):
        path = tmp_path / "r.csv"
        count_by_tree(6).write_csv(path)
        assert path.read_text().splitlines() == ["degree,N_d", "1,1", "2,1", "3,1", "4,2", "5,3", "6,4"]


class TestHistograms:
    def test_degree_6_dimension(self):
        h = histogram(6, "dim")
        assert h.total == 4
        types6 = [t for t in proper_types(6) if t.degree == 6]
        expected = {}
        for t in types6:
            expected[dimension(t)] = expected.get(dimension(t), 0) + 1
        assert h.counts == expected
        assert 22 in h.counts
        assert min(h.counts) >= 8 + 2 * 7

    @pytest.mark.parametrize("d", [9, 14])
    def test_match_python_enumeration(self, d):
        types = [t for t in proper_types(d) if t.degree == d]
        h12, h13 = histogram(d, "m1m2"), histogram(d, "m1m3")
        g12 = np.zeros_like(h12.grid)
        g13 = np.zeros_like(h13.grid)
        for t in types:
            g12[t.m(1), t.m(2)] += 1
            g13[t.m(1), t.m(3)] += 1
        assert np.array_equal(g12, h12.grid) and np.array_equal(g13, h13.grid)
        assert h12.total == len(types)

    def test_csv_formats(self):
        h = histogram(6, "m1m2")
        lines = h.to_csv().splitlines()
        assert lines[0] == "x,y,count"
        assert sum(int(ln.split(",")[2]) for ln in lines[1:]) == 4
        assert histogram(6, "dim").to_csv().splitlines()[0] == "m,count"

    def test_several_degrees_one_pass(self):
        r = count_by_tree(16, histogram_degrees=[7, 16])
        assert r.histograms[7]["m1m2"].total == r.counts[7]
        assert r.histograms[16]["dim"].total == r.counts[16]

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            histogram(6, "m2m3")

    def test_parallel_histogram_same(self):
        a = histogram(22, "m1m3", workers=1)
        b = histogram(22, "m1m3", workers=2)
        assert np.array_equal(a.grid, b.grid)


class TestEnumerate:
    def test_degree_two(self):
        seen = []
        enumerate_types(2, seen.append)
        assert set(seen) == {ROOT, parse_type("(2;1^3)")}

    def test_counts_match_tree(self):
        per = {}
        enumerate_types(12, lambda t: per.__setitem__(t.degree, per.get(t.degree, 0) + 1))
        assert per == count_by_tree(12).counts

    def test_all_proper_once(self):
        types = proper_types(14)
        assert len(types) == len(set(types))
        assert all(hudson_test(t).proper for t in types)

    def test_visitor_error_propagates(self):
        def boom(t):
            raise KeyError("stop")

        with pytest.raises(KeyError):
            enumerate_types(5, boom)
