import io

import numpy as np
import pytest

from bugdebt import (
    DebtType,
    DuplicateCycleError,
    TagRuleSet,
    classify_debt,
    clusters_from_marks,
    detect_reopened,
    read_debt_report,
    resolve_duplicate_masters,
    scan_tags,
    write_debt_report,
)
from helpers import make_bug, masters_by_substitution, random_forest_links, snapshot_of


class TestScanTags:
    def test_whole_token_matches_only(self):
        bug = make_bug(1, comment_bodies=("TODO: fix this", "TODOS are plural", "xTODO",))
        hits = scan_tags(bug, TagRuleSet())
        assert [(h.comment_index, h.start, h.end) for h in hits] == [(0, 0, 4)]

    def test_punctuation_boundaries_count(self):
        bug = make_bug(1, comment_bodies=("see FIXME, then (XXX) and TODO.",))
        hits = scan_tags(bug, TagRuleSet())
        assert [h.keyword for h in hits] == ["FIXME", "XXX", "TODO"]

    def test_case_sensitivity_default_on(self):
        bug = make_bug(1, comment_bodies=("todo fixme xxx",))
        assert scan_tags(bug, TagRuleSet()) == []
        insensitive = TagRuleSet(case_sensitive=False)
        assert [h.keyword for h in scan_tags(bug, insensitive)] == ["TODO", "FIXME", "XXX"]

    def test_hits_ordered_by_comment_then_position(self):
        bug = make_bug(1, comment_bodies=("XXX then TODO", "FIXME first"))
        hits = scan_tags(bug, TagRuleSet())
        assert [(h.comment_index, h.start) for h in hits] == [(0, 0), (0, 9), (1, 0)]

    def test_adding_keywords_never_removes_hits(self):
        rng = np.random.default_rng(3)
        vocab = ["TODO", "FIXME", "XXX", "fix", "the", "parser,", "now.", "HACK"]
        for _ in range(100):
            words = [vocab[int(rng.integers(0, len(vocab)))] for _ in range(12)]
            bug = make_bug(1, comment_bodies=(" ".join(words),))
            small = scan_tags(bug, TagRuleSet(keywords=("TODO", "XXX")))
            large = scan_tags(bug, TagRuleSet(keywords=("TODO", "XXX", "FIXME", "HACK")))
            assert set(small) <= set(large)

    def test_denylist_silences_textual_hits(self):
        bug = make_bug(9, comment_bodies=("TODO everywhere",))
        assert scan_tags(bug, TagRuleSet(denylist=frozenset({9}))) == []

    def test_allowlist_adds_manual_hit_only_without_text(self):
        rules = TagRuleSet(allowlist=frozenset({9}))
        plain = make_bug(9, comment_bodies=("nothing here",))
        manual = scan_tags(plain, rules)
        assert len(manual) == 1 and manual[0].manual and manual[0].comment_index == -1
        tagged = make_bug(9, comment_bodies=("TODO real",))
        assert all(not h.manual for h in scan_tags(tagged, rules))

    def test_overlapping_lists_rejected(self):
        with pytest.raises(ValueError, match="disjoint"):
            TagRuleSet(allowlist=frozenset({1}), denylist=frozenset({1}))

    def test_empty_keywords_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            TagRuleSet(keywords=())


def test_detect_reopened_counts_events():
    assert detect_reopened(make_bug(1, reopens=0)) == 0
    assert detect_reopened(make_bug(1, reopens=3)) == 3


class TestMasterResolution:
    def test_two_step_chain(self):
        # B duplicates A, C duplicates B: both resolve to A and form one cluster
        a, b, c = make_bug(1), make_bug(2, duplicate_of=1), make_bug(3, duplicate_of=2)
        resolved = resolve_duplicate_masters(snapshot_of(a, b, c))
        assert resolved.master_of == {2: 1, 3: 1}
        assert resolved.clusters == {1: frozenset({2, 3})}
        assert resolved.cluster_size(2) == 2 and resolved.cluster_size(3) == 2
        assert resolved.cluster_size(1) == 0

    def test_dangling_master_flagged_not_fatal(self):
        bug = make_bug(4, duplicate_of=99)
        resolved = resolve_duplicate_masters(snapshot_of(bug))
        assert resolved.master_of == {4: 99}
        assert resolved.dangling == frozenset({99})

    def test_cycle_raises_with_rotated_cycle(self):
        bugs = [make_bug(5, duplicate_of=7), make_bug(6, duplicate_of=5),
                make_bug(7, duplicate_of=6)]
        with pytest.raises(DuplicateCycleError) as excinfo:
            resolve_duplicate_masters(snapshot_of(*bugs))
        assert excinfo.value.cycle[0] == 5
        assert set(excinfo.value.cycle) == {5, 6, 7}

    def test_random_forests_match_substitution_oracle(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            links = random_forest_links(rng, int(rng.integers(2, 25)))
            bugs = [make_bug(i, duplicate_of=links.get(i))
                    for i in range(1, max(links, default=1) + 1)]
            resolved = resolve_duplicate_masters(snapshot_of(*bugs))
            assert resolved.master_of == masters_by_substitution(links)


class TestClassifyDebt:
    def test_types_compose_independently(self):
        bugs = [
            make_bug(1, comment_bodies=("TODO",), reopens=2, duplicate_of=4),
            make_bug(2),
            make_bug(3, reopens=1),
            make_bug(4),
        ]
        marks = classify_debt(snapshot_of(*bugs))
        assert marks[1].types == {DebtType.TAG, DebtType.REOPENED, DebtType.DUPLICATE}
        assert marks[1].master_id == 4
        assert marks[2].types == frozenset()
        assert marks[3].types == {DebtType.REOPENED}
        assert marks[4].types == frozenset() and marks[4].master_id is None

    def test_every_bug_gets_a_mark(self, small_corpus, small_marks):
        _, snapshot, _ = small_corpus
        assert sorted(small_marks) == sorted(snapshot.bugs)

    def test_report_round_trip(self, small_marks):
        buf = io.BytesIO()
        count = write_debt_report(small_marks, buf)
        assert count == len(small_marks)
        buf.seek(0)
        assert read_debt_report(buf) == small_marks

    def test_clusters_rebuilt_from_marks_match_resolution(self, small_corpus, small_marks):
        _, snapshot, _ = small_corpus
        direct = resolve_duplicate_masters(snapshot)
        rebuilt = clusters_from_marks(small_marks)
        assert rebuilt.master_of == direct.master_of
        assert rebuilt.clusters == direct.clusters
