from monoidlab.monoids import classify
from monoidlab.suite import annotate, expected_tags, load_suite, profile_line


def test_suite_size():
    assert len(load_suite()) >= 30


def test_both_formats_present():
    kinds = {d.kind for d in load_suite()}
    assert kinds == {"expr", "transducer"}


def test_suite_is_small():
    assert max(d.fn.n_states for d in load_suite()) <= 40


def test_annotations_match_classification():
    # annotations were written only after the brute-force oracles agreed
    for doc in load_suite():
        assert expected_tags(doc) == classify(doc.fn), doc.name
        assert doc.meta["profile"] == profile_line(doc.fn), doc.name


def test_annotation_is_reproducible():
    doc = next(d for d in load_suite() if d.name == "sep2")
    assert annotate(doc) == doc.source
