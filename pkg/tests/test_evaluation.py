import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fallsentry import (
    Annotation,
    ConfusionMatrix,
    EmptyMatrix,
    EmptyResults,
    FeatureValues,
    FrameResult,
    GroundTruthLabels,
    InvariantViolation,
    Level,
    MalformedTruth,
    MissingLabel,
    confuse,
    load_truth_csv,
    metrics,
    metrics_record,
)


def result(index: int, fall: bool) -> FrameResult:
    return FrameResult(
        index=index,
        fall=fall,
        displacement_px=120.0 if fall else 1.0,
        features=FeatureValues(None, None, None),
        annotation=Annotation.RED_FALL if fall else Annotation.GREEN_NO_FALL,
    )


def frame_truth(labels: dict[int, bool], stream_id: str = "s") -> GroundTruthLabels:
    return GroundTruthLabels(stream_id=stream_id, level=Level.FRAME, labels=labels)


def test_confuse_four_cells_by_hand():
    results = [result(0, True), result(1, False), result(2, True), result(3, False)]
    truth = frame_truth({0: True, 1: True, 2: False, 3: False})
    cm = confuse(results, truth)
    assert (cm.tp, cm.fn, cm.fp, cm.tn) == (1, 1, 1, 1)
    assert cm.total == 4


def test_confuse_all_fall_199():
    results = [result(i, True) for i in range(199)]
    truth = frame_truth({i: True for i in range(199)})
    cm = confuse(results, truth)
    assert cm == ConfusionMatrix(tp=199, fp=0, tn=0, fn=0)


def test_confuse_all_negative():
    results = [result(i, False) for i in range(10)]
    cm = confuse(results, frame_truth({i: False for i in range(10)}))
    assert cm == ConfusionMatrix(tn=10)


def test_confuse_missing_label():
    with pytest.raises(MissingLabel):
        confuse([result(7, True)], frame_truth({0: True}))


def test_confuse_video_level_cells():
    video_true = GroundTruthLabels(stream_id="s", level=Level.VIDEO, labels=True)
    video_false = GroundTruthLabels(stream_id="s", level=Level.VIDEO, labels=False)
    one_fall = [result(0, False), result(1, True)]
    no_fall = [result(0, False), result(1, False)]
    assert confuse(one_fall, video_true) == ConfusionMatrix(tp=1)
    assert confuse(one_fall, video_false) == ConfusionMatrix(fp=1)
    assert confuse(no_fall, video_true) == ConfusionMatrix(fn=1)
    assert confuse(no_fall, video_false) == ConfusionMatrix(tn=1)


def test_confuse_video_level_needs_results():
    truth = GroundTruthLabels(stream_id="s", level=Level.VIDEO, labels=True)
    with pytest.raises(EmptyResults):
        confuse([], truth)


def test_metrics_all_true_positive():
    m = metrics(ConfusionMatrix(tp=199))
    assert m.accuracy == 1.0
    assert m.sensitivity == 1.0
    assert m.specificity is None


def test_metrics_symmetric_half():
    m = metrics(ConfusionMatrix(tp=1, fp=1, tn=1, fn=1))
    assert (m.accuracy, m.sensitivity, m.specificity) == (0.5, 0.5, 0.5)


def test_metrics_hand_computed_trio():
    m = metrics(ConfusionMatrix(tp=93, fn=7, tn=89, fp=11))
    assert m.sensitivity == 0.93
    assert m.specificity == 0.89
    assert m.accuracy == 0.91


def test_metrics_empty_matrix():
    with pytest.raises(EmptyMatrix):
        metrics(ConfusionMatrix())


def test_confusion_matrix_rejects_negative_counts():
    with pytest.raises(InvariantViolation):
        ConfusionMatrix(tp=-1)


def test_ground_truth_validation():
    with pytest.raises(InvariantViolation):
        GroundTruthLabels(stream_id="s", level=Level.VIDEO, labels={0: True})
    with pytest.raises(InvariantViolation):
        GroundTruthLabels(stream_id="s", level=Level.FRAME, labels=True)
    with pytest.raises(InvariantViolation):
        GroundTruthLabels(stream_id="s", level=Level.FRAME, labels={-1: True})
    with pytest.raises(InvariantViolation):
        GroundTruthLabels(stream_id="s", level=Level.FRAME, labels={0: 1})


prediction_pairs = st.lists(st.tuples(st.booleans(), st.booleans()), min_size=1, max_size=60)


@settings(max_examples=200, deadline=None)
@given(prediction_pairs)
def test_total_equals_compared_units(pairs):
    results = [result(i, fall) for i, (fall, _) in enumerate(pairs)]
    truth = frame_truth({i: label for i, (_, label) in enumerate(pairs)})
    assert confuse(results, truth).total == len(pairs)


@settings(max_examples=200, deadline=None)
@given(prediction_pairs)
def test_swapping_predictions_and_labels_swaps_sens_spec(pairs):
    results = [result(i, fall) for i, (fall, _) in enumerate(pairs)]
    truth = frame_truth({i: label for i, (_, label) in enumerate(pairs)})
    flipped_results = [result(i, not fall) for i, (fall, _) in enumerate(pairs)]
    flipped_truth = frame_truth({i: not label for i, (_, label) in enumerate(pairs)})
    m = metrics(confuse(results, truth))
    fm = metrics(confuse(flipped_results, flipped_truth))
    assert m.accuracy == fm.accuracy
    assert m.sensitivity == fm.specificity
    assert m.specificity == fm.sensitivity


@settings(max_examples=200, deadline=None)
@given(prediction_pairs)
def test_perfect_accuracy_iff_no_errors(pairs):
    results = [result(i, fall) for i, (fall, _) in enumerate(pairs)]
    truth = frame_truth({i: label for i, (_, label) in enumerate(pairs)})
    cm = confuse(results, truth)
    assert (metrics(cm).accuracy == 1.0) == (cm.fp == 0 and cm.fn == 0)


TRUTH_CSV = """stream_id,level,frame,label
s1,frame,0,0
s1,frame,1,1
s1,frame,2,TRUE
s2,video,,1
"""


def test_load_truth_csv():
    truths = load_truth_csv(TRUTH_CSV)
    assert set(truths) == {"s1", "s2"}
    assert truths["s1"].level is Level.FRAME
    assert truths["s1"].labels == {0: False, 1: True, 2: True}
    assert truths["s2"].level is Level.VIDEO
    assert truths["s2"].labels is True


def test_load_truth_csv_rejects_bad_header():
    with pytest.raises(MalformedTruth):
        load_truth_csv("id,level,frame,label\ns,frame,0,1\n")


def test_load_truth_csv_rejects_empty():
    with pytest.raises(MalformedTruth):
        load_truth_csv("")


def test_load_truth_csv_rejects_mixed_levels():
    with pytest.raises(MalformedTruth):
        load_truth_csv("stream_id,level,frame,label\ns,frame,0,1\ns,video,,1\n")


def test_load_truth_csv_rejects_duplicate_frame():
    with pytest.raises(MalformedTruth):
        load_truth_csv("stream_id,level,frame,label\ns,frame,0,1\ns,frame,0,0\n")


def test_load_truth_csv_rejects_bad_label():
    with pytest.raises(MalformedTruth):
        load_truth_csv("stream_id,level,frame,label\ns,frame,0,maybe\n")


def test_load_truth_csv_rejects_video_row_with_frame():
    with pytest.raises(MalformedTruth):
        load_truth_csv("stream_id,level,frame,label\ns,video,3,1\n")


def test_load_truth_csv_rejects_duplicate_video_label():
    with pytest.raises(MalformedTruth):
        load_truth_csv("stream_id,level,frame,label\ns,video,,1\ns,video,,0\n")


def test_metrics_record_shape():
    cm = ConfusionMatrix(tp=199)
    record = json.loads(metrics_record("cam1", cm, metrics(cm)))
    assert record == {
        "stream_id": "cam1",
        "tp": 199,
        "fp": 0,
        "tn": 0,
        "fn": 0,
        "accuracy": 1.0,
        "sensitivity": 1.0,
        "specificity": None,
    }
