import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from data_io import (
    LM_TRACE_HEADER,
    TRACE_HEADER,
    RunSpec,
    SparseDataset,
    format_libsvm,
    gen_logistic_instance,
    gen_logsumexp_instance,
    load_libsvm,
    load_run_spec,
    parse_libsvm,
    read_trace_csv,
    write_trace_csv,
)
from errors import NonBinaryLabelError, ParseError, SchemaError
from solvers.types import LMTraceRecord, TraceRecord


def parse_text(text, d=None, **kwargs):
    return parse_libsvm(io.StringIO(text), d, **kwargs)


# --- LIBSVM -----------------------------------------------------------------


def test_parse_two_rows():
    data = parse_text("+1 3:0.5 7:1.25\n-1 1:2\n")
    assert (data.n, data.d) == (2, 7)
    np.testing.assert_array_equal(data.labels, [1.0, 0.0])
    assert data.rows == [[(3, 0.5), (7, 1.25)], [(1, 2.0)]]
    np.testing.assert_array_equal(data.to_dense()[0], [0, 0, 0.5, 0, 0, 0, 1.25])
    assert data.to_csr().shape == (2, 7)


def test_parse_skips_comments_and_blank_lines():
    data = parse_text("# header\n\n0 2:1  # trailing\n1\n")
    assert data.n == 2
    assert data.rows == [[(2, 1.0)], []]
    np.testing.assert_array_equal(data.labels, [0.0, 1.0])


def test_parse_respects_explicit_dimension():
    assert parse_text("1 2:1\n", d=10).to_dense().shape == (1, 10)
    with pytest.raises(ParseError):
        parse_text("1 12:1\n", d=10)


@pytest.mark.parametrize(
    "text",
    ["1 3:0.5 2:1\n", "1 3:0.5 3:1\n", "1 a:1\n", "1 3\n", "x 1:1\n", "1 0:1\n", "1 1:nan\n"],
)
def test_parse_rejects_malformed_lines(text):
    with pytest.raises(ParseError):
        parse_text(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as excinfo:
        parse_text("1 1:1\n0 2:1\n1 2:x\n")
    assert excinfo.value.line_no == 3
    assert "line 3" in str(excinfo.value)


def test_parse_rejects_non_binary_labels():
    with pytest.raises(NonBinaryLabelError):
        parse_text("1 1:1\n2 1:1\n")


def test_positive_label_maps_other_classes_to_zero():
    data = parse_text("1 1:1\n2 2:1\n1 3:1\n", positive_label=1.0)
    np.testing.assert_array_equal(data.labels, [1.0, 0.0, 1.0])


def test_dataset_validation():
    with pytest.raises(ValueError):
        SparseDataset(n=1, d=2, rows=[[(2, 1.0), (1, 1.0)]], labels=np.ones(1))
    with pytest.raises(ValueError):
        SparseDataset(n=2, d=2, rows=[[]], labels=np.ones(1))


rows_strategy = st.lists(
    st.dictionaries(
        st.integers(1, 30),
        st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
        max_size=6,
    ),
    min_size=1,
    max_size=8,
)


@settings(deadline=None, max_examples=50)
@given(rows=rows_strategy, labels=st.data())
def test_format_then_parse_preserves_dataset(rows, labels):
    ordered = [sorted(row.items()) for row in rows]
    label_values = labels.draw(st.lists(st.sampled_from([0.0, 1.0]), min_size=len(rows), max_size=len(rows)))
    dataset = SparseDataset(n=len(rows), d=30, rows=ordered, labels=np.array(label_values))
    again = parse_text(format_libsvm(dataset), d=30)
    assert again.rows == dataset.rows
    np.testing.assert_array_equal(again.labels, dataset.labels)


def test_load_libsvm(tmp_path):
    path = tmp_path / "tiny.libsvm"
    path.write_text("2 1:1 3:1\n1 2:1\n", encoding="utf-8")
    data = load_libsvm(path, positive_label=1.0)
    assert (data.n, data.d) == (2, 3)
    np.testing.assert_array_equal(data.labels, [0.0, 1.0])


def test_load_libsvm_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_libsvm(tmp_path / "absent")


# --- synthetic instances ----------------------------------------------------


def test_logsumexp_instance_is_deterministic():
    a1, b1 = gen_logsumexp_instance(20, 4, seed=3)
    a2, b2 = gen_logsumexp_instance(20, 4, seed=3)
    np.testing.assert_array_equal(a1, a2)
    np.testing.assert_array_equal(b1, b2)
    assert a1.shape == (20, 4) and b1.shape == (20,)
    assert not np.array_equal(a1, gen_logsumexp_instance(20, 4, seed=4)[0])


def test_logsumexp_instance_is_standard_normal():
    vectors, offsets = gen_logsumexp_instance(100000, 1, seed=0)
    assert abs(vectors.mean()) < 0.02
    assert abs(offsets.mean()) < 0.02
    assert vectors.std() == pytest.approx(1.0, abs=0.02)


def test_logistic_instance():
    features, labels = gen_logistic_instance(50, 6, seed=1)
    assert features.shape == (50, 6)
    assert set(np.unique(labels)) <= {0.0, 1.0}
    binary, _ = gen_logistic_instance(50, 6, seed=1, binary=True)
    assert set(np.unique(binary)) <= {0.0, 1.0}
    np.testing.assert_array_equal(features, gen_logistic_instance(50, 6, seed=1)[0])


@pytest.mark.parametrize("n, d", [(0, 3), (3, 0)])
def test_generators_reject_empty_shapes(n, d):
    with pytest.raises(ValueError):
        gen_logsumexp_instance(n, d, seed=0)


# --- trace CSVs -------------------------------------------------------------


def test_empty_trace_writes_header_only(tmp_path):
    path = write_trace_csv([], tmp_path / "out" / "empty.csv")
    assert path.read_text(encoding="utf-8") == ",".join(TRACE_HEADER) + "\n"
    assert read_trace_csv(path) == []
    lm_path = write_trace_csv([], tmp_path / "lm.csv", lm=True)
    assert lm_path.read_text(encoding="utf-8") == ",".join(LM_TRACE_HEADER) + "\n"


def test_trace_round_trip(tmp_path):
    trace = [
        TraceRecord(0, 0.1 + 0.2, 1.0 / 3.0, 2.0**-40, 1e-300, 7.5, 3, 3, 0.25),
        TraceRecord(1, -0.0, 0.0, 0.0, 0.0, 7.5, 0, 3, 1.5),
    ]
    assert read_trace_csv(write_trace_csv(trace, tmp_path / "t.csv")) == trace


def test_lm_trace_round_trip(tmp_path):
    trace = [LMTraceRecord(0, 3.0, 20.5, 1.0 / 7.0, 0.125, 4.0), LMTraceRecord(1, 1e-9, 1e-8, 0.0, 0.0, 4.0)]
    path = write_trace_csv(trace, tmp_path / "lm.csv")
    assert path.read_text(encoding="utf-8").splitlines()[0] == ",".join(LM_TRACE_HEADER)
    assert read_trace_csv(path) == trace


def test_trace_schema_errors(tmp_path):
    bad_header = tmp_path / "bad.csv"
    bad_header.write_text("k,f\n0,1\n", encoding="utf-8")
    with pytest.raises(SchemaError):
        read_trace_csv(bad_header)

    short_row = tmp_path / "short.csv"
    short_row.write_text(",".join(TRACE_HEADER) + "\n0,1,2\n", encoding="utf-8")
    with pytest.raises(SchemaError):
        read_trace_csv(short_row)

    bad_cell = tmp_path / "cell.csv"
    bad_cell.write_text(",".join(LM_TRACE_HEADER) + "\n0.5,1,1,1,1,1\n", encoding="utf-8")
    with pytest.raises(SchemaError):
        read_trace_csv(bad_cell)


# --- run files --------------------------------------------------------------


def test_load_run_spec(tmp_path):
    path = tmp_path / "run.env"
    path.write_text(
        "# AdaN on the worst case\nproblem = cubic_worstcase\nmethod = adan\nh0 = 1e-3\nmax_iters = 50\n"
        "check_invariants = true\nH = 8\n",
        encoding="utf-8",
    )
    spec = load_run_spec(path)
    assert (spec.problem, spec.method) == ("cubic_worstcase", "adan")
    assert spec.h0 == 1e-3
    assert spec.max_iters == 50
    assert spec.check_invariants is True
    assert spec.h_const == 8.0
    assert spec.tol == RunSpec().tol


def test_run_spec_ignores_process_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("method", "adan_plus")
    monkeypatch.setenv("tol", "0.5")
    path = tmp_path / "run.env"
    path.write_text("problem = quadratic\n", encoding="utf-8")
    spec = load_run_spec(path)
    assert spec.method == "reg_newton"
    assert spec.tol == 1e-8


def test_run_spec_rejects_unknown_keys(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("problem = quadratic\nlearning_rate = 0.1\n", encoding="utf-8")
    with pytest.raises(ValueError, match="learning_rate"):
        load_run_spec(path)


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"method": "bogus"}, ValueError),
        ({"problem": "rosenbrock"}, ValueError),
        ({"tol": 0.0}, ValueError),
        ({"reg": -1.0}, ValueError),
        ({"dataset": "definitely/missing.txt"}, FileNotFoundError),
    ],
)
def test_run_spec_validation(kwargs, error):
    with pytest.raises(error):
        RunSpec(**kwargs)


def test_missing_run_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_run_spec(tmp_path / "absent.env")
