"""
Unit tests for CSV dataset ingestion.
"""

import math

import numpy as np
import pytest

from multiboost.boosters import BoostConfig, adaboost_samme
from multiboost.cli.ingest import ingest_csv, write_dataset_csv
from multiboost.core import BINARY_CLASSES, DatasetParseError
from multiboost.dynamics import toy_dataset


@pytest.fixture
def write(tmp_path):
    def _write(text: str, name: str = "data.csv"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


class TestIngestCsv:
    """Test parsing and label mapping."""

    def test_binary_without_header(self, write):
        """Test plain numeric rows with -1/+1 labels."""
        data = ingest_csv(write("0.0,1.5,1\n1.0,2.5,-1\n2.0,3.5,1\n"))
        assert (data.m, data.d) == (3, 2)
        assert data.classes == BINARY_CLASSES
        assert data.feature_names is None
        np.testing.assert_array_equal(data.y, [1, -1, 1])

    def test_header(self, write):
        """Test a non-numeric first row supplies feature names."""
        data = ingest_csv(write("height, width,label\n1,2,0\n3,4,1\n"))
        assert data.feature_names == ("height", "width")
        assert data.m == 2

    def test_zero_one_labels(self, write):
        """Test {0, 1} labels map to -1/+1."""
        data = ingest_csv(write("0,0\n1,1\n2,0\n"))
        assert data.classes == BINARY_CLASSES
        np.testing.assert_array_equal(data.y, [-1, 1, -1])

    def test_multiclass_labels(self, write):
        """Test 0..K-1 labels give K classes."""
        data = ingest_csv(write("0,0\n1,1\n2,2\n"))
        assert data.classes == (0, 1, 2)

    def test_labels_with_gaps_are_encoded(self, write):
        """Test labels 1, 2, 3 become three classes with no empty class."""
        data = ingest_csv(write("0,1\n1,2\n2,2\n3,3\n"))
        assert data.K == 3
        assert data.classes == (0, 1, 2)
        assert data.label_names == (1, 2, 3)
        np.testing.assert_array_equal(np.bincount(data.y, minlength=data.K), [1, 2, 1])

    def test_samme_coefficient_uses_present_classes(self, write):
        """Test SAMME adds log(K - 1) for the classes actually present."""
        data = ingest_csv(write("0,1\n1,2\n2,2\n3,3\n"))
        _, trace = adaboost_samme(data, BoostConfig(rounds=1))
        record = trace.records[0]
        assert not record.clamped
        expected = math.log((1.0 - record.epsilon) / record.epsilon) + math.log(2.0)
        assert record.alpha == pytest.approx(expected)

    def test_blank_lines_skipped(self, write):
        """Test blank lines do not become samples."""
        data = ingest_csv(write("0,1\n\n1,-1\n"))
        assert data.m == 2

    def test_empty_file(self, write):
        """Test an empty file is rejected on line 1."""
        with pytest.raises(DatasetParseError, match="empty") as excinfo:
            ingest_csv(write(""))
        assert excinfo.value.line == 1

    def test_missing_file(self, tmp_path):
        """Test a missing path is a parse error."""
        with pytest.raises(DatasetParseError, match="not found"):
            ingest_csv(tmp_path / "nope.csv")

    def test_short_row(self, write):
        """Test a row with too few fields reports its line."""
        with pytest.raises(DatasetParseError, match="ragged") as excinfo:
            ingest_csv(write("0,1,1\n1,2\n2,3,-1\n"))
        assert excinfo.value.line == 2

    def test_long_row(self, write):
        """Test a row with too many fields reports its line."""
        with pytest.raises(DatasetParseError, match="ragged") as excinfo:
            ingest_csv(write("0,1,1\n1,2,-1\n2,3,4,-1\n"))
        assert excinfo.value.line == 3

    def test_non_numeric_feature(self, write):
        """Test a non-numeric feature reports its line, counting header and blank lines."""
        with pytest.raises(DatasetParseError, match="non-numeric") as excinfo:
            ingest_csv(write("x1,x2,label\n0.5,1.0,1\n\n1.5,abc,-1\n"))
        assert excinfo.value.line == 4

    def test_fractional_label(self, write):
        """Test non-integer labels are rejected."""
        with pytest.raises(DatasetParseError, match="unknown label") as excinfo:
            ingest_csv(write("0,1\n1,1.5\n"))
        assert excinfo.value.line == 2

    def test_unknown_negative_label(self, write):
        """Test negative labels other than -1 are rejected."""
        with pytest.raises(DatasetParseError, match="unknown label 2") as excinfo:
            ingest_csv(write("0,-1\n1,1\n2,2\n"))
        assert excinfo.value.line == 3

    def test_single_column(self, write):
        """Test a label column alone is not a dataset."""
        with pytest.raises(DatasetParseError, match="feature column"):
            ingest_csv(write("1\n-1\n"))


class TestWriteDatasetCsv:
    """Test writing datasets."""

    def test_written_file_reads_back(self, tmp_path):
        """Test the toy grid survives a write and read unchanged."""
        data = toy_dataset(3)
        loaded = ingest_csv(write_dataset_csv(data, tmp_path / "out" / "toy.csv"))
        np.testing.assert_array_equal(loaded.X, data.X)
        np.testing.assert_array_equal(loaded.y, data.y)
        assert loaded.feature_names == ("x1", "x2")

    def test_original_labels_written_back(self, write, tmp_path):
        """Test encoded labels are written in their original form."""
        data = ingest_csv(write("0,5\n1,7\n2,9\n"))
        path = write_dataset_csv(data, tmp_path / "gaps.csv")
        assert [line.split(",")[-1] for line in path.read_text().splitlines()[1:]] == ["5", "7", "9"]
        loaded = ingest_csv(path)
        np.testing.assert_array_equal(loaded.y, data.y)
        assert loaded.label_names == (5, 7, 9)

    def test_default_names(self, tmp_path, d1_data):
        """Test unnamed features are written as x1..xd plus a label column."""
        path = write_dataset_csv(d1_data, tmp_path / "d1.csv")
        assert path.read_text().splitlines()[0] == "x1,label"
