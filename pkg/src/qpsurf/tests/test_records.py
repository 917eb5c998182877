"""Tests for result records and their files."""

import io
import json
import math

import pytest

from qpsurf._engine import Estimate, RunConfig
from qpsurf._enums import NoiseModel, OutputFormat
from qpsurf._quasiprob import NoiseParams
from qpsurf._records import RECORD_FIELDS, RecordWriter, ResultRecord, read_records

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"


@pytest.fixture()
def record():
    config = RunConfig(
        model=NoiseModel.PHENOMENOLOGICAL,
        d=5,
        noise=NoiseParams(p=0.015, r=0.15),
        samples=100,
        seed=17,
    )
    result = Estimate(
        p_l_mean=0.1 + 0.2,
        std_error=1 / 3,
        n_samples=100,
        log_r_tot=math.log(7.25),
        wall_time=0.125,
    )
    return ResultRecord.from_estimate(config, result, "0.1.0")


class TestResultRecord:
    """Tests for ResultRecord."""

    def test_from_estimate(self, record):
        """Fields are taken from the configuration and the estimate."""
        assert record.model == "pheno"
        assert record.d == 5
        assert (record.p, record.r) == (0.015, 0.15)
        assert record.seed == 17
        assert record.r_tot_log10 == pytest.approx(math.log10(7.25))

    def test_field_order(self):
        """Records serialise their fields in a fixed order."""
        assert RECORD_FIELDS == (
            "model",
            "d",
            "p",
            "r",
            "n_samples",
            "p_l_mean",
            "std_error",
            "r_tot_log10",
            "seed",
            "wall_time_s",
            "version",
        )

    def test_from_dict_coerces_strings(self, record):
        """CSV cells (all strings) are coerced to the field types."""
        raw = {name: str(value) for name, value in record.to_dict().items()}
        assert ResultRecord.from_dict(raw) == record

    def test_from_dict_missing_field(self, record):
        """A missing field is an error."""
        data = record.to_dict()
        del data["seed"]
        with pytest.raises(KeyError):
            ResultRecord.from_dict(data)


class TestRecordFiles:
    """Tests for RecordWriter and read_records."""

    @pytest.mark.parametrize("fmt", list(OutputFormat))
    def test_values_survive_exactly(self, record, tmp_path, fmt):
        """Floats are written in their shortest exact form."""
        path = tmp_path / f"out.{fmt.value}"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = RecordWriter(fh, fmt)
            writer.write(record)
            writer.write(record)
        assert list(read_records(path, fmt)) == [record, record]

    def test_jsonl_one_object_per_line(self, record):
        """Each JSON line is a standalone object."""
        stream = io.StringIO()
        RecordWriter(stream).write(record)
        (line,) = stream.getvalue().splitlines()
        assert json.loads(line)["p_l_mean"] == 0.1 + 0.2

    def test_csv_header_only(self):
        """A CSV writer emits its header even before the first record."""
        stream = io.StringIO()
        RecordWriter(stream, OutputFormat.CSV)
        assert stream.getvalue() == ",".join(RECORD_FIELDS) + "\n"

    def test_nan_error_bar(self, record, tmp_path):
        """A single-sample record keeps its NaN error bar."""
        single = ResultRecord.from_dict({**record.to_dict(), "std_error": math.nan})
        path = tmp_path / "out.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            RecordWriter(fh, OutputFormat.CSV).write(single)
        (loaded,) = read_records(path, OutputFormat.CSV)
        assert math.isnan(loaded.std_error)

    def test_blank_lines_skipped(self, record, tmp_path):
        """Blank lines in a JSON-lines file are ignored."""
        path = tmp_path / "out.jsonl"
        path.write_text("\n" + json.dumps(record.to_dict()) + "\n\n", encoding="utf-8")
        assert list(read_records(path)) == [record]
