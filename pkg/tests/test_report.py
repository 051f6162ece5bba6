import pytest

from lexiprof import (
    AggregateRow,
    MatchMode,
    ReportRow,
    SweepConfig,
    aggregate,
    default_speaker_model,
    generate_transcript,
    read_aggregate_csv,
    read_rows_csv,
    render_figures,
    rows_from_sweep,
    rows_to_csv,
    run_sweep,
    write_aggregate_csv,
    write_rows_csv,
)
from lexiprof.errors import ParseError
from lexiprof.report import AGGREGATE_HEADER, ROWS_HEADER


@pytest.fixture(scope="module")
def sweep_result():
    corpus = [generate_transcript(default_speaker_model(seed), 25)
              for seed in (1, 2)]
    sc = SweepConfig(timepoints_min=(5,), k_values=(3,),
                     window_minutes=(10,), analysis_cutoff_min=25)
    return run_sweep(corpus, sc)


class TestRowsCsv:
    def test_header_and_formatting(self, sweep_result):
        text = rows_to_csv(rows_from_sweep(sweep_result))
        lines = text.splitlines()
        assert lines[0] == ",".join(ROWS_HEADER)
        for line in lines[1:]:
            value = line.split(",")[8]
            if value:
                assert len(value.split(".")[1]) == 6

    def test_round_trip(self, sweep_result, tmp_path):
        rows = rows_from_sweep(sweep_result)
        path = tmp_path / "rows.csv"
        write_rows_csv(rows, path)
        back = read_rows_csv(path)
        assert len(back) == len(rows)
        for a, b in zip(rows, back):
            assert (a.speaker_id, a.scope, a.metric,
                    a.window_index) == (b.speaker_id, b.scope, b.metric,
                                        b.window_index)
            if a.value is None:
                assert b.value is None
            else:
                assert abs(a.value - b.value) < 5e-7  # 6-decimal storage

    def test_reject_wrong_header(self, tmp_path):
        path = tmp_path / "rows.csv"
        path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_rows_csv(path)

    def test_skip_row_shape(self):
        row = ReportRow("s", 5, 10, None, "", "", "k3", "", None,
                        skip_reason="EmptyConstructionWindow")
        text = rows_to_csv([row])
        assert text.splitlines()[1] == (
            "s,5,10,,,,k3,,,EmptyConstructionWindow")

    def test_skip_rows_carry_no_value(self):
        with pytest.raises(ValueError):
            ReportRow("s", 5, 10, 0, "NOUN", "EXACT", "k3", "recall", 0.5,
                      skip_reason="whatever")


class TestAggregateCsv:
    def test_round_trip(self, sweep_result, tmp_path):
        rows = aggregate(sweep_result)
        path = tmp_path / "aggregate.csv"
        write_aggregate_csv(rows, path)
        back = read_aggregate_csv(path)
        assert len(back) == len(rows)
        for a, b in zip(rows, back):
            assert isinstance(b, AggregateRow)
            assert (a.scope, a.metric, a.mode, a.n_defined) == (
                b.scope, b.metric, b.mode, b.n_defined)
            if a.mean is None:
                assert b.mean is None
            else:
                assert abs(a.mean - b.mean) < 5e-7

    def test_reject_wrong_header(self, tmp_path):
        path = tmp_path / "agg.csv"
        path.write_text(",".join(ROWS_HEADER) + "\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_aggregate_csv(path)

    def test_header_constant(self):
        assert AGGREGATE_HEADER[0] == "timepoint_min"
        assert AGGREGATE_HEADER[-1] == "n_defined"


class TestFigures:
    def test_rendered_files(self, sweep_result, tmp_path):
        written = render_figures(aggregate(sweep_result), tmp_path)
        names = [p.name for p in written]
        assert names == ["aggregate_recall.png", "scope_recall.png"]
        for p in written:
            assert p.stat().st_size > 1000

    def test_empty_input_renders_nothing(self, tmp_path):
        assert render_figures([], tmp_path) == []

    def test_deterministic_output(self, sweep_result, tmp_path):
        rows = aggregate(sweep_result)
        a = render_figures(rows, tmp_path / "a")
        b = render_figures(rows, tmp_path / "b")
        assert [p.read_bytes() for p in a] == [p.read_bytes() for p in b]
