"""Tests for qcarleson/utils/formatting.py - console helpers."""

import json

import numpy as np
import pytest
from rich.table import Table

from qcarleson.utils.formatting import (
    create_key_value_table,
    create_status_table,
    format_error,
    format_number,
    format_section_header,
    format_success,
    format_verdict,
    parse_quaternion,
    print_json,
)


class TestFormatting:
    """Tests for the markup helpers."""

    def test_section_header(self):
        assert format_section_header("Suite") == "[bold cyan]═══ Suite ═══[/bold cyan]"

    def test_status_messages(self):
        assert format_success("done") == "[green][green]✓[/green] done[/green]"
        assert format_error("bad", icon=False) == "[red]bad[/red]"

    def test_verdicts(self):
        assert format_verdict("pass").endswith("pass")
        assert "⚠" in format_verdict("finding")
        assert "ℹ" in format_verdict("other")

    def test_number(self):
        assert format_number(np.float64(1.0 / 3.0)) == "0.333333"
        assert format_number(5) == "5"


class TestTables:
    """Tests for table builders."""

    def test_key_value_table(self):
        table = create_key_value_table({"sup": 4.0, "witness": "box"}, title="Result")
        assert isinstance(table, Table)
        assert table.row_count == 2

    def test_status_table(self):
        rows = [{"id": "algebra", "status": "pass"}, {"id": "kernels"}]
        table = create_status_table(rows, [{"name": "Check", "key": "id"}, {"name": "Status", "key": "status"}])
        assert table.row_count == 2
        assert len(table.columns) == 2


class TestCommandLineValues:
    """Tests for quaternion parsing and JSON output."""

    def test_parse_quaternion(self):
        np.testing.assert_allclose(parse_quaternion("0, 0.5, 0, 0"), [0.0, 0.5, 0.0, 0.0])

    @pytest.mark.parametrize("text", ["1,2,3", "a,b,c,d", ""])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError, match="w,x,y,z"):
            parse_quaternion(text)

    def test_print_json_goes_to_stdout(self, capsys):
        print_json({"b": np.float64(0.5), "a": 1})
        out = capsys.readouterr().out
        assert json.loads(out) == {"a": 1, "b": 0.5}
