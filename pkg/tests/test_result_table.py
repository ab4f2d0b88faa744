"""
结果表序列化测试
"""

import json
import math

import pytest

from src.core.errors import OutputError
from src.core.lab_config import LabConfig
from src.core.result_table import ResultTable


class TestResultTable:
    """ResultTable 的单元测试"""

    def setup_method(self):
        self.table = ResultTable(
            columns=["t", "S"],
            rows=[[0.1, 1e-300], [1.0 / 3.0, math.inf], [12.5, 0.0]],
            meta={"subcommand": "quench", "seed": 7, "config": {"dim": 16, "grid": "0.1:100.0:8:log"}},
        )

    def test_schema_version_is_added(self):
        assert self.table.meta["schema_version"] == LabConfig.SCHEMA_VERSION

    def test_csv_layout(self):
        lines = self.table.to_csv().splitlines()
        assert lines[0].startswith("# config: ")
        assert "# seed: 7" in lines
        assert lines[4] == "t,S"
        assert lines[6] == f"{1.0 / 3.0!r},inf"

    def test_csv_is_byte_stable(self):
        text = self.table.to_csv()
        restored = ResultTable.from_csv(text)
        assert restored.to_csv() == text
        assert restored.rows == self.table.rows
        assert restored.meta == self.table.meta

    def test_json_is_byte_stable(self):
        text = self.table.to_json()
        assert set(json.loads(text)) == {"meta", "columns", "rows"}
        restored = ResultTable.parse(text, "json")
        assert restored.render("json") == text

    def test_column_access(self):
        assert self.table.column("t") == [0.1, 1.0 / 3.0, 12.5]
        with pytest.raises(OutputError):
            self.table.column("missing")

    def test_row_width_is_checked(self):
        with pytest.raises(OutputError):
            self.table.add_row([1.0])
        with pytest.raises(OutputError):
            ResultTable(columns=["a"], rows=[[1.0, 2.0]])

    def test_malformed_documents(self):
        with pytest.raises(OutputError):
            ResultTable.from_csv("# seed 7\nt\n1.0\n")
        with pytest.raises(OutputError):
            ResultTable.from_csv("t,S\n1.0,abc\n")
        with pytest.raises(OutputError):
            ResultTable.from_json("{not json")
        with pytest.raises(OutputError):
            ResultTable.from_json('{"columns": [], "rows": []}')

    def test_unknown_format(self):
        with pytest.raises(OutputError):
            self.table.render("xml")


def _strict_loads(text: str):
    def reject(token):
        raise ValueError(f"non-standard JSON token {token}")
    return json.loads(text, parse_constant=reject)


class TestNonFiniteValues:
    """inf / nan 以字符串写出，解析时还原"""

    def setup_method(self):
        self.table = ResultTable(
            columns=["tau", "S_record"],
            rows=[[0.0, math.inf], [0.5, 2.0], [1.0, -math.inf]],
            meta={"tau_B": math.inf, "fit": {"bounds": [1.0, math.nan]}},
        )

    def test_json_is_strict(self):
        document = _strict_loads(self.table.to_json())
        assert document["rows"][0] == [0.0, "inf"]
        assert document["rows"][2] == [1.0, "-inf"]
        assert document["meta"]["tau_B"] == "inf"
        assert document["meta"]["fit"]["bounds"][1] == "nan"

    def test_csv_metadata_is_strict(self):
        for line in self.table.to_csv().splitlines():
            if line.startswith("# "):
                _strict_loads(line.partition(": ")[2])

    def test_values_are_restored(self):
        for restored in (ResultTable.from_json(self.table.to_json()), ResultTable.from_csv(self.table.to_csv())):
            assert restored.column("S_record")[0] == math.inf
            assert restored.column("S_record")[2] == -math.inf
            assert restored.meta["tau_B"] == math.inf
            assert math.isnan(restored.meta["fit"]["bounds"][1])
        assert ResultTable.from_json(self.table.to_json()).to_json() == self.table.to_json()

    def test_bare_infinity_token_is_rejected(self):
        with pytest.raises(OutputError):
            ResultTable.from_json('{"meta": {}, "columns": ["x"], "rows": [[Infinity]]}')
