"""Tests for the ``anyon-interferometry`` command-line driver."""

from __future__ import annotations

import json
import typing as typ

import pytest

from anyon_interferometry import cli
from anyon_interferometry.cli_config import EXPERIMENT_NAMES, ExperimentConfig
from anyon_interferometry.cli_report import ReportRecord
from anyon_interferometry.log_context import experiment_var, run_id_var
from anyon_interferometry.optics_prep import PREP_LAYOUT

if typ.TYPE_CHECKING:
    import collections.abc as cabc
    import pathlib


def _context_record(config: ExperimentConfig) -> list[ReportRecord]:
    return [
        ReportRecord(
            experiment=str(experiment_var.get()),
            check="context",
            parameters={"jobs": config.jobs},
            value=0.0,
            provenance="trivial",
            tolerance=config.tolerance,
            run_id=run_id_var.get(),
        )
    ]


class TestMain:
    """End-to-end runs of small experiments."""

    @pytest.mark.parametrize(
        "argv",
        [
            ["--experiment", "fusion"],
            ["--experiment", "fusion", "--basis", "y", "--vertex", "v3"],
            ["--experiment", "fusion", "--layer", "encoded"],
            ["--experiment", "probe", "--layer", "encoded", "--element", "c+"],
            ["--experiment", "equivalence"],
        ],
        ids=["fusion", "fusion-y-v3", "fusion-encoded", "probe-encoded", "equivalence"],
    )
    def test_checks_pass(
        self, argv: list[str], capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Verify each run exits 0 with every check passing."""
        status = cli.main(argv)
        out = capsys.readouterr().out
        assert status == cli.EXIT_OK, out
        assert "FAIL" not in out
        assert out.rstrip().endswith("checks passed")

    def test_report_file(
        self, tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Verify ``--out`` writes one record per line stamped with the run id."""
        report = tmp_path / "report.jsonl"
        status = cli.main([
            "--experiment",
            "fusion",
            "--element",
            "c+",
            "--run-id",
            "run-42",
            "--out",
            str(report),
        ])
        capsys.readouterr()
        assert status == cli.EXIT_OK
        lines = report.read_text(encoding="utf-8").splitlines()
        rows = [json.loads(line) for line in lines]
        assert {row["run_id"] for row in rows} == {"run-42"}
        assert [row["check"] for row in rows] == [
            "fusion-reference",
            "fusion-paths",
            "ancilla-interference",
        ]
        assert rows[-1]["value"] == pytest.approx(-0.5)

    def test_photonic_identity_row(
        self, tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Verify the photonic ``e`` run reads the ancilla back as ``|+x⟩``."""
        report = tmp_path / "report.jsonl"
        status = cli.main([
            "--experiment",
            "fusion",
            "--layer",
            "photonic",
            "--element",
            "e",
            "--out",
            str(report),
        ])
        capsys.readouterr()
        assert status == cli.EXIT_OK
        lines = report.read_text(encoding="utf-8").splitlines()
        rows = {row["check"]: row for row in map(json.loads, lines)}
        success = rows["photonic-success"]
        assert success["value"] == pytest.approx(1.0)
        assert success["parameters"]["nominal"] == pytest.approx(1.0)
        interference = rows["ancilla-interference"]
        assert interference["parameters"]["element"] == "e"
        assert interference["value"] == pytest.approx(1.0)
        assert interference["reference"] == pytest.approx(1.0)

    def test_invalid_configuration(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Verify unsupported flag combinations exit with status 2."""
        status = cli.main(["--layer", "encoded", "--vertex", "v2"])
        err = capsys.readouterr().err
        assert status == cli.EXIT_USAGE
        assert "error: the encoded layer operates at v1 only" in err

    def test_unknown_choice_exits(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Verify argparse rejects unknown layers."""
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["--layer", "qubit"])
        capsys.readouterr()
        assert excinfo.value.code == cli.EXIT_USAGE

    def test_external_circuit_failing_checks(
        self, tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Verify a circuit that misses the reference exits with status 1."""
        circuit = tmp_path / "prep.json"
        circuit.write_text(
            json.dumps({"modes": list(PREP_LAYOUT.mode_labels), "elements": []}),
            encoding="utf-8",
        )
        status = cli.main([
            "--experiment",
            "optics",
            "--nmax",
            "1",
            "--circuit",
            str(circuit),
        ])
        out = capsys.readouterr().out
        assert status == cli.EXIT_FAILED_CHECKS
        failing = [line for line in out.splitlines() if line.endswith("FAIL")]
        assert failing
        allowed = ("external-prep", "truncation-deficit")
        assert all(any(name in line for name in allowed) for line in failing)

    def test_malformed_circuit(
        self, tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Verify a malformed circuit file exits with status 2."""
        circuit = tmp_path / "prep.json"
        circuit.write_text("{", encoding="utf-8")
        status = cli.main([
            "--experiment",
            "optics",
            "--nmax",
            "1",
            "--circuit",
            str(circuit),
        ])
        assert status == cli.EXIT_USAGE
        assert "invalid JSON" in capsys.readouterr().err

    def test_logging_carries_context(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Verify ``--log-level info`` tags records with run and experiment."""
        cli.main([
            "--experiment",
            "fusion",
            "--element",
            "e",
            "--run-id",
            "run-7",
            "--log-level",
            "info",
        ])
        err = capsys.readouterr().err
        assert "[run-7] - [fusion]" in err
        assert "experiment started" in err


class TestRunExperiments:
    """Ordering and context propagation across workers."""

    @pytest.mark.parametrize("jobs", [1, 4])
    def test_order_and_context(
        self,
        jobs: int,
        monkeypatch: pytest.MonkeyPatch,
        isolated_context: cabc.Callable[[cabc.Callable[[], None]], None],
    ) -> None:
        """Verify records keep experiment order and see the caller's run id."""
        for name in EXPERIMENT_NAMES:
            monkeypatch.setitem(cli.COMMANDS, name, _context_record)
        config = ExperimentConfig(jobs=jobs)
        captured: list[ReportRecord] = []

        def _inner() -> None:
            run_id_var.set("shared")
            captured.extend(cli.run_experiments(config))

        isolated_context(_inner)
        assert [record.experiment for record in captured] == list(EXPERIMENT_NAMES)
        assert {record.run_id for record in captured} == {"shared"}
        assert experiment_var.get() is None
