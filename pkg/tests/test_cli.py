"""Config parsing, execution, output files, exit codes, determinism."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from darkport import ParseError, ValidationError
from darkport.cli import execute, main, parse_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

BUDGET = {
    "epsilon": 0.01,
    "delta_t": 1e-11,
    "sigma": 5e-15,
    "n_photons": 1000,
    "lambda_carrier": 7e-7,
    "delta_lambda": 5e-12,
}


def config_text(**fields) -> str:
    return json.dumps(fields)


class TestParseConfig:
    def test_minimal_compare(self):
        cfg = parse_config(config_text(command="compare", budget=BUDGET))
        assert cfg.command == "compare"
        assert cfg.budget.sigma == 5e-15
        assert cfg.budget.delta_omega == pytest.approx(1.922e10, rel=1e-3)

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            parse_config("{not json")

    def test_negative_sigma_names_field(self):
        bad = dict(BUDGET, sigma=-5e-15)
        with pytest.raises(ValidationError) as err:
            parse_config(config_text(command="compare", budget=bad))
        assert "budget.sigma" in str(err.value)

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError) as err:
            parse_config(
                config_text(command="compare", budget=BUDGET, taus=1e-18)
            )
        assert "taus" in str(err.value)

    def test_unknown_budget_key_rejected(self):
        bad = dict(BUDGET, detector="fancy")
        with pytest.raises(ValidationError) as err:
            parse_config(config_text(command="compare", budget=bad))
        assert "budget.detector" in str(err.value)

    def test_unknown_command(self):
        with pytest.raises(ValidationError):
            parse_config(config_text(command="weak-both", budget=BUDGET))

    def test_carrier_must_be_given_once(self):
        bad = dict(BUDGET, omega_carrier=2.7e15)
        with pytest.raises(ValidationError):
            parse_config(config_text(command="compare", budget=bad))

    def test_scheme_params_required(self):
        with pytest.raises(ValidationError) as err:
            parse_config(config_text(command="weak-imag", budget=BUDGET, tau=1e-18))
        assert "phi" in str(err.value)

    def test_log_sweep_spacing(self):
        cfg = parse_config(
            config_text(
                command="sweep",
                budget=BUDGET,
                phi=0.1,
                sweep=dict(
                    scheme="weak-imag", parameter="tau",
                    start=1e-20, stop=1e-16, count=9, scale="log",
                ),
            )
        )
        values = cfg.sweep.values()
        assert len(values) == 9
        assert values[0] == 1e-20 and values[-1] == 1e-16
        ratios = values[1:] / values[:-1]
        np.testing.assert_allclose(ratios, 10.0 ** 0.5, rtol=1e-12)

    def test_sweep_count_too_small(self):
        with pytest.raises(ValidationError) as err:
            parse_config(
                config_text(
                    command="sweep", budget=BUDGET, phi=0.1,
                    sweep=dict(scheme="weak-imag", parameter="tau",
                               start=1e-20, stop=1e-16, count=1, scale="log"),
                )
            )
        assert "sweep.count" in str(err.value)

    def test_sweep_unknown_parameter(self):
        with pytest.raises(ValidationError):
            parse_config(
                config_text(
                    command="sweep", budget=BUDGET, tau=1e-18,
                    sweep=dict(scheme="interferometry", parameter="phi",
                               start=0.01, stop=0.1, count=3, scale="linear"),
                )
            )

    def test_swept_parameter_cannot_be_fixed(self):
        with pytest.raises(ValidationError):
            parse_config(
                config_text(
                    command="sweep", budget=BUDGET, phi=0.1, tau=1e-18,
                    sweep=dict(scheme="weak-imag", parameter="tau",
                               start=1e-20, stop=1e-16, count=3, scale="log"),
                )
            )

    def test_epsilon_sweep_stays_small_angle(self):
        with pytest.raises(ValidationError):
            parse_config(
                config_text(
                    command="sweep", budget=BUDGET, tau=1e-18,
                    sweep=dict(scheme="interferometry", parameter="epsilon",
                               start=0.01, stop=0.5, count=3, scale="linear"),
                )
            )

    def test_dic_config(self):
        cfg = parse_config(
            config_text(
                command="dic",
                dic=dict(profile_csv="p.csv", shear=1e-6, analyzer_offset=0.05),
            )
        )
        assert cfg.dic.shear == 1e-6


class TestExecute:
    def test_compare_outputs(self, bench_budget, tmp_path):
        cfg = parse_config((CONFIGS / "compare.json").read_text())
        execute(cfg, tmp_path)
        payload = json.loads((tmp_path / "result.json").read_text())
        report = payload["report"]
        # imaginary-WV limit beats interferometry by ~3 orders of magnitude
        ratio = report["tau_min_imag"] / report["tau_min_interf"]
        assert 1.0 / 3e3 <= ratio <= 1.0 / 7e2
        assert (tmp_path / "report.txt").read_text().startswith("scheme")

    def test_weak_imag_zero_delay(self, tmp_path):
        cfg = parse_config(
            config_text(command="weak-imag", budget=BUDGET, tau=0.0, phi=0.1)
        )
        execute(cfg, tmp_path)
        payload = json.loads((tmp_path / "result.json").read_text())
        # symmetric spectrum: centroid is zero on the 1/sigma frequency scale
        assert abs(payload["outcome"]["observable_shift"]) < 1e-9 / BUDGET["sigma"]
        assert not payload["outcome"]["resolvable"]
        assert (tmp_path / "spectrum.csv").exists()

    def test_weak_real_emits_envelope(self, tmp_path):
        cfg = parse_config((CONFIGS / "weak_real.json").read_text())
        execute(cfg, tmp_path)
        header = (tmp_path / "envelope.csv").read_text().splitlines()[0]
        assert header == "t,re,im"

    def test_sweep_csv_contains_zero_row(self, tmp_path):
        cfg = parse_config(
            config_text(
                command="sweep", budget=BUDGET, phi=0.1,
                sweep=dict(scheme="weak-imag", parameter="tau",
                           start=0.0, stop=2e-18, count=3, scale="linear"),
            )
        )
        execute(cfg, tmp_path)
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[0].startswith("tau,")
        first = lines[1].split(",")
        assert float(first[0]) == 0.0
        # delta-omega ~ 0 at tau = 0, on the 1/sigma scale
        assert abs(float(first[1])) < 1e-9 / BUDGET["sigma"]

    def test_sweep_workers_agree(self, tmp_path):
        cfg = parse_config((CONFIGS / "sweep_tau.json").read_text())
        execute(cfg, tmp_path / "serial", workers=1)
        execute(cfg, tmp_path / "parallel", workers=4)
        assert (
            (tmp_path / "serial" / "sweep.csv").read_bytes()
            == (tmp_path / "parallel" / "sweep.csv").read_bytes()
        )

    def test_epsilon_sweep_scales_tau_min(self, tmp_path):
        cfg = parse_config(
            config_text(
                command="sweep", budget=BUDGET, tau=1e-18,
                sweep=dict(scheme="interferometry", parameter="epsilon",
                           start=0.01, stop=0.02, count=2, scale="linear"),
            )
        )
        execute(cfg, tmp_path)
        rows = (tmp_path / "sweep.csv").read_text().splitlines()[1:]
        tau_mins = [float(r.split(",")[-1]) for r in rows]
        assert tau_mins[1] == 2.0 * tau_mins[0]


class TestMainExitCodes:
    def run(self, command, config_path, out, workers=None):
        argv = [command, "--config", str(config_path), "--out", str(out)]
        if workers is not None:
            argv += ["--workers", str(workers)]
        return main(argv)

    def test_all_example_configs_succeed(self, tmp_path):
        for name in ("compare", "weak_real", "weak_imag",
                     "interferometry", "sweep_tau", "dic"):
            cfg_path = CONFIGS / f"{name}.json"
            command = json.loads(cfg_path.read_text())["command"]
            code = self.run(command, cfg_path, tmp_path / name)
            assert code == 0, name
            assert (tmp_path / name / "result.json").exists()

    def test_dic_profile_resolves_relative_to_config(self, tmp_path):
        # configs/dic.json names dic_profile.csv next to itself
        code = self.run("dic", CONFIGS / "dic.json", tmp_path)
        assert code == 0
        lines = (tmp_path / "image.csv").read_text().splitlines()
        assert lines[0] == "x,intensity,valid"

    def test_command_mismatch_fails_validation(self, tmp_path):
        code = self.run("weak-imag", CONFIGS / "compare.json", tmp_path)
        assert code == 1

    def test_malformed_json_exit_one(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        assert self.run("compare", bad, tmp_path / "out") == 1

    def test_missing_config_exit_one(self, tmp_path):
        assert self.run("compare", tmp_path / "nope.json", tmp_path) == 1

    def test_numerical_failure_exit_two(self, tmp_path):
        # delay far beyond the grid span: translation cannot be represented
        cfg = tmp_path / "wide.json"
        cfg.write_text(
            config_text(command="weak-real", budget=BUDGET, tau=5e-14, delta=0.1)
        )
        assert self.run("weak-real", cfg, tmp_path / "out") == 2

    def test_determinism_byte_identical(self, tmp_path):
        for sub in ("a", "b"):
            code = self.run("sweep", CONFIGS / "sweep_tau.json", tmp_path / sub)
            assert code == 0
        for name in ("result.json", "sweep.csv"):
            assert (
                (tmp_path / "a" / name).read_bytes()
                == (tmp_path / "b" / name).read_bytes()
            )

    def test_results_json_revalidates(self, tmp_path):
        # emitted result.json re-validates against the output contract:
        # same command, documented outcome fields, JSON-native types
        outcome_keys = {
            "observable_shift", "postselect_prob", "resolvable", "tau_min",
            "detail",
        }
        for name in ("weak_real", "weak_imag", "interferometry"):
            cfg_path = CONFIGS / f"{name}.json"
            command = json.loads(cfg_path.read_text())["command"]
            assert self.run(command, cfg_path, tmp_path / name) == 0
            payload = json.loads((tmp_path / name / "result.json").read_text())
            assert payload["command"] == command
            assert set(payload["outcome"]) == outcome_keys
            assert isinstance(payload["outcome"]["resolvable"], bool)
        assert self.run("compare", CONFIGS / "compare.json", tmp_path / "cmp") == 0
        report = json.loads((tmp_path / "cmp" / "result.json").read_text())["report"]
        assert set(report) == {
            "tau_min_real", "tau_min_imag", "tau_min_interf",
            "ratio_interf_over_imag", "ratio_real_over_interf",
            "shift_prefactor_measured", "shift_prefactor_stated",
        }
