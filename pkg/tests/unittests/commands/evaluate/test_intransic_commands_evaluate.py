import json

from click.testing import CliRunner

from src.cli import main
from src.objects.models import fit_naive
from src.objects.models import save_model


def test_evaluate_naive_checkpoint_on_the_toy_game(toy_game, toy_game_path, tmp_path):
    checkpoint = tmp_path / "naive.json"
    save_model(fit_naive(toy_game), checkpoint)
    result = CliRunner().invoke(main, ["evaluate", str(checkpoint), str(toy_game_path)])
    assert result.exit_code == 0, result.output
    assert "accuracy=0.6667" in result.output
    assert "outcomes=96" in result.output


def test_evaluate_json_report(toy_game, toy_game_path, tmp_path):
    checkpoint = tmp_path / "naive.json"
    out = tmp_path / "report.json"
    save_model(fit_naive(toy_game), checkpoint)
    result = CliRunner().invoke(
        main,
        ["evaluate", str(checkpoint), str(toy_game_path), "--format", "json", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert data["model"] == "naive"
    assert abs(data["accuracy"] - 64 / 96) < 1e-12


def test_evaluate_on_unknown_players(toy_game, rps_path, tmp_path):
    checkpoint = tmp_path / "naive.json"
    save_model(fit_naive(toy_game), checkpoint)
    result = CliRunner().invoke(main, ["evaluate", str(checkpoint), str(rps_path)])
    assert result.exit_code == 2


def test_evaluate_a_missing_checkpoint(toy_game_path, tmp_path):
    result = CliRunner().invoke(main, ["evaluate", str(tmp_path / "missing.json"), str(toy_game_path)])
    assert result.exit_code == 2


def test_evaluate_takes_the_checkpoint_first():
    result = CliRunner().invoke(main, ["evaluate", "--help"])
    assert result.exit_code == 0
    assert "CHECKPOINT_PATH DATASET_PATH" in result.output
