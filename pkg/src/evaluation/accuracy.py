import numpy as np

from src.objects.dataset import Dataset
from src.objects.exceptions import EvaluationError
from src.objects.models import Predictor
from src.objects.models import predict_a_wins


def test_accuracy(m: Predictor, test: Dataset, seed: int) -> float:
    """
    Average test accuracy: every tuple credits the count on the side the model predicts,
    normalized by the total number of test outcomes.

    Args:
        m (Predictor): A MatchupModel or anything exposing ``win_probability(a, b)``.
        test (Dataset): The test data.
        seed (int): Seed of the coin flip settling exact 0.5 predictions.

    Returns:
        float: Accuracy in [0, 1].
    """
    total = test.total_outcomes
    if total == 0:
        raise EvaluationError(f"cannot score an empty test set ({test.name})")
    a, b, n_a, n_b = test.arrays
    a_wins = predict_a_wins(m, a, b, seed)
    return float(np.sum(np.where(a_wins, n_a, n_b)) / total)


# keep pytest from collecting the metric as a test
test_accuracy.__test__ = False  # type: ignore[attr-defined]
