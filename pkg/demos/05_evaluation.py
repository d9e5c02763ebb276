"""Evaluating predictions: accuracy, macro-F1, distribution, sweeps.

Evaluation is candidate-level and binary: every candidate is predicted 0 or
1 and compared to its gold label. Macro-F1 averages the per-class F1 of the
two classes; a class with an empty denominator contributes 0. The
distribution table cross-tabulates which score was higher (question side Q
or summary side S) against whether the pick was right (R) or wrong (W).
"""

from __future__ import annotations

import random

from legalsim import (
    PredictionSet,
    SimilarityRecord,
    distribution_table,
    evaluate,
    sweep_threshold,
)
from legalsim.evaluation import report_to_text, sweep_to_text


def main() -> None:
    # Four questions, one pick each. The picks hit two of the four.
    preds = PredictionSet()
    preds.set_group("q0001", {"q0001_a01": 1, "q0001_a02": 0})
    preds.set_group("q0002", {"q0002_a01": 0, "q0002_a02": 1})
    preds.set_group("q0003", {"q0003_a01": 1, "q0003_a02": 0})
    preds.set_group("q0004", {"q0004_a01": 0, "q0004_a02": 1})
    golds = {
        "q0001_a01": 1, "q0001_a02": 0,   # hit
        "q0002_a01": 1, "q0002_a02": 0,   # miss
        "q0003_a01": 1, "q0003_a02": 0,   # hit
        "q0004_a01": 1, "q0004_a02": 0,   # miss
    }
    report = evaluate(preds, golds)
    print(report_to_text(report))

    # The distribution table needs the per-candidate scores to know whether
    # the question or the summary side dominated each pick.
    def rec(cid: str, higher: str) -> SimilarityRecord:
        qid = cid.rsplit("_", 1)[0]
        return SimilarityRecord(qid, cid, 0.5, 0.4, 0.45, "cosine", higher)

    scores = [
        rec("q0001_a01", "Q"), rec("q0001_a02", "S"),
        rec("q0002_a01", "S"), rec("q0002_a02", "S"),
        rec("q0003_a01", "Q"), rec("q0003_a02", "Q"),
        rec("q0004_a01", "Q"), rec("q0004_a02", "S"),
    ]
    table = distribution_table(scores, preds, golds)
    print("picked-candidate distribution (source x outcome):")
    for (source, outcome), count in sorted(table.counts.items()):
        print(f"  {source},{outcome}: {count}")
    print(f"  total picks: {table.total}\n")

    # Threshold sweep: binarize calibrated scores at each grid value and
    # report macro-F1. "ge" labels score >= t positive. Best is the smallest
    # threshold attaining the maximum.
    rng = random.Random(5)
    scored = [(rng.random() * 0.5 + (0.4 if gold else 0.0), gold)
              for gold in [1, 0, 0, 0] * 25]
    grid = [round(0.05 * k, 2) for k in range(1, 20)]
    sweep = sweep_threshold(scored, grid, direction="ge")
    print(sweep_to_text(sweep))


if __name__ == "__main__":
    main()
