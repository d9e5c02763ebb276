"""Loading candidate-level rows and grouping them into questions.

Input files hold one row per answer candidate: a question, one proposed
answer, an explanation text, and (on labeled splits) a 0/1 label. Rows that
share the exact same (question, explanation) pair belong to one question
group. Groups get ids q0001, q0002, ... in first-appearance order and the
candidates inside a group get q0001_a01, q0001_a02, ... in row order.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from legalsim import gold_labels, load_split, save_split, strip_labels

ROWS = [
    {"question": "May the buyer rescind the contract?",
     "answer": "Yes, because the defect was material.",
     "explanation": "The court found the defect material and timely noticed.",
     "label": 1},
    {"question": "May the buyer rescind the contract?",
     "answer": "No, the notice period had lapsed.",
     "explanation": "The court found the defect material and timely noticed.",
     "label": 0},
    {"question": "Is the employer liable for the agent's act?",
     "answer": "Yes, the act was within the scope of employment.",
     "explanation": "Agency law imputes acts done in the scope of employment.",
     "label": 1},
    # Same question text as group 1 but a different explanation: new group.
    {"question": "May the buyer rescind the contract?",
     "answer": "Only with the seller's consent.",
     "explanation": "A different case with a consent requirement.",
     "label": 0},
    {"question": "Is the employer liable for the agent's act?",
     "answer": "No, the agent acted on a frolic of his own.",
     "explanation": "Agency law imputes acts done in the scope of employment.",
     "label": 0},
]


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "train.jsonl"
        path.write_text("".join(json.dumps(r) + "\n" for r in ROWS), encoding="utf-8")

        dataset = load_split(path, fmt="jsonl", split="train")
        print(f"loaded split {dataset.split_name!r}: "
              f"{len(dataset.records)} questions, {dataset.candidate_count} candidates\n")

        for record in dataset.records:
            print(f"{record.question_id}: {record.question_text}")
            for cand in record.candidates:
                mark = "+" if cand.gold_label == 1 else " "
                print(f"  [{mark}] {cand.candidate_id}: {cand.answer_text}")
        print()

        # Interleaved rows rejoined their groups: the employer question kept
        # both candidates even though an unrelated row sat between them.
        labels = gold_labels(dataset)
        print("gold labels:", dict(sorted(labels.items())))

        # Round-trip through CSV preserves everything, and strip_labels
        # produces the blind variant used for inference-only splits.
        csv_path = Path(tmp) / "train.csv"
        save_split(dataset, csv_path, fmt="csv")
        again = load_split(csv_path, fmt="csv", split="train")
        print("csv round-trip identical:", again.records == dataset.records)

        blind = strip_labels(dataset)
        print("after strip_labels, gold labels:", gold_labels(blind))


if __name__ == "__main__":
    main()
