#!/usr/bin/env python3
# Copyright 2026 The bayes-attrib Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the CSV fixtures under tests/data.

tictactoe.csv is rebuilt from first principles (every distinct terminal board
of a game where x moves first); breast_cancer.csv and wine.csv are exported
from the copies of the UCI datasets bundled with scikit-learn.
"""
import csv
import os
import sys

LINES = [(0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8),
         (0, 4, 8), (2, 4, 6)]
SQUARES = ["top_left", "top_middle", "top_right", "middle_left",
           "middle_middle", "middle_right", "bottom_left", "bottom_middle",
           "bottom_right"]


def winner(board):
    for a, b, c in LINES:
        if board[a] != "b" and board[a] == board[b] == board[c]:
            return board[a]
    return None


def terminal_boards():
    seen = {}
    stack = [(tuple("b" * 9), "x")]
    while stack:
        board, player = stack.pop()
        w = winner(board)
        if w is not None or "b" not in board:
            seen[board] = "positive" if w == "x" else "negative"
            continue
        for i, cell in enumerate(board):
            if cell == "b":
                nxt = list(board)
                nxt[i] = player
                stack.append((tuple(nxt), "o" if player == "x" else "x"))
    return sorted(seen.items())


def write_tictactoe(path):
    rows = terminal_boards()
    with open(path, "w", newline="") as f:
        out = csv.writer(f, lineterminator="\n")
        out.writerow(SQUARES + ["class"])
        for board, label in rows:
            out.writerow(list(board) + [label])
    return len(rows)


def write_sklearn(path, loader, label_name):
    ds = loader()
    names = [n.replace(" ", "_") for n in ds.feature_names]
    with open(path, "w", newline="") as f:
        out = csv.writer(f, lineterminator="\n")
        out.writerow(names + [label_name])
        for x, y in zip(ds.data, ds.target):
            out.writerow([repr(float(v)) for v in x] + [ds.target_names[y]])
    return len(ds.target)


def main(outdir):
    from sklearn.datasets import load_breast_cancer, load_wine
    print("tictactoe", write_tictactoe(os.path.join(outdir, "tictactoe.csv")))
    print("breast_cancer", write_sklearn(os.path.join(outdir, "breast_cancer.csv"),
                                         load_breast_cancer, "diagnosis"))
    print("wine", write_sklearn(os.path.join(outdir, "wine.csv"), load_wine,
                                "cultivar"))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else
         os.path.join(os.path.dirname(__file__), "..", "tests", "data"))
