#
# Copyright (C) 2024 Red Hat, Inc.
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.
#
from pathlib import Path

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"

INTRANS_TEMPLATE = "intrans.j2"
EXPERIMENT_TEMPLATE = "experiment.j2"
BENCHMARK_TEMPLATE = "benchmark.j2"

OUTPUT_FORMATS = ("json", "table")

INTRANS_COLUMNS = ("Dataset", "Players", "Outcomes", "Pairs", "Coverage", "isIntrans", "Intrans@3", "PlayerIntrans@3")
FOLD_COLUMNS = ("Fold", "Accuracy", "dim", "lambda", "Unseen players")
EXPERIMENT_COLUMNS = ("Dataset", "Model", "k", "Mean", "Std")
