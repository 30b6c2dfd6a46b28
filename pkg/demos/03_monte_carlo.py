"""A short Monte Carlo run over all four settings, then the rendered report.

Run:  python demos/03_monte_carlo.py [reps]
Each repetition over all four settings takes roughly 20 s on one core.
"""
import sys
import tempfile

from kinemark.harness import ExperimentConfig, prepare, report_render, run_experiment, synth_corpus

reps = int(sys.argv[1]) if len(sys.argv) > 1 else 3
manifest = synth_corpus(tempfile.mkdtemp(prefix="kinemark_"), 20, 0.5, seed=0)
config = ExperimentConfig(corpus=str(manifest), settings=("s1", "s2", "s3", "s4"),
                          repetitions=reps)

data = prepare(config)  # features are extracted once and shared by every repetition
print(f"{data.matrix.n_rows} windows x {len(data.matrix.names)} columns")
report = run_experiment(config, data, progress=lambda r: print(f"  repetition {r.rep_index} done"))
print(report_render(report, "text").decode())

for s, summary in report.settings.items():
    print(f"{s}: best {summary.best_model}, "
          f"accuracy {summary.models[summary.best_model].mean['accuracy']:.3f}")
