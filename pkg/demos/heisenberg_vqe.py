"""Five seeded VQE runs on the two-qubit Heisenberg model with 9000 shots
per iteration, once with Pauli settings and once with the Bell setting."""

import numpy as np

from photonic_vqe.pauli import heisenberg
from photonic_vqe.vqe import Mode, OptimizerConfig, run_vqe, trial_seeds

h = heisenberg()
opt = OptimizerConfig(method="cobyla", rel_tol=0.01, max_iterations=200)
seeds = trial_seeds(0, 5)

for mode in Mode:
    runs = [run_vqe(h, mode, 9000, opt, s) for s in seeds]
    e = np.array([r.final_energy for r in runs])
    n = np.array([r.iteration_count for r in runs])
    print(f"{mode.value} ({runs[0].settings_count} setting(s) per iteration)")
    for k, r in enumerate(runs):
        print(f"  trial {k}: {r.iteration_count:3d} iterations, final energy {r.final_energy:.4f}")
    print(f"  avg {n.mean():.1f} iterations, energy {e.mean():.4f} +- {e.std(ddof=1):.4f}")

# the trace of one run, every tenth iteration
tr = run_vqe(h, Mode.VQE_E, 9000, opt, seeds[0])
for line in tr.to_lines()[::10]:
    i, *angles, energy = line.split()
    print(f"  iter {i:>3}  E = {float(energy):8.4f}")
