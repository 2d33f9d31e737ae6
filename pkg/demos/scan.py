"""VQE over a table of per-R Hamiltonians compared with exact
diagonalization. The bundled table has synthetic weights."""

from pathlib import Path

from photonic_vqe.io import load_table
from photonic_vqe.pauli import ground_energy_exact
from photonic_vqe.vqe import EXACT, Mode, run_vqe

table = load_table(Path(__file__).resolve().parents[1] / "data" / "synthetic_scan.csv")
print(f"{'R':>5} {'exact':>8} {'VQE_P':>8} {'VQE_E':>8}")
for r, h in table.items():
    e_g, _ = ground_energy_exact(h)
    e = [run_vqe(h, mode, EXACT, seed=1).final_energy for mode in Mode]
    print(f"{r:5.2f} {e_g:8.4f} {e[0]:8.4f} {e[1]:8.4f}")
