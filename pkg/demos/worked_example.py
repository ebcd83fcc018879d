"""Walk through the eight-term, four-qubit example.

Prints the frustration-graph facts, the sector table and the comparison of
the free-fermion spectrum with exact diagonalization.
"""

import argparse

import numpy as np

from scfsolve import ed, graphs, models, solver


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", default=None, help="eight comma-separated couplings (default all 1)")
    args = ap.parse_args()
    b = [float(v) for v in args.b.split(",")] if args.b else None
    H = models.example_1_2(b)
    an = solver.analyze(H)

    print("terms:")
    print(H.to_text(), end="")
    print("claw-free:", an.claw_free)
    print("simplicial cliques:", [sorted(k) for k in graphs.find_simplicial_cliques(an.G)])
    print("independence number:", an.alpha)
    for i, cl in enumerate(an.closures):
        print(f"closure {i}: {len(cl)} holes {list(cl)}")

    sol = solver.solve(H)
    print("\nsector eigenvalues        dim  Z coefficients                 energies")
    for s in sol.sectors:
        eig = " ".join(f"{v:+.4f}" for v in s.sector.eigenvalues)
        z = " ".join(f"{v:.4f}" for v in s.z_coeffs)
        e = " ".join(f"{v:.6f}" for v in s.energies)
        print(f"{eig:25s} {s.sector.dim:3d}  {z:30s} {e}")

    levels = sol.spectrum()
    ref = ed.ed_spectrum(H)
    print("\nfree-fermion spectrum:", np.round(levels, 6))
    print("max deviation from exact diagonalization:", ed.compare_spectra(levels, ref))


if __name__ == "__main__":
    main()
