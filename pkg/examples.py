"""
LorentzEig - Example Usage Script
Demonstrates the library API: spectra, oracle checks, preservers and the
Pareto bridge
"""

import sys
from pathlib import Path

import numpy as np

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.core import E21, E22, H, Mat2


def example_spectrum():
    """Closed-form L-spectrum with nature flags"""
    print("Example 1: L-Spectrum\n")

    from src.lorentz_spectrum import LorentzSpectrumSolver

    solver = LorentzSpectrumSolver()
    for name, A in (('E21', E21), ('E22', E22), ('E12+E21', H)):
        report = solver.describe(A)
        print(f"{name}:")
        for item in report['spectrum']:
            print(f"  {item['value']:+.6f}  interior={item['interior']}  "
                  f"boundary+={item['boundary_plus']}  boundary-={item['boundary_minus']}  "
                  f"vector={item['eigenvector']}")


def example_oracle():
    """Cross-check the closed form against the definitional oracle"""
    print("Example 2: Oracle Cross-Check\n")

    from src.lorentz_spectrum import l_spectrum
    from src.oracle import LorentzOracle, boundary_certificate

    oracle = LorentzOracle()
    rng = np.random.default_rng(7)
    for row in rng.uniform(-3.0, 3.0, size=(5, 4)):
        A = Mat2.from_coords(row)
        closed, found = l_spectrum(A), oracle.spectrum(A)
        print(f"{np.round(row, 3)}  closed={np.round(closed.values(), 6)}  "
              f"oracle={np.round(found.values(), 6)}  agree={closed.matches(found)}")

    certificate = boundary_certificate(E21, 0.5)
    print(f"\nBoundary certificate of 1/2 for E21: {certificate.to_dict()}")


def example_preserver():
    """Build, recognize and test preservers"""
    print("Example 3: Preservers\n")

    from src.preserver import (builtin_map, classify_preserver, compose_preservers,
                               make_preserver, preserver_to_linmap, sample_test_preserver)

    form = make_preserver('P', 0.75)
    m = preserver_to_linmap(form)
    print(f"P form, beta=0.75: P E21 P^-1 = {m.apply(E21).to_dict()}")
    print(f"Recognized as: {classify_preserver(m).to_dict()}")

    composed = compose_preservers(form, make_preserver('Q', 2.0))
    print(f"P(0.75) after Q(2): {composed.to_dict()}")

    for name in ('transpose', 'diag12', 'rotation:0.3', 'trace-shift'):
        verdict = sample_test_preserver(builtin_map(name), trials=1000, seed=42)
        print(f"{name:>14}: {verdict.status}"
              + (f" at trial {verdict.witness_index}" if verdict.falsified else ""))


def example_pareto():
    """Pareto spectrum of the rotated matrix"""
    print("Example 4: Pareto Bridge\n")

    from src.pareto_bridge import ParetoBridge, lorentz_to_pareto

    bridge = ParetoBridge()
    for name, A in (('E21', E21), ('E22', E22), ('E12+E21', H)):
        B = lorentz_to_pareto(A)
        print(f"{name}: R A R^T = {np.round(B.to_array(), 6).tolist()}  "
              f"{bridge.compare(A)}")


if __name__ == "__main__":
    print("=" * 60)
    print("LORENTZEIG EXAMPLES")
    print("=" * 60)

    examples = {
        '1': ('L-Spectrum', example_spectrum),
        '2': ('Oracle Cross-Check', example_oracle),
        '3': ('Preservers', example_preserver),
        '4': ('Pareto Bridge', example_pareto)
    }

    print("\nAvailable Examples:")
    for key, (name, _) in examples.items():
        print(f"  {key}. {name}")

    choice = input("\nSelect example (1-4, or 'all'): ").strip()

    if choice == 'all':
        for key, (name, func) in examples.items():
            print(f"\n{'=' * 60}")
            print(f"Running: {name}")
            print('=' * 60)
            try:
                func()
            except Exception as e:
                print(f"Error: {e}")
                continue
    elif choice in examples:
        name, func = examples[choice]
        print(f"\n{'=' * 60}")
        print(f"Running: {name}")
        print('=' * 60)
        func()
    else:
        print("Invalid choice")
