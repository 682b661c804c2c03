"""
Quick end-to-end validation of the verification harness.
Loads corpus meshes, evaluates coordinates and runs each suite without the CLI.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np

from src.gbc.wachspress import wachspress
from src.harness.suite import format_report, run_suite
from src.loaders.mesh_loader import load_mesh
from src.main import EXIT_OK, main

FAST = {'samples': 20, 'facet_samples': 6, 'random_span_draws': 2, 'workers': 2}


def test_basic_functionality():
    """Run every suite on a small mixed mesh."""
    print("Testing gbc-forms integration...")
    print("-" * 50)

    # Test 1: Load a mesh from the corpus
    print("\n[TEST 1] Loading corpus:square-pentagon...")
    document, mesh = load_mesh("corpus:square-pentagon")
    assert len(mesh.elements) == 2, f"Expected 2 elements, got {len(mesh.elements)}"
    assert len(mesh.interior_facets) == 1, "Expected one shared edge"
    print(f"   [OK] Mesh loaded, digest {document.digest[:12]}")

    # Test 2: Partition of unity at the centroid
    print("\n[TEST 2] Evaluating coordinates...")
    element = mesh.element(1)
    coords = wachspress(element, element.vertices.mean(axis=0))
    values, gradients = coords.values, coords.gradients
    assert abs(values.sum() - 1.0) < 1e-12, "Coordinates do not sum to one"
    assert np.abs(gradients.sum(axis=0)).max() < 1e-10, "Gradients do not sum to zero"
    print(f"   [OK] {len(values)} coordinates, sum {values.sum():.15f}")

    # Test 3: Each suite on its own
    for number, suite in enumerate(["count", "identities", "repro", "conformity"], start=3):
        print(f"\n[TEST {number}] Running suite '{suite}'...")
        report = run_suite("corpus:square-pentagon", suite, settings=FAST)
        failures = [r.check_id for r in report.failures()]
        assert report.passed, f"Suite {suite} failed: {failures}"
        print(f"   [OK] {len(report.records)} checks passed")

    # Test 7: Reports are reproducible
    print("\n[TEST 7] Checking report determinism...")
    first = format_report(run_suite("corpus:cube", "identities", settings=FAST))
    second = format_report(run_suite("corpus:cube", "identities", settings=FAST))
    assert first == second, "Reports differ between runs"
    print("   [OK] Byte-identical JSON reports")

    # Test 8: The CLI entry point
    print("\n[TEST 8] Running the CLI...")
    code = main(["run-suite", "corpus:triangle", "--suite", "count"])
    assert code == EXIT_OK, f"Expected exit 0, got {code}"
    print("   [OK] CLI run-suite exited cleanly")

    print("\n" + "=" * 50)
    print("All tests passed! [SUCCESS]")
    print("=" * 50)

if __name__ == "__main__":
    try:
        test_basic_functionality()
        sys.exit(0)
    except AssertionError as e:
        print(f"\n[FAIL] Assertion failed: {e}")
        sys.exit(1)
    except Exception as e:
        print(f"\n[ERROR] Unexpected error: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
