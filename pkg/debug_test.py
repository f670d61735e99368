"""Debug script walking through a tiny construct → verify → report pipeline."""

import sys
import tempfile
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.analyzers.tables import run_analysis
from src.audit.document import load_document
from src.audit.verifier import verify_transcript
from src.construction.constructor import run
from src.construction.models import ConstructionConfig
from src.construction.transcript import write_transcript
from src.construction.witness import witness
from src.schedule.enumeration import TargetFamily, TargetItem
from src.exact.poly import DensePoly


def main():
    print("=" * 80)
    print("DEBUGGING SLOWGROWTH PIPELINE")
    print("=" * 80)

    print("\n1. Building configuration...")
    target = TargetItem((DensePoly.from_terms([(1, -5)]),), 1)
    config = ConstructionConfig(steps=2, targets=TargetFamily(1, 1, [target]))
    print(f"✓ Config built: K={config.steps}, R_0={config.r0}")

    print("\n2. Running construction...")
    transcript = run(config)
    for record in transcript.records:
        print(f"  - Step {record.k}: ell={record.ell}, n_k has {record.n.bit_length()} bits")
    print(f"✓ {len(transcript.records)} steps certified: {transcript.passed}")

    with tempfile.TemporaryDirectory() as tmp:
        path = write_transcript(transcript, Path(tmp) / "run.json")
        print(f"\n3. Transcript written ({path.stat().st_size} bytes)")

        print("\n4. Verifying transcript...")
        report = verify_transcript(path)
        print(f"✓ Verified {report.steps} steps, {report.checked_fields} fields")

        print("\n5. Witness for target 1...")
        result = witness(transcript, 1)
        print(f"✓ Step {result.step}, bound {float(result.bound):.3g}")

        print("\n6. Growth table...")
        table = run_analysis("growth", load_document(path), {})
        for row in table.rows:
            print(f"  - r={row['r']}: ok={row['ok']}")

    print("\n" + "=" * 80)
    print("DEBUG COMPLETE")
    print("=" * 80)


if __name__ == "__main__":
    main()
