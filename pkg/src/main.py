"""Main application entry point for Slowgrowth."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .analyzers.tables import ANALYZERS, run_analysis
from .audit.document import load_document
from .audit.verifier import VerificationReport, verify_transcript
from .config import Config
from .construction.constructor import run as run_construction
from .construction.transcript import write_transcript
from .errors import CertificateMismatch, NonUnitDirection, ParseError, SlowgrowthError
from .reporters.csv_reporter import CsvReporter
from .utils.logger import setup_logger

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_AUDIT = 2
EXIT_FAILURE = 3

DEFAULT_TRANSCRIPT = "transcript.json"

logger = logging.getLogger(__name__)


def parse_params(pairs: Optional[Sequence[str]]) -> Dict[str, str]:
    """
    Parse KEY=VAL analysis parameters.

    Raises:
        ValueError: If an entry has no '='
    """
    params: Dict[str, str] = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ValueError(f"Analysis parameter must look like KEY=VAL, got {pair!r}")
        params[key.strip()] = value.strip()
    return params


class Slowgrowth:
    """Ties construction, verification and reporting to one configuration."""

    def __init__(
        self,
        config_path: str | Path | None = None,
        steps: Optional[int] = None,
        nodes: Optional[int] = None,
        log_to_stderr: bool = False,
    ):
        """
        Initialize the application.

        Args:
            config_path: Path to a YAML configuration (built-in defaults when None)
            steps: Override of construction.steps
            nodes: Override of quadrature.nodes
            log_to_stderr: Send console logs to stderr (stdout carries a report)
        """
        self.config = Config(config_path)
        self.config.override(steps=steps, nodes=nodes)

        log_config = self.config.logging
        self.logger = setup_logger(
            name="src",
            log_level=log_config.get("level", "INFO"),
            log_file=log_config.get("log_file"),
            stream=sys.stderr if log_to_stderr else None,
        )

    def construct(self, out: str | Path) -> Path:
        """
        Run the configured construction and write its transcript.

        Raises:
            SlowgrowthError: If a step cannot be certified
        """
        settings = self.config.construction
        self.logger.info("=" * 80)
        self.logger.info(f"Construction: variant={settings.variant}, K={settings.steps}")
        self.logger.info("=" * 80)

        self.logger.info("Step 1/2: Running the step-wise construction...")
        transcript = run_construction(settings.build())
        if not transcript.passed:
            failed = next(r.k for r in transcript.records if not r.passed)
            raise CertificateMismatch("A stored step certificate does not pass", step=failed)
        self.logger.info(f"✓ {len(transcript.records)} steps certified")

        self.logger.info("Step 2/2: Writing transcript...")
        path = write_transcript(transcript, out)
        self.logger.info(f"✓ Transcript written to {path}")
        return path

    def verify(self, transcript: str | Path) -> VerificationReport:
        """
        Re-derive every certificate of a transcript file.

        Raises:
            ParseError: If the file is not a valid transcript
            CertificateMismatch: If a field or inequality does not re-verify
        """
        self.logger.info(f"Verifying {transcript}...")
        report = verify_transcript(transcript)
        self.logger.info(f"✓ Transcript verified: {report.steps} steps, {report.checked_fields} fields")
        return report

    def report(
        self,
        transcript: str | Path,
        analysis: str,
        params: Dict[str, str],
        out: Optional[str | Path] = None,
    ) -> int:
        """
        Run one analysis on a transcript and write its CSV table.

        Returns:
            Number of data rows written
        """
        nodes = self.config.quadrature["nodes"]
        self.logger.info(f"Step 1/2: Running analysis '{analysis}' with {nodes} nodes...")
        table = run_analysis(analysis, load_document(transcript), params, nodes)
        self.logger.info(f"✓ Analysis produced {len(table.rows)} rows")

        self.logger.info("Step 2/2: Writing CSV...")
        return CsvReporter().write_to(table, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Slowgrowth - certified universal entire functions of slow growth",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Examples:
  python -m src.main construct --steps 4 --out run.json
  python -m src.main construct --config config.yaml --out run.json
  python -m src.main verify run.json
  python -m src.main report run.json --analysis characteristic --params radii=2,8,32
  python -m src.main report run.json --analysis covers --params kmax=4 alpha=1/2 --out covers.csv

Analyses: {", ".join(sorted(ANALYZERS))}

Defaults: n = m = 1, K = 4, R_0 = 2023, ε_k = 2^-k, A_i = 1/i!, 256 quadrature nodes.

Exit codes:
  0  success
  1  configuration or file error
  2  certificate or audit failure
  3  any other construction or analysis error
        """,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=str,
        default=None,
        help="Path to configuration file (default: built-in defaults)",
    )
    common.add_argument("--steps", type=int, default=None, help="Override construction.steps (K)")
    common.add_argument("--quad", type=int, default=None, help="Override quadrature.nodes (N, default 256)")

    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", parents=[common], help="Run the construction and write a transcript")
    construct.add_argument("--out", type=str, default=DEFAULT_TRANSCRIPT, help="Transcript path (default: transcript.json)")

    verify = sub.add_parser("verify", parents=[common], help="Independently re-verify a transcript")
    verify.add_argument("transcript", type=str, help="Transcript file")

    report = sub.add_parser("report", parents=[common], help="Run an analysis and emit a CSV table")
    report.add_argument("transcript", type=str, help="Transcript file")
    report.add_argument("--analysis", type=str, required=True, choices=sorted(ANALYZERS), help="Analysis name")
    report.add_argument("--params", type=str, nargs="*", default=[], help="Analysis parameters as KEY=VAL")
    report.add_argument("--out", type=str, default=None, help="CSV path (default: stdout)")
    return parser


def _emit_error(error: Exception) -> None:
    """Print the one-line JSON error record on stderr."""
    if isinstance(error, SlowgrowthError):
        record = error.to_record()
    else:
        record = {"error": type(error).__name__, "message": str(error), "step": None, "details": {}}
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    to_stdout = args.command == "report" and args.out is None

    try:
        app = Slowgrowth(args.config, steps=args.steps, nodes=args.quad, log_to_stderr=to_stdout)
        if args.command == "construct":
            app.construct(args.out)
        elif args.command == "verify":
            report = app.verify(args.transcript)
            print(json.dumps(report.to_dict(), sort_keys=True))
        else:
            app.report(args.transcript, args.analysis, parse_params(args.params), args.out)
        return EXIT_OK

    except FileNotFoundError as e:
        logger.error(f"✗ {args.command} failed: {e}")
        _emit_error(e)
        return EXIT_CONFIG

    except (ParseError, NonUnitDirection) as e:
        _emit_error(e)
        return EXIT_CONFIG

    except CertificateMismatch as e:
        logger.error(f"✗ Audit failed: {e}")
        _emit_error(e)
        return EXIT_AUDIT

    except SlowgrowthError as e:
        logger.error(f"✗ {args.command} failed: {e}", exc_info=True)
        _emit_error(e)
        return EXIT_FAILURE

    except ValueError as e:
        logger.error(f"✗ Configuration error: {e}")
        _emit_error(e)
        return EXIT_CONFIG

    except Exception as e:
        logger.error(f"✗ {args.command} failed unexpectedly: {e}")
        logger.debug("Unexpected failure", exc_info=True)
        _emit_error(e)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
