"""Run a command-line catalogue through the batch runner and tabulate verdicts.

    python scripts/run_catalog.py corpus/catalog.txt
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from diffgalois.cli import run_batch, verify_document

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class CatalogConfig:
    path: Path = ROOT / "corpus" / "catalog.txt"
    show_results: bool = False


def run(cfg: CatalogConfig) -> int:
    commands = [l for l in cfg.path.read_text().splitlines() if l.strip() and not l.lstrip().startswith("#")]
    failures = 0
    for cmd, rec in zip(commands, run_batch(cfg.path)):
        if "error" in rec:
            failures += 1
            print(f"ERROR  {cmd}\n       {rec['error']['message']}")
            continue
        ok = all(c["ok"] for c in verify_document(rec))
        failures += not ok
        kind = (rec.get("verdict") or {}).get("kind", "-")
        print(f"{'ok ' if ok else 'BAD'}  {kind:22s} {cmd}")
        if cfg.show_results and rec.get("result") is not None:
            print(f"       {rec['result']}")
    print(f"\n{len(commands) - failures}/{len(commands)} documents self-certify")
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path", nargs="?", type=Path, default=CatalogConfig.path)
    ap.add_argument("--show-results", action="store_true")
    ns = ap.parse_args()
    sys.exit(run(CatalogConfig(ns.path, ns.show_results)))
