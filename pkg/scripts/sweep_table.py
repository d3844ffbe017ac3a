"""Tabulate the symplectic/integral ratio over all supported (g, n) as TSV.

    python3 scripts/sweep_table.py --max 10 --out sweep.tsv
"""
import argparse
import sys
import time
from dataclasses import dataclass

from thurstonvol.family import build, is_supported
from thurstonvol.measures import OK, model_report, surfaces, unsupported_cells


@dataclass
class SweepConfig:
    max_complexity: int = 10
    out: str | None = None
    timings: bool = False


def run(cfg: SweepConfig) -> int:
    header = ["g", "n", "complexity", "dim", "pf", "ratio", "expected", "verdict"]
    if cfg.timings:
        header.append("seconds")
    rows = ["\t".join(header)]
    bad = 0
    for g, n in surfaces(cfg.max_complexity):
        if not is_supported(g, n):
            continue
        t0 = time.perf_counter()
        r = model_report(build(g, n))
        row = [g, n, 3 * g - 3 + n, r.dim, r.pfaffian, r.ratio, r.expected, r.verdict]
        if cfg.timings:
            row.append(f"{time.perf_counter() - t0:.3f}")
        rows.append("\t".join(str(x) for x in row))
        bad += r.verdict != OK
    text = "\n".join(rows) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    skipped = " ".join(f"({g},{n})" for g, n in unsupported_cells(cfg.max_complexity))
    print(f"# {len(rows) - 1} surfaces, {bad} mismatches, skipped {skipped}", file=sys.stderr)
    return 1 if bad else 0


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max", dest="max_complexity", type=int, default=SweepConfig.max_complexity)
    p.add_argument("--out")
    p.add_argument("--timings", action="store_true")
    return run(SweepConfig(**vars(p.parse_args(argv))))


if __name__ == "__main__":
    sys.exit(main())
