"""Follow one induction chain and print the ratio after every step.

    python3 scripts/step_factors.py --g 4 --n 3
"""
import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from thurstonvol.family import UnsupportedSurface, add_genus, add_puncture, base_model, is_supported
from thurstonvol.measures import model_report


@dataclass
class ChainConfig:
    g: int = 4
    n: int = 3


def run(cfg: ChainConfig) -> int:
    if not is_supported(cfg.g, cfg.n):
        raise UnsupportedSurface(f"Σ{cfg.g},{cfg.n} is outside the induction")
    if cfg.g < 2:
        m = base_model("S05" if cfg.g == 0 else "S12")
    else:
        m = base_model("S20" if cfg.n == 0 else "S21")
    prev = model_report(m)
    print(f"base {m.base}: {prev.render()}")
    while (m.g, m.n) != (cfg.g, cfg.n):
        step = "genus" if m.g < cfg.g else "puncture"
        m = add_genus(m) if step == "genus" else add_puncture(m)
        r = model_report(m)
        print(f"{step:8s} x{Fraction(r.ratio) / prev.ratio}: {r.render()}")
        prev = r
    return 0


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--g", type=int, default=ChainConfig.g)
    p.add_argument("--n", type=int, default=ChainConfig.n)
    args = p.parse_args(argv)
    try:
        return run(ChainConfig(args.g, args.n))
    except UnsupportedSurface as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
