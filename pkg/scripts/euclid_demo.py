"""Euclidean covolumes of the two Σ0,4 track lattices, from files or built-ins.

The two charts carry the same Thurston measure, yet their integral lattices
have different Euclidean covolumes, so "Lebesgue measure in branch weights"
depends on the track.
"""
import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from thurstonvol.exactmath import gram_det
from thurstonvol.measures import euclid_demo, load_track, track_report
from thurstonvol.traintrack import integral_lattice

TRACKS = Path(__file__).resolve().parent.parent / "tracks"


@dataclass
class DemoConfig:
    tau: Path = TRACKS / "sigma04-tau.json"
    tauprime: Path = TRACKS / "sigma04-tauprime.json"
    digits: int = 12


def run(cfg: DemoConfig) -> int:
    tracks = [load_track(cfg.tau), load_track(cfg.tauprime)]
    for t in tracks:
        L = integral_lattice(t)
        cols = [tuple(L.basis.col(j)) for j in range(L.rank)]
        print(f"{t.name}: basis={cols} gram_det={gram_det(L.basis)} {track_report(t).render()}")
    demo = euclid_demo(*tracks)
    print(demo.render())
    a, b = demo.approx(cfg.digits)
    print(f"covolumes ~ {a}, {b}")
    return 0 if demo.distinct else 1


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--tau", type=Path, default=DemoConfig.tau)
    p.add_argument("--tauprime", type=Path, default=DemoConfig.tauprime)
    p.add_argument("--digits", type=int, default=DemoConfig.digits)
    return run(DemoConfig(**vars(p.parse_args(argv))))


if __name__ == "__main__":
    sys.exit(main())
