"""Built-in train tracks.

The four base tracks are combinatorial realizations of the base coordinate
models: their switch systems cut out weight spaces whose integral lattice and
Thurston form agree exactly with the coordinate models when read through the
coordinate branches (z*, s*, x*, y*).  They use three small gadgets:

* a monogon: switch (m, m | w), so w = 2m and the switch adds nothing to ω;
* a doubled switch: two switches with the same pair, doubling a term;
* a bigon: two switches (p, q | r), a closed piece carrying dp∧dq.

They are not claimed to be the embedded tracks drawn on the surfaces.
"""
from __future__ import annotations

from .traintrack import Switch, TrainTrack


def _sw(a: str, b: str, single: str) -> Switch:
    return Switch((a, b), (single,))


def _track(name, g, n, branches, switches) -> TrainTrack:
    return TrainTrack(name, tuple(branches.split()), tuple(_sw(*s) for s in switches), g, n)


def tau05() -> TrainTrack:
    return _track(
        "tau05", 0, 5,
        "z1 z2 z3 z4 w1 w2 w3 w4 p12 p123 c1 m",
        [
            ("z1", "z1", "w1"), ("z2", "z2", "w2"), ("z3", "z3", "w3"), ("z4", "z4", "w4"),
            ("w1", "w2", "p12"),
            ("p12", "w3", "p123"),
            ("p123", "w4", "c1"),
            ("m", "m", "c1"),
        ],
    )


def tau12() -> TrainTrack:
    return _track(
        "tau12", 1, 2,
        "s1 s2 s3 s4 P Q R T U V c1 m",
        [
            ("s1", "s2", "P"),
            ("s3", "s1", "Q"),
            ("s2", "s3", "R"),
            ("P", "Q", "V"),
            ("s4", "T", "R"),
            ("U", "s4", "V"),
            ("T", "U", "c1"),
            ("m", "m", "c1"),
        ],
    )


def tau20() -> TrainTrack:
    return _track(
        "tau20", 2, 0,
        "x1 x2 x3 x4 x5 x6 K1 K2 L Lp Gw H Xw m R",
        [
            ("x1", "x2", "K1"), ("x1", "x2", "K2"),
            ("x3", "L", "K1"), ("Lp", "x3", "K2"),
            ("L", "Lp", "Gw"),
            ("Gw", "x4", "H"), ("Xw", "x4", "H"),
            ("m", "m", "Xw"),
            ("x5", "x6", "R"), ("x5", "x6", "R"),
        ],
    )


def tau21() -> TrainTrack:
    return _track(
        "tau21", 2, 1,
        "y1 y2 y3 y4 y5 y6 y7 y8 Z Y12 Y34 Y34p P Q G c1 m H X m2 R",
        [
            ("y1", "y2", "Y12"),
            ("y2", "Z", "Y34"),
            ("Z", "y1", "c1"),
            ("y3", "y4", "Y34"), ("y3", "y4", "Y34p"),
            ("Q", "y5", "Y34p"),
            ("y5", "P", "Y12"),
            ("P", "Q", "G"),
            ("m", "m", "c1"),
            ("G", "y6", "H"), ("X", "y6", "H"),
            ("m2", "m2", "X"),
            ("y7", "y8", "R"), ("y7", "y8", "R"),
        ],
    )


def sigma04_tau() -> TrainTrack:
    # a = b + c' = b' + c,  a' = b + c = b' + c'
    return _track(
        "sigma04-tau", 0, 4,
        "a b c a' b' c'",
        [("b", "c'", "a"), ("b'", "c", "a"), ("b", "c", "a'"), ("b'", "c'", "a'")],
    )


def sigma04_tauprime() -> TrainTrack:
    # a = 2a', b = 2b', c = 2c', a + b = c
    return _track(
        "sigma04-tauprime", 0, 4,
        "a b c a' b' c'",
        [("a'", "a'", "a"), ("b'", "b'", "b"), ("c'", "c'", "c"), ("a", "b", "c")],
    )


BUILTINS = {
    "tau05": tau05,
    "tau12": tau12,
    "tau20": tau20,
    "tau21": tau21,
    "sigma04-tau": sigma04_tau,
    "sigma04-tauprime": sigma04_tauprime,
}

# which coordinate model each base track realizes, and the branches read as its coordinates
BASE_OF = {"tau05": "S05", "tau12": "S12", "tau20": "S20", "tau21": "S21"}


def builtin(name: str) -> TrainTrack:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown built-in track {name!r}; choose from {', '.join(BUILTINS)}") from None
