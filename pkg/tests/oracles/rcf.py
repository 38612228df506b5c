"""Regular continued fraction convergents, computed independently of sctk.

Run as a script to regenerate ``tests/data/rcf_oracle.json``.  Uses plain
mpmath floating point at 400 digits, which is far more than 16 partial
quotients of these constants need.
"""

import json
import pathlib
import random

import mpmath

CONSTANTS = {
    "pi": lambda: mpmath.pi,
    "sqrt(2)": lambda: mpmath.sqrt(2),
    "(1+sqrt(5))/2": lambda: (1 + mpmath.sqrt(5)) / 2,
    "e": lambda: mpmath.e,
}


def convergents(x, count):
    """First ``count`` convergents (p_n, q_n) of the continued fraction of x > 0."""
    p0, q0, p1, q1 = 0, 1, 1, 0  # p_{-2}, q_{-2}, p_{-1}, q_{-1}
    out = []
    for _ in range(count):
        a = int(mpmath.floor(x))
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
        x = 1 / (x - a)
    return out


def random_quadratics(count=25, seed=2024):
    """Literals ``(a+b*sqrt(d))/c`` with values in (0, 1) or (1, 10)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.choice([2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23])
        a, b, c = rng.randint(-20, 20), rng.randint(-6, 6), rng.randint(1, 9)
        if b == 0:
            continue
        value = (a + b * mpmath.sqrt(d)) / c
        if not (0 < value < 1 or 1 < value < 10):
            continue
        text = f"({a}{'+' if b > 0 else '-'}{abs(b)}*sqrt({d}))/{c}"
        out.append((text, value))
    return out


def build(count=20):
    with mpmath.workdps(400):
        data = {name: convergents(f(), count) for name, f in CONSTANTS.items()}
        data["random_quadratics"] = {text: convergents(v, count) for text, v in random_quadratics()}
    return data


if __name__ == "__main__":
    path = pathlib.Path(__file__).resolve().parents[1] / "data" / "rcf_oracle.json"
    path.write_text(json.dumps(build(), indent=1) + "\n")
    print(f"wrote {path}")
