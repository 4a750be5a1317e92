"""Print the bump polynomials p_n, their degrees, and enclosures of f^(m)(x) for a shifted bump."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from wlab.bumps import BumpPolyRec, BumpSum
from wlab.spaces import EvaluationStall
from wlab.testfns import bump_name, eval_smooth_derivative


@dataclass
class BumpTableConfig:
    max_n: int = 6
    shift: Fraction = Fraction(0)
    at: Fraction = Fraction(1, 2)
    orders: int = 1
    precision: int = 12


def main(cfg: BumpTableConfig) -> None:
    rec = BumpPolyRec.up_to(cfg.max_n)
    for n in range(cfg.max_n + 1):
        print(f"p_{n}: degree {rec.degree(n)}, coefficients {rec[n]}")
    f = bump_name(BumpSum.bump(cfg.shift)).smooth
    for m in range(cfg.orders + 1):
        try:
            box = eval_smooth_derivative(f, m, cfg.at, cfg.precision)
        except EvaluationStall as e:
            print(f"f^({m})({cfg.at}): {e}")
            continue
        print(f"f^({m})({cfg.at}) in [{float(box.re.lo):.10f}, {float(box.re.hi):.10f}]")


if __name__ == "__main__":
    d = BumpTableConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=d.max_n)
    ap.add_argument("--shift", type=Fraction, default=d.shift)
    ap.add_argument("--at", type=Fraction, default=d.at)
    ap.add_argument("--orders", type=int, default=d.orders)
    ap.add_argument("--precision", type=int, default=d.precision)
    a = ap.parse_args()
    main(BumpTableConfig(a.max_n, a.shift, a.at, a.orders, a.precision))
