"""Scan shifted/dilated Gamma families for hypertranscendence relations.

For each n the full set {0, 1/n, ..., (n-1)/n} with Gamma(nz) is dependent;
dropping any one shift breaks the relation.  The sweep prints both.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from diffgalois.shiftgalois import GammaProblem, gamma_application


@dataclass
class GammaSweepConfig:
    max_n: int = 6
    m: int | None = None


def sweep(cfg: GammaSweepConfig):
    for n in range(2, cfg.max_n + 1):
        full = tuple(Fraction(i, n) for i in range(n))
        rep = gamma_application(GammaProblem(full, (n,), cfg.m))
        r = rep.witness.r if rep.witness else None
        print(f"n={n}  full   hyperIndependent={rep.hyper_independent!s:5}  "
              f"algIndependent={rep.alg_independent!s:5}  r={r}")
        for drop in range(n):
            part = full[:drop] + full[drop + 1:]
            rep = gamma_application(GammaProblem(part, (n,), cfg.m))
            print(f"      drop {str(full[drop]):4s} hyperIndependent={rep.hyper_independent}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=GammaSweepConfig.max_n)
    ap.add_argument("--m", type=int, default=None)
    ns = ap.parse_args()
    sweep(GammaSweepConfig(ns.max_n, ns.m))
