"""Compare reduce_mod_image membership against the bounded-ansatz oracle.

Draws orbit-structured random b for each action and reports agreement,
coboundary counts and wall time.  Larger --count values give a stronger
check than the acceptance run (which uses 100 per action).
"""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from diffgalois.exactalg import QScale  # noqa: E402
from diffgalois.qgalois import reduce_mod_image  # noqa: E402
from diffgalois.shiftgalois import shift_reduce_mod_image  # noqa: E402

from corpora import actions, oracle_kwargs, orbit_structured, rng_for, to_ratfunc  # noqa: E402
from oracles import telescoping_oracle  # noqa: E402


@dataclass
class SweepConfig:
    count: int = 100
    seed: int = 0
    max_den_degree: int = 10


def sweep(cfg: SweepConfig):
    rows = []
    for idx, act in enumerate(actions()):
        rng = rng_for(cfg.seed * 1000 + idx)
        reduce = reduce_mod_image if isinstance(act, QScale) else shift_reduce_mod_image
        agree = cob = 0
        t0 = time.perf_counter()
        for _ in range(cfg.count):
            expr = orbit_structured(rng, act, cfg.max_den_degree)
            got = reduce(to_ratfunc(expr), act)[0].is_zero()
            want = telescoping_oracle(expr, **oracle_kwargs(act))
            agree += got == want
            cob += want
            if got != want:
                print(f"  mismatch {act.to_json()}: {expr}")
        rows.append((act.to_json(), agree, cob, time.perf_counter() - t0))
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=SweepConfig.count)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--max-den-degree", type=int, default=SweepConfig.max_den_degree)
    ns = ap.parse_args()
    cfg = SweepConfig(ns.count, ns.seed, ns.max_den_degree)
    rows = sweep(cfg)
    for params, agree, cob, secs in rows:
        print(f"{str(params):24s} agree {agree}/{cfg.count}  coboundaries {cob:3d}  {secs:6.1f}s")
    sys.exit(0 if all(r[1] == cfg.count for r in rows) else 1)
