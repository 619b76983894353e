"""Empirical fairness ratios of MNW, leximin and greedy on random instances.

For each (n, m) cell, reports the worst alpha-Prop and alpha-RRS seen for
each rule and the worst greedy/MNW Nash product ratio, next to the proven
bounds. Instances come from the CLI generator, so any row can be reproduced
with ``fairalloc gen --agents n --goods m --k k --values uniform:V --seed s``.

    python3 scripts/fairness_sweep.py --agents 2 3 --goods 6 8 --trials 50
"""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field
from fractions import Fraction

from fairalloc import alg_greedy, audit, brute_force_leximin, brute_force_mnw
from fairalloc.generate import draw, random_public


@dataclass
class SweepConfig:
    agents: list[int] = field(default_factory=lambda: [2, 3])
    goods: list[int] = field(default_factory=lambda: [6, 8])
    trials: int = 30
    max_value: int = 4
    seed: int = 0


@dataclass
class CellStats:
    mnw_prop: Fraction = Fraction(10**9)
    mnw_rrs: Fraction = Fraction(10**9)
    lex_prop: Fraction = Fraction(10**9)
    lex_rrs: Fraction = Fraction(10**9)
    greedy_ratio: Fraction = Fraction(1)

    def update(self, attr: str, value):
        if value is not None and value < getattr(self, attr):
            setattr(self, attr, value)


def sweep_cell(cfg: SweepConfig, n: int, m: int) -> CellStats:
    stats = CellStats()
    for t in range(cfg.trials):
        seed = cfg.seed * 1_000_003 + t
        k = n + draw(seed, "k", 0, m - n + 1)
        inst = random_public(seed, n, m, cfg.max_value, k=k)
        mnw = brute_force_mnw(inst)
        rep = audit(inst, mnw.allocation, pareto=False)
        stats.update("mnw_prop", rep.alpha_prop)
        stats.update("mnw_rrs", rep.alpha_rrs)
        rep = audit(inst, brute_force_leximin(inst).allocation, pareto=False)
        stats.update("lex_prop", rep.alpha_prop)
        stats.update("lex_rrs", rep.alpha_rrs)
        best = math.prod(mnw.utilities)
        if best:
            stats.update("greedy_ratio", Fraction(math.prod(alg_greedy(inst).utilities), best))
    return stats


def main(cfg: SweepConfig) -> None:
    header = f"{'n':>2} {'m':>2}  {'MNW Prop':>9} {'bound':>6}  {'MNW RRS':>8} {'bound':>6}  " \
             f"{'lex Prop':>9} {'bound':>6}  {'lex RRS':>8}  {'greedy/MNW':>10} {'bound':>8}"
    print(header)
    for n in cfg.agents:
        for m in cfg.goods:
            if m < n:
                continue
            s = sweep_cell(cfg, n, m)
            print(f"{n:>2} {m:>2}  {float(s.mnw_prop):9.3f} {1 / (2 * n - 1):6.3f}  "
                  f"{float(s.mnw_rrs):8.3f} {1 / n:6.3f}  {float(s.lex_prop):9.3f} {n / (2 * n - 1):6.3f}  "
                  f"{float(s.lex_rrs):8.3f}  {float(s.greedy_ratio):10.4f} {(2 * n - 1) ** -n:8.4f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = SweepConfig()
    parser.add_argument("--agents", type=int, nargs="+", default=defaults.agents)
    parser.add_argument("--goods", type=int, nargs="+", default=defaults.goods)
    parser.add_argument("--trials", type=int, default=defaults.trials)
    parser.add_argument("--max-value", type=int, default=defaults.max_value)
    parser.add_argument("--seed", type=int, default=defaults.seed)
    args = parser.parse_args()
    main(SweepConfig(args.agents, args.goods, args.trials, args.max_value, args.seed))
