"""Seeded random instances.

Every random number is a pure function of ``(seed, stream, index)``:

    draw(seed, stream, index, bound) =
        int.from_bytes(sha256(f"{seed}/{stream}/{index}").digest()[:8], "big") % bound

so any implementation can reproduce an instance bit for bit, and fields are
independent of each other (changing the cost range never moves a valuation).

Streams used here:

* ``valuations`` index ``i*m + j`` (public and private models)
* ``values`` index ``(j*n + i)*t + l`` (decision issue j, agent i, alternative l)
* ``costs`` index ``j``, cost is ``1 + draw(..., cmax)``
* ``fix`` index ``i``: if agent i's row came out all zero, good
  ``draw(seed, "fix", i, m)`` is set to 1
"""

from __future__ import annotations

import hashlib

from .model import PrivateGoodsInstance, PublicDecisionsInstance, PublicGoodsInstance


def draw(seed: int, stream: str, index: int, bound: int) -> int:
    digest = hashlib.sha256(f"{seed}/{stream}/{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big") % bound


def parse_values_spec(spec: str) -> int:
    """'binary' -> 1, 'uniform:V' -> V (largest value)."""
    if spec == "binary":
        return 1
    kind, _, arg = spec.partition(":")
    if kind != "uniform" or not arg.isdigit() or int(arg) < 1:
        raise ValueError(f"bad values spec {spec!r}; expected binary or uniform:V")
    return int(arg)


def random_matrix(seed: int, n: int, m: int, V: int) -> list[list[int]]:
    rows = [[draw(seed, "valuations", i * m + j, V + 1) for j in range(m)] for i in range(n)]
    for i, row in enumerate(rows):
        if not any(row):
            row[draw(seed, "fix", i, m)] = 1
    return rows


def random_costs(seed: int, m: int, cmax: int) -> list[int]:
    return [1 + draw(seed, "costs", j, cmax) for j in range(m)]


def random_public(
    seed: int, n: int, m: int, V: int, k: int | None = None, budget: int | None = None, cmax: int = 1
) -> PublicGoodsInstance:
    rows = random_matrix(seed, n, m, V)
    if budget is not None:
        return PublicGoodsInstance.with_budget(rows, budget, random_costs(seed, m, cmax))
    if k is None:
        raise ValueError("need k or budget")
    return PublicGoodsInstance.with_k(rows, k)


def random_private(seed: int, n: int, m: int, V: int) -> PrivateGoodsInstance:
    return PrivateGoodsInstance(random_matrix(seed, n, m, V))


def random_decisions(seed: int, n: int, m: int, V: int, alternatives: int = 2) -> PublicDecisionsInstance:
    t = alternatives
    issues = [
        [[draw(seed, "values", (j * n + i) * t + l, V + 1) for l in range(t)] for i in range(n)]
        for j in range(m)
    ]
    return PublicDecisionsInstance(issues)
