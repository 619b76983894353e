"""CLI invocations with checked-in expected output under tests/golden/.

Paths are relative to the repository root. Regenerate with
``python3 scripts/regen_golden.py`` after an intentional format change.
"""

from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"
INPUTS = "tests/golden/inputs"

CASES = {
    "gen_public_k": ["gen", "--agents", "3", "--goods", "5", "--k", "2", "--seed", "42"],
    "gen_public_budget": ["gen", "--agents", "2", "--goods", "4", "--budget", "5", "--costs", "uniform:3",
                          "--values", "binary", "--seed", "3"],
    "gen_private": ["gen", "--model", "private", "--agents", "2", "--goods", "3", "--seed", "5"],
    "gen_decisions": ["gen", "--model", "decisions", "--agents", "2", "--goods", "2", "--alternatives", "3",
                      "--seed", "1"],
    "gen_setcover": ["gen", "--gadget", "setcover", "--universe", "3", "--sets", "1;2,3;1,2", "--k", "2"],
    "gen_ersp": ["gen", "--gadget", "ersp", "--elements", "4", "--sets", "1,2;3,4;1,3", "--d", "2", "--r", "2"],
    "gen_eqsp": ["gen", "--gadget", "eqsp", "--numbers", "1,3,2,2", "--maxmin"],
    "gen_msat": ["gen", "--gadget", "msat", "--variables", "2", "--clauses", "1;1,2", "--c", "1"],
    "solve_toy_mnw": ["solve", "--objective", "mnw", "--method", "bruteforce", "--in", f"{INPUTS}/toy.json"],
    "solve_toy_leximin": ["solve", "--objective", "leximin", "--in", f"{INPUTS}/toy.json"],
    "solve_toy_dp": ["solve", "--method", "dp-agent-types", "--in", f"{INPUTS}/toy.json"],
    "solve_toy_enum": ["solve", "--method", "enum-good-types", "--in", f"{INPUTS}/toy.json"],
    "solve_toy_greedy": ["solve", "--method", "greedy", "--in", f"{INPUTS}/toy.json"],
    "solve_private": ["solve", "--objective", "leximin", "--in", f"{INPUTS}/private.json"],
    "audit_prop1_rrs": ["audit", "--in", f"{INPUTS}/prop1_rrs.json", "--alloc", f"{INPUTS}/prop1_rrs_alloc.json"],
    "reduce_public_decisions_lex": ["reduce", "--objective", "leximin", "--from", "public", "--to", "decisions",
                                    "--in", f"{INPUTS}/toy.json"],
    "reduce_private_public": ["reduce", "--objective", "mnw", "--from", "private", "--to", "public",
                              "--in", f"{INPUTS}/private.json"],
    "verify_public_decisions_mnw": ["verify-roundtrip", "--objective", "mnw", "--reduction",
                                    "public-to-decisions", "--in", f"{INPUTS}/toy.json"],
    "verify_private_public_lex": ["verify-roundtrip", "--objective", "leximin", "--reduction",
                                  "private-to-public", "--in", f"{INPUTS}/private.json"],
}
