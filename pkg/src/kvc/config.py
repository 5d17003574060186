"""Size guards for the exponential routines.

All limits live here so callers (and the CLI's ``--force``) can lift them
without touching algorithm code.
"""
from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    # max |A| for the 2^|A| shattering oracle
    bruteforce_max_set: int = 20
    # graphs up to this order use full family enumeration in the oracle
    family_enum_max_n: int = 16
    # node budget of the separator search used for k >= 3 realizability
    general_k_budget: int = 200_000
    # 1-in-3 solver variable cap (propagating exhaustive search)
    sat_max_vars: int = 400
    # plain 2^n enumeration oracle for formulas
    sat_bruteforce_max_vars: int = 22
    # number of subsets accepted by the multicover enumerator
    multicover_max_m: int = 20
    # exact max-leaf branch and bound
    max_leaf_exact_max_n: int = 60
    # vc search: maximum number of DFS nodes before refusing
    vc_search_budget: int = 5_000_000

    def unlimited(self) -> "Limits":
        big = 10**12
        return replace(
            self,
            bruteforce_max_set=big,
            family_enum_max_n=self.family_enum_max_n,
            general_k_budget=big,
            sat_max_vars=big,
            sat_bruteforce_max_vars=big,
            multicover_max_m=big,
            max_leaf_exact_max_n=big,
            vc_search_budget=big,
        )


DEFAULT_LIMITS = Limits()
