#!/usr/bin/env python3
"""Walk through the worker's optimal workflow choice at a few ability levels.

The worker either does the task manually, hands it to the AI untouched, or
hands it over and audits the result. Which of the three wins is decided by
two numbers: the delegation gain at zero verification and the verification
surplus at the best effort level.
"""

from delver import (
    Ability, Action, brute_force_action, manual_delegation_threshold,
    optimal_action, qualification_threshold, reference_params, worker_utility,
)

params = reference_params()

print("reference configuration")
print(f"  worker stakes {params.worker_stakes}, AI success {params.p_a}, "
      f"worker success {params.p_w}")

t = manual_delegation_threshold(params)
t_tau = qualification_threshold(params)
print(f"  delegation threshold t       = {t.value:.6f}")
print(f"  qualification threshold t_tau = {t_tau.value:.6f}")
print()

workers = [
    ("careful veteran (slow checker)", Ability(0.10, 0.90)),
    ("novice with no review skill", Ability(0.10, 0.20)),
    ("expert reviewer", Ability(0.90, 0.90)),
    ("strong reviewer, weak executor", Ability(0.90, 0.10)),
]

for label, ability in workers:
    act = optimal_action(params, ability)
    u = worker_utility(params, ability, Action(float(act.d_star), act.s_star))
    print(f"{label}: alpha={ability.alpha}, beta={ability.beta}")
    print(f"  regime {act.regime.value}, action (d={act.d_star}, s={act.s_star:.4f}), "
          f"utility {u:.4f}")

    # the exhaustive grid search lands on the same action
    oracle_action, oracle_u = brute_force_action(params, ability)
    print(f"  grid oracle: (d={oracle_action.d:.1f}, s={oracle_action.s:.4f}), "
          f"utility {oracle_u:.4f}, shortfall {u - oracle_u:.2e}")
    print()
