"""Two-party Bell scenario: tables, local polytope, quantum correlations and paradoxes."""

from __future__ import annotations

from .paradoxes import (
    detection_loophole,
    ghz_paradox,
    pr_clone_signaling,
    same_input_game,
    singlet_lv_model,
)
from .polytope import MembershipResult, local_membership, random_ns_table
from .quantum import (
    behavior_from_state,
    chsh_value,
    optimal_chsh_pure,
    tlm_criterion,
    tsirelson_check,
    werner_chsh_threshold,
)
from .tables import (
    T_CH,
    Behavior,
    BellFunctional,
    NsTable,
    behavior_to_table,
    ch_symmetries,
    deterministic_behavior,
    functional_value,
    is_no_signaling,
    pr_box,
    table_to_behavior,
)

__all__ = [
    "T_CH", "Behavior", "BellFunctional", "MembershipResult", "NsTable",
    "behavior_from_state", "behavior_to_table", "ch_symmetries", "chsh_value",
    "detection_loophole", "deterministic_behavior", "functional_value", "ghz_paradox",
    "is_no_signaling", "local_membership", "optimal_chsh_pure", "pr_box",
    "pr_clone_signaling", "random_ns_table", "same_input_game", "singlet_lv_model",
    "table_to_behavior", "tlm_criterion", "tsirelson_check", "werner_chsh_threshold",
]
