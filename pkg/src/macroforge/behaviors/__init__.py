from .registry import BehaviorRegistry, register_behavior, unregister_behavior
from .policies import (
    taylor_rule,
    central_bank_rate,
    bank_profits,
    firms_plan,
    government_step,
    index_to_expected_inflation,
)
