# -----------------------------------------------------------------------------
# Name:        _consts.py
# Purpose:     Names, defaults and tolerances shared across the package
#
# Created:     03/02/2026
# -----------------------------------------------------------------------------

_PACKAGE_NAME = 'macroforge'

_FIXTURE_NAME = 'austria2010q1_synthetic'
# golden tables of bundled configs, under macroforge/data
_GOLDEN_FOLDER = 'golden'

_DEFAULT_T = 20
_DEFAULT_SEED = 42
_DEFAULT_MASTER_SEED = 0
_DEFAULT_RUNS = 8

_ENV_WORKERS = 'MACROFORGE_WORKERS'

_HISTORY_LENGTH = 12


class _TOLERANCES:
    """
    Relative tolerances of the accounting checks.
    """
    IC_CONSISTENCY = 1e-10
    NATIONAL_INCOME = 1e-8
    MONEY = 1e-8
    MARKET = 1e-10
    # ceil() of labor demand ignores float noise below this
    LABOR_DEMAND = 1e-9


class _SAMPLER:
    RECOMPUTE_EVERY = 2 ** 16
    # uniforms drawn per refill of the compiled matching loop
    UNIFORM_BLOCK = 2 ** 16
    MAX_LEVELS = 128
    # a seller leaves the market once its stock falls to this share of the initial stock
    REMOVE_BELOW = 2.0 ** -40


class _BEHAVIOR_POINTS:
    CENTRAL_BANK_RATE = 'central_bank_rate'
    BANK_PROFITS = 'bank_profits'
    FIRMS_PLAN = 'firms_plan'
    GOVERNMENT_STEP = 'government_step'
    GOODS_MARKET_WEIGHTS = 'goods_market_weights'

_BEHAVIOR_POINTS_LIST = [
    _BEHAVIOR_POINTS.CENTRAL_BANK_RATE,
    _BEHAVIOR_POINTS.BANK_PROFITS,
    _BEHAVIOR_POINTS.FIRMS_PLAN,
    _BEHAVIOR_POINTS.GOVERNMENT_STEP,
    _BEHAVIOR_POINTS.GOODS_MARKET_WEIGHTS,
]


_TOP_LEVEL_NAMES = ['w_act', 'w_inact', 'firms', 'bank', 'cb', 'gov', 'rotw', 'agg', 'prop']


_DEFAULT_TRACKED_VARIABLES = [
    'nominal_gdp',
    'real_gdp',
    'real_household_consumption',
    'nominal_household_consumption',
    'real_government_consumption',
    'nominal_government_consumption',
    'real_capitalformation',
    'nominal_capitalformation',
    'real_exports',
    'nominal_exports',
    'real_imports',
    'nominal_imports',
    'gdp_deflator',
    'inflation_rate',
    'expected_inflation',
    'expected_growth',
    'employment_rate',
    'unemployment_rate',
    'nominal_wages',
    'policy_rate',
    'bank_profits',
    'bank_equity',
    'total_loans',
    'government_debt',
    'government_deficit',
]


class _EXPORT_FORMATS:
    TABLE = 'table'
    STRUCTURED = 'structured'

_EXPORT_EXTENSIONS = {
    'csv': _EXPORT_FORMATS.TABLE,
    'nc': _EXPORT_FORMATS.STRUCTURED,
    'nc4': _EXPORT_FORMATS.STRUCTURED,
}


class _SHOCKS:
    CONSUMPTION = 'consumption'

_SHOCKS_LIST = [_SHOCKS.CONSUMPTION]
