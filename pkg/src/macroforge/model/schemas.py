# -----------------------------------------------------------------------------
# Name:        schemas.py
# Purpose:     Keyed parameter and initial-condition maps
#
# Created:     04/02/2026
# -----------------------------------------------------------------------------

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..utils.status_exception import SchemaError


class ParameterSet(BaseModel):
    """
    Model parameters. Unknown keys are kept (and ignored by the engine).
    """

    model_config = ConfigDict(extra='allow', populate_by_name=True)

    tau_INC: float = Field(ge=0.0, le=1.0)
    mu: float = Field(ge=0.0, le=1.0)
    psi: float = Field(ge=0.0, le=1.0)
    rho: float = Field(ge=0.0, le=1.0)
    pi_star: float = Field(ge=0.0, le=1.0)
    r_star: float = Field(ge=0.0, le=1.0)
    gamma_pi: float = Field(ge=0.0)
    gamma_y: float = Field(ge=0.0)
    alpha: List[float]
    theta_dividend: float = Field(ge=0.0, le=1.0)
    S: int = Field(ge=1)
    scale: int = Field(default=1, ge=1)

    chi: float = Field(default=0.01, ge=0.0, le=1.0)
    eta: float = Field(default=0.1, ge=0.0, le=1.0)
    g_star: float = Field(default=0.003, ge=-1.0, le=1.0)
    lambda_: float = Field(default=10.0, ge=0.0, alias='lambda')
    loan_repayment: float = Field(default=0.02, ge=0.0, le=1.0)
    # product tax on household purchases, charged on top of basic prices
    tau_VAT: float = Field(default=0.0, ge=0.0, le=1.0)


class InitialConditions(BaseModel):
    """
    Calibrated state of the economy in the base quarter, at 1:1 scale.
    Currency amounts are per quarter for flows.
    """

    model_config = ConfigDict(extra='allow')

    # per-sector
    firm_counts: List[int]
    sector_output: List[float]
    prices: List[float]
    wages: List[float]
    inventories: List[float]

    # households
    n_active: int
    n_inactive: int
    unemployment_rate: float = Field(ge=0.0, le=1.0)
    Y_h: List[float] = Field(min_length=2, max_length=2)
    transfer_per_capita: float = Field(ge=0.0)

    # balance sheets
    policy_rate: float = Field(ge=0.0)
    government_debt: float
    bank_equity: float
    loans: float = Field(ge=0.0)
    deposits_households: float = Field(ge=0.0)
    deposits_firms: float = Field(ge=0.0)
    rotw_net_position: float = 0.0

    # national accounts targets
    nominal_gdp: float
    consumption: float
    investment: float
    government: float
    exports: float
    imports: float
    intermediate_consumption: float = Field(ge=0.0)

    # buyer spending split across sectors
    consumption_shares: List[float]
    investment_shares: List[float]
    government_shares: List[float]
    export_shares: List[float]
    intermediate_shares: List[float]

    # pre-sample quarters used to fit expectations
    history_growth: List[float] = Field(min_length=3)
    history_inflation: List[float] = Field(min_length=3)


def _error_path(section, loc):
    return '.'.join([section] + [str(part) for part in loc])


def validate_inputs(parameters, initial_conditions):
    """
    validate_inputs - build (ParameterSet, InitialConditions) from mappings,
    raising one SchemaError that lists every problem in both sections.
    """
    errors = []
    params = ic = None

    if isinstance(parameters, ParameterSet):
        params = parameters
    else:
        try:
            params = ParameterSet.model_validate(parameters or {})
        except ValidationError as e:
            errors += [(_error_path('parameters', err['loc']), err['msg']) for err in e.errors()]

    if isinstance(initial_conditions, InitialConditions):
        ic = initial_conditions
    else:
        try:
            ic = InitialConditions.model_validate(initial_conditions or {})
        except ValidationError as e:
            errors += [(_error_path('initial_conditions', err['loc']), err['msg']) for err in e.errors()]

    if errors:
        raise SchemaError(errors)
    return params, ic


def parameters_dict(params: ParameterSet, exclude: Optional[set] = None):
    """
    parameters_dict - plain mapping with the document key names ('lambda', not 'lambda_')
    """
    return params.model_dump(by_alias=True, exclude=exclude)
