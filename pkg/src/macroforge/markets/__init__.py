from .outcomes import MarketOutcome, LaborOutcome, CreditOutcome, BuyerLayout
from .labor import labor_market
from .credit import credit_market
from .goods import goods_market, goods_market_weights, buyer_budgets, trade_sector
