from .fleet import Unit, PumpedStorage, FleetSpec, load_fleet
from .clearing import (
    MarketClearingResult,
    clear_window,
    rolling_mcp,
    merit_order_price,
    merit_order_prices,
    write_mcp
)
