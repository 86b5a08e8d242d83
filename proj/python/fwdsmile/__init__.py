"""Large-maturity Heston forward smile asymptotics."""

from ._core import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    ForwardContext,
    H,
    HestonParams,
    ParamError,
    V,
    V_prime,
    bs_price,
    forward_call_asymptotic,
    forward_call_fourier,
    forward_smile_asymptotic,
    implied_vol,
    mc_forward_call,
    rate_function,
    reproduce,
    saddlepoint,
    svi,
)

__all__ = [
    "ConvergenceError",
    "DegenerateError",
    "DomainError",
    "ForwardContext",
    "H",
    "HestonParams",
    "ParamError",
    "V",
    "V_prime",
    "bs_price",
    "forward_call_asymptotic",
    "forward_call_fourier",
    "forward_smile_asymptotic",
    "implied_vol",
    "mc_forward_call",
    "rate_function",
    "reproduce",
    "saddlepoint",
    "svi",
]
