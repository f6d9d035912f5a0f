"""Symbols, their logarithms and Wiener-Hopf type factors.

Run with ``python demos/01_symbols.py``.
"""
from toeplitz_hankel.symbol import (
    FourierSymbol,
    exp_symbol,
    factor_even_plus,
    factor_minus_even,
    flip,
    log_symbol,
    multiply,
    norm_fl11,
)

# exp(0.3 (t + 1/t)) has modified Bessel coefficients I_n(0.6)
b = FourierSymbol.from_coeffs({1: 0.3, -1: 0.3})
a = exp_symbol(b)
print("window", a.lo, a.hi)
for n in range(4):
    print(f"a_{n} = {a.coef(n).real:.16f}")

print("log round trip error:", norm_fl11(log_symbol(a) - b))

fe = factor_even_plus(a)
print("a - a_+ * flip(a_+):", norm_fl11(multiply(fe.a_plus, flip(fe.a_plus)) - a))

g = exp_symbol(FourierSymbol.from_coeffs({-1: 0.2, 1: 0.3, -2: 0.05}))
fm = factor_minus_even(g)
print("a_minus window", fm.a_minus.lo, fm.a_minus.hi, " a_zero even:", fm.a_zero.is_even())
print("g - a_minus * a_zero:", norm_fl11(multiply(fm.a_minus, fm.a_zero) - g))
