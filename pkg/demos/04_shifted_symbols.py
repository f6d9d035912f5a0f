"""Determinants of T(a) +- H(a t^k): predicted values and exact zeros."""
from toeplitz_hankel.constants import CONVENTIONS
from toeplitz_hankel.identities import predict_shifted
from toeplitz_hankel.symbol import FourierSymbol, exp_symbol

a = exp_symbol(FourierSymbol.from_coeffs({-1: 0.5, 1: 0.3}))
for k, sign in [(-2, 1), (-2, -1), (-3, -1), (-1, 1), (-5, 1), (-1, -1)]:
    for conv in CONVENTIONS:
        rep = predict_shifted(a, k, sign, 48, convention=conv)
        status = {True: "ok", False: "MISS", None: "n/a"}[rep.passed]
        print(f"k={k:>2} sign={'+' if sign > 0 else '-'} {conv}: {status:<4} "
              f"rel_err={rep.rel_err if rep.rel_err is not None else float('nan'):.1e} {rep.notes}")

print("zero cases")
for k, sign in [(2, 1), (3, 1), (1, -1), (2, -1)]:
    rep = predict_shifted(a, k, sign, 10)
    print(f"k={k} sign={'+' if sign > 0 else '-'} zero_flag={rep.lhs.zero_flag} passed={rep.passed}")
