"""Finite-N identities: the determinant equals constants times a Fredholm determinant."""
from toeplitz_hankel.identities import verify_bogc_even, verify_bogc_general
from toeplitz_hankel.operators import I, REALIZATIONS
from toeplitz_hankel.symbol import FourierSymbol, exp_symbol

even = exp_symbol(FourierSymbol.from_coeffs({1: 0.3, -1: 0.3}))
print("even symbol")
for r in REALIZATIONS:
    for n in (2, 8, 16):
        rep = verify_bogc_even(even, n, r)
        print(f"  {str(r):>3} N={n:<3} det={rep.lhs.value.real: .12e} rel_err={rep.rel_err:.1e} "
              f"K-block size {rep.params['truncation']}")

general = exp_symbol(FourierSymbol.from_coeffs({-1: 0.5, 1: 0.3}))
print("non-even symbol, realization I")
for n in (2, 4, 8):
    rep = verify_bogc_general(general, n, I)
    print(f"  N={n:<3} rel_err={rep.rel_err:.1e}")
