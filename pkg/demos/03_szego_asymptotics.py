"""Large-N asymptotics G^N * E^, in double and in extended precision.

Double precision hits roundoff by N = 8; the mpmath path shows the
super-exponential decay of the error.
"""
from toeplitz_hankel.constants import szego_constants
from toeplitz_hankel.identities import verify_szego
from toeplitz_hankel.operators import REALIZATIONS
from toeplitz_hankel.precise import verify_szego_mp
from toeplitz_hankel.symbol import FourierSymbol, exp_symbol

b = FourierSymbol.from_coeffs({0: 0.2, 1: 0.1, -2: 0.05})
a = exp_symbol(b)
ns = [4, 8, 16, 32]
for r in REALIZATIONS:
    c = szego_constants(a, r, b=b)
    dbl = [rep.rel_err for rep in verify_szego(a, r, ns)]
    mp = [rep.rel_err for rep in verify_szego_mp(b, r, ns)]
    print(f"{str(r):>3} G={c.g.real:.6f} E^={c.e_hat.real:.6f}")
    print("    double  ", " ".join(f"{e:.1e}" for e in dbl))
    print("    extended", " ".join(f"{e:.1e}" for e in mp))
