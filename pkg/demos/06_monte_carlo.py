"""Averages over Haar unitary and special orthogonal matrices."""
from toeplitz_hankel.ensemble import verify_cue_identity, verify_oplus_identity
from toeplitz_hankel.symbol import FourierSymbol

f = FourierSymbol.from_coeffs({1: 1.0, -1: 1.0})

rep = verify_cue_identity(f, 0.5, 6, 100_000, 1)
print(f"CUE(6): MC {rep.params['mc_mean']:.5f} +- {rep.params['mc_stderr']:.5f}, "
      f"Toeplitz det {rep.rhs.value:.5f}, passed {rep.passed}")

for norm in ("plain", "halved_first_row"):
    rep = verify_oplus_identity(f, 0.3, 4, 100_000, 2, normalization=norm)
    print(f"SO(8) {norm}: MC {rep.params['mc_mean']:.5f} +- {rep.params['mc_stderr']:.5f}, "
          f"det {rep.rhs.value:.5f}, passed {rep.passed}")
