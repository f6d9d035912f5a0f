"""The one-parameter family M built from a perturbation vector x."""
import numpy as np

from toeplitz_hankel.generalm import PerturbationVector, check_compatibility, k_of_tn, m_general_section, random_trig_poly
from toeplitz_hankel.operators import I, II, III, IV, m_section

rng = np.random.default_rng(7)
p = random_trig_poly(rng, 3)
for x, r in [(PerturbationVector.unit(0), I), (PerturbationVector.unit(0, -1.0), II),
             (PerturbationVector.unit(1), IV), (PerturbationVector.zero(), III)]:
    err = np.max(np.abs(m_general_section(x, p, 20) - m_section(p, 20, r)))
    print(f"x={list(x.entries)} vs {r}: {err:.1e}")

x = PerturbationVector((0.3, 0.2j, -0.1))
a = random_trig_poly(rng, 3, "minus")
b = random_trig_poly(rng, 2)
c = random_trig_poly(rng, 2, "even")
print("M(abc) - T(a)M(b)M(c):", check_compatibility(x, a, b, c, 64))
k5 = k_of_tn(x, 5, 10)
print("rows of K(t^5) with nonzero entries:", np.nonzero(np.any(k5 != 0, axis=1))[0].tolist())
