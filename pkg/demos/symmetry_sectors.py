"""
The parity sectors and their reduced generators.

The Dicke space of n spins has n + 1 dimensions. Each parity sector has about
half that, and in it H_zz is diagonal while the control generator is
tridiagonal.
"""
import numpy as np

from isingctl.symmetry import SECTORS, parity_sector, sector_dims

np.set_printoptions(precision=3, suppress=True)

n = 5
print(f"n={n}, sector dimensions: {sector_dims(n)}")
for sector in SECTORS:
    rep = parity_sector(n, sector)
    gen = rep.generator(sector[0])
    print(f"\n{sector}: h_zz diagonal {np.real(np.diag(rep.h_zz))}")
    print(gen)

rep = parity_sector(4, "Yminus")
print("\nn=4 Yminus:")
print(rep.h_zz.real)
print(rep.h_y)
