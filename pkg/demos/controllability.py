"""
Connectivity graph and commutant checks for every parity sector.
"""
from isingctl.control import connectivity_report
from isingctl.symmetry import SECTORS

for n in (3, 4, 5, 8):
    for sector in SECTORS:
        rep = connectivity_report(n, sector)
        print(f"n={n} {sector:6s} dim={rep.dim} freqs={rep.frequencies} "
              f"controllable={rep.controllable} commutant={rep.commutant_dim}")

ok = all(connectivity_report(n, s).controllable for n in range(2, 21) for s in SECTORS)
print(f"\nall sectors for n=2..20 controllable: {ok}")
