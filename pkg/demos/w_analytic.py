"""
Analytic W-state sequences for three and four spins.

For n = 3 the state stays in the X+ sector the whole time. For n = 4 it
crosses from X+ into Y- and then leaves both. The script prints the sector
weights after every pulse so the route can be followed.

Run::

    python demos/w_analytic.py
"""
from isingctl.analytic import w3_sequence, w4_sequence
from isingctl.simcore import PulseSequence, apply_sequence, fidelity, w_state, zero_state
from isingctl.symmetry import sector_weight, to_symmetric

for named in (w3_sequence(), w4_sequence()):
    n = named.n
    print(f"{named.label}: fidelity {fidelity(named.prepare(), w_state(n)):.12f}")
    for m in range(1, len(named.seq) + 1):
        state = apply_sequence(zero_state(n), PulseSequence(n, named.seq.pulses[:m]))
        sym = to_symmetric(state).amps
        weights = {s: sector_weight(sym, n, s) for s in ("Xplus", "Yminus")}
        p = named.seq.pulses[m - 1]
        print(f"  after {p.kind}({p.angle:+.6f}):  "
              + "  ".join(f"{k} {v:.4f}" for k, v in weights.items()))
    print()
