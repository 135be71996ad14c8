"""Recovering products of sequential measurement outcomes from one ancilla spin.

Ensemble testbeds cannot read out individual projective outcomes, but the
product of two +-1 outcomes can be accumulated into an ancilla: rotate the
measured Pauli onto Z, CNOT the bit into the ancilla, rotate back, repeat
after the waiting period, then measure <Z> of the ancilla once. This matches
the direct sequential-measurement engine to machine precision.
"""

import itertools

import numpy as np

from pdmsim import (
    ancilla_expectation,
    expectation,
    make_channel,
    state_from_bloch,
    two_event_schedule,
)

labels = "IXYZ"
s = two_event_schedule(state_from_bloch([0.3, 0.1, 0.5]), make_channel("depolarizing", 0.4))

print("assignment   direct engine   ancilla readout")
worst = 0.0
for a in itertools.product(range(4), repeat=2):
    direct = expectation(s, a)
    anc = ancilla_expectation(s, a)
    worst = max(worst, abs(direct - anc))
    print(f"  {labels[a[0]]},{labels[a[1]]}      {direct:+.10f}   {anc:+.10f}")
print(f"\nmax |difference| = {worst:.3e}")
assert worst < 1e-10
