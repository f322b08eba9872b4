#!/usr/bin/env python3
"""Transition dipoles out of the ground state and their selection rules.

A planar ring never couples to the magnetic field (its magnetic moment
commutes with the Hamiltonian), and a periodic double ring couples
electrically and magnetically at different frequencies.  The twisted ring
is the interesting case: the band-flip transition at the same momentum is
allowed both electrically and magnetically, the prerequisite for
simultaneously negative permittivity and permeability.
"""

import numpy as np

from mobius_optics import bruteforce as bf
from mobius_optics.dipole import (
    electric_element, electric_selection, magnetic_element, magnetic_selection,
)
from mobius_optics.ring import (
    GROUND_LABEL, RingParams, Topology, all_labels, band_energy,
)

params = RingParams(12)
n = params.n_per_ring
e_scale = 1.602176634e-19 * params.half_width          # e W
m_scale = (1.602176634e-19 * params.xi_intra * 1.602176634e-19
           * params.radius * params.half_width / 1.054571817e-34)  # e xi R W / hbar

print("transitions out of the ground state (0, down):")
print(" to      dE (eV)   electric |d|/eW  rule    magnetic |m|/(e xi R W/hbar)  rule")
for lab in all_labels(n):
    if lab == GROUND_LABEL:
        continue
    d = electric_element(params, GROUND_LABEL, lab).vector
    m = magnetic_element(params, GROUND_LABEL, lab).vector
    if np.abs(d).max() < 1e-13 * e_scale and np.abs(m).max() < 1e-13 * m_scale:
        continue
    de = band_energy(params, lab) - band_energy(params, GROUND_LABEL)
    rule_e = "".join(sorted(electric_selection(n, GROUND_LABEL, lab))) or "-"
    rule_m = "".join(sorted(magnetic_selection(n, GROUND_LABEL, lab))) or "-"
    print(f"({lab.momentum_index:>2},{lab.band.value:<4})  {de:7.4f}   "
          f"{np.linalg.norm(d) / e_scale:>12.4f}   {rule_e:<5} "
          f"{np.linalg.norm(m) / m_scale:>18.4f}        {rule_m}")

print("\nthe (0,down) -> (0,up) and (0,down) -> (1,up) lines are degenerate and")
print("carry both dipoles; every other line is electric-only here.\n")

# Contrast with the untwisted topologies, checked numerically.
single = bf.perfect_ring_regression(RingParams(12, topology=Topology.SINGLE_RING))
print(f"planar ring:     |[m_z, H]| = {single.commutator_norm:.1e} (natural units), "
      f"largest magnetic transition {single.max_offdiag_magnetic:.1e}")
annulene = bf.annulene_cross_check(
    RingParams(12, topology=Topology.DOUBLE_RING_PERIODIC))
print(f"periodic double ring: {annulene.n_shared} transitions carry both dipoles")
mobius = bf.shared_transition_scan(params)
print(f"Mobius ring:          {mobius.n_shared} transition(s) carry both dipoles")
