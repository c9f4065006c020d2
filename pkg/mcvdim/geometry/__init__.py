"""
The geometry package describes where the antennas are. A transmitter block
carries ``n_tx`` point sources; the receiver block carries ``n_rx`` absorbing
spheres of radius ``r_r``. The default arrangement is a uniform circular array
(UCA) in which transmit point ``i`` faces the centre of receiver sphere ``i``
across a gap of ``d_x``, but any placement that keeps the spheres apart and the
sources outside them is accepted.

Coordinates are in micrometres. The block axis is the x-axis, with the origin
half-way between the transmit points and the receiver centres, so a drift
along +x points from the transmitter towards the receiver.
"""

from mcvdim.geometry.topology import Topology, build_uca_topology
