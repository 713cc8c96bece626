#!/usr/bin/env python3
"""Watch the relativistic transform collapse onto the Galilean one.

Holds the velocity fixed in absolute units while the light speed grows by
decades, then fits the log-log slope of the disagreement.  Both the time
coordinate and the reconstructed velocity should converge as 1/c^2.
"""

import argparse

import numpy as np

from relkin import (
    EventCoordinates,
    Observer,
    Velocity3,
    coordinate_transform,
    event_vector,
    urbantke_velocity,
)
from relkin.sampling import make_space


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--speed", type=float, default=0.6,
                    help="absolute frame speed, fixed across the sweep")
    ap.add_argument("--decades", type=int, default=5,
                    help="number of light speeds, starting at c = 10")
    args = ap.parse_args()

    space = make_space(4, "lorentzian")
    obs = Observer(space.vector([1.0, 0.0, 0.0, 0.0]))
    x = space.vector([0.0, 1.0, 0.0, 0.0])
    cs = 10.0 ** np.arange(1, args.decades + 1)

    t_gaps, v_gaps = [], []
    print(f"{'c':>12} {'|t_prime - t|':>15} {'|v_urb - (x-x_p)/t|':>21}")
    for c in cs:
        v = Velocity3(space.vector([0.0, args.speed, 0.0, 0.0]), obs, c)
        event = event_vector(obs, EventCoordinates(1.0, x), c)
        res = coordinate_transform(obs, obs, v, event)
        urb = urbantke_velocity(1.0, x, res.t_prime, res.x_prime, c)
        t_gap = abs(res.t_prime - 1.0)
        v_gap = float(np.max(np.abs(urb.components
                                    - (x - res.x_prime).components)))
        t_gaps.append(t_gap)
        v_gaps.append(v_gap)
        print(f"{c:12.0f} {t_gap:15.6e} {v_gap:21.6e}")

    slope_t = np.polyfit(np.log10(cs), np.log10(t_gaps), 1)[0]
    slope_v = np.polyfit(np.log10(cs), np.log10(v_gaps), 1)[0]
    print(f"\nfitted slopes: time gap {slope_t:.4f}, velocity gap "
          f"{slope_v:.4f} (1/c^2 convergence means -2)")


if __name__ == "__main__":
    main()
