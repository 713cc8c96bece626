#!/usr/bin/env python3
"""Contrast isometric velocity addition with groupoid composition.

The addition of measured 3-velocities depends on operand order (and on
association for in-plane triples), while composing the unique
observer-to-observer morphisms can never notice either choice.
"""

import numpy as np

from relkin import (
    Observer,
    ObserverObject,
    Velocity3,
    compare_with_isometric,
    gamma,
    velocity_add,
)
from relkin.sampling import make_space


def show(label, vec):
    print(f"  {label}: ({', '.join(f'{x:+.6f}' for x in vec)})")


def main():
    space = make_space(4, "lorentzian")
    rest = Observer(space.vector([1.0, 0.0, 0.0, 0.0]))
    u = Velocity3(space.vector([0.0, 0.5, 0.0, 0.0]), rest, 1.0)
    v = Velocity3(space.vector([0.0, 0.0, 0.5, 0.0]), rest, 1.0)

    print("orthogonal pair u = 0.5c x, v = 0.5c y")
    uv = velocity_add(u, v).vector.components
    vu = velocity_add(v, u).vector.components
    show("u (+) v", uv)
    show("v (+) u", vu)
    print(f"  order gap: {np.max(np.abs(uv - vu)):.6f} c")

    lhs = velocity_add(velocity_add(u, v), u).vector.components
    rhs = velocity_add(u, velocity_add(v, u)).vector.components
    print("in-plane triple (u, v, u)")
    show("(u (+) v) (+) u", lhs)
    show("u (+) (v (+) u)", rhs)
    print(f"  associator: {np.max(np.abs(lhs - rhs)):.6f} c")

    def lift(vel):
        g = gamma(vel)
        return ObserverObject(Observer(g * (rest.vector + vel.vector)))

    report = compare_with_isometric(ObserverObject(rest), lift(u), lift(v),
                                    1.0)
    print("same observers, composed as morphisms")
    show("leg-by-leg chain", np.array(report["chain"]))
    show("direct morphism", np.array(report["hom_pr"]))
    print(f"  groupoid discrepancy: {report['groupoid_discrepancy']:.1f}")
    print(f"  isometric order discrepancy: "
          f"{report['order_discrepancy']:.6f} c")


if __name__ == "__main__":
    main()
