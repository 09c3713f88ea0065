"""
Entanglement depth over one driving cycle of the Ux chain
=========================================================

Scanning the certified entanglement depth period by period shows how far
the kicked transverse-field chain climbs from a trivial product state.
At L=10 the drive repeatedly certifies depth 5 (half the chain), and the
geometric measure dips at exactly those periods: the state gets closer to
a highly nonproduct form right when the deepest entanglement appears.
L=8 is the odd one out, never certifying beyond depth 2 on its whole
cycle.
"""

from kicked_ising import (
    Axis,
    FloquetSpec,
    Model,
    apply_floquet,
    geometric_measure,
    make_polarized_state,
    maximize_qfi,
)


def scan(num_sites, periods, with_geometry=()):
    spec = FloquetSpec(Model.UX, num_sites)
    state = make_polarized_state(num_sites, Axis.parse("z+"))
    print(f"\n=== Ux, L={num_sites}, z+ initial, n = 0..{periods - 1} ===")
    depths = []
    for n in range(periods):
        if n > 0:
            state = apply_floquet(spec, state, 1)
        q = maximize_qfi(state, seed=n)
        depths.append(q.depth)
        if n in with_geometry:
            g = geometric_measure(state, seed=n)
            print(
                f"n={n:3d}  F_Q {q.f_q:8.4f}  depth {q.depth}  "
                f"E_g {g.e_g:.6f}"
            )
    print("depth profile:", " ".join(str(d) for d in depths))
    print(f"peak depth {max(depths)} at n =",
          [n for n, d in enumerate(depths) if d == max(depths)])


# L=10: one projective period is 60; the first quarter already shows the
# depth-5 episodes at n=10,11 with the E_g dip around them
scan(10, 16, with_geometry=(9, 10, 11, 12))

# L=8: the full cycle is only 24 periods; depth never passes 2
scan(8, 24)
