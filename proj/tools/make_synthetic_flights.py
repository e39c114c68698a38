#!/usr/bin/env python3
"""Write synthetic perching trajectories in the tracked-flight CSV format.

Each flight is a straight level approach, a constant-deceleration stop against
the pole and a cosine pitch-up while at rest.
"""

import argparse
import math
from pathlib import Path


def flight_rows(speed, stop, impact_pitch, peak_pitch, rise, rate, pre, total, heading_deg):
    dt = 1.0 / rate
    hx, hy = math.cos(math.radians(heading_deg)), math.sin(math.radians(heading_deg))
    t_hit = pre * dt
    rows = []
    for k in range(total):
        t = k * dt
        tr = t - t_hit
        if tr <= 0.0:
            s = speed * t
        elif tr < stop:
            s = speed * t_hit + speed * tr - 0.5 * speed / stop * tr * tr
        else:
            s = speed * t_hit + 0.5 * speed * stop
        if tr <= stop:
            pitch = impact_pitch
        elif tr < stop + rise:
            u = (tr - stop) / rise
            pitch = impact_pitch + (peak_pitch - impact_pitch) * 0.5 * (1.0 - math.cos(math.pi * u))
        else:
            pitch = peak_pitch
        rows.append((t, s * hx, s * hy, 1.0, 0.0, pitch, heading_deg))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--mass", type=float, default=0.22, help="kg, written to the header")
    ap.add_argument("--rate", type=float, default=240.0, help="Hz")
    ap.add_argument("--stop", type=float, default=0.025, help="s, stop duration")
    args = ap.parse_args()

    cases = [(3.0, 95.0), (4.0, 92.0), (5.0, 100.0), (6.0, 70.0), (7.0, 96.0), (8.0, 60.0)]
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for i, (speed, peak) in enumerate(cases, start=1):
        rows = flight_rows(speed, args.stop, 20.0, peak, 0.2, args.rate, 48, 240, 15.0 * i)
        path = args.out_dir / f"flight_{i:02d}.csv"
        with path.open("w") as f:
            f.write(f"# rate_hz={args.rate:g} mass_kg={args.mass:g}\n")
            f.write("t,x,y,z,roll,pitch,yaw\n")
            for r in rows:
                f.write(",".join(f"{v:.12g}" for v in r) + "\n")


if __name__ == "__main__":
    main()
