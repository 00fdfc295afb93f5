"""Pilot learning runs: fixed vs mass-wobble, small scale, quick readout."""

import argparse
import time

import numpy as np

from wobblesim.controller import MotorConfig, MutationConfig
from wobblesim.learner import run_learning
from wobblesim.morphology import StarfishSpec
from wobblesim.physics import SimConfig
from wobblesim.wobble import WobbleSchedule


def autocorr_peak_lag(series, max_lag):
    x = np.asarray(series, dtype=float)
    x = x - x.mean()
    n = len(x)
    ac = np.array([np.dot(x[:n - k], x[k:]) / n for k in range(1, max_lag + 1)])
    return int(np.argmax(ac)) + 1, ac


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=[1])
    ap.add_argument("--epochs", type=int, default=150)
    ap.add_argument("--duration", type=float, default=10.0)
    ap.add_argument("--wobble-end", type=int, default=None)
    ap.add_argument("--ramp-end", type=int, default=None)
    ap.add_argument("--amplitude", type=float, default=0.5)
    ap.add_argument("--period", type=float, default=25.0)
    ap.add_argument("--sigma-offset", type=float, default=0.3)
    ap.add_argument("--sigma-amplitude", type=float, default=0.1)
    ap.add_argument("--characteristic", default="mass")
    args = ap.parse_args()

    epochs = args.epochs
    w_end = args.wobble_end if args.wobble_end is not None else int(epochs * 0.475)
    r_end = args.ramp_end if args.ramp_end is not None else int(epochs * 0.5)

    spec = StarfishSpec()
    sim = SimConfig(dt=0.002, duration=args.duration)
    motor = MotorConfig()
    mcfg = MutationConfig(sigma_offset=args.sigma_offset,
                          sigma_amplitude=args.sigma_amplitude)

    fixed = WobbleSchedule(characteristic="none", wobble_end=0, ramp_end=0,
                           total_epochs=epochs)
    wob = WobbleSchedule(characteristic=args.characteristic, amplitude=args.amplitude,
                         period=args.period, wobble_end=w_end, ramp_end=r_end,
                         total_epochs=epochs)

    finals = {"fixed": [], "wobble": []}
    for seed in args.seeds:
        for name, sched in (("fixed", fixed), ("wobble", wob)):
            t0 = time.perf_counter()
            log = run_learning(seed, sched, spec, sim, motor, mcfg,
                               epochs=epochs, condition=name)
            wall = time.perf_counter() - t0
            best = np.array([r.best_fitness for r in log.records])
            finals[name].append(best[-1])
            line = (f"seed {seed} {name:6s}: final={best[-1]:.3f} "
                    f"best@50={best[min(49, epochs-1)]:.3f} "
                    f"max={best.max():.3f} wall={wall:.0f}s")
            if name == "wobble":
                phase = best[:w_end]
                detr = phase - np.convolve(
                    np.pad(phase, len(phase) // 4, mode="edge"),
                    np.ones(int(args.period)) / int(args.period),
                    mode="same")[len(phase) // 4:len(phase) // 4 + len(phase)]
                lag, _ = autocorr_peak_lag(detr, min(int(3 * args.period),
                                                     len(detr) // 2))
                line += f" osc_lag={lag} (P={args.period:.0f})"
            print(line, flush=True)
            q = epochs // 4
            marks = " ".join(f"{best[min(i, epochs-1)]:.2f}"
                             for i in range(0, epochs, max(1, q)))
            print(f"    best curve q-marks: {marks}", flush=True)

    fx = np.array(finals["fixed"])
    wb = np.array(finals["wobble"])
    print(f"\nfixed  finals: {np.round(fx, 3)} median={np.median(fx):.3f}")
    print(f"wobble finals: {np.round(wb, 3)} median={np.median(wb):.3f}")
    print(f"wobble>fixed: {int((wb > fx).sum())}/{len(fx)} pairs, "
          f"median ratio={np.median(wb) / max(np.median(fx), 1e-9):.2f}")


if __name__ == "__main__":
    main()
