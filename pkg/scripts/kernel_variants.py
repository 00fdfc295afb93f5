"""Scratch benchmark of force-loop variants (not part of the package)."""

import math
import time

import numpy as np
from numba import njit

from wobblesim.morphology import StarfishSpec, build_starfish
from wobblesim.wobble import MorphologyScales


@njit(cache=True)
def forces_v1(pos_x, pos_y, vel_x, vel_y, sa, sb, rest, stiff, damp, fx, fy):
    n = pos_x.shape[0]
    for i in range(n):
        fx[i] = 0.0
        fy[i] = 0.0
    nd = 0
    for s in range(sa.shape[0]):
        a = sa[s]
        b = sb[s]
        dx = pos_x[b] - pos_x[a]
        dy = pos_y[b] - pos_y[a]
        length = math.sqrt(dx * dx + dy * dy)
        if length < 1e-12:
            nd += 1
            continue
        ux = dx / length
        uy = dy / length
        rel = (vel_x[b] - vel_x[a]) * ux + (vel_y[b] - vel_y[a]) * uy
        fmag = stiff[s] * (length - rest[s]) + damp[s] * rel
        fax = fmag * ux
        fay = fmag * uy
        fx[a] += fax
        fy[a] += fay
        fx[b] -= fax
        fy[b] -= fay
    return nd


@njit(cache=True)
def forces_v2(pos_x, pos_y, vel_x, vel_y, sa, sb, rest, stiff, damp, fx, fy):
    """Single division, force scaled by fmag/length."""
    n = pos_x.shape[0]
    for i in range(n):
        fx[i] = 0.0
        fy[i] = 0.0
    nd = 0
    for s in range(sa.shape[0]):
        a = sa[s]
        b = sb[s]
        dx = pos_x[b] - pos_x[a]
        dy = pos_y[b] - pos_y[a]
        length = math.sqrt(dx * dx + dy * dy)
        if length < 1e-12:
            nd += 1
            continue
        inv = 1.0 / length
        ux = dx * inv
        uy = dy * inv
        rel = (vel_x[b] - vel_x[a]) * ux + (vel_y[b] - vel_y[a]) * uy
        fmag = stiff[s] * (length - rest[s]) + damp[s] * rel
        fax = fmag * ux
        fay = fmag * uy
        fx[a] += fax
        fy[a] += fay
        fx[b] -= fax
        fy[b] -= fay
    return nd


@njit(cache=True)
def forces_v3(pos_x, pos_y, vel_x, vel_y, sa, sb, rest, stiff, damp,
              fax_arr, fay_arr, fx, fy):
    """Two passes: vectorizable math pass, scalar scatter pass."""
    m = sa.shape[0]
    nd = 0
    for s in range(m):
        a = sa[s]
        b = sb[s]
        dx = pos_x[b] - pos_x[a]
        dy = pos_y[b] - pos_y[a]
        l2 = dx * dx + dy * dy
        length = math.sqrt(l2)
        if length < 1e-12:
            fax_arr[s] = 0.0
            fay_arr[s] = 0.0
            nd += 1
            continue
        inv = 1.0 / length
        ux = dx * inv
        uy = dy * inv
        rel = (vel_x[b] - vel_x[a]) * ux + (vel_y[b] - vel_y[a]) * uy
        fmag = stiff[s] * (length - rest[s]) + damp[s] * rel
        fax_arr[s] = fmag * ux
        fay_arr[s] = fmag * uy
    n = pos_x.shape[0]
    for i in range(n):
        fx[i] = 0.0
        fy[i] = 0.0
    for s in range(m):
        a = sa[s]
        b = sb[s]
        fx[a] += fax_arr[s]
        fy[a] += fay_arr[s]
        fx[b] -= fax_arr[s]
        fy[b] -= fay_arr[s]
    return nd


def bench(fn, args, n=20000):
    fn(*args)
    t0 = time.perf_counter()
    for _ in range(n):
        fn(*args)
    return (time.perf_counter() - t0) / n


def main():
    w = build_starfish(StarfishSpec(), MorphologyScales())
    fx = np.empty(w.n_nodes)
    fy = np.empty(w.n_nodes)
    fax = np.empty(w.n_springs)
    fay = np.empty(w.n_springs)
    base = (w.pos_x, w.pos_y, w.vel_x, w.vel_y, w.spring_a, w.spring_b,
            w.rest, w.stiffness, w.damping)
    t1 = bench(forces_v1, base + (fx, fy))
    f1 = (fx.copy(), fy.copy())
    t2 = bench(forces_v2, base + (fx, fy))
    f2 = (fx.copy(), fy.copy())
    t3 = bench(forces_v3, base + (fax, fay, fx, fy))
    f3 = (fx.copy(), fy.copy())
    print(f"v1 baseline : {t1*1e9:7.1f} ns/call")
    print(f"v2 one-div  : {t2*1e9:7.1f} ns/call  max|dF| vs v1: "
          f"{max(np.abs(f2[0]-f1[0]).max(), np.abs(f2[1]-f1[1]).max()):.3e}")
    print(f"v3 two-pass : {t3*1e9:7.1f} ns/call  max|dF| vs v1: "
          f"{max(np.abs(f3[0]-f1[0]).max(), np.abs(f3[1]-f1[1]).max()):.3e}")


if __name__ == "__main__":
    main()


@njit(cache=True)
def forces_v4(pos_x, pos_y, vel_x, vel_y, sa, sb, rest, stiff, damp,
              fax_arr, fay_arr, fx, fy):
    """Branchless vectorizable math pass + scalar scatter pass."""
    m = sa.shape[0]
    nd = 0
    for s in range(m):
        a = sa[s]
        b = sb[s]
        dx = pos_x[b] - pos_x[a]
        dy = pos_y[b] - pos_y[a]
        length = math.sqrt(dx * dx + dy * dy)
        ok = 1.0 if length >= 1e-12 else 0.0
        inv = ok / (length + (1.0 - ok))
        ux = dx * inv
        uy = dy * inv
        rel = (vel_x[b] - vel_x[a]) * ux + (vel_y[b] - vel_y[a]) * uy
        fmag = stiff[s] * (length - rest[s]) + damp[s] * rel
        fax_arr[s] = fmag * ux * ok
        fay_arr[s] = fmag * uy * ok
    n = pos_x.shape[0]
    for i in range(n):
        fx[i] = 0.0
        fy[i] = 0.0
    for s in range(m):
        a = sa[s]
        b = sb[s]
        fx[a] += fax_arr[s]
        fy[a] += fay_arr[s]
        fx[b] -= fax_arr[s]
        fy[b] -= fay_arr[s]
    return nd


def main2():
    w = build_starfish(StarfishSpec(), MorphologyScales())
    fx = np.empty(w.n_nodes); fy = np.empty(w.n_nodes)
    fax = np.empty(w.n_springs); fay = np.empty(w.n_springs)
    base = (w.pos_x, w.pos_y, w.vel_x, w.vel_y, w.spring_a, w.spring_b,
            w.rest, w.stiffness, w.damping)
    t2 = bench(forces_v2, base + (fx, fy))
    f2 = (fx.copy(), fy.copy())
    t4 = bench(forces_v4, base + (fax, fay, fx, fy))
    f4 = (fx.copy(), fy.copy())
    print(f"v2 one-div   : {t2*1e9:7.1f} ns/call")
    print(f"v4 branchless: {t4*1e9:7.1f} ns/call  max|dF| vs v2: "
          f"{max(np.abs(f4[0]-f2[0]).max(), np.abs(f4[1]-f2[1]).max()):.3e}")


main2()
