"""Pure-Python twin of ``_kernels.pyx``; same signatures, same results."""

from itertools import accumulate
from math import gcd, isqrt


def orbit_grid(a1, b1, a2, b2):
    period = b1 // gcd(b1, b2) * b2
    out = bytearray(b1 * b2)
    x = y = 0
    s1, s2 = a1 % b1, a2 % b2
    for _ in range(period):
        out[x * b2 + y] = 1
        x = (x + s1) % b1
        y = (y + s2) % b2
    return out


def lattice_grid(g, a1, a2, p1, p2):
    out = bytearray(p1 * p2)
    for x in range(p1):
        rhs = (a2 * x) % g
        base = x * p2
        for y in range(p2):
            if (a1 * y) % g == rhs:
                out[base + y] = 1
    return out


def empty_windows(occ, p1, p2, kx, ky, first_only=True):
    if kx <= 0 or ky <= 0:
        if first_only:
            return [(0, 0)]
        return [(x, y) for x in range(p1) for y in range(p2)]
    kx, ky = min(kx, p1), min(ky, p2)
    e1, e2 = p1 + kx + 1, p2 + ky + 1
    pre = [[0] * (e2 + 1)]
    for i in range(e1):
        row = occ[(i % p1) * p2:(i % p1) * p2 + p2]
        run = list(accumulate((row[j % p2] for j in range(e2)), initial=0))
        prev = pre[-1]
        pre.append([prev[j] + run[j] for j in range(e2 + 1)])
    found = []
    for x0 in range(p1):
        top, bot = pre[x0 + kx + 1], pre[x0 + 1]
        for y0 in range(p2):
            total = (top[y0 + ky + 1] - bot[y0 + ky + 1]
                     - top[y0 + 1] + bot[y0 + 1])
            if total == 0:
                found.append((x0, y0))
                if first_only:
                    return found
    return found


def lattice_points_in_disk(g, a1, a2, radius_sq):
    r = isqrt(radius_sq)
    pts = []
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if x == 0 and y == 0:
                continue
            n2 = x * x + y * y
            if n2 <= radius_sq and (a1 * y - a2 * x) % g == 0:
                pts.append((n2, x, y))
    pts.sort()
    return pts
