# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels for torus occupancy grids.

Grids are flat ``bytearray`` objects of length ``p1 * p2`` in row-major
order (index ``x * p2 + y``), interpreted periodically in both directions.
The pure-Python twin lives in ``_pykernels.py`` and must stay in sync.
"""

from libc.stdlib cimport malloc, free


cdef long _gcd(long a, long b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def orbit_grid(long a1, long b1, long a2, long b2):
    """Occupancy of ``{n (a1/b1, a2/b2) mod 1}`` on the ``b1 x b2`` grid."""
    cdef long period = b1 // _gcd(b1, b2) * b2
    cdef bytearray out = bytearray(b1 * b2)
    cdef unsigned char[:] view = out
    cdef long n, x = 0, y = 0
    cdef long s1 = ((a1 % b1) + b1) % b1
    cdef long s2 = ((a2 % b2) + b2) % b2
    for n in range(period):
        view[x * b2 + y] = 1
        x += s1
        if x >= b1:
            x -= b1
        y += s2
        if y >= b2:
            y -= b2
    return out


def lattice_grid(long g, long a1, long a2, long p1, long p2):
    """Occupancy of ``{u : a1*u2 = a2*u1 (mod g)}`` on the ``p1 x p2`` grid."""
    cdef bytearray out = bytearray(p1 * p2)
    cdef unsigned char[:] view = out
    cdef long x, y, lhs, rhs
    for x in range(p1):
        rhs = ((a2 * x) % g + g) % g
        for y in range(p2):
            lhs = ((a1 * y) % g + g) % g
            if lhs == rhs:
                view[x * p2 + y] = 1
    return out


def empty_windows(const unsigned char[:] occ, long p1, long p2,
                  long kx, long ky, bint first_only=True):
    """Integer placements whose open window misses every occupied cell.

    A placement ``(x0, y0)`` covers columns ``x0+1 .. x0+kx`` and rows
    ``y0+1 .. y0+ky`` (periodically). Placements are scanned in
    lexicographic order; with ``first_only`` the scan stops at the first hit.
    """
    cdef list found = []
    if kx <= 0 or ky <= 0:
        if first_only:
            return [(0, 0)]
        return [(x, y) for x in range(p1) for y in range(p2)]
    if kx > p1:
        kx = p1
    if ky > p2:
        ky = p2
    cdef long e1 = p1 + kx + 1
    cdef long e2 = p2 + ky + 1
    cdef long w = e2 + 1
    cdef long *pre = <long *> malloc((e1 + 1) * (e2 + 1) * sizeof(long))
    if pre == NULL:
        raise MemoryError()
    cdef long i, j, x0, y0, total
    try:
        for j in range(e2 + 1):
            pre[j] = 0
        for i in range(1, e1 + 1):
            pre[i * w] = 0
            for j in range(1, e2 + 1):
                pre[i * w + j] = (occ[((i - 1) % p1) * p2 + (j - 1) % p2]
                                  + pre[(i - 1) * w + j] + pre[i * w + j - 1]
                                  - pre[(i - 1) * w + j - 1])
        for x0 in range(p1):
            for y0 in range(p2):
                # rows x0+1..x0+kx are prefix indices x0+2..x0+kx+1
                total = (pre[(x0 + kx + 1) * w + y0 + ky + 1]
                         - pre[(x0 + 1) * w + y0 + ky + 1]
                         - pre[(x0 + kx + 1) * w + y0 + 1]
                         + pre[(x0 + 1) * w + y0 + 1])
                if total == 0:
                    found.append((x0, y0))
                    if first_only:
                        return found
    finally:
        free(pre)
    return found


def lattice_points_in_disk(long g, long a1, long a2, long radius_sq):
    """Nonzero ``u`` in ``L_g(a1, a2)`` with ``|u|^2 <= radius_sq``, sorted."""
    cdef list pts = []
    cdef long r = 0
    while (r + 1) * (r + 1) <= radius_sq:
        r += 1
    cdef long x, y, n2
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if x == 0 and y == 0:
                continue
            n2 = x * x + y * y
            if n2 > radius_sq:
                continue
            if ((a1 * y - a2 * x) % g) == 0:
                pts.append((n2, x, y))
    pts.sort()
    return pts
