"""Double-description method for polyhedral cones over Q.

Given inequalities ``a_i . x >= 0`` the routine returns the lineality space
and the extreme rays (modulo lineality) of the cone they cut out.  The
incremental scheme keeps the representation minimal after every step, so
the combinatorial adjacency test is valid throughout.
"""
from __future__ import annotations

from typing import Sequence

from .rational import dot, neg, primitive, ratvec, scale, sub, unit


def double_description(inequalities: Sequence[Sequence], dim: int):
    """Return ``(lineality_basis, rays)`` for ``{x in Q^dim : a . x >= 0}``.

    Rays are primitive integer vectors; the lineality basis is also integral.
    """
    lin = [unit(dim, i) for i in range(dim)]
    rays: list[tuple[tuple, frozenset]] = []
    for idx, a in enumerate(inequalities):
        a = ratvec(a)
        vals = [dot(a, l) for l in lin]
        piv = next((j for j, v in enumerate(vals) if v != 0), None)
        if piv is not None:
            l0 = lin[piv] if vals[piv] > 0 else neg(lin[piv])
            a0 = abs(vals[piv])
            new_lin = [sub(l, scale(dot(a, l) / a0, l0)) for j, l in enumerate(lin) if j != piv]
            new_rays = [(sub(r, scale(dot(a, r) / a0, l0)), z | {idx}) for r, z in rays]
            new_rays.append((l0, frozenset(range(idx))))
            lin, rays = new_lin, new_rays
            continue

        pos, zer, negs = [], [], []
        for r, z in rays:
            v = dot(a, r)
            (pos if v > 0 else zer if v == 0 else negs).append((r, z, v))
        need = dim - len(lin) - 2
        out = [(r, z) for r, z, _ in pos] + [(r, z | {idx}) for r, z, _ in zer]
        for rp, zp, vp in pos:
            for rn, zn, vn in negs:
                common = zp & zn
                if len(common) < need:
                    continue
                adjacent = True
                for r, z in rays:
                    if r is rp or r is rn:
                        continue
                    if common <= z:
                        adjacent = False
                        break
                if adjacent:
                    new = sub(scale(vp, rn), scale(vn, rp))
                    out.append((new, common | {idx}))
        rays = out

    lin_basis = [primitive(l) for l in lin]
    seen = set()
    clean = []
    for r, _ in rays:
        p = primitive(r)
        if all(x == 0 for x in p) or p in seen:
            continue
        seen.add(p)
        clean.append(p)
    return lin_basis, clean

