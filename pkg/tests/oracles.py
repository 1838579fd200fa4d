"""Independent brute-force oracles shared by the unit and acceptance tests."""

from mvoa.mooncodes import _compose, _inverse


def closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    queue = [ident]
    for p in queue:
        for s in gens:
            q = _compose(p, s)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def orbit_stabilizer(gens, degree, point=0):
    """(orbit size, stabiliser size) with the stabiliser enumerated from Schreier generators."""
    orbit = {point: tuple(range(degree))}
    queue = [point]
    for x in queue:
        for s in gens:
            y = s[x]
            if y not in orbit:
                orbit[y] = _compose(orbit[x], s)
                queue.append(y)
    schreier = set()
    for u in orbit.values():
        for s in gens:
            us = _compose(u, s)
            schreier.add(_compose(us, _inverse(orbit[us[point]])))
    return len(orbit), len(closure(sorted(schreier), degree))
