"""Dihedral model: families of parallel m-allowable diagonals in the (mk+2)-gon.

A family is fixed by an axis and a residue.  Work with half-integer
positions: axis ``s`` (0 <= s < N) passes through the point s/2.  The
diagonal perpendicular to it at key ``kappa`` joins (s+kappa)/2 and
(s-kappa)/2; ``kappa`` counts the edges on the side of s/2, so the region
cut off there has kappa+1 vertices.  A diagonal is m-allowable when
kappa = 1 mod m, and two members of one family differ by 2m in kappa so
that consecutive members bound a (2m+2)-gon.  Candidate families are then
kept only if they belong to some (m+2)-angulation made of two families.
"""

from __future__ import annotations

from ..coxeter import ParabolicClass
from .base import ModelAssertion, PolygonModel, TypingAmbiguity
from .elements import ParallelFamily, chord, crosses, split_regions


class DihedralModel(PolygonModel):

    def _candidates(self) -> list[ParallelFamily]:
        N, m = self.N, self.m
        out = set()
        for s in range(N):
            keys = [k for k in range(2, N - 1) if (k - s) % 2 == 0 and k % m == 1 % m]
            for r in sorted({k % (2 * m) for k in keys}):
                members = [chord((s + k) // 2 + 1, (s - k) // 2 + 1, N)
                           for k in keys if k % (2 * m) == r]
                out.add(ParallelFamily(tuple(sorted(members))))
        return sorted(out)

    def _union_ok(self, x: ParallelFamily, y: ParallelFamily) -> bool:
        if x == y:
            return False
        if any(crosses(c1, c2) or c1 == c2 for c1 in x.members for c2 in y.members):
            return False
        regions = split_regions(range(1, self.N + 1), x.members + y.members)
        return all(len(r) == self.m + 2 for r in regions)

    def _build_vertices(self):
        cands = self._candidates()
        keep = [x for x in cands if any(self._union_ok(x, y) for y in cands)]
        k = self.W.n
        if len(keep) != self.m * k + 2:
            raise ModelAssertion(f"I2({k}) m={self.m}: {len(keep)} vertices, expected {self.m * k + 2}")
        return keep

    def _compatible(self, x, y):
        return self._union_ok(x, y)

    def rotate(self, x):
        N = self.N
        return ParallelFamily(tuple(sorted(chord(a - 1, b - 1, N) for a, b in x.members)))

    def rank1_orbits(self) -> list[frozenset]:
        """Rotation orbits on vertices, ordered by their smallest vertex."""
        seen, orbits = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            orb = {v}
            w = self.rotate(v)
            while w not in orb:
                orb.add(w)
                w = self.rotate(w)
            seen |= orb
            orbits.append(frozenset(orb))
        return orbits

    def type_face(self, elements):
        W = self.W
        if len(elements) == 0:
            return ParabolicClass(W, tag="full")
        if len(elements) == 2:
            return ParabolicClass(W, tag="trivial")
        if len(elements) != 1:
            raise TypingAmbiguity("dihedral faces have at most two vertices")
        if W.n % 2:
            return ParabolicClass(W, tag="rank1")
        orbits = self._orbits
        for cid, orb in enumerate(orbits):
            if elements[0] in orb:
                return ParabolicClass(W, tag="rank1", class_id=cid)
        raise TypingAmbiguity("vertex outside every orbit")

    @property
    def _orbits(self) -> list[frozenset]:
        if not hasattr(self, "_orbit_cache"):
            orbits = self.rank1_orbits()
            if self.W.n % 2 == 0 and len(orbits) != 2:
                raise ModelAssertion(f"expected two vertex orbits for even k, found {len(orbits)}")
            self._orbit_cache = orbits
        return self._orbit_cache
