"""The projective plane PG(2,q): points, lines, incidence, and vectorised
matrix action on homogeneous coordinates."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..gf import FieldError, field_for


class InvalidQ(ValueError):
    pass


class Plane:
    """PG(2,q) with dense point and line ids.

    Points and lines share the same list of normalised triples (first nonzero
    coordinate equal to 1), in ascending lexicographic order; the line with
    triple u is {v : u . v = 0}.
    """

    def __init__(self, q: int):
        try:
            F = field_for(q)
        except FieldError as exc:
            raise InvalidQ(str(exc)) from None
        self.F = F
        self.q = q
        # normalised triples in lexicographic order: (0,0,1), (0,1,z), (1,y,z)
        r = np.arange(q)
        yz = np.stack([np.repeat(r, q), np.tile(r, q)], axis=1)
        C = np.concatenate([
            [[0, 0, 1]],
            np.stack([np.zeros(q, int), np.ones(q, int), r], axis=1),
            np.concatenate([np.ones((q * q, 1), int), yz], axis=1),
        ]).astype(np.int64)
        self.coords = C
        self.n = len(C)
        assert self.n == q * q + q + 1

        # every nonzero vector code -> point id
        M, A = F.mul_table, F.add_table
        vec2pt = np.full(q ** 3, -1, dtype=np.int64)
        ids = np.arange(self.n)
        for lam in range(1, q):
            w = M[lam][C]
            vec2pt[(w[:, 0] * q + w[:, 1]) * q + w[:, 2]] = ids
        self.vec2pt = vec2pt
        self._incidence = None
        self._line_points = None

    @property
    def points(self):
        if not hasattr(self, "_points"):
            self._points = [tuple(int(x) for x in row) for row in self.coords]
        return self._points

    @property
    def incidence(self) -> np.ndarray:
        """Boolean matrix indexed [line, point]."""
        if self._incidence is None:
            if self.n > 5000:
                raise MemoryError("incidence matrix only built for q <= 64")
            M, A = self.F.mul_table, self.F.add_table
            C = self.coords
            dot = A[A[M[C[:, None, 0], C[None, :, 0]], M[C[:, None, 1], C[None, :, 1]]],
                    M[C[:, None, 2], C[None, :, 2]]]
            self._incidence = dot == 0
        return self._incidence

    @property
    def line_points(self):
        if self._line_points is None:
            self._line_points = [np.flatnonzero(row) for row in self.incidence]
        return self._line_points

    def points_on(self, line: int) -> np.ndarray:
        """Point ids on a line, without building the incidence matrix."""
        F = self.F
        M, A = F.mul_table, F.add_table
        u = self.coords[line]
        C = self.coords
        dot = A[A[M[u[0], C[:, 0]], M[u[1], C[:, 1]]], M[u[2], C[:, 2]]]
        return np.flatnonzero(dot == 0)

    lines_through = points_on  # self-dual labelling

    @property
    def lines(self):
        return self.points

    def point_id(self, v) -> int:
        q = self.q
        pid = int(self.vec2pt[(v[0] * q + v[1]) * q + v[2]])
        if pid < 0:
            raise ValueError("zero vector")
        return pid

    line_id = point_id

    def on(self, point: int, line: int) -> bool:
        u, v = self.coords[line], self.coords[point]
        F = self.F
        return F.sum(F.mul(int(a), int(b)) for a, b in zip(u, v)) == 0

    def join(self, a: int, b: int) -> int:
        """The line through two distinct points (cross product)."""
        return self.point_id(self._cross(self.coords[a], self.coords[b]))

    def meet(self, l1: int, l2: int) -> int:
        return self.point_id(self._cross(self.coords[l1], self.coords[l2]))

    def _cross(self, u, v):
        F = self.F
        u = [int(x) for x in u]
        v = [int(x) for x in v]
        return (F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
                F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
                F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])))

    def collinear(self, a: int, b: int, c: int) -> bool:
        return self.on(c, self.join(a, b))

    def apply(self, mat, vecs: np.ndarray) -> np.ndarray:
        """Point ids of mat . v for each row v of vecs (an (m, 3) array)."""
        M, A = self.F.mul_table, self.F.add_table
        q = self.q
        out = []
        for i in range(3):
            r = mat[3 * i: 3 * i + 3]
            out.append(A[A[M[r[0], vecs[:, 0]], M[r[1], vecs[:, 1]]], M[r[2], vecs[:, 2]]])
        return self.vec2pt[(out[0] * q + out[1]) * q + out[2]]

    def point_perm(self, mat) -> np.ndarray:
        return self.apply(mat, self.coords)

    def line_perm_from_points(self, perm: np.ndarray) -> np.ndarray:
        """Induced action on lines: the image of a line is the join of the
        images of two of its points."""
        a, b = self._two_points_per_line()
        pa, pb = self.coords[perm[a]], self.coords[perm[b]]
        F = self.F
        M, A, N = F.mul_table, F.add_table, F.neg_table

        def cr(i, j):
            return A[M[pa[:, i], pb[:, j]], N[M[pa[:, j], pb[:, i]]]]

        q = self.q
        return self.vec2pt[(cr(1, 2) * q + cr(2, 0)) * q + cr(0, 1)]

    def _two_points_per_line(self):
        if not hasattr(self, "_two"):
            pairs = [self.points_on(l)[:2] for l in range(self.n)]
            self._two = (np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs]))
        return self._two


@lru_cache(maxsize=None)
def build_plane(q: int) -> Plane:
    return Plane(q)
