"""Structure constant tables for finite-dimensional Lie algebras over Q."""

from __future__ import annotations

from fractions import Fraction

from .linalg import RatMatrix


class StructureTable:
    """Bracket table [b_i, b_j] = sum_k c[(i,j,k)] b_k, stored for i < j only."""

    __slots__ = ("names", "c")

    def __init__(self, names, c):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        n = len(self.names)
        clean = {}
        for (i, j, k), val in c.items():
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise ValueError(f"index out of range: {(i, j, k)}")
            if i >= j:
                raise ValueError(f"structure constants must be stored with i < j: {(i, j, k)}")
            val = Fraction(val)
            if val:
                clean[(i, j, k)] = val
        self.c = clean

    @property
    def dim(self) -> int:
        return len(self.names)

    @classmethod
    def from_bracket_fn(cls, names, fn) -> "StructureTable":
        """Build from fn(i, j) -> coefficient vector of [b_i, b_j], called for i < j."""
        names = tuple(names)
        c = {}
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                vec = fn(i, j)
                for k, val in enumerate(vec):
                    if val:
                        c[(i, j, k)] = Fraction(val)
        return cls(names, c)

    def bracket_vector(self, i: int, j: int) -> list:
        """[b_i, b_j] as a dense coefficient vector (antisymmetry applied for i >= j)."""
        n = self.dim
        out = [Fraction(0)] * n
        if i == j:
            return out
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for (a, b, k), val in self.c.items():
            if a == i and b == j:
                out[k] = sign * val
        return out

    def bracket_map(self, i: int, j: int) -> dict:
        """[b_i, b_j] as a sparse k -> coefficient mapping."""
        if i == j:
            return {}
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        return {k: sign * v for (a, b, k), v in self.c.items() if a == i and b == j}

    def ad_matrix(self, i: int) -> RatMatrix:
        """Matrix of ad(b_i) acting on column vectors in the table basis."""
        cols = [self.bracket_vector(i, j) for j in range(self.dim)]
        return RatMatrix.from_rows([[cols[j][k] for j in range(self.dim)] for k in range(self.dim)])

    def bracket_of_vectors(self, u, v) -> list:
        """Bilinear extension of the table bracket to coefficient vectors."""
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                if i == j:
                    continue
                for k, val in self.bracket_map(i, j).items():
                    out[k] += u[i] * v[j] * val
        return out

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no basis element named {name!r}") from None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StructureTable)
            and self.names == other.names
            and self.c == other.c
        )

    def diff(self, other: "StructureTable") -> list:
        """Entries where the two tables disagree: (i, j, self_map, other_map)."""
        if self.names != other.names:
            raise ValueError("tables have different basis names")
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                a, b = self.bracket_map(i, j), other.bracket_map(i, j)
                if a != b:
                    out.append((i, j, a, b))
        return out

    def __repr__(self) -> str:
        return f"StructureTable(dim={self.dim}, nonzero_pairs={len({(i, j) for (i, j, _) in self.c})})"
