"""Graded centralizer of a nilpotent Jordan form.

Fix a nilpotent e with Jordan blocks of lengths l_1 >= ... >= l_k, block
generators w_1, ..., w_k, and write d_i = l_i - 1.  The centralizer of e in
gl_n has the classical basis xi_i^{j,s} determined by

    xi_i^{j,s} . w_i = e^s . w_j,      xi_i^{j,s} . w_t = 0  (t != i),

with s restricted to  max(d_j - d_i, 0) <= s <= d_j;  outside that range the
symbol denotes 0.  Composition gives the commutator rule

    [xi_i^{j,s}, xi_p^{q,t}] = delta(q,i) xi_p^{j,s+t} - delta(j,p) xi_i^{q,s+t}.

When the blocks carry labels t(i) (the generator eigenvalue residues of a
labeled partition), each basis element is homogeneous of degree
s + t(j) - t(i) mod m, which splits the centralizer into its graded pieces.
Degree 0 is the stabilizer subalgebra acting on the degree m-1 piece; the
structure constants of that action feed the index computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orbits import LabeledPartition


@dataclass(frozen=True, order=True)
class XiElement:
    """Basis element xi_i^{j,s}; i, j are 1-based block indices."""

    i: int
    j: int
    s: int

    def to_text(self) -> str:
        return f"xi_{self.i}^{{{self.j},{self.s}}}"

    def __str__(self) -> str:
        return self.to_text()


class GradedCentralizer:
    """Centralizer basis of a labeled partition, bucketed by degree mod m."""

    __slots__ = ("partition", "m", "lengths", "labels", "by_degree", "_index")

    def __init__(self, partition: LabeledPartition, m: int):
        if any(t >= m for _, t in partition.blocks):
            raise ValueError("block label out of range for the given order")
        self.partition = partition
        self.m = m
        self.lengths = tuple(l for l, _ in partition.blocks)
        self.labels = tuple(t for _, t in partition.blocks)
        buckets: list[list[XiElement]] = [[] for _ in range(m)]
        k = len(self.lengths)
        d = [l - 1 for l in self.lengths]
        t = self.labels
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                lo = max(d[j - 1] - d[i - 1], 0)
                for s in range(lo, d[j - 1] + 1):
                    deg = (s + t[j - 1] - t[i - 1]) % m
                    buckets[deg].append(XiElement(i, j, s))
        self.by_degree = tuple(tuple(b) for b in buckets)
        self._index = {
            x: (deg, pos)
            for deg, bucket in enumerate(self.by_degree)
            for pos, x in enumerate(bucket)
        }

    @property
    def dim(self) -> int:
        return len(self._index)

    def dims_by_degree(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.by_degree)

    def degree(self, x: XiElement) -> int:
        return (x.s + self.labels[x.j - 1] - self.labels[x.i - 1]) % self.m

    def in_range(self, i: int, j: int, s: int) -> bool:
        di = self.lengths[i - 1] - 1
        dj = self.lengths[j - 1] - 1
        return max(dj - di, 0) <= s <= dj

    def element(self, i: int, j: int, s: int) -> XiElement:
        x = XiElement(i, j, s)
        if x not in self._index:
            raise ValueError(f"{x.to_text()} violates the s-range for these blocks")
        return x

    def bracket(self, x: XiElement, y: XiElement) -> dict[XiElement, int]:
        """Commutator [x, y] as a signed combination of basis elements.

        Terms whose s-index leaves the allowed range are dropped, matching
        the convention that out-of-range symbols are zero.
        """
        out: dict[XiElement, int] = {}
        s = x.s + y.s
        if y.j == x.i and self.in_range(y.i, x.j, s):
            z = XiElement(y.i, x.j, s)
            out[z] = out.get(z, 0) + 1
        if x.j == y.i and self.in_range(x.i, y.j, s):
            z = XiElement(x.i, y.j, s)
            v = out.get(z, 0) - 1
            if v:
                out[z] = v
            else:
                out.pop(z, None)
        return out

    def action_structure_constants(self) -> dict[tuple[int, int], dict[int, int]]:
        """Brackets of the degree-0 basis against the degree-(m-1) basis.

        Returns N with N[(i, j)][k] = coefficient of v_k in [x_i, v_j],
        where x runs over ``by_degree[0]`` and v over ``by_degree[m-1]``.
        Grading forces every bracket back into degree m-1; anything else is
        a bug, not an input error.
        """
        acting = self.by_degree[0]
        module = self.by_degree[self.m - 1]
        col = {v: k for k, v in enumerate(module)}
        tensor: dict[tuple[int, int], dict[int, int]] = {}
        for i, x in enumerate(acting):
            for j, v in enumerate(module):
                terms = self.bracket(x, v)
                if not terms:
                    continue
                row: dict[int, int] = {}
                for z, c in terms.items():
                    k = col.get(z)
                    if k is None:
                        raise RuntimeError(
                            f"grading violation: [{x}, {v}] contains {z} "
                            f"of degree {self.degree(z)}"
                        )
                    row[k] = c
                tensor[(i, j)] = row
        return tensor

    def describe(self) -> str:
        lines = [f"blocks {self.partition.to_text()}  (order {self.m}, dim {self.dim})"]
        for deg, bucket in enumerate(self.by_degree):
            names = " ".join(x.to_text() for x in bucket)
            lines.append(f"  degree {deg}: [{len(bucket)}] {names}")
        return "\n".join(lines)


def build_centralizer(partition: LabeledPartition, m: int) -> GradedCentralizer:
    """Construct the graded centralizer basis for the given blocks."""
    return GradedCentralizer(partition, m)
