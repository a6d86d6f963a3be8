"""PGL(2,q) and PSL(2,q) acting on the projective line.

Projective points are integers 0..q: the point a < q is the span of the row
vector (1, a) and the point q is infinity, the span of (0, 1).  The action is
on the right, point * matrix.

A group element is a 4-tuple (a, b, c, d) of GF(q) indices read row-major,
normalized so that the first nonzero entry equals 1; two matrices represent
the same element of PGL(2,q) exactly when their normal forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidConstraintError
from .fields import FieldCtx

Element = tuple[int, int, int, int]


@dataclass(frozen=True)
class ClassLabel:
    """Conjugacy class of PGL(2,q).

    kind is one of identity, unipotent, split, split_minus_one, nonsplit,
    nonsplit_i.  For split classes param is the canonical exponent e with
    eigenvalue ratio gen^e, minimized over {e, q-1-e}; for nonsplit classes
    it is the canonical exponent of the eigenvalue class in F_(q^2)*/F_q*,
    minimized over inversion.
    """

    kind: str
    param: int | None = None


IDENTITY_LABEL = ClassLabel("identity")
UNIPOTENT_LABEL = ClassLabel("unipotent")
SPLIT_MINUS_ONE_LABEL = ClassLabel("split_minus_one")
NONSPLIT_I_LABEL = ClassLabel("nonsplit_i")


class PGL2:
    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.q = ctx.q
        self.infinity = ctx.q
        self.points = range(ctx.q + 1)
        self.identity: Element = (1, 0, 0, 1)
        self._classify_cache: dict[Element, ClassLabel] = {}
        self._elements_pgl: list[Element] | None = None
        self._elements_psl: list[Element] | None = None

    # -- element plumbing ---------------------------------------------------

    def normalize(self, m: tuple[int, int, int, int]) -> Element:
        for entry in m:
            if entry:
                if entry == 1:
                    return tuple(m)
                s = self.ctx.inv(entry)
                mul = self.ctx.mul
                return (mul(m[0], s), mul(m[1], s), mul(m[2], s), mul(m[3], s))
        raise ValueError("zero matrix")

    def make(self, a: int, b: int, c: int, d: int) -> Element:
        g = self.normalize((a, b, c, d))
        if self.det(g) == 0:
            raise ValueError("singular matrix")
        return g

    def det(self, g: Element) -> int:
        ctx = self.ctx
        return ctx.sub(ctx.mul(g[0], g[3]), ctx.mul(g[1], g[2]))

    def mul(self, g: Element, h: Element) -> Element:
        m, a = self.ctx.mul_table, self.ctx.add_table
        g0, g1, g2, g3 = g
        h0, h1, h2, h3 = h
        return self.normalize(
            (
                a[m[g0][h0]][m[g1][h2]],
                a[m[g0][h1]][m[g1][h3]],
                a[m[g2][h0]][m[g3][h2]],
                a[m[g2][h1]][m[g3][h3]],
            )
        )

    def inv(self, g: Element) -> Element:
        neg = self.ctx.neg
        return self.normalize((g[3], neg(g[1]), neg(g[2]), g[0]))

    def act(self, pt: int, g: Element) -> int:
        """Right action of g on a projective point."""
        ctx = self.ctx
        if pt == self.infinity:
            x, y = g[2], g[3]
        else:
            x = ctx.add(g[0], ctx.mul(pt, g[2]))
            y = ctx.add(g[1], ctx.mul(pt, g[3]))
        if x == 0:
            return self.infinity
        return ctx.mul(y, ctx.inv(x))

    def fixed_points(self, g: Element) -> list[int]:
        return [pt for pt in self.points if self.act(pt, g) == pt]

    def in_psl(self, g: Element) -> bool:
        """Determinants of normalized representatives differ by squares, so
        membership in PSL(2,q) is: det of the normal form is a square."""
        return self.ctx.is_square(self.det(g))

    # -- enumeration ----------------------------------------------------------

    def elements(self, which: str = "pgl") -> list[Element]:
        """All elements in a fixed deterministic order; |PGL| = q^3 - q."""
        if self._elements_pgl is None:
            q = self.q
            ctx = self.ctx
            out: list[Element] = []
            # normal forms: a = 1 with d != b*c, or a = 0, b = 1, c != 0
            for b in range(q):
                for c in range(q):
                    bc = ctx.mul(b, c)
                    out.extend((1, b, c, d) for d in range(q) if d != bc)
            for c in range(1, q):
                out.extend((0, 1, c, d) for d in range(q))
            self._elements_pgl = out
            self._elements_psl = [g for g in out if self.in_psl(g)]
        if which == "pgl":
            return self._elements_pgl
        if which == "psl":
            return self._elements_psl
        raise ValueError(f"unknown group selector {which!r}")

    def derangements(self) -> list[Element]:
        """Fixed-point-free elements of PSL(2,q), in enumeration order."""
        return [g for g in self.elements("psl") if self.is_derangement(g)]

    # -- conjugacy ------------------------------------------------------------

    def classify(self, g: Element) -> ClassLabel:
        label = self._classify_cache.get(g)
        if label is None:
            label = self._classify(g)
            self._classify_cache[g] = label
        return label

    def _classify(self, g: Element) -> ClassLabel:
        ctx = self.ctx
        q = self.q
        if g == self.identity:
            return IDENTITY_LABEL
        tr = ctx.add(g[0], g[3])
        det = self.det(g)
        disc = ctx.sub(ctx.mul(tr, tr), ctx.mul(ctx.embed_int(4), det))
        if disc == 0:
            return UNIPOTENT_LABEL
        if ctx.is_square(disc):
            s = ctx.sqrt(disc)
            half = ctx.inv(ctx.embed_int(2))
            x1 = ctx.mul(ctx.add(tr, s), half)
            x2 = ctx.mul(ctx.sub(tr, s), half)
            ratio = ctx.mul(x1, ctx.inv(x2))
            e = ctx.log[ratio]
            if 2 * e == q - 1:
                return SPLIT_MINUS_ONE_LABEL
            return ClassLabel("split", min(e, q - 1 - e))
        # eigenvalues in GF(q^2) \ GF(q); disc is a nonsquare, so its
        # discrete log in GF(q^2)* is even and a square root exists there
        j_disc = ctx.log2[disc]
        root = ctx.exp2[j_disc // 2]
        half2 = ctx.q2_inv(ctx.embed_int(2))
        r = ctx.q2_mul(ctx.q2_add(tr, root), half2)
        j = ctx.log2[r] % (q + 1)
        if 2 * j == q + 1:
            return NONSPLIT_I_LABEL
        return ClassLabel("nonsplit", min(j, q + 1 - j))

    def is_derangement(self, g: Element) -> bool:
        return self.classify(g).kind in ("nonsplit", "nonsplit_i")

    def class_representative(self, label: ClassLabel) -> Element:
        ctx = self.ctx
        if label.kind == "identity":
            return self.identity
        if label.kind == "unipotent":
            return (1, 1, 0, 1)
        if label.kind == "split":
            return self.make(ctx.exp[label.param], 0, 0, 1)
        if label.kind == "split_minus_one":
            return self.make(ctx.neg(1), 0, 0, 1)
        if label.kind in ("nonsplit", "nonsplit_i"):
            j = (self.q + 1) // 2 if label.kind == "nonsplit_i" else label.param
            r = ctx.exp2[j]
            return self.make(0, 1, ctx.neg(ctx.q2_norm(r)), ctx.q2_trace(r))
        raise ValueError(f"unknown label {label!r}")

    def class_size(self, label: ClassLabel) -> int:
        q = self.q
        return {
            "identity": 1,
            "unipotent": q * q - 1,
            "split": q * (q + 1),
            "split_minus_one": q * (q + 1) // 2,
            "nonsplit": q * (q - 1),
            "nonsplit_i": q * (q - 1) // 2,
        }[label.kind]

    def class_labels(self) -> list[ClassLabel]:
        """Canonical class order: identity, unipotent, split_minus_one, split
        ascending, nonsplit_i, nonsplit ascending."""
        q = self.q
        labels = [IDENTITY_LABEL, UNIPOTENT_LABEL, SPLIT_MINUS_ONE_LABEL]
        labels += [ClassLabel("split", e) for e in range(1, (q - 1) // 2)]
        labels.append(NONSPLIT_I_LABEL)
        labels += [ClassLabel("nonsplit", j) for j in range(1, (q + 1) // 2)]
        return labels

    # -- constrained elements ---------------------------------------------------

    def _point_vector(self, pt: int) -> tuple[int, int]:
        return (0, 1) if pt == self.infinity else (1, pt)

    def elements_with_constraints(self, pairs, which: str = "pgl") -> list[Element]:
        """All elements sending src -> tgt for each (src, tgt) pair.

        One to three constraints; sources must be pairwise distinct, likewise
        targets.  With two constraints PGL(2,q) has exactly q-1 solutions and
        with three exactly one (sharp 3-transitivity).
        """
        pairs = list(pairs)
        if not 1 <= len(pairs) <= 3:
            raise InvalidConstraintError("need 1 to 3 constraints")
        if len({s for s, _ in pairs}) != len(pairs) or len({t for _, t in pairs}) != len(pairs):
            raise InvalidConstraintError("repeated source or target point")
        ctx = self.ctx
        rows = []
        for src, tgt in pairs:
            v0, v1 = self._point_vector(src)
            w0, w1 = self._point_vector(tgt)
            # (v . M) proportional to w, one linear condition on (a, b, c, d)
            rows.append(
                (
                    ctx.mul(v0, w1),
                    ctx.neg(ctx.mul(v0, w0)),
                    ctx.mul(v1, w1),
                    ctx.neg(ctx.mul(v1, w0)),
                )
            )
        basis = self._nullspace4(rows)
        out = []
        seen = set()
        for vec in self._projective_combinations(basis):
            if self.det(vec) == 0:
                continue
            g = self.normalize(vec)
            if g in seen:
                continue
            seen.add(g)
            if which == "pgl" or self.in_psl(g):
                out.append(g)
        out.sort()
        return out

    def _nullspace4(self, rows: list[tuple[int, int, int, int]]) -> list[Element]:
        ctx = self.ctx
        mat = [list(r) for r in rows]
        pivots = []
        rank = 0
        for col in range(4):
            piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
            if piv is None:
                continue
            mat[rank], mat[piv] = mat[piv], mat[rank]
            inv = ctx.inv(mat[rank][col])
            mat[rank] = [ctx.mul(v, inv) for v in mat[rank]]
            for i in range(len(mat)):
                if i != rank and mat[i][col]:
                    f = mat[i][col]
                    mat[i] = [ctx.sub(v, ctx.mul(f, w)) for v, w in zip(mat[i], mat[rank])]
            pivots.append(col)
            rank += 1
        free = [c for c in range(4) if c not in pivots]
        basis = []
        for fc in free:
            vec = [0, 0, 0, 0]
            vec[fc] = 1
            for r, pc in enumerate(pivots):
                vec[pc] = ctx.neg(mat[r][fc])
            basis.append(tuple(vec))
        return basis

    def _projective_combinations(self, basis: list[Element]):
        ctx = self.ctx
        q = self.q

        def combine(coeffs):
            acc = [0, 0, 0, 0]
            for c, vec in zip(coeffs, basis):
                if c:
                    for i in range(4):
                        acc[i] = ctx.add(acc[i], ctx.mul(c, vec[i]))
            return tuple(acc)

        k = len(basis)
        if k == 0:
            return
        if k == 1:
            yield basis[0]
        elif k == 2:
            for t in range(q):
                yield combine((1, t))
            yield basis[1]
        else:
            for s in range(q):
                for t in range(q):
                    yield combine((1, s, t))
            for t in range(q):
                yield combine((0, 1, t))
            yield basis[-1]

    def swap_one_infinity(self) -> Element:
        """The unique element fixing 0 and exchanging 1 with infinity.

        On finite points b not in {0, 1} it acts as b -> b / (b - 1), and it
        is an involution.
        """
        (g,) = self.elements_with_constraints(
            [(0, 0), (1, self.infinity), (self.infinity, 1)]
        )
        return g
