"""Base-category instances: an additive category with an automorphism (1)
and a natural transformation eta: (1) -> Id satisfying eta_{X(1)} = eta_X(1).

Two concrete instances are provided:

* ``ScalarEta(ring, r)``: objects are finite free modules (plain ranks),
  the automorphism (1) is the identity and eta_X = r * Id.
* ``Graded(inner)``: finitely supported Z-graded objects over an inner
  instance; morphisms are families {f_0, f_1, ...} of degree-raising
  components composed by convolution; (1) is the degree shift and
  eta_X = {0, Id, 0, ...}.

``EtaPower(inner, m)`` derives a new instance from an existing one with
(1) replaced by (m) and eta by the m-fold composite eta^m.

Every instance exposes a uniform hom-coordinate API (hom_dim, mor_to_vec,
vec_to_mor) so higher layers can pose morphism-finding questions as plain
linear systems over the coefficient ring.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .matrix import RingMatrix
from .rings import CoeffRing


class BaseInstance:
    """Abstract contract; see module docstring.  All operations are pure."""

    kind: str
    ring: CoeffRing

    # objects ---------------------------------------------------------------
    def zero_obj(self):
        raise NotImplementedError

    def obj_is_zero(self, X) -> bool:
        raise NotImplementedError

    def dsum(self, objs: Sequence):
        raise NotImplementedError

    def shift_obj(self, X, k: int):
        raise NotImplementedError

    # morphisms -------------------------------------------------------------
    def id_mor(self, X):
        raise NotImplementedError

    def zero_mor(self, X, Y):
        raise NotImplementedError

    def compose(self, g, f):
        """g after f."""
        raise NotImplementedError

    def hom_add(self, f, g):
        raise NotImplementedError

    def hom_negate(self, f):
        raise NotImplementedError

    def hom_sub(self, f, g):
        return self.hom_add(f, self.hom_negate(g))

    def mor_eq(self, f, g) -> bool:
        raise NotImplementedError

    def mor_is_zero(self, f) -> bool:
        raise NotImplementedError

    def shift_mor(self, f, k: int):
        raise NotImplementedError

    def eta(self, X):
        """The component eta_X: X(1) -> X."""
        raise NotImplementedError

    def validate_mor(self, f, X, Y) -> bool:
        """True iff f is a well-formed morphism X -> Y of this instance."""
        raise NotImplementedError

    # block assembly --------------------------------------------------------
    def block_mor(self, grid, tgt_objs: Sequence, src_objs: Sequence):
        """Assemble a morphism dsum(src) -> dsum(tgt) from a grid of blocks.

        grid[bi][bj] is a morphism src_objs[bj] -> tgt_objs[bi], or None.
        """
        raise NotImplementedError

    def split_mor(self, f, tgt_objs: Sequence, src_objs: Sequence):
        """Inverse of block_mor: cut f into the grid of blocks."""
        raise NotImplementedError

    # hom coordinates -------------------------------------------------------
    def hom_dim(self, X, Y) -> int:
        raise NotImplementedError

    def mor_to_vec(self, f, X, Y) -> List:
        raise NotImplementedError

    def vec_to_mor(self, vec: Sequence, X, Y):
        raise NotImplementedError

    # serialization ---------------------------------------------------------
    def obj_to_json(self, X):
        raise NotImplementedError

    def obj_from_json(self, d):
        raise NotImplementedError

    def mor_to_json(self, f):
        raise NotImplementedError

    def mor_from_json(self, d, X, Y):
        raise NotImplementedError


def check_eta_coherence(instance: BaseInstance, X) -> bool:
    """eta_{X(1)} = eta_X(1), exactly."""
    lhs = instance.eta(instance.shift_obj(X, 1))
    rhs = instance.shift_mor(instance.eta(X), 1)
    return instance.mor_eq(lhs, rhs)


def check_eta_natural(instance: BaseInstance, f, X, Y) -> bool:
    """eta_Y . f(1) = f . eta_X for f: X -> Y."""
    lhs = instance.compose(instance.eta(Y), instance.shift_mor(f, 1))
    rhs = instance.compose(f, instance.eta(X))
    return instance.mor_eq(lhs, rhs)


# ---------------------------------------------------------------------------
# ScalarEta: free modules, (1) = Id, eta = r * Id
# ---------------------------------------------------------------------------


class ScalarEta(BaseInstance):
    kind = "scalar-eta"

    def __init__(self, ring: CoeffRing, r):
        self.ring = ring
        self.r = ring.canon(r)

    def __eq__(self, other):
        return (
            isinstance(other, ScalarEta) and self.ring == other.ring and self.r == other.r
        )

    def __hash__(self):
        return hash(("scalar-eta", self.ring, self.r))

    def __repr__(self):
        return f"ScalarEta({self.ring}, r={self.ring.elem_to_str(self.r)})"

    # objects: nonnegative ranks
    def zero_obj(self):
        return 0

    def obj_is_zero(self, X):
        return X == 0

    def dsum(self, objs):
        return sum(objs)

    def shift_obj(self, X, k):
        return X

    # morphisms: RingMatrix with rows = target rank, cols = source rank
    def id_mor(self, X):
        return RingMatrix.identity(self.ring, X)

    def zero_mor(self, X, Y):
        return RingMatrix.zero(self.ring, Y, X)

    def compose(self, g, f):
        return g @ f

    def hom_add(self, f, g):
        return f + g

    def hom_negate(self, f):
        return -f

    def mor_eq(self, f, g):
        return f == g

    def mor_is_zero(self, f):
        return f.is_zero()

    def shift_mor(self, f, k):
        return f

    def eta(self, X):
        return RingMatrix.scalar(self.ring, X, self.r)

    def validate_mor(self, f, X, Y):
        return isinstance(f, RingMatrix) and f.ring == self.ring and (f.rows, f.cols) == (Y, X)

    def block_mor(self, grid, tgt_objs, src_objs):
        return RingMatrix.block(self.ring, grid, list(tgt_objs), list(src_objs))

    def split_mor(self, f, tgt_objs, src_objs):
        out = []
        r0 = 0
        for rs in tgt_objs:
            row = []
            c0 = 0
            for cs in src_objs:
                row.append(f.submatrix(r0, r0 + rs, c0, c0 + cs))
                c0 += cs
            out.append(row)
            r0 += rs
        return out

    def hom_dim(self, X, Y):
        return X * Y

    def mor_to_vec(self, f, X, Y):
        return list(f.entries)

    def vec_to_mor(self, vec, X, Y):
        return RingMatrix(self.ring, Y, X, list(vec))

    def obj_to_json(self, X):
        return X

    def obj_from_json(self, d):
        return int(d)

    def mor_to_json(self, f):
        return f.to_json()

    def mor_from_json(self, d, X, Y):
        return RingMatrix.from_json(d)

    def to_json(self):
        return {"kind": self.kind, "ring": self.ring.to_json(), "r": self.ring.elem_to_str(self.r)}


# ---------------------------------------------------------------------------
# Graded: finitely supported Z-graded objects, (1) = degree shift
# ---------------------------------------------------------------------------


class GradedObject:
    """Finitely supported map degree -> positive rank."""

    __slots__ = ("ranks",)

    def __init__(self, ranks: Dict[int, int]):
        clean = {}
        for j, r in ranks.items():
            if r < 0:
                raise ValueError("negative rank")
            if r:
                clean[int(j)] = int(r)
        self.ranks = clean

    def rank(self, j: int) -> int:
        return self.ranks.get(j, 0)

    @property
    def support(self) -> List[int]:
        return sorted(self.ranks)

    def is_zero(self) -> bool:
        return not self.ranks

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def __eq__(self, other):
        return isinstance(other, GradedObject) and self.ranks == other.ranks

    def __hash__(self):
        return hash(tuple(sorted(self.ranks.items())))

    def __repr__(self):
        return f"GradedObject({dict(sorted(self.ranks.items()))})"

    def to_json(self):
        return {"ranks": {str(j): r for j, r in sorted(self.ranks.items())}}

    @staticmethod
    def from_json(d) -> "GradedObject":
        return GradedObject({int(j): r for j, r in d["ranks"].items()})


class GradedMorphism:
    """Family {f_n^j: X^j -> Y^{j+n}, n >= 0}; only nonzero components stored."""

    __slots__ = ("source", "target", "components")

    def __init__(
        self,
        source: GradedObject,
        target: GradedObject,
        components: Dict[Tuple[int, int], RingMatrix],
    ):
        self.source = source
        self.target = target
        clean = {}
        for (n, j), m in components.items():
            if n < 0:
                raise ValueError("component degree must be >= 0")
            if (m.rows, m.cols) != (target.rank(j + n), source.rank(j)):
                raise ValueError(
                    f"component ({n},{j}) has shape {m.rows}x{m.cols}, "
                    f"expected {target.rank(j + n)}x{source.rank(j)}"
                )
            if not m.is_zero():
                clean[(n, j)] = m
        self.components = clean

    def component(self, n: int, j: int, ring: CoeffRing) -> RingMatrix:
        m = self.components.get((n, j))
        if m is None:
            return RingMatrix.zero(ring, self.target.rank(j + n), self.source.rank(j))
        return m

    def __eq__(self, other):
        return (
            isinstance(other, GradedMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __repr__(self):
        keys = sorted(self.components)
        return f"GradedMorphism({self.source}->{self.target}, components at {keys})"


class Graded(BaseInstance):
    kind = "graded"

    def __init__(self, inner: BaseInstance):
        if isinstance(inner, Graded):
            raise ValueError("graded instances do not nest")
        self.inner = inner
        self.ring = inner.ring

    def __eq__(self, other):
        return isinstance(other, Graded) and self.inner == other.inner

    def __hash__(self):
        return hash(("graded", self.inner))

    def __repr__(self):
        return f"Graded({self.inner!r})"

    # objects
    def zero_obj(self):
        return GradedObject({})

    def obj_is_zero(self, X):
        return X.is_zero()

    def dsum(self, objs):
        ranks: Dict[int, int] = {}
        for X in objs:
            for j, r in X.ranks.items():
                ranks[j] = ranks.get(j, 0) + r
        return GradedObject(ranks)

    def shift_obj(self, X, k):
        # (X(k))^j = X^{j+k}
        return GradedObject({j - k: r for j, r in X.ranks.items()})

    # morphisms
    def id_mor(self, X):
        comps = {(0, j): RingMatrix.identity(self.ring, r) for j, r in X.ranks.items()}
        return GradedMorphism(X, X, comps)

    def zero_mor(self, X, Y):
        return GradedMorphism(X, Y, {})

    def _slots(self, X: GradedObject, Y: GradedObject) -> List[Tuple[int, int]]:
        """All (n, j) with X^j and Y^{j+n} both nonzero, n >= 0, sorted."""
        out = []
        for j in X.support:
            for t in Y.support:
                if t >= j:
                    out.append((t - j, j))
        out.sort()
        return out

    def compose(self, g, f):
        if f.target != g.source:
            raise ValueError("object mismatch in graded composition")
        ring = self.ring
        comps: Dict[Tuple[int, int], RingMatrix] = {}
        # (g f)_n^j = sum_{p+q=n} g_p^{j+q} f_q^j
        for (q, j), fm in f.components.items():
            for (p, jq), gm in g.components.items():
                if jq != j + q:
                    continue
                key = (p + q, j)
                prod = gm @ fm
                if key in comps:
                    comps[key] = comps[key] + prod
                else:
                    comps[key] = prod
        return GradedMorphism(f.source, g.target, comps)

    def hom_add(self, f, g):
        if f.source != g.source or f.target != g.target:
            raise ValueError("object mismatch in graded addition")
        comps = dict(f.components)
        for key, m in g.components.items():
            comps[key] = comps[key] + m if key in comps else m
        return GradedMorphism(f.source, f.target, comps)

    def hom_negate(self, f):
        return GradedMorphism(f.source, f.target, {k: -m for k, m in f.components.items()})

    def mor_eq(self, f, g):
        return f == g

    def mor_is_zero(self, f):
        return not f.components

    def shift_mor(self, f, k):
        # (f(k))_n^j = f_n^{j+k}
        return GradedMorphism(
            self.shift_obj(f.source, k),
            self.shift_obj(f.target, k),
            {(n, j - k): m for (n, j), m in f.components.items()},
        )

    def eta(self, X):
        # eta_X: X(1) -> X with eta_1^j = Id: (X(1))^j = X^{j+1} -> X^{j+1}
        src = self.shift_obj(X, 1)
        comps = {
            (1, j - 1): RingMatrix.identity(self.ring, r) for j, r in X.ranks.items()
        }
        return GradedMorphism(src, X, comps)

    def validate_mor(self, f, X, Y):
        if not isinstance(f, GradedMorphism) or f.source != X or f.target != Y:
            return False
        try:
            GradedMorphism(X, Y, f.components)
        except ValueError:
            return False
        return True

    def block_mor(self, grid, tgt_objs, src_objs):
        src = self.dsum(src_objs)
        tgt = self.dsum(tgt_objs)
        comps: Dict[Tuple[int, int], RingMatrix] = {}
        for n, j in self._slots(src, tgt):
            rows = [Y.rank(j + n) for Y in tgt_objs]
            cols = [X.rank(j) for X in src_objs]
            g = [
                [
                    grid[bi][bj].component(n, j, self.ring)
                    if grid[bi][bj] is not None and rows[bi] and cols[bj]
                    else None
                    for bj in range(len(src_objs))
                ]
                for bi in range(len(tgt_objs))
            ]
            comps[(n, j)] = RingMatrix.block(self.ring, g, rows, cols)
        return GradedMorphism(src, tgt, comps)

    def split_mor(self, f, tgt_objs, src_objs):
        grid = [
            [dict() for _ in src_objs] for _ in tgt_objs
        ]  # type: List[List[Dict[Tuple[int,int], RingMatrix]]]
        for (n, j), m in f.components.items():
            r0 = 0
            for bi, Y in enumerate(tgt_objs):
                rs = Y.rank(j + n)
                c0 = 0
                for bj, X in enumerate(src_objs):
                    cs = X.rank(j)
                    if rs and cs:
                        grid[bi][bj][(n, j)] = m.submatrix(r0, r0 + rs, c0, c0 + cs)
                    c0 += cs
                r0 += rs
        return [
            [
                GradedMorphism(src_objs[bj], tgt_objs[bi], grid[bi][bj])
                for bj in range(len(src_objs))
            ]
            for bi in range(len(tgt_objs))
        ]

    def hom_dim(self, X, Y):
        return sum(X.rank(j) * Y.rank(j + n) for n, j in self._slots(X, Y))

    def mor_to_vec(self, f, X, Y):
        vec: List = []
        for n, j in self._slots(X, Y):
            vec.extend(f.component(n, j, self.ring).entries)
        return vec

    def vec_to_mor(self, vec, X, Y):
        comps = {}
        pos = 0
        for n, j in self._slots(X, Y):
            r, c = Y.rank(j + n), X.rank(j)
            comps[(n, j)] = RingMatrix(self.ring, r, c, list(vec[pos : pos + r * c]))
            pos += r * c
        if pos != len(vec):
            raise ValueError("coordinate vector has wrong length")
        return GradedMorphism(X, Y, comps)

    def obj_to_json(self, X):
        return X.to_json()

    def obj_from_json(self, d):
        return GradedObject.from_json(d)

    def mor_to_json(self, f):
        return {
            "components": [
                {"n": n, "j": j, "matrix": m.to_json()}
                for (n, j), m in sorted(f.components.items())
            ]
        }

    def mor_from_json(self, d, X, Y):
        comps = {
            (c["n"], c["j"]): RingMatrix.from_json(c["matrix"]) for c in d["components"]
        }
        return GradedMorphism(X, Y, comps)

    def to_json(self):
        return {"kind": self.kind, "inner": self.inner.to_json()}


# ---------------------------------------------------------------------------
# EtaPower: same category, (1) replaced by (m), eta by eta^m
# ---------------------------------------------------------------------------


class EtaPower(BaseInstance):
    """Derived instance with shift (m) and eta^m_X = eta_X eta_{X(1)} ... eta_{X(m-1)}."""

    kind = "eta-power"

    def __init__(self, inner: BaseInstance, m: int):
        if m < 1:
            raise ValueError("eta power must be >= 1")
        self.inner = inner
        self.m = m
        self.ring = inner.ring

    def __eq__(self, other):
        return isinstance(other, EtaPower) and self.inner == other.inner and self.m == other.m

    def __hash__(self):
        return hash(("eta-power", self.inner, self.m))

    def __repr__(self):
        return f"EtaPower({self.inner!r}, m={self.m})"

    def shift_obj(self, X, k):
        return self.inner.shift_obj(X, self.m * k)

    def shift_mor(self, f, k):
        return self.inner.shift_mor(f, self.m * k)

    def eta(self, X):
        inner = self.inner
        f = inner.eta(inner.shift_obj(X, self.m - 1))
        for i in range(self.m - 2, -1, -1):
            f = inner.compose(inner.eta(inner.shift_obj(X, i)), f)
        return f

    def to_json(self):
        return {"kind": self.kind, "m": self.m, "inner": self.inner.to_json()}

    _DELEGATED = (
        "zero_obj", "obj_is_zero", "dsum", "id_mor", "zero_mor", "compose",
        "hom_add", "hom_negate", "mor_eq", "mor_is_zero", "validate_mor",
        "block_mor", "split_mor", "hom_dim", "mor_to_vec", "vec_to_mor",
        "obj_to_json", "obj_from_json", "mor_to_json", "mor_from_json",
    )

    def __getattribute__(self, name):
        # everything not shift/eta related is the inner instance verbatim
        if name in EtaPower._DELEGATED:
            return getattr(object.__getattribute__(self, "inner"), name)
        return object.__getattribute__(self, name)

    def __getattr__(self, name):
        return getattr(object.__getattribute__(self, "inner"), name)


def instance_from_json(d) -> BaseInstance:
    kind = d["kind"]
    if kind == "scalar-eta":
        ring = CoeffRing.from_json(d["ring"])
        return ScalarEta(ring, ring.elem_from_str(d["r"]))
    if kind == "graded":
        return Graded(instance_from_json(d["inner"]))
    if kind == "eta-power":
        return EtaPower(instance_from_json(d["inner"]), d["m"])
    raise ValueError(f"unknown instance kind {kind!r}")
