"""Bigraded systems with higher differentials and the totalization pipeline.

A ``GSystem`` is a bigraded family of free modules X^{ij} with higher
differentials d_n subject to convolution relations; two index conventions
are supported and are exchanged by the reindexing ``psi``/``psi_inv``:

* ``CGRA``: d_n: X^{ij} -> X^{i+1,j+n} -- the unfolding of a complex of
  graded objects (degree i is the complex direction, j the grading).
* ``GA``: d_n has bidegree (1-n, n).

``DeltaComplex`` is the weaker input datum: a bigraded family with a strict
differential delta0 in the i direction and a strictly commuting delta1 in
the j direction whose square is only null-homotopic.  ``theta_extend``
completes it to a full GSystem by solving the level-n relations
inductively; ``totalize`` collapses a GSystem to an ordinary complex by
summing the grading; ``phi`` is the composite.  ``eta_null_complete``
grows a two-term homotopy seed into a full eta-homotopy certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .base import Graded, GradedMorphism, GradedObject, ScalarEta
from .complexes import (
    ChainMap,
    Complex,
    HomotopyCertificate,
    cone,
    compose_chain_maps,
    eta_chain_map,
    id_chain_map,
    null_homotopic,
    zero_chain_map,
)
from .matrix import RingMatrix
from .rings import CoeffRing

CGRA = "CgrA"
GA = "GA"

# Mutation knobs (see the suite's sensitivity properties).
# _XI_SIGN scales the degree-n block of a totalized morphism by sign**n;
# the correct value is +1.  _THETA_PARITY selects the sign twist on the
# j-direction differential: "column" means (-1)**j (the implemented
# convention), "total" means (-1)**i (exposed for comparison only).
_XI_SIGN = 1
_THETA_PARITY = "column"


class UnboundedSupport(Exception):
    """Raised when a totalization would need an infinite direct sum."""


@dataclass
class Obstruction:
    """A failed construction step; falsy so callers can branch on it."""

    stage: str
    level: int
    position: Optional[Tuple[int, int]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return False

    def to_json(self):
        return {
            "obstruction": self.stage,
            "level": self.level,
            "position": list(self.position) if self.position else None,
            "detail": self.detail,
        }


# ---------------------------------------------------------------------------
# GSystem / GMorphism
# ---------------------------------------------------------------------------


class GSystem:
    """Bigraded object with higher differentials under a fixed convention."""

    __slots__ = ("ring", "convention", "ranks", "diffs")

    def __init__(
        self,
        ring: CoeffRing,
        ranks: Dict[Tuple[int, int], int],
        diffs: Dict[Tuple[int, int, int], RingMatrix],
        convention: str = CGRA,
    ):
        if convention not in (CGRA, GA):
            raise ValueError(f"unknown convention {convention!r}")
        self.ring = ring
        self.convention = convention
        self.ranks = {
            (int(i), int(j)): int(r) for (i, j), r in ranks.items() if r
        }
        clean: Dict[Tuple[int, int, int], RingMatrix] = {}
        for (n, i, j), m in diffs.items():
            if n < 0:
                raise ValueError("differential level must be >= 0")
            ti, tj = self.target_pos(n, i, j)
            if (m.rows, m.cols) != (self.rank(ti, tj), self.rank(i, j)):
                raise ValueError(
                    f"diff ({n},{i},{j}) has shape {m.rows}x{m.cols}, "
                    f"expected {self.rank(ti, tj)}x{self.rank(i, j)}"
                )
            if not m.is_zero():
                clean[(n, i, j)] = m
        self.diffs = clean

    def target_pos(self, n: int, i: int, j: int) -> Tuple[int, int]:
        if self.convention == CGRA:
            return (i + 1, j + n)
        return (i + 1 - n, j + n)

    def rank(self, i: int, j: int) -> int:
        return self.ranks.get((i, j), 0)

    def diff(self, n: int, i: int, j: int) -> RingMatrix:
        m = self.diffs.get((n, i, j))
        if m is None:
            ti, tj = self.target_pos(n, i, j)
            return RingMatrix.zero(self.ring, self.rank(ti, tj), self.rank(i, j))
        return m

    @property
    def positions(self) -> List[Tuple[int, int]]:
        return sorted(self.ranks)

    def max_level(self) -> int:
        return max((n for (n, _, _) in self.diffs), default=0)

    def is_zero(self) -> bool:
        return not self.ranks

    def __eq__(self, other):
        return (
            isinstance(other, GSystem)
            and self.ring == other.ring
            and self.convention == other.convention
            and self.ranks == other.ranks
            and self.diffs == other.diffs
        )

    def __repr__(self):
        return f"GSystem({self.convention}, positions={self.positions})"

    def to_json(self):
        return {
            "convention": self.convention,
            "ring": self.ring.to_json(),
            "ranks": [
                {"i": i, "j": j, "rank": r} for (i, j), r in sorted(self.ranks.items())
            ],
            "diffs": [
                {"n": n, "i": i, "j": j, "matrix": m.to_json()}
                for (n, i, j), m in sorted(self.diffs.items())
            ],
        }

    @staticmethod
    def from_json(d) -> "GSystem":
        ring = CoeffRing.from_json(d["ring"])
        ranks = {(e["i"], e["j"]): e["rank"] for e in d["ranks"]}
        diffs = {
            (e["n"], e["i"], e["j"]): RingMatrix.from_json(e["matrix"])
            for e in d["diffs"]
        }
        return GSystem(ring, ranks, diffs, d["convention"])


class GMorphism:
    """Morphism of GSystems: components f_n of degree (0,n) (CGRA) / (-n,n) (GA)."""

    __slots__ = ("source", "target", "components")

    def __init__(
        self,
        source: GSystem,
        target: GSystem,
        components: Dict[Tuple[int, int, int], RingMatrix],
    ):
        if source.ring != target.ring or source.convention != target.convention:
            raise ValueError("GMorphism endpoints disagree on ring or convention")
        self.source = source
        self.target = target
        clean: Dict[Tuple[int, int, int], RingMatrix] = {}
        for (n, i, j), m in components.items():
            if n < 0:
                raise ValueError("component level must be >= 0")
            ti, tj = self.comp_target(n, i, j)
            if (m.rows, m.cols) != (target.rank(ti, tj), source.rank(i, j)):
                raise ValueError(
                    f"component ({n},{i},{j}) has shape {m.rows}x{m.cols}, "
                    f"expected {target.rank(ti, tj)}x{source.rank(i, j)}"
                )
            if not m.is_zero():
                clean[(n, i, j)] = m
        self.components = clean

    def comp_target(self, n: int, i: int, j: int) -> Tuple[int, int]:
        if self.source.convention == CGRA:
            return (i, j + n)
        return (i - n, j + n)

    def comp(self, n: int, i: int, j: int) -> RingMatrix:
        m = self.components.get((n, i, j))
        if m is None:
            ti, tj = self.comp_target(n, i, j)
            return RingMatrix.zero(
                self.source.ring, self.target.rank(ti, tj), self.source.rank(i, j)
            )
        return m

    def max_level(self) -> int:
        return max((n for (n, _, _) in self.components), default=0)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return (
            isinstance(other, GMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __repr__(self):
        return f"GMorphism(levels at {sorted(self.components)})"


def validate_gsystem(x: GSystem) -> bool:
    """The convolution relations: sum_{p+q=n} d_p d_q = 0 at every position."""
    top = 2 * x.max_level()
    for n in range(top + 1):
        for (i, j) in x.positions:
            acc = None
            for q in range(n + 1):
                dq = x.diffs.get((q, i, j))
                if dq is None:
                    continue
                mi, mj = x.target_pos(q, i, j)
                dp = x.diffs.get((n - q, mi, mj))
                if dp is None:
                    continue
                term = dp @ dq
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                return False
    return True


def validate_gmorphism(f: GMorphism) -> bool:
    """The intertwining relations: sum f_p d_{X,q} = sum d_{Y,p} f_q levelwise."""
    X, Y = f.source, f.target
    top = f.max_level() + max(X.max_level(), Y.max_level())
    for n in range(top + 1):
        for (i, j) in X.positions:
            acc = None
            for q in range(n + 1):
                dq = X.diffs.get((q, i, j))
                if dq is not None:
                    mi, mj = X.target_pos(q, i, j)
                    fp = f.components.get((n - q, mi, mj))
                    if fp is not None:
                        term = fp @ dq
                        acc = term if acc is None else acc + term
                fq = f.components.get((q, i, j))
                if fq is not None:
                    mi, mj = f.comp_target(q, i, j)
                    dp = Y.diffs.get((n - q, mi, mj))
                    if dp is not None:
                        term = -(dp @ fq)
                        acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                return False
    return True


def gs_identity(x: GSystem) -> GMorphism:
    comps = {
        (0, i, j): RingMatrix.identity(x.ring, r) for (i, j), r in x.ranks.items()
    }
    return GMorphism(x, x, comps)


def gs_compose(g: GMorphism, f: GMorphism) -> GMorphism:
    if f.target != g.source:
        raise ValueError("GMorphisms not composable")
    comps: Dict[Tuple[int, int, int], RingMatrix] = {}
    for (q, i, j), fm in f.components.items():
        mi, mj = f.comp_target(q, i, j)
        for (p, gi, gj), gm in g.components.items():
            if (gi, gj) != (mi, mj):
                continue
            key = (p + q, i, j)
            prod = gm @ fm
            comps[key] = comps[key] + prod if key in comps else prod
    return GMorphism(f.source, g.target, comps)


def gs_add(f: GMorphism, g: GMorphism) -> GMorphism:
    if f.source != g.source or f.target != g.target:
        raise ValueError("GMorphism endpoint mismatch")
    comps = dict(f.components)
    for key, m in g.components.items():
        comps[key] = comps[key] + m if key in comps else m
    return GMorphism(f.source, f.target, comps)


def gs_negate(f: GMorphism) -> GMorphism:
    return GMorphism(f.source, f.target, {k: -m for k, m in f.components.items()})


def gs_auto(x: GSystem, k: int = 1) -> GSystem:
    """The grading shift (k): (X(k))^{ij} = X^{i,j+k} (CGRA only)."""
    if x.convention != CGRA:
        raise ValueError("grading shift is defined in the CgrA convention")
    ranks = {(i, j - k): r for (i, j), r in x.ranks.items()}
    diffs = {(n, i, j - k): m for (n, i, j), m in x.diffs.items()}
    return GSystem(x.ring, ranks, diffs, CGRA)


def gs_eta(x: GSystem) -> GMorphism:
    """eta_X: X(1) -> X with the identity in level 1 (CGRA only)."""
    src = gs_auto(x, 1)
    comps = {
        (1, i, j - 1): RingMatrix.identity(x.ring, r) for (i, j), r in x.ranks.items()
    }
    return GMorphism(src, x, comps)


def shift_gsystem(x: GSystem) -> GSystem:
    """The composite [1](1): reindex by (i+1, j+1) and negate every level."""
    if x.convention != CGRA:
        raise ValueError("shift_gsystem is defined in the CgrA convention")
    ranks = {(i - 1, j - 1): r for (i, j), r in x.ranks.items()}
    diffs = {(n, i - 1, j - 1): -m for (n, i, j), m in x.diffs.items()}
    return GSystem(x.ring, ranks, diffs, CGRA)


# ---------------------------------------------------------------------------
# psi / psi_inv: reindexing between the two conventions
# ---------------------------------------------------------------------------


def psi(x: GSystem) -> GSystem:
    """GA -> CgrA, position (a, j) lands at (a + j, j)."""
    if x.convention != GA:
        raise ValueError("psi expects the GA convention")
    ranks = {(a + j, j): r for (a, j), r in x.ranks.items()}
    diffs = {(n, a + j, j): m for (n, a, j), m in x.diffs.items()}
    return GSystem(x.ring, ranks, diffs, CGRA)


def psi_inv(x: GSystem) -> GSystem:
    """CgrA -> GA, position (i, j) lands at (i - j, j)."""
    if x.convention != CGRA:
        raise ValueError("psi_inv expects the CgrA convention")
    ranks = {(i - j, j): r for (i, j), r in x.ranks.items()}
    diffs = {(n, i - j, j): m for (n, i, j), m in x.diffs.items()}
    return GSystem(x.ring, ranks, diffs, GA)


def psi_mor(f: GMorphism) -> GMorphism:
    return GMorphism(
        psi(f.source),
        psi(f.target),
        {(n, a + j, j): m for (n, a, j), m in f.components.items()},
    )


def psi_inv_mor(f: GMorphism) -> GMorphism:
    return GMorphism(
        psi_inv(f.source),
        psi_inv(f.target),
        {(n, i - j, j): m for (n, i, j), m in f.components.items()},
    )


# ---------------------------------------------------------------------------
# GSystem[CgrA] <-> complex over the Graded instance
# ---------------------------------------------------------------------------


def graded_complex_instance(ring: CoeffRing) -> Graded:
    return Graded(ScalarEta(ring, ring.one()))


def gsystem_to_complex(x: GSystem) -> Complex:
    if x.convention != CGRA:
        raise ValueError("conversion expects the CgrA convention")
    inst = graded_complex_instance(x.ring)
    by_i: Dict[int, Dict[int, int]] = {}
    for (i, j), r in x.ranks.items():
        by_i.setdefault(i, {})[j] = r
    objects = {i: GradedObject(ranks) for i, ranks in by_i.items()}
    diffs: Dict[int, GradedMorphism] = {}
    comp_by_i: Dict[int, Dict[Tuple[int, int], RingMatrix]] = {}
    for (n, i, j), m in x.diffs.items():
        comp_by_i.setdefault(i, {})[(n, j)] = m
    for i, comps in comp_by_i.items():
        src = objects.get(i, GradedObject({}))
        tgt = objects.get(i + 1, GradedObject({}))
        diffs[i] = GradedMorphism(src, tgt, comps)
    return Complex(inst, objects, diffs)


def complex_to_gsystem(c: Complex) -> GSystem:
    inst = c.instance
    if not isinstance(inst, Graded):
        raise ValueError("conversion expects a complex over a Graded instance")
    ranks: Dict[Tuple[int, int], int] = {}
    for i, X in c.objects.items():
        for j, r in X.ranks.items():
            ranks[(i, j)] = r
    diffs: Dict[Tuple[int, int, int], RingMatrix] = {}
    for i, d in c.diffs.items():
        for (n, j), m in d.components.items():
            diffs[(n, i, j)] = m
    return GSystem(inst.ring, ranks, diffs, CGRA)


def gmorphism_to_chain_map(f: GMorphism) -> ChainMap:
    cx = gsystem_to_complex(f.source)
    cy = gsystem_to_complex(f.target)
    comp_by_i: Dict[int, Dict[Tuple[int, int], RingMatrix]] = {}
    for (n, i, j), m in f.components.items():
        comp_by_i.setdefault(i, {})[(n, j)] = m
    comps = {
        i: GradedMorphism(cx.obj(i), cy.obj(i), cs) for i, cs in comp_by_i.items()
    }
    return ChainMap(cx, cy, comps)


def chain_map_to_gmorphism(f: ChainMap) -> GMorphism:
    src = complex_to_gsystem(f.source)
    tgt = complex_to_gsystem(f.target)
    comps: Dict[Tuple[int, int, int], RingMatrix] = {}
    for i, g in f.components.items():
        for (n, j), m in g.components.items():
            comps[(n, i, j)] = m
    return GMorphism(src, tgt, comps)


# ---------------------------------------------------------------------------
# totalization (Xi)
# ---------------------------------------------------------------------------


def xi_obj(X: GradedObject) -> int:
    return X.total_rank()


def xi_mor(f: GradedMorphism, ring: CoeffRing) -> RingMatrix:
    """Collapse a graded morphism to the lower-triangular block matrix."""
    src = f.source.support
    tgt = f.target.support
    rows = [f.target.rank(t) for t in tgt]
    cols = [f.source.rank(j) for j in src]
    grid: List[List[Optional[RingMatrix]]] = []
    for t in tgt:
        row: List[Optional[RingMatrix]] = []
        for j in src:
            if t < j:
                row.append(None)
                continue
            m = f.components.get((t - j, j))
            if m is not None and _XI_SIGN != 1 and (t - j) % 2 == 1:
                m = m.scale(ring.canon(_XI_SIGN))
            row.append(m)
        grid.append(row)
    return RingMatrix.block(ring, grid, rows, cols)


def totalize_complex(c: Complex) -> Complex:
    """Xi applied degreewise to a complex over a Graded instance."""
    inst = c.instance
    if not isinstance(inst, Graded):
        raise ValueError("totalization expects a complex over a Graded instance")
    ring = inst.ring
    tot = ScalarEta(ring, ring.one())
    objects = {i: xi_obj(X) for i, X in c.objects.items()}
    diffs = {}
    for i in c.degree_range():
        d = c.diffs.get(i)
        if d is not None:
            diffs[i] = xi_mor(d, ring)
    return Complex(tot, objects, diffs)


def totalize_chain_map(f: ChainMap) -> ChainMap:
    ring = f.instance.ring
    return ChainMap(
        totalize_complex(f.source),
        totalize_complex(f.target),
        {i: xi_mor(g, ring) for i, g in f.components.items()},
    )


def totalize(x: GSystem) -> Complex:
    if x.convention != CGRA:
        raise ValueError("totalize expects the CgrA convention")
    return totalize_complex(gsystem_to_complex(x))


def totalize_mor(f: GMorphism) -> ChainMap:
    return totalize_chain_map(gmorphism_to_chain_map(f))


def xi_dsum_permutation(
    ring: CoeffRing, parts: List[GradedObject]
) -> RingMatrix:
    """Matrix of the canonical iso  (+)_k Xi(parts[k]) -> Xi((+)_k parts[k]).

    The target interleaves the parts degree by degree; the source
    concatenates the totalizations part by part.
    """
    # column index: (part k, degree j, slot) in source order
    src_order: List[Tuple[int, int, int]] = []
    for k, X in enumerate(parts):
        for j in X.support:
            for s in range(X.rank(j)):
                src_order.append((k, j, s))
    # row index: degree j ascending, then part k, then slot
    tgt_order: List[Tuple[int, int, int]] = []
    degs = sorted({j for X in parts for j in X.support})
    for j in degs:
        for k, X in enumerate(parts):
            for s in range(X.rank(j)):
                tgt_order.append((k, j, s))
    n = len(src_order)
    pos = {key: c for c, key in enumerate(src_order)}
    entries = [ring.zero()] * (n * n)
    one = ring.one()
    for r, key in enumerate(tgt_order):
        entries[r * n + pos[key]] = one
    return RingMatrix(ring, n, n, entries)


def xi_cone_identity(v: GSystem) -> bool:
    """Xi(cone(eta_V)) equals cone(Id_{Xi(V)}) after the canonical reordering.

    The cone interleaves the two graded summands degree by degree before
    totalizing, so the comparison conjugates by the permutation that
    separates them again; every entry comparison is exact.
    """
    cv = gsystem_to_complex(v)
    ring = v.ring
    eta = eta_chain_map(cv)
    lhs = totalize_complex(cone(eta)[0])
    tot = totalize_complex(cv)
    rhs = cone(id_chain_map(tot))[0]
    degs = sorted(set(lhs.objects) | set(rhs.objects))
    perms: Dict[int, RingMatrix] = {}
    for i in degs:
        if lhs.obj(i) != rhs.obj(i):
            return False
        parts = [eta.source.obj(i + 1), cv.obj(i)]  # V^{i+1}(1) then V^i
        p = xi_dsum_permutation(ring, parts)
        if (p.rows, p.cols) != (lhs.obj(i), rhs.obj(i)):
            return False
        perms[i] = p
    for i in degs:
        pn = perms.get(i + 1)
        if pn is None:
            if not lhs.diff(i).is_zero() or not rhs.diff(i).is_zero():
                return False
            continue
        if pn @ rhs.diff(i) != lhs.diff(i) @ perms[i]:
            return False
    return True


# ---------------------------------------------------------------------------
# linear systems whose unknowns are plain matrices
# ---------------------------------------------------------------------------


class MatrixProblem:
    """Affine equations  sum_k sign_k * L_k U_{key_k} R_k = rhs  in matrix unknowns."""

    def __init__(self, ring: CoeffRing):
        self.ring = ring
        self.unknowns: List[Tuple[object, int, int]] = []
        self._idx: Dict[object, int] = {}
        self.equations: List[Tuple[int, int, list, Optional[RingMatrix]]] = []

    def add_unknown(self, key, rows: int, cols: int):
        if key in self._idx:
            raise ValueError(f"duplicate unknown {key!r}")
        self._idx[key] = len(self.unknowns)
        self.unknowns.append((key, rows, cols))

    def add_equation(self, shape: Tuple[int, int], terms, rhs: Optional[RingMatrix] = None):
        """terms: list of (key, left, right, sign); left/right None = identity."""
        for key, _, _, _ in terms:
            if key not in self._idx:
                raise ValueError(f"equation references unknown key {key!r}")
        self.equations.append((shape[0], shape[1], list(terms), rhs))

    def _build(self):
        ring = self.ring
        col_off = []
        total_cols = 0
        for _, r, c in self.unknowns:
            col_off.append(total_cols)
            total_cols += r * c
        row_off = []
        total_rows = 0
        for er, ec, _, _ in self.equations:
            row_off.append(total_rows)
            total_rows += er * ec
        entries = [ring.zero()] * (total_rows * total_cols)
        for ei, (er, ec, terms, _) in enumerate(self.equations):
            r0 = row_off[ei]
            for key, left, right, sign in terms:
                ui = self._idx[key]
                _, ru, cu = self.unknowns[ui]
                c0 = col_off[ui]
                sgn = ring.canon(sign)
                # coefficient of unknown entry (a,b) in equation entry (p,q)
                # is sign * left[p,a] * right[b,q]
                for p in range(er):
                    for a in range(ru):
                        lv = ring.one() if left is None else left[(p, a)]
                        if left is None and p != a:
                            continue
                        if lv == ring.zero():
                            continue
                        for b in range(cu):
                            for q in range(ec):
                                rv = ring.one() if right is None else right[(b, q)]
                                if right is None and b != q:
                                    continue
                                if rv == ring.zero():
                                    continue
                                val = ring.mul(sgn, ring.mul(lv, rv))
                                idx = (r0 + p * ec + q) * total_cols + c0 + a * cu + b
                                entries[idx] = ring.add(entries[idx], val)
        coeffs = RingMatrix(ring, total_rows, total_cols, entries)
        rhs_entries: List = []
        for er, ec, _, rhs in self.equations:
            if rhs is None:
                rhs_entries.extend([ring.zero()] * (er * ec))
            else:
                rhs_entries.extend(rhs.entries)
        rhs_col = RingMatrix(ring, total_rows, 1, rhs_entries)
        return coeffs, rhs_col

    def _unpack(self, vec) -> Dict[object, RingMatrix]:
        out = {}
        pos = 0
        for key, r, c in self.unknowns:
            out[key] = RingMatrix(self.ring, r, c, list(vec[pos : pos + r * c]))
            pos += r * c
        return out

    def solve(self) -> Optional[Dict[object, RingMatrix]]:
        from .linalg import solve_linear_system

        coeffs, rhs = self._build()
        x = solve_linear_system(coeffs, rhs)
        if x is None:
            return None
        return self._unpack(x.column(0))

    def solve_full(self):
        from .linalg import solve_with_kernel

        coeffs, rhs = self._build()
        part, gens = solve_with_kernel(coeffs, rhs)
        sol = None if part is None else self._unpack(part.column(0))
        return sol, [self._unpack(g.column(0)) for g in gens]


# ---------------------------------------------------------------------------
# DeltaComplex and column-wise chain maps
# ---------------------------------------------------------------------------


class DeltaComplex:
    """Bigraded family with a strict i-differential and a commuting j-map.

    delta0^{ij}: X^{ij} -> X^{i+1,j} squares to zero; delta1^{ij}:
    X^{ij} -> X^{i,j+1} commutes strictly with delta0 and its square is
    only required to be null-homotopic with respect to delta0.
    """

    __slots__ = ("ring", "ranks", "delta0", "delta1")

    def __init__(
        self,
        ring: CoeffRing,
        ranks: Dict[Tuple[int, int], int],
        delta0: Dict[Tuple[int, int], RingMatrix],
        delta1: Dict[Tuple[int, int], RingMatrix],
    ):
        self.ring = ring
        self.ranks = {(int(i), int(j)): int(r) for (i, j), r in ranks.items() if r}
        d0: Dict[Tuple[int, int], RingMatrix] = {}
        for (i, j), m in delta0.items():
            if (m.rows, m.cols) != (self.rank(i + 1, j), self.rank(i, j)):
                raise ValueError(f"delta0 at ({i},{j}) has the wrong shape")
            if not m.is_zero():
                d0[(i, j)] = m
        d1: Dict[Tuple[int, int], RingMatrix] = {}
        for (i, j), m in delta1.items():
            if (m.rows, m.cols) != (self.rank(i, j + 1), self.rank(i, j)):
                raise ValueError(f"delta1 at ({i},{j}) has the wrong shape")
            if not m.is_zero():
                d1[(i, j)] = m
        self.delta0 = d0
        self.delta1 = d1

    def rank(self, i: int, j: int) -> int:
        return self.ranks.get((i, j), 0)

    def d0(self, i: int, j: int) -> RingMatrix:
        m = self.delta0.get((i, j))
        if m is None:
            return RingMatrix.zero(self.ring, self.rank(i + 1, j), self.rank(i, j))
        return m

    def d1(self, i: int, j: int) -> RingMatrix:
        m = self.delta1.get((i, j))
        if m is None:
            return RingMatrix.zero(self.ring, self.rank(i, j + 1), self.rank(i, j))
        return m

    @property
    def columns(self) -> List[int]:
        return sorted({j for (_, j) in self.ranks})

    @property
    def positions(self) -> List[Tuple[int, int]]:
        return sorted(self.ranks)

    def is_zero(self) -> bool:
        return not self.ranks

    def column_complex(self, j: int) -> Complex:
        inst = ScalarEta(self.ring, self.ring.one())
        objects = {i: r for (i, jj), r in self.ranks.items() if jj == j}
        diffs = {i: m for (i, jj), m in self.delta0.items() if jj == j}
        return Complex(inst, objects, diffs)

    def delta1_map(self, j: int) -> ChainMap:
        comps = {i: m for (i, jj), m in self.delta1.items() if jj == j}
        return ChainMap(self.column_complex(j), self.column_complex(j + 1), comps)

    def __eq__(self, other):
        return (
            isinstance(other, DeltaComplex)
            and self.ring == other.ring
            and self.ranks == other.ranks
            and self.delta0 == other.delta0
            and self.delta1 == other.delta1
        )

    def __repr__(self):
        return f"DeltaComplex(positions={self.positions})"

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "ranks": [
                {"i": i, "j": j, "rank": r} for (i, j), r in sorted(self.ranks.items())
            ],
            "delta0": [
                {"i": i, "j": j, "matrix": m.to_json()}
                for (i, j), m in sorted(self.delta0.items())
            ],
            "delta1": [
                {"i": i, "j": j, "matrix": m.to_json()}
                for (i, j), m in sorted(self.delta1.items())
            ],
        }

    @staticmethod
    def from_json(d) -> "DeltaComplex":
        ring = CoeffRing.from_json(d["ring"])
        ranks = {(e["i"], e["j"]): e["rank"] for e in d["ranks"]}
        d0 = {(e["i"], e["j"]): RingMatrix.from_json(e["matrix"]) for e in d["delta0"]}
        d1 = {(e["i"], e["j"]): RingMatrix.from_json(e["matrix"]) for e in d["delta1"]}
        return DeltaComplex(ring, ranks, d0, d1)


def validate_delta(x: DeltaComplex) -> bool:
    """delta0^2 = 0, strict commutation, delta1^2 null-homotopic columnwise."""
    for (i, j) in x.positions:
        if not (x.d0(i + 1, j) @ x.d0(i, j)).is_zero():
            return False
        lhs = x.d0(i, j + 1) @ x.d1(i, j)
        rhs = x.d1(i + 1, j) @ x.d0(i, j)
        if lhs != rhs:
            return False
    for j in x.columns:
        sq = compose_chain_maps(x.delta1_map(j + 1), x.delta1_map(j))
        if null_homotopic(sq) is None:
            return False
    return True


class DeltaMap:
    """Column-wise chain map between DeltaComplexes, strict in both directions."""

    __slots__ = ("source", "target", "components")

    def __init__(
        self,
        source: DeltaComplex,
        target: DeltaComplex,
        components: Dict[Tuple[int, int], RingMatrix],
    ):
        if source.ring != target.ring:
            raise ValueError("ring mismatch")
        self.source = source
        self.target = target
        clean: Dict[Tuple[int, int], RingMatrix] = {}
        for (i, j), m in components.items():
            if (m.rows, m.cols) != (target.rank(i, j), source.rank(i, j)):
                raise ValueError(f"component at ({i},{j}) has the wrong shape")
            if not m.is_zero():
                clean[(i, j)] = m
        self.components = clean

    def comp(self, i: int, j: int) -> RingMatrix:
        m = self.components.get((i, j))
        if m is None:
            return RingMatrix.zero(
                self.source.ring, self.target.rank(i, j), self.source.rank(i, j)
            )
        return m

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return (
            isinstance(other, DeltaMap)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )


def validate_delta_map(f: DeltaMap) -> bool:
    X, Y = f.source, f.target
    keys = set(X.positions) | set(f.components)
    for (i, j) in sorted(keys):
        if Y.d0(i, j) @ f.comp(i, j) != f.comp(i + 1, j) @ X.d0(i, j):
            return False
        if Y.d1(i, j) @ f.comp(i, j) != f.comp(i, j + 1) @ X.d1(i, j):
            return False
    return True


def shift_delta(x: DeltaComplex) -> DeltaComplex:
    """[1] in the j direction: ranks (i,j) -> X^{i,j+1}, delta0 negated."""
    ranks = {(i, j - 1): r for (i, j), r in x.ranks.items()}
    d0 = {(i, j - 1): -m for (i, j), m in x.delta0.items()}
    d1 = {(i, j - 1): m for (i, j), m in x.delta1.items()}
    return DeltaComplex(x.ring, ranks, d0, d1)


def cone_delta(f: DeltaMap) -> DeltaComplex:
    """Mapping cone in the j direction: X^{i,j+1} (+) Y^{ij} columnwise.

    delta0 stays block-diagonal (keeping the strict-commutation invariant);
    the sign and the glue component f sit inside delta1.
    """
    X, Y = f.source, f.target
    ring = X.ring
    keys = sorted(
        {(i, j - 1) for (i, j) in X.ranks} | set(Y.ranks)
    )
    ranks = {(i, j): X.rank(i, j + 1) + Y.rank(i, j) for (i, j) in keys}
    d0: Dict[Tuple[int, int], RingMatrix] = {}
    d1: Dict[Tuple[int, int], RingMatrix] = {}
    for (i, j) in keys:
        rows0 = [X.rank(i + 1, j + 1), Y.rank(i + 1, j)]
        cols = [X.rank(i, j + 1), Y.rank(i, j)]
        d0[(i, j)] = RingMatrix.block(
            ring, [[X.d0(i, j + 1), None], [None, Y.d0(i, j)]], rows0, cols
        )
        rows1 = [X.rank(i, j + 2), Y.rank(i, j + 1)]
        d1[(i, j)] = RingMatrix.block(
            ring,
            [[-X.d1(i, j + 1), None], [f.comp(i, j + 1), Y.d1(i, j)]],
            rows1,
            cols,
        )
    return DeltaComplex(ring, ranks, d0, d1)


# ---------------------------------------------------------------------------
# theta: inductive extension of a DeltaComplex to a GSystem
# ---------------------------------------------------------------------------


def _theta_sign(parity: str, i: int, j: int):
    if parity == "column":
        return -1 if j % 2 else 1
    if parity == "total":
        return -1 if i % 2 else 1
    raise ValueError(f"unknown parity {parity!r}")


def theta_extend(x: DeltaComplex, parity: Optional[str] = None):
    """Complete (delta0, delta1) to a full system; Obstruction on failure.

    Level 0 and 1 are fixed by the convention (d_0 the reindexed delta0,
    d_1 the parity-signed reindexed delta1); each level n >= 2 is one
    joint linear solve of  d_0 d_n + d_n d_0 = -sum_{0<p<n} d_p d_{n-p}.
    """
    if parity is None:
        parity = _THETA_PARITY
    ring = x.ring
    ranks = {(r + j, j): rk for (r, j), rk in x.ranks.items()}
    sys = GSystem(ring, ranks, {}, CGRA)
    diffs: Dict[Tuple[int, int, int], RingMatrix] = {}
    for (r, j), m in x.delta0.items():
        diffs[(0, r + j, j)] = m
    for (r, j), m in x.delta1.items():
        s = _theta_sign(parity, r + j, j)
        diffs[(1, r + j, j)] = m if s == 1 else -m

    def dd(n, i, j):
        m = diffs.get((n, i, j))
        if m is None:
            return RingMatrix.zero(ring, sys.rank(i + 1, j + n), sys.rank(i, j))
        return m

    # level 1 is a check, not a solve: d_0 d_1 + d_1 d_0 must vanish
    for (i, j) in sorted(ranks):
        res = dd(0, i + 1, j + 1) @ dd(1, i, j) + dd(1, i + 1, j) @ dd(0, i, j)
        if not res.is_zero():
            return Obstruction(
                "theta-extend", 1, (i, j),
                "level-1 relation fails: the signed j-map does not "
                "anticommute with the i-differential",
            )
    cols = x.columns
    width = (max(cols) - min(cols)) if cols else 0
    for n in range(2, width + 1):
        prob = MatrixProblem(ring)
        slots = [
            (i, j) for (i, j) in sorted(ranks)
            if sys.rank(i, j) and sys.rank(i + 1, j + n)
        ]
        for (i, j) in slots:
            prob.add_unknown((i, j), sys.rank(i + 1, j + n), sys.rank(i, j))
        have = set(slots)
        for (i, j) in sorted(ranks):
            er, ec = sys.rank(i + 2, j + n), sys.rank(i, j)
            if not er or not ec:
                continue
            rhs = RingMatrix.zero(ring, er, ec)
            for p in range(1, n):
                rhs = rhs + (-(dd(p, i + 1, j + n - p) @ dd(n - p, i, j)))
            terms = []
            if (i, j) in have:
                terms.append(((i, j), dd(0, i + 1, j + n), None, 1))
            if (i + 1, j) in have:
                terms.append(((i + 1, j), None, dd(0, i, j), 1))
            if not terms and rhs.is_zero():
                continue
            prob.add_equation((er, ec), terms, rhs)
        sol = prob.solve()
        if sol is None:
            return Obstruction(
                "theta-extend", n, None,
                f"level-{n} correction system is inconsistent",
            )
        for (i, j), m in sol.items():
            if not m.is_zero():
                diffs[(n, i, j)] = m
    out = GSystem(ring, ranks, diffs, CGRA)
    assert validate_gsystem(out)
    return out


def theta_extend_mor(
    alpha: DeltaMap, xhat: GSystem, yhat: GSystem, parity: Optional[str] = None
):
    """Extend a column-wise chain map to a morphism of the extensions.

    Every intertwining equation is linear in the whole family {f_n}, so
    levels are solved cumulatively: step n adds the level-n unknowns and
    equations to one joint system.  The reported obstruction level is the
    first n whose joint system (levels <= n) is inconsistent, which is
    independent of any choice made at lower levels.
    """
    if parity is None:
        parity = _THETA_PARITY
    ring = xhat.ring
    f0: Dict[Tuple[int, int], RingMatrix] = {}
    for (r, j), m in alpha.components.items():
        f0[(r + j, j)] = m

    def f0c(i, j):
        m = f0.get((i, j))
        if m is None:
            return RingMatrix.zero(ring, yhat.rank(i, j), xhat.rank(i, j))
        return m

    # level 0: f_0 must already intertwine the strict differentials
    for (i, j) in xhat.positions:
        res = f0c(i + 1, j) @ xhat.diff(0, i, j) - yhat.diff(0, i, j) @ f0c(i, j)
        if not res.is_zero():
            return Obstruction(
                "theta-extend-mor", 0, (i, j),
                "the column-wise map does not commute with the i-differential",
            )
    comps: Dict[Tuple[int, int, int], RingMatrix] = {
        (0, i, j): m for (i, j), m in f0.items()
    }
    xj = [j for (_, j) in xhat.ranks]
    yj = [j for (_, j) in yhat.ranks]
    if not xj or not yj:
        return GMorphism(xhat, yhat, comps)
    n_max = max(0, max(yj) - min(xj))
    prob = MatrixProblem(ring)
    have = set()
    sol = {}
    for n in range(1, n_max + 1):
        for (i, j) in xhat.positions:
            if yhat.rank(i, j + n):
                prob.add_unknown((n, i, j), yhat.rank(i, j + n), xhat.rank(i, j))
                have.add((n, i, j))
        for (i, j) in xhat.positions:
            er, ec = yhat.rank(i + 1, j + n), xhat.rank(i, j)
            if not er or not ec:
                continue
            # level-n equation: sum_q f_{n-q} dX_q - sum_q dY_{n-q} f_q = 0
            rhs = -(f0c(i + 1, j + n) @ xhat.diff(n, i, j)) + (
                yhat.diff(n, i, j) @ f0c(i, j)
            )
            terms = []
            for q in range(n):  # unknown f_{n-q}, level >= 1
                key = (n - q, i + 1, j + q)
                if key in have:
                    terms.append((key, None, xhat.diff(q, i, j), 1))
            for q in range(1, n + 1):  # unknown f_q on the target side
                key = (q, i, j)
                if key in have:
                    terms.append((key, yhat.diff(n - q, i, j + q), None, -1))
            if not terms and rhs.is_zero():
                continue
            prob.add_equation((er, ec), terms, rhs)
        sol = prob.solve()
        if sol is None:
            return Obstruction(
                "theta-extend-mor", n, None,
                f"the joint component system through level {n} is inconsistent",
            )
    for (n, i, j), m in sol.items():
        if not m.is_zero():
            comps[(n, i, j)] = m
    out = GMorphism(xhat, yhat, comps)
    assert validate_gmorphism(out)
    return out


def theta_cone_system(fhat: GMorphism) -> GSystem:
    """The extension of the cone, given by the block display.

    d_0 is block-diagonal with the shifted source part negated; each
    level n >= 1 carries f_{n-1} in the lower-left corner.  No strict
    sign convention on the cone of DeltaComplexes reproduces this
    system through theta_extend, so the cone extension is defined by
    this display and compared against the honest mapping cone.
    """
    X, Y = fhat.source, fhat.target
    ring = X.ring
    keys = sorted(
        {(i - 1, j - 1) for (i, j) in X.ranks} | set(Y.ranks)
    )
    ranks = {(i, j): X.rank(i + 1, j + 1) + Y.rank(i, j) for (i, j) in keys}
    levels = max(X.max_level(), Y.max_level(), fhat.max_level() + 1)
    diffs: Dict[Tuple[int, int, int], RingMatrix] = {}
    for n in range(levels + 1):
        for (i, j) in keys:
            rows = [X.rank(i + 2, j + n + 1), Y.rank(i + 1, j + n)]
            cols = [X.rank(i + 1, j + 1), Y.rank(i, j)]
            glue = fhat.comp(n - 1, i + 1, j + 1) if n >= 1 else None
            m = RingMatrix.block(
                ring,
                [[-X.diff(n, i + 1, j + 1), None], [glue, Y.diff(n, i, j)]],
                rows,
                cols,
            )
            if not m.is_zero():
                diffs[(n, i, j)] = m
    return GSystem(ring, ranks, diffs, CGRA)


def theta_triangle_check(alpha: DeltaMap, parity: Optional[str] = None):
    """Verify the cone and shift identities for the constructed extensions.

    Returns True, or an Obstruction from a failed extension, or False if
    an identity fails.  The cone identity compares the block display with
    the honest mapping cone of (extension of alpha) . eta; the shift
    identity checks that reindex-and-negate is a valid extension of the
    shifted input.
    """
    X, Y = alpha.source, alpha.target
    xhat = theta_extend(X, parity)
    if isinstance(xhat, Obstruction):
        return xhat
    yhat = theta_extend(Y, parity)
    if isinstance(yhat, Obstruction):
        return yhat
    fhat = theta_extend_mor(alpha, xhat, yhat, parity)
    if isinstance(fhat, Obstruction):
        return fhat
    # cone identity: the display equals the honest cone of fhat . eta
    cone_sys = theta_cone_system(fhat)
    fc = gmorphism_to_chain_map(fhat)
    g = compose_chain_maps(fc, eta_chain_map(fc.source))
    honest = complex_to_gsystem(cone(g)[0])
    if honest != cone_sys:
        return False
    if not validate_gsystem(cone_sys):
        return False
    # the cone system's underlying ranks agree with the cone of the inputs
    cd = cone_delta(alpha)
    if {(r + j, j): rk for (r, j), rk in cd.ranks.items()} != dict(cone_sys.ranks):
        return False
    # shift identity: reindex-and-negate extends the shifted DeltaComplex
    shifted = shift_gsystem(xhat)
    sx = shift_delta(X)
    if parity is None:
        parity = _THETA_PARITY
    if {(r + j, j): rk for (r, j), rk in sx.ranks.items()} != dict(shifted.ranks):
        return False
    for (r, j), rk in sx.ranks.items():
        i = r + j
        if shifted.diff(0, i, j) != sx.d0(r, j):
            return False
        s = _theta_sign(parity, i, j)
        want = sx.d1(r, j) if s == 1 else -sx.d1(r, j)
        if shifted.diff(1, i, j) != want:
            return False
    if not validate_gsystem(shifted):
        return False
    return True


def phi(x: DeltaComplex, parity: Optional[str] = None):
    """totalize . theta_extend; propagates the Obstruction on failure."""
    xhat = theta_extend(x, parity)
    if isinstance(xhat, Obstruction):
        return xhat
    return totalize(xhat)


def phi_mor(alpha: DeltaMap, parity: Optional[str] = None):
    xhat = theta_extend(alpha.source, parity)
    if isinstance(xhat, Obstruction):
        return xhat
    yhat = theta_extend(alpha.target, parity)
    if isinstance(yhat, Obstruction):
        return yhat
    fhat = theta_extend_mor(alpha, xhat, yhat, parity)
    if isinstance(fhat, Obstruction):
        return fhat
    return totalize_mor(fhat)


# ---------------------------------------------------------------------------
# homotopy completion from a two-term seed
# ---------------------------------------------------------------------------


def seed_equations_hold(
    f: GMorphism,
    s0: Dict[Tuple[int, int], RingMatrix],
    s1: Dict[Tuple[int, int], RingMatrix],
) -> bool:
    X, Y = f.source, f.target
    ring = X.ring

    def sv(s, i, j, n):
        m = s.get((i, j))
        if m is None:
            return RingMatrix.zero(ring, Y.rank(i - 1, j + n - 1), X.rank(i, j))
        return m

    for (i, j) in X.positions:
        ra = Y.rank(i, j - 1)
        if ra or X.rank(i, j):
            res = Y.diff(0, i - 1, j - 1) @ sv(s0, i, j, 0) + sv(
                s0, i + 1, j, 0
            ) @ X.diff(0, i, j)
            if not res.is_zero():
                return False
        lhs = f.comp(0, i, j)
        rhs = (
            Y.diff(1, i - 1, j - 1) @ sv(s0, i, j, 0)
            + Y.diff(0, i - 1, j) @ sv(s1, i, j, 1)
            + sv(s0, i + 1, j + 1, 0) @ X.diff(1, i, j)
            + sv(s1, i + 1, j, 1) @ X.diff(0, i, j)
        )
        if lhs != rhs:
            return False
    return True


def find_seed(f: GMorphism):
    """Solve the two seed equations jointly; None when no seed exists."""
    X, Y = f.source, f.target
    ring = X.ring
    prob = MatrixProblem(ring)
    slots0 = [
        (i, j) for (i, j) in X.positions if X.rank(i, j) and Y.rank(i - 1, j - 1)
    ]
    slots1 = [
        (i, j) for (i, j) in X.positions if X.rank(i, j) and Y.rank(i - 1, j)
    ]
    for (i, j) in slots0:
        prob.add_unknown(("s0", i, j), Y.rank(i - 1, j - 1), X.rank(i, j))
    for (i, j) in slots1:
        prob.add_unknown(("s1", i, j), Y.rank(i - 1, j), X.rank(i, j))
    h0, h1 = set(slots0), set(slots1)
    for (i, j) in X.positions:
        er, ec = Y.rank(i, j - 1), X.rank(i, j)
        if er and ec:
            terms = []
            if (i, j) in h0:
                terms.append((("s0", i, j), Y.diff(0, i - 1, j - 1), None, 1))
            if (i + 1, j) in h0:
                terms.append((("s0", i + 1, j), None, X.diff(0, i, j), 1))
            if terms:
                prob.add_equation((er, ec), terms, None)
        er = Y.rank(i, j)
        if not er or not ec:
            continue
        terms = []
        if (i, j) in h0:
            terms.append((("s0", i, j), Y.diff(1, i - 1, j - 1), None, 1))
        if (i, j) in h1:
            terms.append((("s1", i, j), Y.diff(0, i - 1, j), None, 1))
        if (i + 1, j + 1) in h0:
            terms.append((("s0", i + 1, j + 1), None, X.diff(1, i, j), 1))
        if (i + 1, j) in h1:
            terms.append((("s1", i + 1, j), None, X.diff(0, i, j), 1))
        prob.add_equation((er, ec), terms, f.comp(0, i, j))
    sol = prob.solve()
    if sol is None:
        return None
    s0 = {(i, j): sol[("s0", i, j)] for (i, j) in slots0}
    s1 = {(i, j): sol[("s1", i, j)] for (i, j) in slots1}
    return s0, s1


def corollary_equations_hold(
    f: GMorphism, s: Dict[int, Dict[Tuple[int, int], RingMatrix]]
) -> bool:
    """The full eta-null-homotopy equation set for a family {s_n}."""
    X, Y = f.source, f.target
    ring = X.ring

    def sv(n, i, j):
        m = s.get(n, {}).get((i, j))
        if m is None:
            return RingMatrix.zero(ring, Y.rank(i - 1, j + n - 1), X.rank(i, j))
        return m

    yj = [j for (_, j) in Y.ranks]
    xj = [j for (_, j) in X.ranks]
    top = f.max_level() + 1
    if yj and xj:
        top = max(top, max(yj) - min(xj) + 2)
    for (i, j) in X.positions:
        if Y.rank(i, j - 1) or X.rank(i, j):
            res = Y.diff(0, i - 1, j - 1) @ sv(0, i, j) + sv(0, i + 1, j) @ X.diff(
                0, i, j
            )
            if not res.is_zero():
                return False
        for n in range(top + 1):
            er, ec = Y.rank(i, j + n), X.rank(i, j)
            if not ec:
                continue
            acc = RingMatrix.zero(ring, er, ec)
            for q in range(n + 2):
                p = n + 1 - q
                acc = acc + sv(p, i + 1, j + q) @ X.diff(q, i, j)
                acc = acc + Y.diff(p, i - 1, j + q - 1) @ sv(q, i, j)
            if f.comp(n, i, j) != acc:
                return False
    return True


def eta_null_complete(
    f: GMorphism,
    s0: Dict[Tuple[int, int], RingMatrix],
    s1: Dict[Tuple[int, int], RingMatrix],
):
    """Grow a validated (s_0, s_1) seed to a full certificate.

    Each step k solves  d_{Y,0} s_{k+1} + s_{k+1} d_{X,0} = defect_k  for
    the next family member; an inconsistent step is reported as an
    Obstruction (the point where the relevant stable hom group fails to
    vanish).  The returned certificate is the eta-twisted homotopy on the
    corresponding complexes over the graded instance.
    """
    X, Y = f.source, f.target
    ring = X.ring
    if not seed_equations_hold(f, s0, s1):
        raise ValueError("seed pair does not satisfy the two seed equations")
    seeds: Dict[int, Dict[Tuple[int, int], RingMatrix]] = {0: dict(s0), 1: dict(s1)}

    def seedv(n, i, j):
        m = seeds.get(n, {}).get((i, j))
        if m is None:
            return RingMatrix.zero(ring, Y.rank(i - 1, j + n - 1), X.rank(i, j))
        return m

    yj = [j for (_, j) in Y.ranks]
    xj = [j for (_, j) in X.ranks]
    k_top = f.max_level()
    if yj and xj:
        k_top = max(k_top, max(yj) - min(xj) + 1)
    # every equation is linear in the whole family {s_n}, so solve the
    # levels cumulatively: step k adds the s_{k+1} unknowns and the
    # level-k equations to one joint system
    prob = MatrixProblem(ring)
    have = set()
    sol = {}
    for k in range(1, k_top + 1):
        for (i, j) in X.positions:
            if Y.rank(i - 1, j + k):
                prob.add_unknown((k + 1, i, j), Y.rank(i - 1, j + k), X.rank(i, j))
                have.add((k + 1, i, j))
        for (i, j) in X.positions:
            er, ec = Y.rank(i, j + k), X.rank(i, j)
            if not er or not ec:
                continue
            # level-k equation: f_k = sum_{p+q=k+1} (s_p dX_q + dY_p s_q);
            # s_0, s_1 are the fixed seeds, s_p for p >= 2 are unknowns
            rhs = f.comp(k, i, j)
            for p in (0, 1):
                q = k + 1 - p
                rhs = rhs + (-(seedv(p, i + 1, j + q) @ X.diff(q, i, j)))
            for q in (0, 1):
                p = k + 1 - q
                rhs = rhs + (-(Y.diff(p, i - 1, j + q - 1) @ seedv(q, i, j)))
            terms = []
            for q in range(k):  # unknown s_{k+1-q}, level >= 2
                key = (k + 1 - q, i + 1, j + q)
                if key in have:
                    terms.append((key, None, X.diff(q, i, j), 1))
            for q in range(2, k + 2):  # unknown s_q on the target side
                key = (q, i, j)
                if key in have:
                    terms.append((key, Y.diff(k + 1 - q, i - 1, j + q - 1), None, 1))
            if not terms and rhs.is_zero():
                continue
            prob.add_equation((er, ec), terms, rhs)
        sol = prob.solve()
        if sol is None:
            return Obstruction(
                "eta-null-complete", k, None,
                f"the joint homotopy system through level {k} is inconsistent",
            )
    s: Dict[int, Dict[Tuple[int, int], RingMatrix]] = dict(seeds)
    for (p, i, j), m in sol.items():
        if not m.is_zero():
            s.setdefault(p, {})[(i, j)] = m
    if not corollary_equations_hold(f, s):  # pragma: no cover - defensive
        return Obstruction("eta-null-complete", k_top + 1, None, "re-validation failed")
    cert = _family_to_certificate(f, s)
    fc = gmorphism_to_chain_map(f)
    assert cert.validate(fc, zero_chain_map(fc.source, fc.target))
    return cert


def _family_to_certificate(
    f: GMorphism, s: Dict[int, Dict[Tuple[int, int], RingMatrix]]
) -> HomotopyCertificate:
    """Repackage {s_n^{ij}} as the graded-complex homotopy {s^i}."""
    X, Y = f.source, f.target
    cx = gsystem_to_complex(X)
    cy = gsystem_to_complex(Y)
    inst = cx.instance
    out: Dict[int, GradedMorphism] = {}
    by_i: Dict[int, Dict[Tuple[int, int], RingMatrix]] = {}
    for n, fam in s.items():
        for (i, j), m in fam.items():
            # s_n^{ij}: X^{ij} -> Y^{i-1,j+n-1} reads as component (n, j-1)
            # of a graded morphism X^i(1) -> Y^{i-1}
            by_i.setdefault(i, {})[(n, j - 1)] = m
    for i, comps in by_i.items():
        src = inst.shift_obj(cx.obj(i), 1)
        out[i] = GradedMorphism(src, cy.obj(i - 1), comps)
    return HomotopyCertificate(out, eta_twisted=True)
