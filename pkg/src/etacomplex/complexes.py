"""Bounded complexes over a base-category instance.

Complexes and chain maps are finite maps degree -> base object / morphism.
Everything downstream (homotopies, factorizations, lifts) is decided by
posing a linear system over the coefficient ring through the uniform
hom-coordinate API of the base instance; ``LinearProblem`` is that bridge.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .base import BaseInstance
from .linalg import solve_linear_system, solve_with_kernel
from .matrix import RingMatrix

# Mutation knob (see the suite's sensitivity property): the sign on the
# shifted differential inside a mapping cone.  Correct value: -1.
_CONE_SIGN = -1


class Complex:
    """Bounded complex: objects X^n and differentials d^n: X^n -> X^{n+1}."""

    __slots__ = ("instance", "objects", "diffs")

    def __init__(self, instance: BaseInstance, objects: Dict[int, object], diffs: Dict[int, object]):
        self.instance = instance
        self.objects = {
            int(n): X for n, X in objects.items() if not instance.obj_is_zero(X)
        }
        self.diffs = {
            int(n): d for n, d in diffs.items() if not instance.mor_is_zero(d)
        }

    def obj(self, n: int):
        return self.objects.get(n, self.instance.zero_obj())

    def diff(self, n: int):
        d = self.diffs.get(n)
        if d is None:
            return self.instance.zero_mor(self.obj(n), self.obj(n + 1))
        return d

    @property
    def support(self) -> List[int]:
        return sorted(self.objects)

    def is_zero(self) -> bool:
        return not self.objects

    def degree_range(self) -> List[int]:
        if not self.objects:
            return []
        lo, hi = min(self.objects), max(self.objects)
        return list(range(lo, hi + 1))

    def __eq__(self, other):
        return (
            isinstance(other, Complex)
            and self.instance == other.instance
            and self.objects == other.objects
            and set(self.diffs) == set(other.diffs)
            and all(self.instance.mor_eq(self.diffs[n], other.diffs[n]) for n in self.diffs)
        )

    def __repr__(self):
        return f"Complex(support={self.support})"


class ChainMap:
    """Chain map f: X -> Y with components f^n: X^n -> Y^n."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: Complex, target: Complex, components: Dict[int, object]):
        if source.instance != target.instance:
            raise ValueError("instance mismatch")
        inst = source.instance
        self.source = source
        self.target = target
        self.components = {
            int(n): f for n, f in components.items() if not inst.mor_is_zero(f)
        }

    @property
    def instance(self) -> BaseInstance:
        return self.source.instance

    def component(self, n: int):
        f = self.components.get(n)
        if f is None:
            return self.instance.zero_mor(self.source.obj(n), self.target.obj(n))
        return f

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return (
            isinstance(other, ChainMap)
            and self.source == other.source
            and self.target == other.target
            and set(self.components) == set(other.components)
            and all(
                self.instance.mor_eq(self.components[n], other.components[n])
                for n in self.components
            )
        )

    def __repr__(self):
        return f"ChainMap(degrees={sorted(self.components)})"


# -- basic constructions ----------------------------------------------------


def validate_complex(c: Complex) -> bool:
    inst = c.instance
    for n, d in c.diffs.items():
        if not inst.validate_mor(d, c.obj(n), c.obj(n + 1)):
            return False
    for n in c.degree_range():
        if not inst.mor_is_zero(inst.compose(c.diff(n + 1), c.diff(n))):
            return False
    return True


def validate_chain_map(f: ChainMap) -> bool:
    inst = f.instance
    X, Y = f.source, f.target
    for n, m in f.components.items():
        if not inst.validate_mor(m, X.obj(n), Y.obj(n)):
            return False
    degs = sorted(set(X.objects) | set(f.components))
    for n in degs:
        lhs = inst.compose(f.component(n + 1), X.diff(n))
        rhs = inst.compose(Y.diff(n), f.component(n))
        if not inst.mor_eq(lhs, rhs):
            return False
    return True


def id_chain_map(c: Complex) -> ChainMap:
    inst = c.instance
    return ChainMap(c, c, {n: inst.id_mor(X) for n, X in c.objects.items()})


def zero_chain_map(src: Complex, tgt: Complex) -> ChainMap:
    return ChainMap(src, tgt, {})


def compose_chain_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    if f.target != g.source:
        raise ValueError("chain maps not composable")
    inst = f.instance
    comps = {}
    for n in set(f.components) | set(g.components):
        comps[n] = inst.compose(g.component(n), f.component(n))
    return ChainMap(f.source, g.target, comps)


def add_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    if f.source != g.source or f.target != g.target:
        raise ValueError("endpoint mismatch")
    inst = f.instance
    comps = {}
    for n in set(f.components) | set(g.components):
        comps[n] = inst.hom_add(f.component(n), g.component(n))
    return ChainMap(f.source, f.target, comps)


def negate_chain_map(f: ChainMap) -> ChainMap:
    inst = f.instance
    return ChainMap(f.source, f.target, {n: inst.hom_negate(m) for n, m in f.components.items()})


def sub_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    return add_chain_maps(f, negate_chain_map(g))


def shift_complex(c: Complex, k: int) -> Complex:
    """[k]: (X[k])^n = X^{n+k}, d_{X[k]}^n = (-1)^k d_X^{n+k}."""
    inst = c.instance
    objects = {n - k: X for n, X in c.objects.items()}
    if k % 2 == 0:
        diffs = {n - k: d for n, d in c.diffs.items()}
    else:
        diffs = {n - k: inst.hom_negate(d) for n, d in c.diffs.items()}
    return Complex(inst, objects, diffs)


def shift_chain_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(
        shift_complex(f.source, k),
        shift_complex(f.target, k),
        {n - k: m for n, m in f.components.items()},
    )


def apply_auto(c: Complex, k: int) -> Complex:
    """The functor (k) applied degreewise."""
    inst = c.instance
    return Complex(
        inst,
        {n: inst.shift_obj(X, k) for n, X in c.objects.items()},
        {n: inst.shift_mor(d, k) for n, d in c.diffs.items()},
    )


def apply_auto_map(f: ChainMap, k: int) -> ChainMap:
    inst = f.instance
    return ChainMap(
        apply_auto(f.source, k),
        apply_auto(f.target, k),
        {n: inst.shift_mor(m, k) for n, m in f.components.items()},
    )


def eta_chain_map(c: Complex) -> ChainMap:
    """eta as a chain map X(1) -> X (naturality makes it commute with d)."""
    inst = c.instance
    return ChainMap(
        apply_auto(c, 1), c, {n: inst.eta(X) for n, X in c.objects.items()}
    )


def dsum_complex(a: Complex, b: Complex) -> Tuple[Complex, ChainMap, ChainMap, ChainMap, ChainMap]:
    """a (+) b with the four structural maps (inj_a, inj_b, proj_a, proj_b)."""
    inst = a.instance
    degs = sorted(set(a.objects) | set(b.objects))
    objects = {n: inst.dsum([a.obj(n), b.obj(n)]) for n in degs}
    diffs = {}
    for n in degs:
        diffs[n] = inst.block_mor(
            [[a.diff(n), None], [None, b.diff(n)]],
            [a.obj(n + 1), b.obj(n + 1)],
            [a.obj(n), b.obj(n)],
        )
    s = Complex(inst, objects, diffs)
    inj_a = ChainMap(a, s, {
        n: inst.block_mor([[inst.id_mor(a.obj(n))], [None]], [a.obj(n), b.obj(n)], [a.obj(n)])
        for n in degs
    })
    inj_b = ChainMap(b, s, {
        n: inst.block_mor([[None], [inst.id_mor(b.obj(n))]], [a.obj(n), b.obj(n)], [b.obj(n)])
        for n in degs
    })
    proj_a = ChainMap(s, a, {
        n: inst.block_mor([[inst.id_mor(a.obj(n)), None]], [a.obj(n)], [a.obj(n), b.obj(n)])
        for n in degs
    })
    proj_b = ChainMap(s, b, {
        n: inst.block_mor([[None, inst.id_mor(b.obj(n))]], [b.obj(n)], [a.obj(n), b.obj(n)])
        for n in degs
    })
    return s, inj_a, inj_b, proj_a, proj_b


# -- mapping cone -----------------------------------------------------------


def cone(f: ChainMap) -> Tuple[Complex, ChainMap, ChainMap]:
    """cone(f)^n = X^{n+1} (+) Y^n with d = [[-d_X^{n+1}, 0], [f^{n+1}, d_Y^n]].

    Returns (cone, inj: Y -> cone, proj: cone -> X[1]).
    """
    inst = f.instance
    X, Y = f.source, f.target
    degs = sorted({n - 1 for n in X.objects} | set(Y.objects))
    objects = {n: inst.dsum([X.obj(n + 1), Y.obj(n)]) for n in degs}
    diffs = {}
    for n in degs:
        dx = X.diff(n + 1)
        if _CONE_SIGN == -1:
            dx = inst.hom_negate(dx)
        diffs[n] = inst.block_mor(
            [[dx, None], [f.component(n + 1), Y.diff(n)]],
            [X.obj(n + 2), Y.obj(n + 1)],
            [X.obj(n + 1), Y.obj(n)],
        )
    c = Complex(inst, objects, diffs)
    inj = ChainMap(Y, c, {
        n: inst.block_mor([[None], [inst.id_mor(Y.obj(n))]], [X.obj(n + 1), Y.obj(n)], [Y.obj(n)])
        for n in degs
    })
    proj = ChainMap(c, shift_complex(X, 1), {
        n: inst.block_mor(
            [[inst.id_mor(X.obj(n + 1)), None]], [X.obj(n + 1)], [X.obj(n + 1), Y.obj(n)]
        )
        for n in degs
    })
    return c, inj, proj


def eta_on_cone(f: ChainMap) -> bool:
    """eta_{cone(f)} = [[eta_{X[1]}, 0], [0, eta_Y]] as a block identity."""
    inst = f.instance
    X, Y = f.source, f.target
    c, _, _ = cone(f)
    expected = ChainMap(apply_auto(c, 1), c, {
        n: inst.block_mor(
            [[inst.eta(X.obj(n + 1)), None], [None, inst.eta(Y.obj(n))]],
            [X.obj(n + 1), Y.obj(n)],
            [inst.shift_obj(X.obj(n + 1), 1), inst.shift_obj(Y.obj(n), 1)],
        )
        for n in c.objects
    })
    return eta_chain_map(c) == expected


# -- linear problems over hom coordinates -----------------------------------


class LinearProblem:
    """A system of affine equations whose unknowns are base-instance morphisms.

    Each unknown is a hom-slot (X, Y); each equation lives in a hom-slot
    (A, B) and is a sum of terms  sign * post . u(k) . pre  = rhs.
    """

    def __init__(self, instance: BaseInstance):
        self.instance = instance
        self.unknowns: List[Tuple[object, object, object]] = []  # (key, X, Y)
        self._index: Dict[object, int] = {}
        self.equations: List[Tuple[object, object, list, object]] = []

    def add_unknown(self, key, X, Y):
        if key in self._index:
            raise ValueError(f"duplicate unknown {key!r}")
        self._index[key] = len(self.unknowns)
        self.unknowns.append((key, X, Y))

    def add_equation(self, A, B, terms, rhs=None):
        """terms: list of (key, pre, post, shift, sign).

        The term contributes sign * post . shift_mor(u, shift) . pre where
        u: X -> Y is the unknown; pre: A -> X(shift) (None = identity),
        post: Y(shift) -> B (None = identity); sign is +1 or -1.
        """
        for key, _, _, _, _ in terms:
            if key not in self._index:
                raise ValueError(f"equation references unknown key {key!r}")
        self.equations.append((A, B, list(terms), rhs))

    def _term_apply(self, u_mor, X, Y, pre, post, shift, sign):
        inst = self.instance
        m = inst.shift_mor(u_mor, shift) if shift else u_mor
        if pre is not None:
            m = inst.compose(m, pre)
        if post is not None:
            m = inst.compose(post, m)
        if sign == -1:
            m = inst.hom_negate(m)
        return m

    def _build(self):
        inst = self.instance
        ring = inst.ring
        col_off = []
        total_cols = 0
        for _, X, Y in self.unknowns:
            col_off.append(total_cols)
            total_cols += inst.hom_dim(X, Y)
        row_off = []
        total_rows = 0
        for A, B, _, _ in self.equations:
            row_off.append(total_rows)
            total_rows += inst.hom_dim(A, B)
        coeffs = RingMatrix.zero(ring, total_rows, total_cols)
        for ei, (A, B, terms, _) in enumerate(self.equations):
            r0 = row_off[ei]
            for key, pre, post, shift, sign in terms:
                ui = self._index[key]
                _, X, Y = self.unknowns[ui]
                dim_u = inst.hom_dim(X, Y)
                c0 = col_off[ui]
                zero = ring.zero()
                one = ring.one()
                for b in range(dim_u):
                    basis = [zero] * dim_u
                    basis[b] = one
                    contrib = self._term_apply(
                        inst.vec_to_mor(basis, X, Y), X, Y, pre, post, shift, sign
                    )
                    vec = inst.mor_to_vec(contrib, A, B)
                    for r, v in enumerate(vec):
                        if v != zero:
                            e = coeffs.entries[(r0 + r) * total_cols + c0 + b]
                            coeffs.entries[(r0 + r) * total_cols + c0 + b] = ring.add(e, v)
        rhs_entries: List = []
        for A, B, _, rhs in self.equations:
            if rhs is None:
                rhs_entries.extend([ring.zero()] * inst.hom_dim(A, B))
            else:
                rhs_entries.extend(inst.mor_to_vec(rhs, A, B))
        rhs_col = RingMatrix(ring, total_rows, 1, rhs_entries)
        return coeffs, rhs_col, col_off

    def _unpack(self, vec: Sequence) -> Dict[object, object]:
        inst = self.instance
        out = {}
        pos = 0
        for key, X, Y in self.unknowns:
            d = inst.hom_dim(X, Y)
            out[key] = inst.vec_to_mor(list(vec[pos : pos + d]), X, Y)
            pos += d
        return out

    def solve(self) -> Optional[Dict[object, object]]:
        coeffs, rhs, _ = self._build()
        x = solve_linear_system(coeffs, rhs)
        if x is None:
            return None
        return self._unpack(x.column(0))

    def solve_full(self):
        """(particular solution dict or None, list of kernel dicts)."""
        coeffs, rhs, _ = self._build()
        part, gens = solve_with_kernel(coeffs, rhs)
        sol = None if part is None else self._unpack(part.column(0))
        return sol, [self._unpack(g.column(0)) for g in gens]


# -- homotopy ---------------------------------------------------------------


class HomotopyCertificate:
    """Family {s^n} witnessing (eta-)null-homotopy of f - g.

    Classical: s^n: X^n -> Y^{n-1} with f - g = s^{n+1} d_X^n + d_Y^{n-1} s^n.
    Eta: s^n: X^n(1) -> Y^{n-1} with (f-g) eta = s^{n+1} d_X^n(1) + d_Y^{n-1} s^n.
    """

    __slots__ = ("s", "eta_twisted")

    def __init__(self, s: Dict[int, object], eta_twisted: bool = False):
        self.s = dict(s)
        self.eta_twisted = eta_twisted

    def validate(self, f: ChainMap, g: ChainMap) -> bool:
        inst = f.instance
        X, Y = f.source, f.target
        degs = set(X.objects) | set(f.components) | set(g.components)
        for n in sorted(degs):
            diff = inst.hom_sub(f.component(n), g.component(n))
            if self.eta_twisted:
                lhs = inst.compose(diff, inst.eta(X.obj(n)))
                src_n = inst.shift_obj(X.obj(n), 1)
                dx = inst.shift_mor(X.diff(n), 1)
            else:
                lhs = diff
                src_n = X.obj(n)
                dx = X.diff(n)
            s_n = self.s.get(n, inst.zero_mor(src_n, Y.obj(n - 1)))
            s_n1 = self.s.get(
                n + 1, inst.zero_mor(
                    inst.shift_obj(X.obj(n + 1), 1) if self.eta_twisted else X.obj(n + 1),
                    Y.obj(n),
                )
            )
            rhs = inst.hom_add(inst.compose(s_n1, dx), inst.compose(Y.diff(n - 1), s_n))
            if not inst.mor_eq(lhs, rhs):
                return False
        return True


def homotopic(f: ChainMap, g: ChainMap) -> Optional[HomotopyCertificate]:
    """Classical homotopy: SOME s with f - g = s d + d s, else NONE."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("endpoint mismatch")
    inst = f.instance
    X, Y = f.source, f.target
    prob = LinearProblem(inst)
    s_degs = [
        n for n in sorted(set(X.objects))
        if not inst.obj_is_zero(X.obj(n)) and not inst.obj_is_zero(Y.obj(n - 1))
    ]
    for n in s_degs:
        prob.add_unknown(("s", n), X.obj(n), Y.obj(n - 1))
    have = set(s_degs)
    for n in sorted(set(X.objects) | set(f.components) | set(g.components)):
        terms = []
        if n + 1 in have:
            terms.append((("s", n + 1), X.diff(n), None, 0, 1))
        if n in have:
            terms.append((("s", n), None, Y.diff(n - 1), 0, 1))
        rhs = inst.hom_sub(f.component(n), g.component(n))
        prob.add_equation(X.obj(n), Y.obj(n), terms, rhs)
    sol = prob.solve()
    if sol is None:
        return None
    cert = HomotopyCertificate({n: sol[("s", n)] for n in s_degs}, eta_twisted=False)
    assert cert.validate(f, g)
    return cert


def null_homotopic(f: ChainMap) -> Optional[HomotopyCertificate]:
    return homotopic(f, zero_chain_map(f.source, f.target))


def chain_map_problem(prob: LinearProblem, key_prefix, A: Complex, B: Complex):
    """Register unknowns and equations describing a chain map A -> B.

    Returns the list of degrees that carry an unknown component.
    """
    inst = prob.instance
    degs = [
        n for n in A.support
        if not inst.obj_is_zero(B.obj(n))
    ]
    for n in degs:
        prob.add_unknown((key_prefix, n), A.obj(n), B.obj(n))
    have = set(degs)
    for n in sorted(set(A.objects)):
        terms = []
        if n + 1 in have:
            terms.append(((key_prefix, n + 1), A.diff(n), None, 0, 1))
        if n in have:
            terms.append(((key_prefix, n), None, B.diff(n), 0, -1))
        prob.add_equation(A.obj(n), B.obj(n + 1), terms, None)
    return degs


def solution_chain_map(sol: Dict, key_prefix, degs, A: Complex, B: Complex) -> ChainMap:
    return ChainMap(A, B, {n: sol[(key_prefix, n)] for n in degs})


# -- chainwise split exact pairs --------------------------------------------


class NotChainwiseSplit(Exception):
    def __init__(self, degree):
        super().__init__(f"no degreewise splitting at degree {degree}")
        self.degree = degree


class ExactPair:
    """A chainwise-split pair X -> Y -> Z with splitting data and invariant h.

    r^n: Y^n -> X^n retracts i, q^n: Z^n -> Y^n sections p, and
    i r + q p = Id_Y; h: Z[-1] -> X is the homotopy invariant
    h^n = r^n d_Y^{n-1} q^{n-1}.
    """

    __slots__ = ("i", "p", "r", "q", "h")

    def __init__(self, i: ChainMap, p: ChainMap, r: Dict[int, object], q: Dict[int, object], h: ChainMap):
        self.i = i
        self.p = p
        self.r = r
        self.q = q
        self.h = h

    @property
    def instance(self):
        return self.i.instance

    @property
    def sub(self) -> Complex:
        return self.i.source

    @property
    def middle(self) -> Complex:
        return self.i.target

    @property
    def quotient(self) -> Complex:
        return self.p.target


def normalize_exact_pair(i: ChainMap, p: ChainMap) -> ExactPair:
    """Find degreewise splittings of X ->i Y ->p Z and the invariant h.

    Raises NotChainwiseSplit when some degree admits no (r, q) with
    r i = Id, p q = Id and i r + q p = Id.
    """
    if i.target != p.source:
        raise ValueError("pair legs do not share the middle complex")
    inst = i.instance
    X, Y, Z = i.source, i.target, p.target
    if not compose_chain_maps(p, i).is_zero():
        raise ValueError("p . i != 0")
    r: Dict[int, object] = {}
    q: Dict[int, object] = {}
    for n in sorted(set(Y.objects) | set(X.objects) | set(Z.objects)):
        prob = LinearProblem(inst)
        prob.add_unknown("r", Y.obj(n), X.obj(n))
        prob.add_unknown("q", Z.obj(n), Y.obj(n))
        prob.add_equation(
            X.obj(n), X.obj(n), [("r", i.component(n), None, 0, 1)], inst.id_mor(X.obj(n))
        )
        prob.add_equation(
            Z.obj(n), Z.obj(n), [("q", None, p.component(n), 0, 1)], inst.id_mor(Z.obj(n))
        )
        prob.add_equation(
            Y.obj(n), Y.obj(n),
            [("r", None, i.component(n), 0, 1), ("q", p.component(n), None, 0, 1)],
            inst.id_mor(Y.obj(n)),
        )
        sol = prob.solve()
        if sol is None:
            raise NotChainwiseSplit(n)
        r[n] = sol["r"]
        q[n] = sol["q"]
    zm1 = shift_complex(Z, -1)
    h_comps = {}
    for n in sorted(set(X.objects)):
        if inst.obj_is_zero(Z.obj(n - 1)):
            continue
        rn = r.get(n, inst.zero_mor(Y.obj(n), X.obj(n)))
        qn1 = q.get(n - 1, inst.zero_mor(Z.obj(n - 1), Y.obj(n - 1)))
        h_comps[n] = inst.compose(rn, inst.compose(Y.diff(n - 1), qn1))
    h = ChainMap(zm1, X, h_comps)
    return ExactPair(i, p, r, q, h)


def complex_from_invariant(h: ChainMap) -> Tuple[Complex, ChainMap, ChainMap]:
    """Rebuild the middle complex of a pair from its invariant h: Z[-1] -> X.

    The middle is cone(h) = Z (+) X degreewise with d = [[d_Z, 0], [h~, d_X]];
    returns (middle, i: X -> middle, p: middle -> Z).
    """
    c, inj, proj = cone(h)
    # h: Z[-1] -> X, so cone(h) = Z (+) X and proj lands in Z[-1][1] = Z
    return c, inj, proj
