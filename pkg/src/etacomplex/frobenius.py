"""The eta-twisted exact structure on complexes.

An eta-conflation is a chainwise-split exact pair whose homotopy invariant
h: Z[-1] -> X factors through eta_X: X(1) -> X.  Projective = injective
objects are the cones cone(eta_V); both lifting problems have closed-form
block solutions which are constructed (and re-validated) here, together
with the standard triangles of the stable category and the eta^m towers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .base import BaseInstance, EtaPower
from .complexes import (
    ChainMap,
    Complex,
    ExactPair,
    HomotopyCertificate,
    LinearProblem,
    NotChainwiseSplit,
    apply_auto,
    apply_auto_map,
    chain_map_problem,
    compose_chain_maps,
    cone,
    eta_chain_map,
    homotopic,
    id_chain_map,
    normalize_exact_pair,
    shift_chain_map,
    shift_complex,
    solution_chain_map,
    sub_chain_maps,
    validate_chain_map,
    zero_chain_map,
)


@dataclass
class Obstruction:
    """A reproducible solver failure: where and what was asked."""

    location: object
    description: str

    def __bool__(self):  # obstructions are falsy so `if result:` reads naturally
        return False


class EtaConflation:
    """A recognized eta-conflation: pair + factorization witness.

    alpha: Z[-1] -> X(1) is a chain map and t a homotopy such that
    eta_X . alpha = h + d_X t + t d_{Z[-1]}  (a homotopic representative
    of the stored invariant h factors through eta_X).
    """

    __slots__ = ("pair", "alpha", "t")

    def __init__(self, pair: ExactPair, alpha: ChainMap, t: Dict[int, object]):
        self.pair = pair
        self.alpha = alpha
        self.t = t

    @property
    def instance(self):
        return self.pair.instance

    def h_tilde(self) -> ChainMap:
        """The representative of the invariant that factors through eta."""
        X = self.pair.sub
        return compose_chain_maps(eta_chain_map(X), self.alpha)


# -- factorization through eta ----------------------------------------------


def factor_through_eta(h: ChainMap) -> Optional[ChainMap]:
    """SOME chain map alpha: W -> X(1) with eta_X . alpha = h, else NONE."""
    inst = h.instance
    W, X = h.source, h.target
    X1 = apply_auto(X, 1)
    prob = LinearProblem(inst)
    degs = chain_map_problem(prob, "a", W, X1)
    have = set(degs)
    for n in sorted(set(W.objects) | set(h.components)):
        terms = []
        if n in have:
            terms.append((("a", n), None, inst.eta(X.obj(n)), 0, 1))
        prob.add_equation(W.obj(n), X.obj(n), terms, h.component(n))
    sol = prob.solve()
    if sol is None:
        return None
    alpha = solution_chain_map(sol, "a", degs, W, X1)
    assert validate_chain_map(alpha)
    assert compose_chain_maps(eta_chain_map(X), alpha) == h
    return alpha


def is_eta_conflation(i: ChainMap, p: ChainMap) -> Optional[EtaConflation]:
    """SOME witness iff some homotopic representative of the invariant of
    (i, p) factors through eta_X; raises NotChainwiseSplit if not split."""
    pair = normalize_exact_pair(i, p)
    inst = i.instance
    X = pair.sub
    h = pair.h
    W = h.source  # Z[-1]
    X1 = apply_auto(X, 1)
    prob = LinearProblem(inst)
    a_degs = chain_map_problem(prob, "a", W, X1)
    t_degs = [
        n for n in sorted(set(W.objects))
        if not inst.obj_is_zero(W.obj(n)) and not inst.obj_is_zero(X.obj(n - 1))
    ]
    for n in t_degs:
        prob.add_unknown(("t", n), W.obj(n), X.obj(n - 1))
    a_have, t_have = set(a_degs), set(t_degs)
    for n in sorted(set(W.objects) | set(h.components)):
        # eta_X^n a^n - d_X^{n-1} t^n - t^{n+1} d_W^n = h^n
        terms = []
        if n in a_have:
            terms.append((("a", n), None, inst.eta(X.obj(n)), 0, 1))
        if n in t_have:
            terms.append((("t", n), None, X.diff(n - 1), 0, -1))
        if n + 1 in t_have:
            terms.append((("t", n + 1), W.diff(n), None, 0, -1))
        prob.add_equation(W.obj(n), X.obj(n), terms, h.component(n))
    sol = prob.solve()
    if sol is None:
        return None
    alpha = solution_chain_map(sol, "a", a_degs, W, X1)
    t = {n: sol[("t", n)] for n in t_degs}
    conf = EtaConflation(pair, alpha, t)
    assert validate_chain_map(alpha)
    assert homotopic(conf.h_tilde(), h) is not None
    return conf


# -- eta homotopy -----------------------------------------------------------


def eta_homotopic(f: ChainMap, g: ChainMap) -> Optional[HomotopyCertificate]:
    """SOME s with (f - g) eta_X = s^{n+1} d_X^n(1) + d_Y^{n-1} s^n, else NONE."""
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
        prob.add_unknown(("s", n), inst.shift_obj(X.obj(n), 1), Y.obj(n - 1))
    have = set(s_degs)
    for n in sorted(set(X.objects) | set(f.components) | set(g.components)):
        terms = []
        if n + 1 in have:
            terms.append((("s", n + 1), inst.shift_mor(X.diff(n), 1), None, 0, 1))
        if n in have:
            terms.append((("s", n), None, Y.diff(n - 1), 0, 1))
        rhs = inst.compose(
            inst.hom_sub(f.component(n), g.component(n)), inst.eta(X.obj(n))
        )
        prob.add_equation(inst.shift_obj(X.obj(n), 1), Y.obj(n), terms, rhs)
    sol = prob.solve()
    if sol is None:
        return None
    cert = HomotopyCertificate({n: sol[("s", n)] for n in s_degs}, eta_twisted=True)
    assert cert.validate(f, g)
    return cert


def eta_null_homotopic(f: ChainMap) -> Optional[HomotopyCertificate]:
    return eta_homotopic(f, zero_chain_map(f.source, f.target))


def stable_equal(f: ChainMap, g: ChainMap) -> bool:
    return eta_homotopic(f, g) is not None


# -- projective-injective objects and lifts ---------------------------------


def cone_eta(V: Complex) -> Complex:
    """cone(eta_V): V^{n+1}(1) (+) V^n with d = [[-d_V^{n+1}(1), 0], [eta, d_V]]."""
    c, _, _ = cone(eta_chain_map(V))
    return c


class StandardConflation:
    """The normalized model X -> cone(f) -> Z of an eta-conflation, where
    f = eta_X . alpha for a chain map alpha: Z[-1] -> X(1)."""

    __slots__ = ("X", "Z", "alpha", "f", "middle", "i", "p")

    def __init__(self, alpha: ChainMap):
        inst = alpha.instance
        W = alpha.source  # Z[-1]
        X1 = alpha.target  # X(1)
        X = apply_auto(X1, -1)
        if alpha.target != apply_auto(X, 1):
            raise ValueError("alpha must land in X(1)")
        self.X = X
        self.Z = shift_complex(W, 1)
        self.alpha = alpha
        self.f = compose_chain_maps(eta_chain_map(X), alpha)
        self.middle, self.i, self.p = cone(self.f)

    @property
    def instance(self):
        return self.alpha.instance


def projective_lift(g: ChainMap, V: Complex, defl: StandardConflation) -> ChainMap:
    """Lift g: cone(eta_V) -> Z through the deflation p: cone(f) -> Z.

    The lift is the block map [[g1, g2], [0, alpha(-1) g1[-1](-1)]]; it is a
    chain map with p . lift = g (validated before returning).
    """
    inst = g.instance
    P = cone_eta(V)
    if g.source != P or g.target != defl.Z:
        raise ValueError("g must be a chain map cone_eta(V) -> Z")
    X, Z, alpha = defl.X, defl.Z, defl.alpha
    comps = {}
    for n in sorted(set(defl.middle.objects) | set(P.objects)):
        v_top = inst.shift_obj(V.obj(n + 1), 1)  # V^{n+1}(1)
        v_bot = V.obj(n)
        gs = inst.split_mor(g.component(n), [Z.obj(n)], [v_top, v_bot])
        g1n, g2n = gs[0][0], gs[0][1]
        # bottom-right: alpha^n(-1) . g1^{n-1}(-1): V^n -> X^n
        g1prev = inst.split_mor(
            g.component(n - 1), [Z.obj(n - 1)], [inst.shift_obj(V.obj(n), 1), V.obj(n - 1)]
        )[0][0]
        br = inst.compose(
            inst.shift_mor(alpha.component(n), -1), inst.shift_mor(g1prev, -1)
        )
        comps[n] = inst.block_mor(
            [[g1n, g2n], [None, br]], [Z.obj(n), X.obj(n)], [v_top, v_bot]
        )
    lift = ChainMap(P, defl.middle, comps)
    assert validate_chain_map(lift)
    assert compose_chain_maps(defl.p, lift) == g
    return lift


def injective_extend(g: ChainMap, V: Complex, infl: StandardConflation) -> ChainMap:
    """Extend g: X -> cone(eta_V) along the inflation i: X -> cone(f).

    The extension is [[g2[1](1) beta[1], g1], [0, g2]] with beta = infl.alpha;
    it is a chain map with extend . i = g (validated before returning).
    """
    inst = g.instance
    P = cone_eta(V)
    if g.source != infl.X or g.target != P:
        raise ValueError("g must be a chain map X -> cone_eta(V)")
    X, Z, beta = infl.X, infl.Z, infl.alpha
    comps = {}
    for n in sorted(set(infl.middle.objects)):
        v_top = inst.shift_obj(V.obj(n + 1), 1)
        v_bot = V.obj(n)
        gs = inst.split_mor(g.component(n), [v_top, v_bot], [X.obj(n)])
        g1n, g2n = gs[0][0], gs[1][0]
        # top-left: g2^{n+1}(1) . beta^{n+1}: Z^n -> V^{n+1}(1)
        g2next = inst.split_mor(
            g.component(n + 1), [inst.shift_obj(V.obj(n + 2), 1), V.obj(n + 1)], [X.obj(n + 1)]
        )[1][0]
        tl = inst.compose(inst.shift_mor(g2next, 1), beta.component(n + 1))
        comps[n] = inst.block_mor(
            [[tl, g1n], [None, g2n]], [v_top, v_bot], [Z.obj(n), X.obj(n)]
        )
    ext = ChainMap(infl.middle, P, comps)
    assert validate_chain_map(ext)
    assert compose_chain_maps(ext, infl.i) == g
    return ext


# -- enough projectives / injectives ----------------------------------------


def env_inflation(X: Complex) -> StandardConflation:
    """X -> cone(eta_X) -> X(1)[1] with witness alpha = id_{X(1)}."""
    return StandardConflation(id_chain_map(apply_auto(X, 1)))


def cover_deflation(X: Complex) -> StandardConflation:
    """cone(eta_W) -> X for W = X[-1](-1); witness alpha = id."""
    W = shift_complex(apply_auto(X, -1), -1)
    conf = StandardConflation(id_chain_map(apply_auto(W, 1)))
    # conf.Z = W(1)[1] = X exactly
    assert conf.Z == X
    return conf


def factors_through_env(f: ChainMap) -> Optional[ChainMap]:
    """SOME u: cone(eta_X) -> Y with u . i = f for the envelope inflation."""
    inst = f.instance
    X, Y = f.source, f.target
    env = env_inflation(X)
    P, i = env.middle, env.i
    prob = LinearProblem(inst)
    degs = chain_map_problem(prob, "u", P, Y)
    have = set(degs)
    for n in sorted(set(X.objects) | set(f.components)):
        terms = []
        if n in have:
            terms.append((("u", n), i.component(n), None, 0, 1))
        prob.add_equation(X.obj(n), Y.obj(n), terms, f.component(n))
    sol = prob.solve()
    if sol is None:
        return None
    u = solution_chain_map(sol, "u", degs, P, Y)
    assert validate_chain_map(u)
    assert compose_chain_maps(u, i) == f
    return u


# -- standard triangles and suspension --------------------------------------


def standard_triangle(f: ChainMap) -> Tuple[ChainMap, ChainMap, ChainMap]:
    """X -> Y -> cone(f eta_X) -> X(1)[1]; returns (f, inj, proj)."""
    X = f.source
    fe = compose_chain_maps(f, eta_chain_map(X))
    c, inj, proj = cone(fe)
    return f, inj, proj


def suspension(X: Complex) -> Complex:
    return apply_auto(shift_complex(X, 1), 1)


def suspend_map(f: ChainMap) -> ChainMap:
    """S(f): X(1)[1] -> Y(1)[1], induced on cokernels of the envelope
    inflations; well-defined up to stable equality."""
    inst = f.instance
    X, Y = f.source, f.target
    envX = env_inflation(X)
    envY = env_inflation(Y)
    g = compose_chain_maps(envY.i, f)  # X -> cone(eta_Y)
    ext = injective_extend(g, Y, envX)  # cone(eta_X) -> cone(eta_Y)
    # induced map on quotients = top-left block
    SX, SY = suspension(X), suspension(Y)
    comps = {}
    for n in sorted(set(SX.objects) | set(SY.objects)):
        xt = inst.shift_obj(X.obj(n + 1), 1)
        yt = inst.shift_obj(Y.obj(n + 1), 1)
        blk = inst.split_mor(
            ext.component(n), [yt, Y.obj(n)], [xt, X.obj(n)]
        )[0][0]
        comps[n] = blk
    sf = ChainMap(SX, SY, comps)
    assert validate_chain_map(sf)
    return sf


# -- degenerate calibration and towers --------------------------------------


def is_split_pair(i: ChainMap, p: ChainMap) -> bool:
    """True iff the chainwise-split pair is split: invariant h ~ 0."""
    pair = normalize_exact_pair(i, p)
    return homotopic(pair.h, zero_chain_map(pair.h.source, pair.h.target)) is not None


def reinstance_complex(c: Complex, inst: BaseInstance) -> Complex:
    return Complex(inst, dict(c.objects), dict(c.diffs))


def reinstance_chain_map(f: ChainMap, inst: BaseInstance) -> ChainMap:
    return ChainMap(
        reinstance_complex(f.source, inst),
        reinstance_complex(f.target, inst),
        dict(f.components),
    )


def is_eta_power_conflation(i: ChainMap, p: ChainMap, m: int) -> Optional[EtaConflation]:
    """Membership in the exact structure of eta^m (m = 1 is eta itself)."""
    inst = i.instance
    power = EtaPower(inst, m) if m > 1 else inst
    return is_eta_conflation(reinstance_chain_map(i, power), reinstance_chain_map(p, power))


def conflation_tower_check(i: ChainMap, p: ChainMap, m: int) -> bool:
    """If the pair is an eta^m-conflation then it is an eta^{m-1}-conflation."""
    if m < 2:
        raise ValueError("tower check needs m >= 2")
    if is_eta_power_conflation(i, p, m) is None:
        return True
    return is_eta_power_conflation(i, p, m - 1) is not None


# -- exact-structure axiom witnesses (Ex1), (Ex2) and duals -----------------


def ex1_composite(defl1: StandardConflation, beta: ChainMap) -> Tuple[bool, Optional[EtaConflation]]:
    """Closure of deflations under composition, with the explicit witness.

    defl1: Y = cone(f) -> Z with f = eta_X alpha.  beta: Y[-1] -> V(1)
    defines the second deflation W = cone(eta_V beta) -> Y.  Verifies the
    block identities W = cone((f; g1)) and eta_{cone(g2)} (alpha; beta1)
    = (f; g1), then recognizes the composite deflation.
    """
    inst = defl1.instance
    X, Z, alpha, f, Y = defl1.X, defl1.Z, defl1.alpha, defl1.f, defl1.middle
    defl0 = StandardConflation(beta)
    V = defl0.X
    W = defl0.middle
    g = defl0.f  # Y[-1] -> V, g = eta_V beta
    Ym1 = shift_complex(Y, -1)
    Zm1 = shift_complex(Z, -1)
    Xm1 = shift_complex(X, -1)
    # split g and beta into their Z[-1]/X[-1] blocks
    g1_c, g2_c, b1_c, b2_c = {}, {}, {}, {}
    V1 = apply_auto(V, 1)
    for n in sorted(set(Ym1.objects)):
        zs, xs = Zm1.obj(n), Xm1.obj(n)
        gg = inst.split_mor(g.component(n), [V.obj(n)], [zs, xs])
        g1_c[n], g2_c[n] = gg[0][0], gg[0][1]
        bb = inst.split_mor(beta.component(n), [V1.obj(n)], [zs, xs])
        b1_c[n], b2_c[n] = bb[0][0], bb[0][1]
    g2 = ChainMap(Xm1, V, g2_c)
    ok = validate_chain_map(g2)
    cg2, _, _ = cone(g2)
    fg1 = ChainMap(Zm1, cg2, {
        n: inst.block_mor(
            [[f.component(n)], [g1_c.get(n, inst.zero_mor(Zm1.obj(n), V.obj(n)))]],
            [X.obj(n), V.obj(n)],
            [Zm1.obj(n)],
        )
        for n in sorted(set(Zm1.objects))
    })
    ok = ok and validate_chain_map(fg1)
    # W = cone((f; g1)) exactly (block associativity of the cone)
    cfg1, sub_i, _ = cone(fg1)
    ok = ok and (W == cfg1)
    # the witness (alpha; beta1) factors (f; g1) through eta_{cone(g2)}
    ab = ChainMap(Zm1, apply_auto(cg2, 1), {
        n: inst.block_mor(
            [[alpha.component(n)], [b1_c.get(n, inst.zero_mor(Zm1.obj(n), V1.obj(n)))]],
            [inst.shift_obj(X.obj(n), 1), V1.obj(n)],
            [Zm1.obj(n)],
        )
        for n in sorted(set(Zm1.objects))
    })
    ok = ok and validate_chain_map(ab)
    ok = ok and (compose_chain_maps(eta_chain_map(cg2), ab) == fg1)
    if not ok:
        return False, None
    # the composite W -> Y -> Z is a recognized eta-deflation
    composite = compose_chain_maps(defl1.p, defl0.p)
    conf = is_eta_conflation(sub_i, composite)
    return conf is not None, conf


def ex2_pullback(defl: StandardConflation, h: ChainMap) -> Tuple[bool, Optional[EtaConflation]]:
    """Pullback of the deflation p: cone(f) -> Z along h: Z' -> Z.

    Built as cone(f h[-1]) -> Z' with the square maps (1, 0) and
    [[h, 0], [0, Id]]; returns (square commutes and membership, witness).
    """
    inst = defl.instance
    X, Z, alpha = defl.X, defl.Z, defl.alpha
    Zp = h.source
    hm1 = shift_chain_map(h, -1)
    fh = compose_chain_maps(defl.f, hm1)  # Z'[-1] -> X
    pull = StandardConflation(compose_chain_maps(alpha, hm1))
    assert pull.f == fh
    # the square: middle map [[h, 0], [0, Id]] : cone(f h[-1]) -> cone(f)
    mid = ChainMap(pull.middle, defl.middle, {
        n: inst.block_mor(
            [[h.component(n), None], [None, inst.id_mor(X.obj(n))]],
            [Z.obj(n), X.obj(n)],
            [Zp.obj(n), X.obj(n)],
        )
        for n in sorted(set(pull.middle.objects) | set(defl.middle.objects))
    })
    ok = validate_chain_map(mid)
    ok = ok and (compose_chain_maps(defl.p, mid) == compose_chain_maps(h, pull.p))
    conf = is_eta_conflation(pull.i, pull.p)
    ok = ok and (conf is not None)
    return ok, conf


def ex1_op_composite(infl1: StandardConflation, gamma: ChainMap) -> bool:
    """Closure of inflations under composition.

    infl1: X -> Y = cone(f) with f = eta_X alpha; gamma: U[-1] -> Y(1)
    defines the second inflation Y -> W = cone(eta_Y gamma).  The composite
    X -> W has quotient U (+) Z; checks the pair is an eta-conflation.
    """
    inst = infl1.instance
    X, Z, Y = infl1.X, infl1.Z, infl1.middle
    infl2 = StandardConflation(gamma)
    assert infl2.X == Y
    W = infl2.middle
    U = infl2.Z
    composite = compose_chain_maps(infl2.i, infl1.i)  # X -> W
    g = infl2.f  # U[-1] -> Y
    Um1 = shift_complex(U, -1)
    # quotient Q^n = U^n (+) Z^n with d_Q = [[d_U, 0], [g1^{n+1}, d_Z]]
    q_objects = {}
    q_diffs = {}
    degs = sorted(set(W.objects))
    for n in degs:
        q_objects[n] = inst.dsum([U.obj(n), Z.obj(n)])
    for n in degs:
        g_next = g.component(n + 1)  # (U[-1])^{n+1} = U^n -> Y^{n+1}
        g1 = inst.split_mor(g_next, [Z.obj(n + 1), X.obj(n + 1)], [U.obj(n)])[0][0]
        q_diffs[n] = inst.block_mor(
            [[U.diff(n), None], [g1, Z.diff(n)]],
            [U.obj(n + 1), Z.obj(n + 1)],
            [U.obj(n), Z.obj(n)],
        )
    Q = Complex(inst, q_objects, q_diffs)
    proj = ChainMap(W, Q, {
        n: inst.block_mor(
            [
                [inst.id_mor(U.obj(n)), None, None],
                [None, inst.id_mor(Z.obj(n)), None],
            ],
            [U.obj(n), Z.obj(n)],
            [U.obj(n), Z.obj(n), X.obj(n)],
        )
        for n in degs
    })
    if not validate_chain_map(proj):
        return False
    return is_eta_conflation(composite, proj) is not None


def ex2_op_pushout(infl: StandardConflation, h: ChainMap) -> bool:
    """Pushout of the inflation i: X -> cone(f) along h: X -> X'."""
    inst = infl.instance
    X, Z, alpha = infl.X, infl.Z, infl.alpha
    Xp = h.target
    # h f = eta_{X'} (h(1) alpha) by naturality
    push = StandardConflation(compose_chain_maps(apply_auto_map(h, 1), alpha))
    mid = ChainMap(infl.middle, push.middle, {
        n: inst.block_mor(
            [[inst.id_mor(Z.obj(n)), None], [None, h.component(n)]],
            [Z.obj(n), Xp.obj(n)],
            [Z.obj(n), X.obj(n)],
        )
        for n in sorted(set(infl.middle.objects) | set(push.middle.objects))
    })
    if not validate_chain_map(mid):
        return False
    if compose_chain_maps(mid, infl.i) != compose_chain_maps(push.i, h):
        return False
    return is_eta_conflation(push.i, push.p) is not None
