"""Seeded random instance generation.

All generators take an explicit ``random.Random`` so runs are reproducible
from a seed (the PRNG is Python's Mersenne Twister, fixed across builds).
Complexes are produced as direct sums of elementary pieces (stalks, disks,
nilpotent chains, eta-disks) conjugated by random degreewise automorphisms,
so every output is valid by construction.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .base import BaseInstance, Graded, GradedMorphism, GradedObject, ScalarEta
from .complexes import (
    ChainMap,
    Complex,
    LinearProblem,
    chain_map_problem,
    cone,
    solution_chain_map,
    zero_chain_map,
)
from .matrix import RingMatrix
from .rings import CoeffRing


# -- invertible ingredients -------------------------------------------------


def random_unimodular(ring: CoeffRing, n: int, rng: random.Random, ops: int = 4) -> Tuple[RingMatrix, RingMatrix]:
    """A random invertible matrix together with its exact inverse."""
    u = RingMatrix.identity(ring, n)
    v = RingMatrix.identity(ring, n)  # v = u^{-1}, updated in lockstep
    for _ in range(ops if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = ring.canon(rng.choice([-2, -1, 1, 2]))
        # row_i += c * row_j on u  <->  col_j -= c * col_i on v
        for t in range(n):
            u.entries[i * n + t] = ring.add(u.entries[i * n + t], ring.mul(c, u.entries[j * n + t]))
        for t in range(n):
            v.entries[t * n + j] = ring.sub(v.entries[t * n + j], ring.mul(c, v.entries[t * n + i]))
    if n and rng.random() < 0.5:
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        for t in range(n):
            u.entries[i * n + t], u.entries[j * n + t] = u.entries[j * n + t], u.entries[i * n + t]
        for t in range(n):
            v.entries[t * n + i], v.entries[t * n + j] = v.entries[t * n + j], v.entries[t * n + i]
    return u, v


def random_graded_automorphism(inst: Graded, X: GradedObject, rng: random.Random) -> Tuple[GradedMorphism, GradedMorphism]:
    """Random automorphism u of X with its inverse (u_0 unimodular, u_n free)."""
    ring = inst.ring
    u0: Dict[int, Tuple[RingMatrix, RingMatrix]] = {}
    for j, r in X.ranks.items():
        u0[j] = random_unimodular(ring, r, rng)
    comps = {(0, j): u0[j][0] for j in X.ranks}
    for (n, j) in inst._slots(X, X):
        if n >= 1 and rng.random() < 0.5:
            r, c = X.rank(j + n), X.rank(j)
            comps[(n, j)] = RingMatrix(
                ring, r, c, [rng.randint(-2, 2) for _ in range(r * c)]
            )
    u = GradedMorphism(X, X, comps)
    # invert recursively: v_0 = u_0^{-1}; u_0^{j+n} v_n^j = -sum_{q<n} u_{n-q}^{j+q} v_q^j
    inv_comps: Dict[Tuple[int, int], RingMatrix] = {(0, j): u0[j][1] for j in X.ranks}
    for (n, j) in sorted(inst._slots(X, X)):
        if n == 0:
            continue
        acc = RingMatrix.zero(ring, X.rank(j + n), X.rank(j))
        for q in range(n):
            uq = u.component(n - q, j + q, ring)
            vq = inv_comps.get((q, j))
            if vq is None:
                vq = RingMatrix.zero(ring, X.rank(j + q), X.rank(j))
            acc = acc + uq @ vq
        inv_comps[(n, j)] = -(u0[j + n][1] @ acc)
    v = GradedMorphism(X, X, inv_comps)
    return u, v


def random_automorphism(inst: BaseInstance, X, rng: random.Random):
    from .base import EtaPower

    core = inst.inner if isinstance(inst, EtaPower) else inst
    if isinstance(core, Graded):
        return random_graded_automorphism(core, X, rng)
    return random_unimodular(inst.ring, X, rng)


# -- elementary complexes ---------------------------------------------------


def _nilpotent_entries(ring: CoeffRing, length: int, rng: random.Random) -> Optional[List]:
    """A chain z_1, ..., z_{length-1} with z_{k+1} z_k = 0, for rank-1 chains."""
    if length < 2:
        return []
    if ring.kind == "Zmod":
        m = ring.modulus
        # factor m = a*b nontrivially and alternate: b*a = 0 mod m
        for a in range(2, m):
            if m % a == 0:
                b = m // a
                out = []
                for k in range(length - 1):
                    out.append(a if k % 2 == 0 else b)
                return out
    return None


def random_scalar_complex(
    inst: ScalarEta,
    rng: random.Random,
    max_len: int = 4,
    max_rank: int = 2,
    min_deg: int = -2,
) -> Complex:
    """Direct sum of stalks/disks/nilpotent chains, conjugated degreewise."""
    ring = inst.ring
    length = rng.randint(0, max_len)
    if length == 0:
        return Complex(inst, {}, {})
    base = rng.randint(min_deg, min_deg + 2)
    degs = list(range(base, base + length))
    ranks = {n: 0 for n in degs}
    diag: Dict[int, List] = {n: [] for n in degs[:-1]}  # diagonal entries of d^n
    pieces = rng.randint(1, 3)
    for _ in range(pieces):
        kind = rng.random()
        if kind < 0.45 or length == 1:
            n = rng.choice(degs)  # stalk
            r = rng.randint(1, max_rank)
            for _ in range(r):
                ranks[n] += 1
        elif kind < 0.8:
            n = rng.choice(degs[:-1])  # disk: Id from n to n+1
            ranks[n] += 1
            ranks[n + 1] += 1
            diag[n].append((ranks[n] - 1, ranks[n + 1] - 1, ring.one()))
        else:
            chain = _nilpotent_entries(ring, length, rng)
            if not chain:
                n = rng.choice(degs)
                ranks[n] += 1
                continue
            ln = rng.randint(2, length)
            start = rng.choice(degs[: length - ln + 1])
            idx = {}
            for t in range(ln):
                ranks[start + t] += 1
                idx[t] = ranks[start + t] - 1
            for t in range(ln - 1):
                diag[start + t].append((idx[t], idx[t + 1], ring.canon(chain[t])))
    objects = {n: r for n, r in ranks.items() if r}
    diffs = {}
    for n in degs[:-1]:
        m = RingMatrix.zero(ring, ranks[n + 1], ranks[n])
        for src, tgt, val in diag[n]:
            m.entries[tgt * ranks[n] + src] = val
        diffs[n] = m
    # conjugate by random degreewise automorphisms: d' = u_{n+1} d u_n^{-1}
    autos = {n: random_unimodular(ring, ranks[n], rng) for n in degs}
    new_diffs = {}
    for n in degs[:-1]:
        new_diffs[n] = autos[n + 1][0] @ diffs[n] @ autos[n][1]
    return Complex(inst, objects, new_diffs)


def random_graded_object(rng: random.Random, max_rank: int = 2, span: int = 2) -> GradedObject:
    base = rng.randint(-1, 1)
    ranks = {}
    for j in range(base, base + span + 1):
        if rng.random() < 0.6:
            ranks[j] = rng.randint(1, max_rank)
    return GradedObject(ranks)


def random_graded_complex(
    inst: Graded,
    rng: random.Random,
    max_len: int = 3,
    max_rank: int = 2,
) -> Complex:
    """Sum of stalks, identity disks and eta-disks, conjugated degreewise."""
    length = rng.randint(0, max_len)
    if length == 0:
        return Complex(inst, {}, {})
    base = rng.randint(-1, 1)
    degs = list(range(base, base + length))
    summands: List[Tuple[Complex, None]] = []
    parts: List[Complex] = []
    pieces = rng.randint(1, 3)
    for _ in range(pieces):
        kind = rng.random()
        if kind < 0.4 or length == 1:
            n = rng.choice(degs)
            V = random_graded_object(rng, max_rank)
            parts.append(Complex(inst, {n: V}, {}))
        elif kind < 0.7:
            n = rng.choice(degs[:-1])
            V = random_graded_object(rng, max_rank)
            if V.is_zero():
                continue
            parts.append(Complex(inst, {n: V, n + 1: V}, {n: inst.id_mor(V)}))
        else:
            n = rng.choice(degs[:-1])  # eta-disk: eta_V: V(1) -> V
            V = random_graded_object(rng, max_rank)
            if V.is_zero():
                continue
            parts.append(
                Complex(inst, {n: inst.shift_obj(V, 1), n + 1: V}, {n: inst.eta(V)})
            )
    if not parts:
        return Complex(inst, {}, {})
    total_objects: Dict[int, GradedObject] = {}
    total_diffs: Dict[int, GradedMorphism] = {}
    all_degs = sorted({n for p in parts for n in p.objects})
    for n in all_degs:
        total_objects[n] = inst.dsum([p.obj(n) for p in parts])
    for n in all_degs:
        tgt = [p.obj(n + 1) for p in parts]
        src = [p.obj(n) for p in parts]
        grid = [
            [p.diff(n) if bi == bj else None for bj, _ in enumerate(parts)]
            for bi, p in enumerate(parts)
        ]
        total_diffs[n] = inst.block_mor(grid, tgt, src)
    c = Complex(inst, total_objects, total_diffs)
    autos = {n: random_graded_automorphism(inst, c.obj(n), rng) for n in c.objects}
    new_diffs = {}
    for n in list(c.diffs):
        u_next = autos.get(n + 1)
        u_this = autos.get(n)
        d = c.diff(n)
        if u_this is not None:
            d = inst.compose(d, u_this[1])
        if u_next is not None:
            d = inst.compose(u_next[0], d)
        new_diffs[n] = d
    return Complex(inst, c.objects, new_diffs)


def random_complex(inst: BaseInstance, rng: random.Random, max_len: int = 4, max_rank: int = 2) -> Complex:
    from .base import EtaPower

    core = inst.inner if isinstance(inst, EtaPower) else inst
    if isinstance(core, Graded):
        return random_graded_complex(inst, rng, max_len=min(max_len, 3), max_rank=max_rank)
    return random_scalar_complex(inst, rng, max_len=max_len, max_rank=max_rank)


# -- random chain maps ------------------------------------------------------


def random_chain_map(A: Complex, B: Complex, rng: random.Random, spread: int = 2) -> ChainMap:
    """A random chain map A -> B: small combination of a kernel basis of the
    chain-map constraint system."""
    inst = A.instance
    prob = LinearProblem(inst)
    degs = chain_map_problem(prob, "f", A, B)
    if not degs:
        return zero_chain_map(A, B)
    _, gens = prob.solve_full()
    if not gens:
        return zero_chain_map(A, B)
    picks = rng.sample(gens, min(len(gens), 3))
    total = None
    for g in picks:
        c = inst.ring.canon(rng.randint(-spread, spread))
        if c == inst.ring.zero():
            continue
        scaled = {k: v if c == inst.ring.one() else _scale_mor(inst, v, c) for k, v in g.items()}
        if total is None:
            total = scaled
        else:
            total = {k: inst.hom_add(total[k], scaled[k]) for k in total}
    if total is None:
        return zero_chain_map(A, B)
    return solution_chain_map(total, "f", degs, A, B)


def _scale_mor(inst: BaseInstance, f, c):
    if isinstance(f, RingMatrix):
        return f.scale(c)
    return GradedMorphism(f.source, f.target, {k: m.scale(c) for k, m in f.components.items()})


# -- eta-conflations --------------------------------------------------------


def random_std_conflation(inst: BaseInstance, rng: random.Random, max_len: int = 3, max_rank: int = 2):
    """A random normalized eta-conflation X -> cone(eta_X alpha) -> Z."""
    from .complexes import apply_auto, shift_complex
    from .frobenius import StandardConflation

    X = random_complex(inst, rng, max_len=max_len, max_rank=max_rank)
    W = random_complex(inst, rng, max_len=max_len, max_rank=max_rank)  # Z[-1]
    alpha = random_chain_map(W, apply_auto(X, 1), rng)
    return StandardConflation(alpha)


def random_split_pair(inst: BaseInstance, rng: random.Random, max_len: int = 3, max_rank: int = 2):
    """A random chainwise-split pair: the standard pair of cone(f) for a
    random chain map f (its invariant is f, usually NOT factoring through
    eta)."""
    from .complexes import cone, shift_complex

    X = random_complex(inst, rng, max_len=max_len, max_rank=max_rank)
    W = random_complex(inst, rng, max_len=max_len, max_rank=max_rank)
    f = random_chain_map(W, X, rng)  # W plays Z[-1]
    c, i, p = cone(f)
    return i, p


def conjugate_pair(i, p, rng: random.Random):
    """Disguise a pair by a random degreewise automorphism of the middle."""
    from .complexes import ChainMap, Complex, compose_chain_maps

    inst = i.instance
    Y = i.target
    autos = {n: random_automorphism(inst, Y.obj(n), rng) for n in Y.objects}
    new_diffs = {}
    for n in Y.degree_range():
        d = Y.diff(n)
        if n in autos:
            d = inst.compose(d, autos[n][1])
        if n + 1 in autos:
            d = inst.compose(autos[n + 1][0], d)
        new_diffs[n] = d
    Y2 = Complex(inst, dict(Y.objects), new_diffs)
    i2 = ChainMap(i.source, Y2, {
        n: inst.compose(autos[n][0], i.component(n)) if n in autos else i.component(n)
        for n in set(i.components) | set(autos)
    })
    p2 = ChainMap(Y2, p.target, {
        n: inst.compose(p.component(n), autos[n][1]) if n in autos else p.component(n)
        for n in set(p.components) | set(autos)
    })
    return i2, p2


# -- bigraded instances -----------------------------------------------------


def random_gsystem(ring: CoeffRing, rng: random.Random, max_len: int = 3, max_rank: int = 2):
    """A random valid system in the complex-of-graded-objects convention."""
    from .gsystems import complex_to_gsystem, graded_complex_instance

    inst = graded_complex_instance(ring)
    return complex_to_gsystem(random_graded_complex(inst, rng, max_len=max_len, max_rank=max_rank))


def random_gmorphism(x, y, rng: random.Random):
    """A random morphism between two systems (via the chain-map solver)."""
    from .gsystems import chain_map_to_gmorphism, gsystem_to_complex

    f = random_chain_map(gsystem_to_complex(x), gsystem_to_complex(y), rng)
    return chain_map_to_gmorphism(f)


def _delta_column_piece(ring: CoeffRing, rng: random.Random, max_rank: int = 2):
    """A single column: any strict complex in the i direction, no j-map."""
    inst = ScalarEta(ring, ring.one())
    c = random_scalar_complex(inst, rng, max_len=3, max_rank=max_rank, min_deg=-1)
    j0 = rng.randint(-1, 1)
    ranks = {(i, j0): r for i, r in c.objects.items()}
    delta0 = {(i, j0): m for i, m in c.diffs.items()}
    return ranks, delta0, {}


def _delta_strip_piece(ring: CoeffRing, rng: random.Random, max_rank: int = 2):
    """A single row laid out along j: zero i-differential, strict j-map."""
    inst = ScalarEta(ring, ring.one())
    c = random_scalar_complex(inst, rng, max_len=3, max_rank=max_rank, min_deg=-1)
    i0 = rng.randint(-1, 1)
    ranks = {(i0, j): r for j, r in c.objects.items()}
    delta1 = {(i0, j): m for j, m in c.diffs.items()}
    return ranks, {}, delta1


def inductive_delta_complex(rng: Optional[random.Random] = None):
    """A Z/4 instance whose completion genuinely needs a level-2 solve.

    Three columns of the two-term complex N = [[0,1],[0,0]]; the j-maps
    commute with N, compose to zero with it, and square to 2-torsion that
    is only null-homotopic.  Any completion must carry a nonzero level-2
    component (the column-square homotopy)."""
    from .rings import Zmod
    from .gsystems import DeltaComplex

    ring = Zmod(4)
    c12 = rng.choice([1, 3]) if rng else 1
    e12 = rng.choice([1, 3]) if rng else 1
    N = RingMatrix.from_rows(ring, [[0, 1], [0, 0]])
    c = RingMatrix.from_rows(ring, [[2, c12], [0, 0]])
    e = RingMatrix.from_rows(ring, [[0, e12], [0, 2]])
    ranks = {(i, j): 2 for i in (0, 1) for j in (0, 1, 2)}
    delta0 = {(0, j): N for j in (0, 1, 2)}
    delta1 = {}
    for j in (0, 1):
        delta1[(0, j)] = c
        delta1[(1, j)] = e
    return DeltaComplex(ring, ranks, delta0, delta1)


def obstructed_delta_complex(ring: CoeffRing):
    """Two columns with commuting but non-orthogonal differentials.

    The identity j-map commutes with N strictly, yet N . Id is nonzero, so
    the signed level-1 relation of the completion fails (in any
    characteristic other than 2)."""
    from .gsystems import DeltaComplex

    N = RingMatrix.from_rows(ring, [[0, 1], [0, 0]])
    I = RingMatrix.identity(ring, 2)
    ranks = {(i, j): 2 for i in (0, 1) for j in (0, 1)}
    delta0 = {(0, j): N for j in (0, 1)}
    delta1 = {(0, 0): I, (1, 0): I}
    return DeltaComplex(ring, ranks, delta0, delta1)


def _delta_direct_sum(ring: CoeffRing, pieces):
    from .gsystems import DeltaComplex

    keys = sorted({pos for rk, _, _ in pieces for pos in rk})
    ranks = {pos: sum(rk.get(pos, 0) for rk, _, _ in pieces) for pos in keys}

    def assemble(which):
        out = {}
        for (i, j) in keys:
            ti, tj = (i + 1, j) if which == 0 else (i, j + 1)
            rows = [rk.get((ti, tj), 0) for rk, _, _ in pieces]
            cols = [rk.get((i, j), 0) for rk, _, _ in pieces]
            if not sum(rows) or not sum(cols):
                continue
            grid = [
                [pieces[bi][1 + which].get((i, j)) if bi == bj else None
                 for bj in range(len(pieces))]
                for bi in range(len(pieces))
            ]
            out[(i, j)] = RingMatrix.block(ring, grid, rows, cols)
        return out

    return DeltaComplex(ring, ranks, assemble(0), assemble(1))


def _delta_conjugate(x, rng: random.Random):
    """Disguise by degreewise unimodular changes of basis."""
    from .gsystems import DeltaComplex

    autos = {pos: random_unimodular(x.ring, r, rng) for pos, r in x.ranks.items()}

    def u(i, j):
        a = autos.get((i, j))
        return a[0] if a else RingMatrix.identity(x.ring, 0)

    def uinv(i, j):
        a = autos.get((i, j))
        return a[1] if a else RingMatrix.identity(x.ring, 0)

    d0 = {(i, j): u(i + 1, j) @ m @ uinv(i, j) for (i, j), m in x.delta0.items()}
    d1 = {(i, j): u(i, j + 1) @ m @ uinv(i, j) for (i, j), m in x.delta1.items()}
    return DeltaComplex(x.ring, x.ranks, d0, d1)


def random_delta_complex(
    ring: CoeffRing,
    rng: random.Random,
    max_rank: int = 2,
    allow_inductive: bool = True,
):
    """A random completable instance: columns, strips and (over Z/4) the
    inductive template, summed block-diagonally and conjugated degreewise.

    Every piece satisfies delta0 . delta1 = 0 = delta1 . delta0, which the
    sum and the conjugation preserve, so the level-1 relation of the
    completion always holds."""
    pieces = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.random()
        if kind < 0.45:
            pieces.append(_delta_column_piece(ring, rng, max_rank))
        elif kind < 0.85 or not (
            allow_inductive and ring.kind == "Zmod" and ring.modulus == 4
        ):
            pieces.append(_delta_strip_piece(ring, rng, max_rank))
        else:
            t = inductive_delta_complex(rng)
            pieces.append((t.ranks, t.delta0, t.delta1))
    return _delta_conjugate(_delta_direct_sum(ring, pieces), rng)


def random_strip_delta_complex(ring: CoeffRing, rng: random.Random, max_rank: int = 2):
    """Zero i-differential only: the regime where every strict column-wise
    map yields a completable cone."""
    pieces = [
        _delta_strip_piece(ring, rng, max_rank) for _ in range(rng.randint(1, 2))
    ]
    return _delta_conjugate(_delta_direct_sum(ring, pieces), rng)


def random_delta_map(X, Y, rng: random.Random, spread: int = 2):
    """A random strict column-wise chain map X -> Y (kernel-basis combination
    of the joint commutation system)."""
    from .gsystems import DeltaMap, MatrixProblem

    ring = X.ring
    prob = MatrixProblem(ring)
    slots = [pos for pos in X.positions if Y.rank(*pos)]
    for (i, j) in slots:
        prob.add_unknown((i, j), Y.rank(i, j), X.rank(i, j))
    have = set(slots)
    for (i, j) in sorted(set(X.positions) | set(Y.positions)):
        for (ti, tj, xd, yd) in (
            (i + 1, j, X.d0(i, j), Y.d0(i, j)),
            (i, j + 1, X.d1(i, j), Y.d1(i, j)),
        ):
            er, ec = Y.rank(ti, tj), X.rank(i, j)
            if not er or not ec:
                continue
            terms = []
            if (i, j) in have:
                terms.append(((i, j), yd, None, 1))
            if (ti, tj) in have:
                terms.append(((ti, tj), None, xd, -1))
            if terms:
                prob.add_equation((er, ec), terms, None)
    if not slots:
        return DeltaMap(X, Y, {})
    _, gens = prob.solve_full()
    if not gens:
        return DeltaMap(X, Y, {})
    comps = None
    for g in rng.sample(gens, min(len(gens), 3)):
        c = ring.canon(rng.randint(-spread, spread))
        if c == ring.zero():
            continue
        scaled = {k: m.scale(c) for k, m in g.items()}
        comps = scaled if comps is None else {k: comps[k] + scaled[k] for k in comps}
    return DeltaMap(X, Y, comps or {})


def columnwise_null_delta_map(X, Y, rng: random.Random):
    """alpha = sigma . delta1 + delta1 . sigma for random degreewise sigma.

    Requires the zero-i-differential regime (strip complexes) so that the
    result is a strict column-wise map; its completion is always
    eta-null-homotopic."""
    assert not X.delta0 and not Y.delta0
    ring = X.ring
    sigma = {}
    for (i, j) in X.positions:
        r, c = Y.rank(i, j - 1), X.rank(i, j)
        if r and c:
            sigma[(i, j)] = RingMatrix(
                ring, r, c, [rng.randint(-2, 2) for _ in range(r * c)]
            )

    def sg(i, j):
        m = sigma.get((i, j))
        if m is None:
            return RingMatrix.zero(ring, Y.rank(i, j - 1), X.rank(i, j))
        return m

    from .gsystems import DeltaMap

    comps = {}
    for (i, j) in X.positions:
        if not Y.rank(i, j):
            continue
        m = sg(i, j + 1) @ X.d1(i, j) + Y.d1(i, j - 1) @ sg(i, j)
        if not m.is_zero():
            comps[(i, j)] = m
    return DeltaMap(X, Y, comps)
