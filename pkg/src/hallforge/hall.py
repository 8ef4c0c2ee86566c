"""Hall numbers, Euler forms and Green's formula over a hereditary quiver category.

Conventions: hall_number(reg, a, b, c) counts subrepresentations of a
representative of c that are isomorphic to b with quotient isomorphic to a
(second lower index = subobject).  All values are exact ints / Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .errors import InternalInconsistency
from .linalg import (Subspace, gaussian_binomial, rank, subspace_from_vectors,
                     subspaces_containing)
from .quivers import (DimVec, Quiver, dims_add, dims_leq, dims_sub, subdimvecs,
                      topological_order)
from .reps import (ClassRegistry, IsoClassId, Rep, _arrows_vertex_disjoint,
                   is_isomorphic, is_subrep, quotient_by_subrep,
                   restrict_to_subspaces)


def euler_add(quiver: Quiver, d1: DimVec, d2: DimVec) -> int:
    """Additive Euler form: sum_v d1_v d2_v - sum_{a: s->t} d1_s d2_t."""
    out = sum(x * y for x, y in zip(d1, d2))
    for a in quiver.arrows:
        out -= d1[a.source] * d2[a.target]
    return out


def euler_mult(reg: ClassRegistry, d1: DimVec, d2: DimVec) -> Fraction:
    """Multiplicative Euler form |Hom|/|Ext1| = q^{euler_add}; depends only on dims."""
    e = euler_add(reg.quiver, d1, d2)
    q = reg.p
    return Fraction(q ** e) if e >= 0 else Fraction(1, q ** (-e))


def ext1_count(reg: ClassRegistry, a: IsoClassId, b: IsoClassId) -> int:
    """|Ext^1(a, b)| via dim Ext^1 = dim Hom - <dims a, dims b> (hereditary)."""
    e = reg.hom_dim_classes(a, b) - euler_add(reg.quiver, a.dims, b.dims)
    if e < 0:
        raise InternalInconsistency("negative Ext^1 dimension; category is not behaving hereditarily")
    return reg.p ** e


def closed_subspace_tuples(rep: Rep, sub_dims: DimVec) -> Iterator[tuple[Subspace, ...]]:
    """All per-vertex subspace tuples of the given dims closed under the arrow maps.

    Vertices are filled in topological order, so at each vertex only the
    subspaces containing the images of the already-chosen source subspaces
    are enumerated; every arrow constraint is enforced exactly once.
    """
    if not dims_leq(sub_dims, rep.dims):
        return
    q = rep.quiver
    order = topological_order(q)
    incoming = [[(idx, a.source) for idx, a in enumerate(q.arrows) if a.target == v]
                for v in range(q.n)]
    p = rep.p

    def fill(pos: int, chosen: dict[int, Subspace]) -> Iterator[tuple[Subspace, ...]]:
        if pos == len(order):
            yield tuple(chosen[v] for v in range(q.n))
            return
        v = order[pos]
        vecs = []
        for idx, src in incoming[v]:
            for b in chosen[src].basis:
                vecs.append(rep.mats[idx].apply(b))
        base = subspace_from_vectors(p, rep.dims[v], vecs)
        if base.dim > sub_dims[v]:
            return
        for u in subspaces_containing(base, sub_dims[v], ambient_bound=max(6, rep.dims[v])):
            chosen[v] = u
            yield from fill(pos + 1, chosen)
        chosen.pop(v, None)

    for subs in fill(0, {}):
        if __debug__ and not is_subrep(rep, subs):
            raise InternalInconsistency("constructed subspace tuple is not arrow-closed")
        yield subs


def _is_split_class(cid: IsoClassId) -> bool:
    # The all-zero matrix tuple is always the first one enumerated, so the
    # semisimple class of any dimension vector has index 0.
    return cid.index == 0


def _count_with_meet(d: int, w: int, u: int, j: int, p: int) -> int:
    """#{U <= F_p^d : dim U = u, dim(U meet W) = j} for any fixed W of dim w."""
    if j < 0 or j > min(u, w) or u - j > d - w or u < 0 or u > d:
        return 0
    return (gaussian_binomial(w, j, p) * gaussian_binomial(d - w, u - j, p)
            * p ** ((w - j) * (u - j)))


def _rank_tuple(reg: ClassRegistry, cid: IsoClassId) -> tuple[int, ...]:
    memo = reg.memo("rank_tuple")
    if cid not in memo:
        memo[cid] = tuple(rank(m) for m in reg.representative(cid).mats)
    return memo[cid]


def _hall_number_rank_form(reg: ClassRegistry, a: IsoClassId, b: IsoClassId,
                           c: IsoClassId) -> int:
    """Subobject count when every arrow touches its own pair of vertices.

    There the class of a representation is its arrow-map rank tuple, and a
    subspace pair (U_s, U_t) around one arrow M contributes independently:
    the subobject rank is r_b = dim U_s - dim(U_s meet ker M) and the
    quotient rank is r_a = rank M - dim(im M meet U_t), so the count is a
    product of two subspace-incidence counts, one for U_s against ker M and
    one for U_t against im M among the overspaces of M(U_s).
    """
    p = reg.p
    ra, rb, rc = (_rank_tuple(reg, x) for x in (a, b, c))
    g = 1
    touched = set()
    for idx, arr in enumerate(reg.quiver.arrows):
        touched.update((arr.source, arr.target))
        cs, ct = c.dims[arr.source], c.dims[arr.target]
        bs, bt = b.dims[arr.source], b.dims[arr.target]
        big, r_sub, r_quot = rc[idx], rb[idx], ra[idx]
        g *= _count_with_meet(cs, cs - big, bs, bs - r_sub, p)
        g *= _count_with_meet(ct - r_sub, big - r_sub, bt - r_sub,
                              big - r_quot - r_sub, p)
        if g == 0:
            return 0
    for v in range(reg.quiver.n):
        if v not in touched:
            g *= gaussian_binomial(c.dims[v], b.dims[v], p)
    return g


def hall_number(reg: ClassRegistry, a: IsoClassId, b: IsoClassId, c: IsoClassId) -> int:
    """Number of subobjects of c isomorphic to b with quotient isomorphic to a."""
    if dims_add(a.dims, b.dims) != tuple(c.dims):
        return 0
    memo = reg.memo("hall_number")
    key = (a, b, c)
    if key in memo:
        return memo[key]
    if _is_split_class(c):
        # Semisimple ambient: every subspace tuple is closed, subs and quotients
        # are semisimple of complementary dims, so only split a, b contribute.
        if _is_split_class(a) and _is_split_class(b):
            g = 1
            for cv, bv in zip(c.dims, b.dims):
                g *= gaussian_binomial(cv, bv, reg.p)
        else:
            g = 0
        memo[key] = g
        return g
    if _arrows_vertex_disjoint(reg.quiver):
        g = _hall_number_rank_form(reg, a, b, c)
        memo[key] = g
        return g
    rep_c = reg.representative(c)
    rep_b = reg.representative(b)
    rep_a = reg.representative(a)
    g = 0
    for subs in closed_subspace_tuples(rep_c, b.dims):
        sub = restrict_to_subspaces(rep_c, subs)
        if not is_isomorphic(sub, rep_b, reg.iso_enum_bound):
            continue
        quot = quotient_by_subrep(rep_c, subs)
        if is_isomorphic(quot, rep_a, reg.iso_enum_bound):
            g += 1
    memo[key] = g
    return g


def ext1_middle_count(reg: ClassRegistry, a: IsoClassId, b: IsoClassId, c: IsoClassId) -> int:
    """|Ext^1(a, b)_c|: extension classes of a by b with middle term isomorphic to c.

    Computed from the subobject count by the standard homological identity
    |Ext^1(a,b)_c| = g^c_{a,b} |Hom(a,b)| a_a a_b / a_c.
    """
    g = hall_number(reg, a, b, c)
    if g == 0:
        return 0
    num = g * reg.p ** reg.hom_dim_classes(a, b) * reg.aut_count(a) * reg.aut_count(b)
    den = reg.aut_count(c)
    if num % den != 0:
        raise InternalInconsistency("extension count with fixed middle is not an integer")
    return num // den


def gamma_coeff(reg: ClassRegistry, a: IsoClassId, b: IsoClassId,
                m: IsoClassId, n: IsoClassId) -> Fraction:
    """Normalized count of 4-term exact sequences 0 -> m -> b -> a -> n -> 0.

    gamma = sum_I g^b_{I,m} g^a_{n,I} a_m a_n a_I / (a_a a_b), where I runs over
    classes of dims(b) - dims(m) = dims(a) - dims(n).
    """
    di = dims_sub(b.dims, m.dims)
    if di != dims_sub(a.dims, n.dims) or any(x < 0 for x in di):
        return Fraction(0)
    total = Fraction(0)
    for i_cls in reg.classes(di):
        g_b = hall_number(reg, i_cls, m, b)
        if g_b == 0:
            continue
        g_a = hall_number(reg, n, i_cls, a)
        if g_a == 0:
            continue
        total += Fraction(g_b * g_a * reg.aut_count(i_cls))
    return total * Fraction(reg.aut_count(m) * reg.aut_count(n),
                            reg.aut_count(a) * reg.aut_count(b))


def green_sides(reg: ClassRegistry, a: IsoClassId, b: IsoClassId,
                a2: IsoClassId, b2: IsoClassId) -> tuple[Fraction, Fraction]:
    """Both sides of Green's formula for the quadruple (a, b, a2, b2).

    Left:  a_a a_b a_{a2} a_{b2} * sum_c g^c_{a,b} g^c_{a2,b2} / a_c.
    Right: sum over class quadruples (x, y, x2, y2) with x+x2 = a, y+y2 = b,
           x+y = a2, x2+y2 = b2 of |Ext^1(x,y2)|/|Hom(x,y2)| times the four
           Hall numbers times a_x a_y a_{x2} a_{y2}.
    """
    lhs = Fraction(0)
    if dims_add(a.dims, b.dims) == dims_add(a2.dims, b2.dims):
        for c in reg.classes(dims_add(a.dims, b.dims)):
            g1 = hall_number(reg, a, b, c)
            if g1 == 0:
                continue
            g2 = hall_number(reg, a2, b2, c)
            if g2 == 0:
                continue
            lhs += Fraction(g1 * g2, reg.aut_count(c))
        lhs *= (reg.aut_count(a) * reg.aut_count(b)
                * reg.aut_count(a2) * reg.aut_count(b2))

    rhs = Fraction(0)
    dx_max = tuple(min(u, v) for u, v in zip(a.dims, a2.dims))
    for dx in subdimvecs(dx_max):
        dx2 = dims_sub(a.dims, dx)
        dy = dims_sub(a2.dims, dx)
        dy2 = dims_sub(b2.dims, dx2)
        if any(v < 0 for v in dx2 + dy + dy2):
            continue
        if dims_add(dy, dy2) != tuple(b.dims):
            continue
        for x in reg.classes(dx):
            for x2 in reg.classes(dx2):
                g_a = hall_number(reg, x, x2, a)
                if g_a == 0:
                    continue
                for y in reg.classes(dy):
                    g_a2 = hall_number(reg, x, y, a2)
                    if g_a2 == 0:
                        continue
                    for y2 in reg.classes(dy2):
                        g_b = hall_number(reg, y, y2, b)
                        if g_b == 0:
                            continue
                        g_b2 = hall_number(reg, x2, y2, b2)
                        if g_b2 == 0:
                            continue
                        factor = Fraction(ext1_count(reg, x, y2),
                                          reg.p ** reg.hom_dim_classes(x, y2))
                        rhs += (factor * g_a * g_b * g_a2 * g_b2
                                * reg.aut_count(x) * reg.aut_count(y)
                                * reg.aut_count(x2) * reg.aut_count(y2))
    return lhs, rhs
