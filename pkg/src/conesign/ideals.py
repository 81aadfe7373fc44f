"""Ideal-level operations: elimination, intersection, quotient, saturation,
dimension, Hilbert-series degree data, tangent spaces, minimal primes with
certified primality, and multiplicities along components.

All ideals are presented by finite generating sets over an explicit ring.
Reduced Groebner bases are cached per monomial order, so repeated membership
tests and equality checks against the same presentation are cheap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InfiniteColengthError, NotHomogeneousError, PointNotOnVarietyError
from .factor import factor_polynomial, factor_univariate, is_irreducible
from .groebner import buchberger, exact_divide, normal_form
from .linalg import rational_rank, solve_combination
from .poly import (
    MonomialOrder,
    Polynomial,
    RingDescriptor,
    degrevlex,
    elimination_order,
    parse_generators,
)


class IdealPresentation:
    """An ideal of a polynomial ring, given by generators.

    Equality means equality of ideals (compared through canonical reduced
    Groebner bases), not equality of generating sets.
    """

    __slots__ = ("ring", "generators", "_gb_cache")

    def __init__(self, rng: RingDescriptor, generators):
        gens = tuple(g for g in generators if not g.is_zero())
        for g in gens:
            if g.ring != rng:
                raise ValueError("generator ring mismatch")
        self.ring = rng
        self.generators = gens
        self._gb_cache = {}

    def _order(self, order: MonomialOrder | None) -> MonomialOrder:
        return order if order is not None else degrevlex(self.ring)

    def gb(self, order: MonomialOrder | None = None) -> tuple:
        order = self._order(order)
        key = order.signature()
        cached = self._gb_cache.get(key)
        if cached is None:
            cached = tuple(buchberger(self.generators, order))
            self._gb_cache[key] = cached
        return cached

    def signature(self, order: MonomialOrder | None = None) -> tuple:
        order = self._order(order)
        return tuple(g.to_text(order) for g in self.gb(order))

    def contains(self, f: Polynomial, order: MonomialOrder | None = None) -> bool:
        order = self._order(order)
        return normal_form(f, self.gb(order), order).is_zero()

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_unit_ideal(self) -> bool:
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant()

    def with_extra(self, extra) -> "IdealPresentation":
        return IdealPresentation(self.ring, self.generators + tuple(extra))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealPresentation):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash((self.ring, self.signature()))

    def __repr__(self) -> str:
        body = ", ".join(g.to_text() for g in self.generators) or "0"
        return f"IdealPresentation({body})"

    def generator_texts(self) -> list:
        return [g.to_text() for g in self.generators]


def ideal(rng: RingDescriptor, text: str) -> IdealPresentation:
    return IdealPresentation(rng, parse_generators(text, rng))


def transplant(f: Polynomial, target: RingDescriptor) -> Polynomial:
    """Rewrite f in a ring that contains all of f's variables by name."""
    column_map = [target.var_index(v) for v in f.ring.variables]
    return f.remap(target, column_map)


def contains_ideal(big: IdealPresentation, small: IdealPresentation) -> bool:
    """True when small is a subset of big (same ambient ring)."""
    if big.ring != small.ring:
        raise ValueError("ideal comparison across different rings")
    return all(big.contains(g) for g in small.generators)


def _fresh_name(base: str, taken) -> str:
    if base not in taken:
        return base
    k = 0
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def eliminate(I: IdealPresentation, drop_names) -> IdealPresentation:
    """Intersect I with the subring omitting drop_names."""
    drop_names = tuple(drop_names)
    if not drop_names:
        return IdealPresentation(I.ring, I.generators)
    order = elimination_order(I.ring, drop_names)
    drop_idx = {I.ring.var_index(v) for v in drop_names}
    new_ring = I.ring.drop(drop_names)
    column_map = []
    j = 0
    for i in range(I.ring.arity):
        if i in drop_idx:
            column_map.append(None)
            j += 0
        else:
            column_map.append(new_ring.var_index(I.ring.variables[i]))
    kept = []
    for g in I.gb(order):
        if g.support_variables() & drop_idx:
            continue
        kept.append(g.remap(new_ring, column_map))
    return IdealPresentation(new_ring, kept)


def intersect(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    if I.ring != J.ring:
        raise ValueError("intersection requires a common ring")
    if I.is_zero_ideal() or J.is_zero_ideal():
        return IdealPresentation(I.ring, ())
    rng = I.ring
    w = _fresh_name("w", rng.variables)
    ext = rng.extend((w,))
    wpoly = Polynomial.variable(ext, ext.var_index(w))
    one = Polynomial.one(ext)
    gens = [wpoly * transplant(g, ext) for g in I.generators]
    gens += [(one - wpoly) * transplant(g, ext) for g in J.generators]
    K = eliminate(IdealPresentation(ext, gens), (w,))
    back = [rng.var_index(v) for v in K.ring.variables]
    return IdealPresentation(rng, [g.remap(rng, back) for g in K.generators])


def quotient_by_poly(I: IdealPresentation, f: Polynomial) -> IdealPresentation:
    """Colon ideal I : (f) for a single nonzero polynomial f."""
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    if f.is_constant():
        return IdealPresentation(I.ring, I.generators)
    K = intersect(I, IdealPresentation(I.ring, (f,)))
    order = degrevlex(I.ring)
    return IdealPresentation(I.ring, [exact_divide(g, f, order) for g in K.generators])


def saturate(I: IdealPresentation, f: Polynomial) -> IdealPresentation:
    """Stable colon ideal I : (f)^infinity."""
    current = IdealPresentation(I.ring, I.generators)
    while True:
        nxt = quotient_by_poly(current, f)
        if nxt.signature() == current.signature():
            return current
        current = nxt


def radical_contains(I: IdealPresentation, f: Polynomial) -> bool:
    """Membership of f in the radical of I, by the inverted-element trick."""
    if f.is_zero():
        return True
    rng = I.ring
    w = _fresh_name("w", rng.variables)
    ext = rng.extend((w,))
    wpoly = Polynomial.variable(ext, ext.var_index(w))
    gens = [transplant(g, ext) for g in I.generators]
    gens.append(Polynomial.one(ext) - wpoly * transplant(f, ext))
    return IdealPresentation(ext, gens).is_unit_ideal()


def dimension(I: IdealPresentation) -> int:
    """Krull dimension of the quotient ring; -1 for the unit ideal."""
    gb = I.gb()
    if I.is_unit_ideal():
        return -1
    n = I.ring.arity
    supports = []
    order = degrevlex(I.ring)
    for g in gb:
        m, _ = g.leading(order)
        supports.append(frozenset(i for i, e in enumerate(m) if e))
    appearing = sorted(set().union(*supports)) if supports else []
    free = n - len(appearing)
    best = 0
    for r in range(len(appearing), 0, -1):
        found = False
        for combo in itertools.combinations(appearing, r):
            S = set(combo)
            if not any(sup <= S for sup in supports):
                best = r
                found = True
                break
        if found:
            break
    return free + best


# ---------------------------------------------------------------------------
# Hilbert series of monomial quotients, degrees, projective Hilbert polynomial
# ---------------------------------------------------------------------------


def _padd(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pshiftmul(a, k):
    return [0] * k + list(a)


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, c in enumerate(a):
        if c == 0:
            continue
        for j, d in enumerate(b):
            out[i + j] += c * d
    return out


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _minimalize_monomials(monos):
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(all(o[i] <= m[i] for i in range(len(m))) for o in out):
            out.append(m)
    return out


def hilbert_numerator(monos, arity: int) -> list:
    """Numerator N with series(R/M) = N(t) / (1-t)^arity, M = (monos).

    Splits on the most shared variable; base cases are the empty ideal,
    a principal ideal, and pairwise coprime generators.
    """
    memo = {}

    def rec(ms):
        key = tuple(sorted(ms))
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not ms:
            res = [1]
        elif any(sum(m) == 0 for m in ms):
            res = []
        else:
            counts = [0] * arity
            for m in ms:
                for i, e in enumerate(m):
                    if e:
                        counts[i] += 1
            pivot = max(range(arity), key=lambda i: counts[i])
            if counts[pivot] <= 1:
                res = [1]
                for m in ms:
                    res = _pmul(res, _padd([1], _pshiftmul([-1], sum(m))))
            else:
                added = [m for m in ms if m[pivot] == 0]
                unit = tuple(1 if i == pivot else 0 for i in range(arity))
                added = _minimalize_monomials(added + [unit])
                colon = _minimalize_monomials(
                    [tuple(e - 1 if i == pivot else e for i, e in enumerate(m))
                     if m[pivot] else m for m in ms])
                res = _padd(rec(added), _pshiftmul(rec(colon), 1))
        res = _ptrim(list(res))
        memo[key] = res
        return res

    return rec(_minimalize_monomials(monos))


def _is_homogeneous_ideal(I: IdealPresentation) -> bool:
    return all(g.is_homogeneous() for g in I.gb())


def graded_degree_data(I: IdealPresentation):
    """(Q, D) with series(R/I) = Q(t) / (1-t)^D and Q(1) != 0.

    Requires a homogeneous ideal; Q(1) is the degree of the projective
    scheme cut out by I, and D-1 its projective dimension.
    """
    gb = I.gb()
    if I.is_unit_ideal():
        raise ValueError("degree of the empty scheme is undefined")
    for g in gb:
        if not g.is_homogeneous():
            raise NotHomogeneousError(
                "graded degree data requires a homogeneous ideal")
    order = degrevlex(I.ring)
    lts = [g.leading(order)[0] for g in gb]
    N = hilbert_numerator(lts, I.ring.arity)
    D = I.ring.arity
    while N and sum(N) == 0:
        partial = []
        acc = 0
        for c in N:
            acc += c
            partial.append(acc)
        N = _ptrim(partial[:-1] if partial and partial[-1] == 0 else partial)
        D -= 1
    return N, D


def homogenize_ideal(I: IdealPresentation, name: str | None = None):
    """Homogenize with a fresh last variable; returns (ideal, var_name).

    Works from the degrevlex reduced basis, so the result is the full
    homogenization of the ideal, saturated with respect to the new variable.
    """
    h = _fresh_name(name or "h", I.ring.variables)
    ext = I.ring.extend((h,))
    hi = ext.var_index(h)
    gens = []
    for g in I.gb():
        d = g.total_degree()
        terms = {}
        for m, c in g.terms.items():
            terms[tuple(m) + (d - sum(m),)] = c
        gens.append(Polynomial(ext, terms, normalize=False))
    return IdealPresentation(ext, gens), h


def hilbert_degree(I: IdealPresentation, homogenize: bool = False) -> int:
    """Degree of the (closure of the) scheme cut out by I."""
    if not _is_homogeneous_ideal(I):
        if not homogenize:
            raise NotHomogeneousError(
                "ideal is not homogeneous; pass homogenize=True for the "
                "projective closure degree")
        I, _ = homogenize_ideal(I)
    Q, _ = graded_degree_data(I)
    return sum(Q)


def _binomial_poly(a: int, k: int) -> Fraction:
    num = 1
    for j in range(k):
        num *= a - j
    return Fraction(num, math.factorial(k))


def hilbert_polynomial_value(I: IdealPresentation, s: int) -> Fraction:
    """Value at s of the Hilbert polynomial of the graded quotient."""
    Q, D = graded_degree_data(I)
    if D == 0:
        return Fraction(0)
    total = Fraction(0)
    for i, q in enumerate(Q):
        total += q * _binomial_poly(s - i + D - 1, D - 1)
    return total


# ---------------------------------------------------------------------------
# Jacobians and tangent spaces
# ---------------------------------------------------------------------------


def jacobian(I: IdealPresentation) -> list:
    return [[g.partial(i) for i in range(I.ring.arity)] for g in I.generators]


def is_point_on(I: IdealPresentation, point) -> bool:
    return all(g.evaluate(point) == 0 for g in I.generators)


def tangent_dimension_at_point(I: IdealPresentation, point) -> int:
    """Dimension of the embedded Zariski tangent space at a rational point."""
    point = tuple(I.ring.coeff(c) for c in point)
    if not is_point_on(I, point):
        raise PointNotOnVarietyError(
            "tangent space requested at a point outside the zero set")
    rows = [[e.evaluate(point) for e in row] for row in jacobian(I)]
    return I.ring.arity - rational_rank(rows)


def _poly_rank_mod_prime(rows, P: IdealPresentation) -> int:
    """Rank of a polynomial matrix over the fraction field of R/P.

    Fraction-free elimination; every entry is kept reduced modulo P.
    """
    order = degrevlex(P.ring)
    gb = P.gb(order)
    red = lambda f: normal_form(f, gb, order)
    mat = [[red(e) for e in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if not mat[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        piv = mat[rank][col]
        for r in range(rank + 1, nrows):
            if mat[r][col].is_zero():
                continue
            factor = mat[r][col]
            mat[r] = [red(piv * mat[r][c] - factor * mat[rank][c])
                      for c in range(ncols)]
        rank += 1
        if rank == nrows:
            break
    return rank


def generic_tangent_dimension(I: IdealPresentation, P: IdealPresentation) -> int:
    """Tangent-space dimension of V(I) at the generic point of V(P).

    P must be a prime containing I; the Jacobian of I's generators is
    row-reduced over the function field of V(P).
    """
    if I.ring != P.ring:
        raise ValueError("ideal and prime live in different rings")
    if not contains_ideal(P, I):
        raise ValueError("the given prime does not contain the ideal")
    return I.ring.arity - _poly_rank_mod_prime(jacobian(I), P)


# ---------------------------------------------------------------------------
# Standard monomials and colength
# ---------------------------------------------------------------------------


def standard_monomials(I: IdealPresentation,
                       order: MonomialOrder | None = None) -> list:
    """Monomial basis of R/I when finite, else InfiniteColengthError."""
    order = order if order is not None else degrevlex(I.ring)
    gb = I.gb(order)
    if I.is_unit_ideal():
        return []
    n = I.ring.arity
    lts = [g.leading(order)[0] for g in gb]
    caps = [None] * n
    for m in lts:
        sup = [i for i, e in enumerate(m) if e]
        if len(sup) == 1:
            i = sup[0]
            if caps[i] is None or m[i] < caps[i]:
                caps[i] = m[i]
    if any(c is None for c in caps):
        raise InfiniteColengthError("quotient ring has infinite dimension")

    out = []

    def recurse(prefix):
        i = len(prefix)
        if i == n:
            m = tuple(prefix)
            if not any(all(l[j] <= m[j] for j in range(n)) for l in lts):
                out.append(m)
            return
        for e in range(caps[i]):
            recurse(prefix + [e])

    recurse([])
    out.sort(key=order.key)
    return out


def colength(I: IdealPresentation) -> int:
    return len(standard_monomials(I))


# ---------------------------------------------------------------------------
# Minimal primes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeComponent:
    """One minimal component of a decomposition, with certification flags."""

    prime: IdealPresentation
    multiplicity: int
    dimension: int
    degree: int
    primality: str                 # "certified" or "undecided"
    geometrically_irreducible: str  # "certified" or "unknown"

    def to_json_dict(self) -> dict:
        return {
            "generators": [g.to_text() for g in self.prime.gb()],
            "multiplicity": self.multiplicity,
            "dimension": self.dimension,
            "degree": self.degree,
            "primality_status": self.primality,
            "geometric_irreducibility": self.geometrically_irreducible,
        }


def _variable_supports(I: IdealPresentation):
    return [g.support_variables() for g in I.gb()]


def _is_monomial_prime(gb) -> bool:
    for g in gb:
        if not g.is_term():
            return False
        (m, _), = g.terms.items()
        if sum(m) != 1:
            return False
    return True


def _is_linear(gb) -> bool:
    return all(g.total_degree() <= 1 for g in gb)


def minimal_polynomial_of_variable(I: IdealPresentation, var: int) -> list:
    """Monic minimal polynomial of x_var acting on the finite quotient R/I.

    Returned as a dense coefficient list, constant term first.
    """
    order = degrevlex(I.ring)
    basis = standard_monomials(I, order)
    index = {m: k for k, m in enumerate(basis)}
    gb = I.gb(order)
    x = Polynomial.variable(I.ring, var)
    power = Polynomial.one(I.ring)
    vectors = []
    while True:
        vec = [Fraction(0)] * len(basis)
        for m, c in normal_form(power, gb, order).terms.items():
            vec[index[m]] = c
        combo = solve_combination(vectors, vec)
        if combo is not None:
            coeffs = [-c for c in combo] + [Fraction(1)]
            return coeffs
        vectors.append(vec)
        power = power * x


def _zero_dim_prime_test(I: IdealPresentation):
    """('prime',) / ('split', polys) / ('undecided',) for 0-dimensional I."""
    size = colength(I)
    if size == 1:
        return ("prime",)
    best_degree = 0
    for var in range(I.ring.arity):
        coeffs = minimal_polynomial_of_variable(I, var)
        facs = factor_univariate(coeffs)
        if len(facs) > 1 or facs[0][1] > 1:
            x = Polynomial.variable(I.ring, var)
            branch = []
            for cs, _ in facs:
                g = Polynomial.zero(I.ring)
                for k, c in enumerate(cs):
                    g = g + I.ring.coeff(c) * x**k
                branch.append(g)
            return ("split", branch)
        best_degree = max(best_degree, len(coeffs) - 1)
    if best_degree == size:
        return ("prime",)
    return ("undecided",)


def _geometric_flag(I: IdealPresentation) -> str:
    """'certified' when irreducibility over Q provably persists over C."""
    gb = I.gb()
    if not gb:
        return "certified"
    if _is_monomial_prime(gb) or _is_linear(gb):
        return "certified"
    for g in I.generators:
        for var in g.support_variables():
            coeff_terms = {}
            linear = True
            for m, c in g.terms.items():
                if m[var] == 0:
                    continue
                if m[var] > 1:
                    linear = False
                    break
                rest = tuple(e if i != var else 0 for i, e in enumerate(m))
                coeff_terms[rest] = c
            if linear and list(coeff_terms) == [(0,) * g.ring.arity]:
                return "certified"
    if len(gb) == 1 and gb[0].is_homogeneous() and gb[0].total_degree() == 2:
        g = gb[0]
        n = I.ring.arity
        gram = [[Fraction(0)] * n for _ in range(n)]
        for m, c in g.terms.items():
            sup = [i for i, e in enumerate(m) if e]
            if len(sup) == 1:
                gram[sup[0]][sup[0]] = c
            else:
                i, j = sup
                gram[i][j] = gram[j][i] = Fraction(c, 2)
        if rational_rank(gram) >= 3:
            return "certified"
    return "unknown"


def _certify_prime(I: IdealPresentation):
    """('prime',) / ('split', polys) / ('undecided',)."""
    gb = I.gb()
    if not gb:
        return ("prime",)
    if _is_monomial_prime(gb) or _is_linear(gb):
        return ("prime",)
    if len(gb) == 1:
        if is_irreducible(gb[0]):
            return ("prime",)
        return ("split", [f for f, _ in factor_polynomial(gb[0])])
    if dimension(I) == 0:
        return _zero_dim_prime_test(I)
    return ("undecided",)


def _find_split(I: IdealPresentation):
    for g in I.gb():
        facs = factor_polynomial(g)
        if len(facs) > 1 or (facs and facs[0][1] > 1):
            return [f for f, _ in facs]
    return None


def minimal_primes(I: IdealPresentation) -> list:
    """Minimal primes of I over Q, as PrimeComponent records.

    Components whose primality cannot be certified by the implemented
    rules are still returned, flagged "undecided".  The list is sorted by
    descending dimension, then ascending degree, then basis text.
    """
    if I.is_unit_ideal():
        return []
    found = {}
    seen = set()
    work = [I]
    while work:
        K = work.pop()
        sig = K.signature()
        if sig in seen:
            continue
        seen.add(sig)
        if K.is_unit_ideal():
            continue
        split = _find_split(K)
        if split is not None:
            for f in split:
                work.append(K.with_extra((f,)))
            continue
        verdict = _certify_prime(K)
        if verdict[0] == "split":
            for f in verdict[1]:
                work.append(K.with_extra((f,)))
            continue
        status = "certified" if verdict[0] == "prime" else "undecided"
        # canonical presentation: downstream cone computations and JSON
        # output both key off the generator list
        found[sig] = (IdealPresentation(K.ring, K.gb()), status)

    # keep the ideals minimal under inclusion
    entries = list(found.values())
    keep = []
    for i, (K, status) in enumerate(entries):
        redundant = False
        for j, (L, _) in enumerate(entries):
            if i == j:
                continue
            if contains_ideal(K, L) and K.signature() != L.signature():
                redundant = True
                break
        if not redundant:
            keep.append((K, status))

    comps = []
    primes = [K for K, _ in keep]
    for K, status in keep:
        dim = dimension(K)
        Kh, _ = homogenize_ideal(K)
        Q, _ = graded_degree_data(Kh)
        deg = sum(Q)
        mult = multiplicity_along(I, K, [P for P in primes
                                         if P.signature() != K.signature()])
        comps.append(PrimeComponent(
            prime=K,
            multiplicity=mult,
            dimension=dim,
            degree=deg,
            primality=status,
            geometrically_irreducible=_geometric_flag(K),
        ))
    comps.sort(key=lambda c: (-c.dimension, c.degree, c.prime.signature()))
    return comps


def multiplicity_along(I: IdealPresentation, P: IdealPresentation,
                       other_primes=None) -> int:
    """Length of the local ring of V(I) at the generic point of V(P).

    Computed projectively: homogenize, cut away the other components by
    saturation, and take the ratio of degrees, which is exact for the
    component-supported part.
    """
    if not contains_ideal(P, I):
        raise ValueError("multiplicity requested along a non-component")
    if other_primes is None:
        other_primes = [c.prime for c in minimal_primes(I)
                        if c.prime.signature() != P.signature()]
    Ih, _ = homogenize_ideal(I)
    Ph, _ = homogenize_ideal(P)
    Ph_in = IdealPresentation(Ih.ring, [transplant(g, Ih.ring)
                                        for g in Ph.generators])
    J = Ih
    for Q in other_primes:
        Qh, _ = homogenize_ideal(Q)
        pick = None
        for g in Qh.generators:
            cand = transplant(g, Ih.ring)
            if not Ph_in.contains(cand):
                pick = cand
                break
        if pick is None:
            raise ValueError("component list contains nested primes")
        J = saturate(J, pick)
    QJ, DJ = graded_degree_data(J)
    QP, DP = graded_degree_data(Ph)
    if DJ != DP:
        raise ArithmeticError("saturation left extra components behind")
    degJ, degP = sum(QJ), sum(QP)
    if degJ % degP:
        raise ArithmeticError("degree ratio is not an integer")
    return degJ // degP


def zero_dim_multiplicity(I: IdealPresentation, P: IdealPresentation,
                          other_primes) -> int:
    """Colength-ratio multiplicity for isolated points; test cross-check."""
    J = I
    for Q in other_primes:
        pick = None
        for g in Q.generators:
            if not P.contains(g):
                pick = g
                break
        if pick is None:
            raise ValueError("component list contains nested primes")
        J = saturate(J, pick)
    return colength(J) // colength(P)
