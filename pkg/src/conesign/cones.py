"""Normal cones of affine embeddings and their signed support cycles.

The cone of V(J) inside affine space is presented in an extended ring with
one fresh variable per generator of J, through the Rees-algebra kernel.
Component data (multiplicities, images under the projection back to the
base, domination flags) feeds the Euler-obstruction and Behrend layers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import (
    IdealPresentation,
    _fresh_name,
    dimension,
    eliminate,
    minimal_primes,
    radical_contains,
    saturate,
    transplant,
)
from .poly import Polynomial, RingDescriptor

_CONE_PREFIXES = ("e", "c", "w", "q")


def cone_variable_names(rng: RingDescriptor, k: int) -> tuple:
    """k fresh names e1..ek, falling back to other prefixes on collision."""
    for prefix in _CONE_PREFIXES:
        names = tuple(f"{prefix}{i}" for i in range(1, k + 1))
        if not set(names) & set(rng.variables):
            return names
    raise ValueError("could not pick collision-free cone variable names")


def rees_ideal(J: IdealPresentation):
    """Kernel of R[e1..ek] -> R[t], e_i -> t*g_i, as (ideal, cone names).

    Computed from the graph ideal (e_i - t*g_i), saturated at t and then
    eliminated down to the cone ring.  The presentation is rebuilt from
    the reduced basis of J, never from the raw generator list, so equal
    ideals always produce identical cone output.
    """
    basis = [g for g in J.gb() if not g.is_zero()]
    k = len(basis)
    names = cone_variable_names(J.ring, k)
    ext = J.ring.extend(names)
    if k == 0:
        return IdealPresentation(ext, ()), names
    tname = _fresh_name("t", ext.variables)
    big = ext.extend((tname,))
    t = Polynomial.variable(big, tname)
    gens = []
    for name, g in zip(names, basis):
        e = Polynomial.variable(big, name)
        gens.append(e - t * transplant(g, big))
    graph = saturate(IdealPresentation(big, gens), t)
    flat = eliminate(graph, (tname,))
    return IdealPresentation(ext, [transplant(g, ext) for g in flat.generators]), names


def normal_cone_ideal(J: IdealPresentation):
    """Presentation of the normal cone of V(J), as (ideal in R[e], names)."""
    R, names = rees_ideal(J)
    ext = R.ring
    return R.with_extra(transplant(g, ext) for g in J.gb()), names


@dataclass(frozen=True)
class ConeComponent:
    """One irreducible component of a normal cone, with projection data."""

    cone_prime: IdealPresentation
    multiplicity: int
    image: IdealPresentation
    image_dimension: int
    dominates: bool
    primality: str
    geometrically_irreducible: str

    def to_json_dict(self) -> dict:
        return {
            "cone_prime": [g.to_text() for g in self.cone_prime.gb()],
            "multiplicity": self.multiplicity,
            "image": [g.to_text() for g in self.image.gb()],
            "image_dim": self.image_dimension,
            "dominates": self.dominates,
            "primality_status": self.primality,
        }


def cone_components(J: IdealPresentation) -> list:
    """Minimal primes of the normal cone with multiplicities and images.

    A component dominates when its image closure equals the support of J
    itself (radical equality).
    """
    C, names = normal_cone_ideal(J)
    out = []
    for comp in minimal_primes(C):
        image = eliminate(comp.prime, names)
        image = IdealPresentation(J.ring, [transplant(g, J.ring)
                                           for g in image.generators])
        dominates = all(radical_contains(J, g) for g in image.generators)
        out.append(ConeComponent(
            cone_prime=comp.prime,
            multiplicity=comp.multiplicity,
            image=image,
            image_dimension=dimension(image),
            dominates=dominates,
            primality=comp.primality,
            geometrically_irreducible=comp.geometrically_irreducible,
        ))
    return out


@dataclass(frozen=True)
class CycleTerm:
    prime: IdealPresentation
    coefficient: int
    dimension: int


@dataclass(frozen=True)
class Cycle:
    """Formal integer combination of prime ideals (pairwise distinct)."""

    terms: tuple

    def to_json_dict(self) -> dict:
        return {"terms": [{"prime": [g.to_text() for g in t.prime.gb()],
                           "coeff": t.coefficient} for t in self.terms]}


def signed_support_cycle(J: IdealPresentation) -> Cycle:
    """Sum of (-1)^(dim image) * multiplicity * [image] over cone components.

    Components sharing an image are merged into a single term; terms with
    coefficient zero are dropped (cannot happen here: shared image means
    shared dimension, so contributions share a sign).
    """
    buckets = {}
    for comp in cone_components(J):
        key = comp.image.signature()
        coeff = (-1) ** comp.image_dimension * comp.multiplicity
        if key in buckets:
            prime, old, dim = buckets[key]
            buckets[key] = (prime, old + coeff, dim)
        else:
            buckets[key] = (comp.image, coeff, comp.image_dimension)
    terms = [CycleTerm(prime, coeff, dim)
             for prime, coeff, dim in buckets.values() if coeff != 0]
    terms.sort(key=lambda t: (-t.dimension, t.prime.signature()))
    return Cycle(tuple(terms))
