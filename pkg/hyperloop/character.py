from collections import deque
from fractions import Fraction
from typing import Any, Dict, List, Sequence
import functools
import logging

import attr

from .rootfold import RootSystem, Weight, weyl_orbit

logger = logging.getLogger(__name__)


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True)
class Character:
    multiplicities: Dict[Weight, int]

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities.values())

    def multiplicity(self, mu: Sequence[int]) -> int:
        return self.multiplicities.get(tuple(mu), 0)

    def times(self, other: 'Character') -> 'Character':
        out: Dict[Weight, int] = {}
        for mu, a in self.multiplicities.items():
            for nu, b in other.multiplicities.items():
                key = tuple(x + y for x, y in zip(mu, nu))
                out[key] = out.get(key, 0) + a * b
        return Character(multiplicities=out)

    def is_weyl_invariant(self, rs: RootSystem) -> bool:
        return all(
            self.multiplicity(rs.reflect(mu, i)) == m
            for mu, m in self.multiplicities.items()
            for i in range(rs.rank)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "multiplicities": [[list(mu), m] for mu, m in sorted(self.multiplicities.items(), reverse=True)],
        }


def weyl_dimension(rs: RootSystem, lam: Sequence[int]) -> int:
    """The product over positive roots of (lambda + rho, alpha) / (rho, alpha)."""
    shifted = tuple(x + 1 for x in lam)
    total = Fraction(1)
    for root in rs.positive_roots:
        labels = rs.root_labels(root)
        total *= rs.inner(shifted, labels) / rs.inner(rs.rho, labels)
    assert total.denominator == 1
    return int(total)


def dominant_weights(rs: RootSystem, lam: Sequence[int]) -> List[Weight]:
    """The dominant weights below lambda, by increasing depth."""
    top = tuple(lam)
    labels = [rs.root_labels(root) for root in rs.positive_roots]
    seen = {top}
    queue = deque([top])
    while queue:
        mu = queue.popleft()
        for label in labels:
            nu = tuple(x - y for x, y in zip(mu, label))
            if rs.is_dominant(nu) and nu not in seen:
                seen.add(nu)
                queue.append(nu)

    def depth(mu: Weight) -> Fraction:
        return sum(rs.to_root_coords(tuple(x - y for x, y in zip(top, mu))), Fraction(0))

    return sorted(seen, key=lambda mu: (depth(mu), tuple(-x for x in mu)))


@functools.lru_cache(maxsize=None)
def freudenthal(rs: RootSystem, lam: Weight) -> Dict[Weight, int]:
    """Multiplicities of the dominant weights of V(lambda) by Freudenthal's recursion."""
    rho = rs.rho
    labels = [rs.root_labels(root) for root in rs.positive_roots]
    shifted_top = tuple(x + r for x, r in zip(lam, rho))
    norm_top = rs.inner(shifted_top, shifted_top)

    mults: Dict[Weight, int] = {}
    for mu in dominant_weights(rs, lam):
        if mu == tuple(lam):
            mults[mu] = 1
            continue

        total = Fraction(0)
        for label in labels:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, label))
                m = mults.get(rs.dominant(nu))
                if not m:
                    break
                total += rs.inner(nu, label) * m
                k += 1

        shifted = tuple(x + r for x, r in zip(mu, rho))
        value = 2 * total / (norm_top - rs.inner(shifted, shifted))
        assert value.denominator == 1, f'non-integral multiplicity {value} at {mu}'
        mults[mu] = int(value)

    logger.debug('Freudenthal multiplicities of V(%s) for %s: %s dominant weights', list(lam), rs.name, len(mults))
    return mults


def full_character(rs: RootSystem, lam: Sequence[int]) -> Character:
    out: Dict[Weight, int] = {}
    for mu, m in freudenthal(rs, tuple(lam)).items():
        for nu in weyl_orbit(rs, mu):
            out[nu] = m
    return Character(multiplicities=out)
