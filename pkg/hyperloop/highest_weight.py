from fractions import Fraction
from typing import Dict, List, Optional, Tuple
import functools
import logging

import attr

from .linalg import EchelonBasis, Matrix, Vector, add_into, apply_matrix
from .rootfold import RootSystem, Weight

logger = logging.getLogger(__name__)


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True, eq=False)
class HighestWeightModule:
    """
    The simple characteristic-zero module V(lambda) with the action of the
    Chevalley generators e_i, f_i, a weight basis and the contravariant form.

    Basis vector 0 is the highest-weight vector; every other basis vector is
    f_i b for the recorded origin (i, b).
    """
    rs: RootSystem
    highest_weight: Weight
    weights: Tuple[Weight, ...]
    depth: Tuple[int, ...]
    origins: Tuple[Optional[Tuple[int, int]], ...]
    raising: Tuple[Matrix, ...]
    lowering: Tuple[Matrix, ...]
    weight_spaces: Dict[Weight, Tuple[int, ...]]
    gram: Dict[Weight, Dict[Tuple[int, int], Fraction]]

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def gram_entry(self, a: int, b: int) -> Fraction:
        if self.weights[a] != self.weights[b]:
            return Fraction(0)
        return self.gram[self.weights[a]].get((a, b), Fraction(0))


@functools.lru_cache(maxsize=None)
def build_highest_weight_module(rs: RootSystem, highest_weight: Weight) -> HighestWeightModule:
    """
    Builds V(lambda) one depth at a time. At each weight mu the candidates are
    f_i b for b in a basis of V_{mu + alpha_i}; below the top, a vector of
    V(lambda) is determined by its images under all e_j, so a maximal set of
    candidates with independent e-images is a basis and the others are
    expressed through it.
    """
    lam = tuple(highest_weight)
    n = rs.rank
    if len(lam) != n or not rs.is_dominant(lam):
        raise ValueError(f'{lam} is not a dominant weight of {rs.name}')

    weights: List[Weight] = [lam]
    depth: List[int] = [0]
    origins: List[Optional[Tuple[int, int]]] = [None]
    raising: List[Matrix] = [{} for _ in range(n)]
    lowering: List[Matrix] = [{} for _ in range(n)]
    spaces: Dict[Weight, List[int]] = {lam: [0]}
    gram: Dict[Weight, Dict[Tuple[int, int], Fraction]] = {lam: {(0, 0): Fraction(1)}}

    frontier = [lam]
    level = 0
    while frontier:
        level += 1
        candidates: Dict[Weight, List[Tuple[int, int]]] = {}
        for upper in frontier:
            for i in range(n):
                mu = tuple(upper[j] - rs.cartan[j][i] for j in range(n))
                for b in spaces[upper]:
                    candidates.setdefault(mu, []).append((i, b))

        following = []
        for mu in sorted(candidates, reverse=True):
            cands = sorted(candidates[mu])
            echelon = EchelonBasis(track=True)
            images: List[Vector] = []
            selected: List[int] = []

            for pos, (i, b) in enumerate(cands):
                image: Vector = {}
                for j in range(n):
                    part = apply_matrix(lowering[i], raising[j].get(b, {}))
                    if i == j:
                        add_into(part, {b: Fraction(weights[b][i])})
                    for idx, val in part.items():
                        image[idx * n + j] = val
                images.append(image)
                if echelon.insert(image):
                    selected.append(pos)

            if not selected:
                continue

            new_index: Dict[int, int] = {}
            for pos in selected:
                idx = len(weights)
                new_index[pos] = idx
                weights.append(mu)
                depth.append(level)
                origins.append(cands[pos])
                for key, val in images[pos].items():
                    raising[key % n].setdefault(idx, {})[key // n] = val

            for pos, (i, b) in enumerate(cands):
                if pos in new_index:
                    lowering[i][b] = {new_index[pos]: Fraction(1)}
                    continue
                combo = echelon.express(images[pos])
                assert combo is not None
                lowering[i][b] = {new_index[label]: Fraction(c) for label, c in combo.items() if c}

            basis = [new_index[pos] for pos in selected]
            spaces[mu] = basis
            gram[mu] = _gram_block(basis, origins, raising, gram, weights)
            following.append(mu)

        frontier = following

    logger.debug('built V(%s) for %s: dimension %s', lam, rs.name, len(weights))

    return HighestWeightModule(
        rs=rs,
        highest_weight=lam,
        weights=tuple(weights),
        depth=tuple(depth),
        origins=tuple(origins),
        raising=tuple(raising),
        lowering=tuple(lowering),
        weight_spaces={mu: tuple(idx) for mu, idx in spaces.items()},
        gram=gram,
    )


def _gram_block(
    basis: List[int],
    origins: List[Optional[Tuple[int, int]]],
    raising: List[Matrix],
    gram: Dict[Weight, Dict[Tuple[int, int], Fraction]],
    weights: List[Weight],
) -> Dict[Tuple[int, int], Fraction]:
    # <f_i b, c> = <b, e_i c>
    block: Dict[Tuple[int, int], Fraction] = {}
    for c in basis:
        origin = origins[c]
        assert origin is not None
        i, b = origin
        upper = gram[weights[b]]
        for c2 in basis:
            total = Fraction(0)
            for r, val in raising[i].get(c2, {}).items():
                total += val * upper.get((b, r), Fraction(0))
            if total:
                block[(c, c2)] = total
    return block
