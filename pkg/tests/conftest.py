"""Shared randomized fixtures.

The seed comes from EGB_SEED (default 0) so failures reproduce exactly.
"""

import os
import random
from fractions import Fraction

import pytest

from egb.equivariant import ZpPersistenceModule, zp_direct_sum, cyclic_tuple_module
from egb.field import CyclotomicField, Matrix, cyclo_zeta
from egb.persistence import Bar, Barcode, FilteredComplex, FinitePersistenceModule, INF
from egb.field import QQ_FIELD


SEED = int(os.environ.get("EGB_SEED", "0"))


@pytest.fixture
def rng():
    return random.Random(SEED)


def rand_frac(rng, lo=-8, hi=8, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_barcode(rng, max_bars=4, allow_infinite=True, max_mult=3) -> Barcode:
    entries = []
    for _ in range(rng.randint(0, max_bars)):
        birth = rand_frac(rng)
        if allow_infinite and rng.random() < 0.25:
            death = INF
        else:
            death = birth + Fraction(rng.randint(1, 10), rng.randint(1, 2))
        entries.append((Bar(birth, death), rng.randint(1, max_mult), None))
    return Barcode.of(entries)


def scalar_interval_module(p: int, birth, death, zeta_power: int) -> ZpPersistenceModule:
    """One generator on (birth, death] with the action zeta^k."""
    field = CyclotomicField(p)
    scalar = cyclo_zeta(p, zeta_power)
    one_by_one = Matrix.from_rows(field, [[scalar]])
    empty = Matrix.zeros(field, 0, 0)
    birth = Fraction(birth)
    if death == INF:
        base = FinitePersistenceModule(
            field, (birth,), (0, 1), (Matrix.zeros(field, 1, 0),)
        )
        return ZpPersistenceModule(p, base, (empty, one_by_one))
    death = Fraction(death)
    base = FinitePersistenceModule(
        field, (birth, death), (0, 1, 0),
        (Matrix.zeros(field, 1, 0), Matrix.zeros(field, 0, 1)),
    )
    return ZpPersistenceModule(p, base, (empty, one_by_one, empty))


def _unitriangular(rng, field, n: int) -> Matrix:
    """Random invertible matrix: product of unit lower- and upper-triangular
    matrices with small integer entries."""
    z, o = field.zero(), field.one()
    lower = [[o if i == j else z for j in range(n)] for i in range(n)]
    upper = [[o if i == j else z for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i > j and rng.random() < 0.5:
                lower[i][j] = field.coerce(rng.randint(-2, 2))
            if i < j and rng.random() < 0.5:
                upper[i][j] = field.coerce(rng.randint(-2, 2))
    return Matrix.from_rows(field, lower) @ Matrix.from_rows(field, upper)


def conjugate_module(rng, module: ZpPersistenceModule) -> ZpPersistenceModule:
    """Isomorphic module with dense matrices: per-interval change of basis."""
    field = module.field
    s_mats = [_unitriangular(rng, field, d) for d in module.base.dims]
    s_invs = [s.inverse() for s in s_mats]
    transitions = tuple(
        s_mats[i + 1] @ t @ s_invs[i] for i, t in enumerate(module.base.transitions)
    )
    action = tuple(s_mats[i] @ a @ s_invs[i] for i, a in enumerate(module.action))
    base = FinitePersistenceModule(
        field, module.base.spectrum, module.base.dims, transitions
    )
    return ZpPersistenceModule(module.p, base, action, degree=module.degree)


def random_zp_module(rng, p: int, max_blocks: int = 4, conjugate: bool = True,
                     allow_infinite: bool = True) -> ZpPersistenceModule:
    """Random direct sum of scalar interval blocks and (twisted) cyclic tuple
    blocks, optionally put in a random basis."""
    blocks = []
    for _ in range(rng.randint(1, max_blocks)):
        birth = rand_frac(rng, -6, 6, 3)
        if allow_infinite and rng.random() < 0.2:
            death = INF
        else:
            death = birth + Fraction(rng.randint(1, 9), rng.randint(1, 2))
        if rng.random() < 0.5:
            blocks.append(scalar_interval_module(p, birth, death, rng.randrange(p)))
        else:
            tup = cyclic_tuple_module(birth, p, death=death)
            if rng.random() < 0.4:  # twist by a scalar root: still order p
                field = tup.field
                scalar = cyclo_zeta(p, rng.randrange(1, p))
                action = tuple(
                    a.scale(scalar) if a.rows else a for a in tup.action
                )
                tup = ZpPersistenceModule(p, tup.base, action)
            blocks.append(tup)
    module = blocks[0]
    for b in blocks[1:]:
        module = zp_direct_sum(module, b)
    if conjugate:
        module = conjugate_module(rng, module)
    return module


def random_filtered_complex(rng, field=QQ_FIELD, max_pieces: int = 4,
                            mix: bool = True) -> FilteredComplex:
    """Direct sum of lone generators and killing pairs, then a random
    filtration-respecting change of basis."""
    gens: list[tuple[Fraction, int]] = []
    cols: dict[int, dict[int, object]] = {}
    for _ in range(rng.randint(1, max_pieces)):
        deg = rng.randint(0, 2)
        if rng.random() < 0.45:
            gens.append((rand_frac(rng, -6, 6, 2), deg))
        else:
            low = rand_frac(rng, -6, 6, 2)
            high = low + Fraction(rng.randint(1, 8), rng.randint(1, 2))
            i_low = len(gens)
            gens.append((low, deg))
            i_high = len(gens)
            gens.append((high, deg + 1))
            cols[i_high] = {i_low: field.coerce(rng.choice([1, -1, 2]))}
    n = len(gens)
    z = field.zero()
    ent = [[z] * n for _ in range(n)]
    for j, col in cols.items():
        for i, v in col.items():
            ent[i][j] = v
    boundary = Matrix.from_rows(field, ent) if n else Matrix.zeros(field, 0, 0)
    cx = FilteredComplex(field, tuple(gens), boundary)
    if not mix or n == 0:
        return cx
    # change of basis I + N with N strictly action-decreasing, degree-preserving
    s_ent = [[field.one() if i == j else z for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(n):
            if gens[i][1] == gens[j][1] and gens[i][0] < gens[j][0] and rng.random() < 0.4:
                s_ent[i][j] = field.coerce(rng.randint(-2, 2))
    s = Matrix.from_rows(field, s_ent)
    new_boundary = s @ cx.boundary @ s.inverse()
    return FilteredComplex(field, tuple(gens), new_boundary)
