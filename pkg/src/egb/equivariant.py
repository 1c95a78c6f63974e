"""Persistence modules with a cyclic automorphism of prime order.

Provides the eigenspace and fixed-quotient modules of the action, the
multiplicity-sensitive spread mu_p, the modified spread w_hat (equal to the
longest finite bar of V/Fix by the two independent computations exposed
here), the two-window spread of an equivariant filtered complex, and the
full-power obstruction with its test fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

from .field import (
    CyclotomicField,
    CyclotomicNumber,
    Matrix,
    cyclo_one,
    is_prime,
    primitive_roots,
)
from .persistence import (
    Barcode,
    FilteredComplex,
    FinitePersistenceModule,
    INF,
    Interval,
    direct_sum,
    homology_basis,
    induced_homology_rank,
    is_inf,
    longest_finite_bar,
    multiplicity,
    barcode_of_module,
    window_complex,
)

GradedBarcodeFamily = dict  # degree -> Barcode


@dataclass(frozen=True)
class ZpPersistenceModule:
    """Finite persistence module over Q(zeta_p) with an order-p automorphism.

    ``action[i]`` acts on the i-th constancy interval; it has order p and
    commutes with the transition maps.
    """

    p: int
    base: FinitePersistenceModule
    action: tuple[Matrix, ...]
    degree: int = 0

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if not isinstance(self.base.field, CyclotomicField) or self.base.field.p != self.p:
            raise ValueError("base module must live over Q(zeta_p)")
        if len(self.action) != self.base.num_intervals:
            raise ValueError("one automorphism matrix per constancy interval")
        for i, a in enumerate(self.action):
            n = self.base.dims[i]
            if (a.rows, a.cols) != (n, n):
                raise ValueError(f"automorphism {i} has wrong shape")
            if not (a.matpow(self.p) - Matrix.identity(a.field, n)).is_zero():
                raise ValueError(f"automorphism {i} does not have order dividing p")
        for i, t in enumerate(self.base.transitions):
            if not (self.action[i + 1] @ t - t @ self.action[i]).is_zero():
                raise ValueError(f"automorphism does not commute with transition {i}")

    @property
    def field(self) -> CyclotomicField:
        return self.base.field


@dataclass(frozen=True)
class EquivariantComplex:
    """Filtered complex with an action-preserving chain automorphism of order p."""

    p: int
    complex: FilteredComplex
    chain_map: Matrix

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        n = len(self.complex.generators)
        t = self.chain_map
        if (t.rows, t.cols) != (n, n):
            raise ValueError("chain map must be square on the generators")
        if t.field != self.complex.field:
            raise ValueError("chain map over wrong field")
        if not (t.matpow(self.p) - Matrix.identity(t.field, n)).is_zero():
            raise ValueError("chain map does not satisfy T^p = id")
        d = self.complex.boundary
        if not (t @ d - d @ t).is_zero():
            raise ValueError("chain map does not commute with the boundary")
        from .field import _is_zero

        gens = self.complex.generators
        for j in range(n):
            for i in range(n):
                if _is_zero(t.entries[i][j]):
                    continue
                if gens[i][0] != gens[j][0] or gens[i][1] != gens[j][1]:
                    raise ValueError("chain map must preserve action and degree")


def _validate_root(p: int, zeta: CyclotomicNumber, primitive: bool) -> None:
    if zeta.p != p:
        raise ValueError("root of unity over the wrong field")
    if not (zeta ** p - cyclo_one(p)).is_zero():
        raise ValueError("not a p-th root of unity")
    if primitive and (zeta - cyclo_one(p)).is_zero():
        raise ValueError("root must be primitive (zeta != 1)")


def eigenspace_module(
    module: ZpPersistenceModule, zeta: CyclotomicNumber
) -> FinitePersistenceModule:
    """Pointwise kernels of (A - zeta id), with the induced transitions."""
    _validate_root(module.p, zeta, primitive=False)
    field = module.field
    kernels = []
    for i, a in enumerate(module.action):
        n = module.base.dims[i]
        shifted = a - Matrix.identity(field, n).scale(zeta)
        kernels.append(shifted.kernel_basis())
    dims = tuple(len(k) for k in kernels)
    transitions = []
    for i, t in enumerate(module.base.transitions):
        src, dst = kernels[i], kernels[i + 1]
        if not dst:
            transitions.append(Matrix.zeros(field, 0, len(src)))
            continue
        dst_mat = Matrix.from_columns(field, dst, module.base.dims[i + 1])
        cols = []
        for v in src:
            image = t.apply(v)
            coords = dst_mat.solve(image)
            if coords is None:
                raise ValueError("transition does not preserve the eigenspace")
            cols.append(coords)
        transitions.append(Matrix.from_columns(field, cols, len(dst)) if cols
                           else Matrix.zeros(field, len(dst), 0))
    return FinitePersistenceModule(field, module.base.spectrum, dims, tuple(transitions))


def _complement(field, basis_vectors: list[tuple], dim: int):
    """Standard-basis vectors extending ``basis_vectors`` to a basis."""
    chosen = []
    current = [list(v) for v in basis_vectors]
    rank_now = (
        Matrix.from_columns(field, current, dim).rank() if current else 0
    )
    z, o = field.zero(), field.one()
    for k in range(dim):
        e = [z] * dim
        e[k] = o
        trial = current + [e]
        r = Matrix.from_columns(field, trial, dim).rank()
        if r > rank_now:
            chosen.append(tuple(e))
            current = trial
            rank_now = r
        if rank_now == dim:
            break
    return chosen


def quotient_fix_module(module: ZpPersistenceModule) -> FinitePersistenceModule:
    """The quotient L = V / Fix(A) with the induced persistence maps."""
    field = module.field
    fixed = []
    complements = []
    for i, a in enumerate(module.action):
        n = module.base.dims[i]
        w = (a - Matrix.identity(field, n)).kernel_basis()
        fixed.append(w)
        complements.append(_complement(field, w, n))
    dims = tuple(len(c) for c in complements)
    transitions = []
    for i, t in enumerate(module.base.transitions):
        w_next, c_next = fixed[i + 1], complements[i + 1]
        n_next = module.base.dims[i + 1]
        if not c_next:
            transitions.append(Matrix.zeros(field, 0, len(complements[i])))
            continue
        basis_next = Matrix.from_columns(field, w_next + c_next, n_next)
        cols = []
        for v in complements[i]:
            image = t.apply(v)
            coords = basis_next.solve(image)
            if coords is None:
                raise ValueError("transition image outside the span")  # impossible
            cols.append(coords[len(w_next):])
        transitions.append(Matrix.from_columns(field, cols, len(c_next)) if cols
                           else Matrix.zeros(field, len(c_next), 0))
    return FinitePersistenceModule(field, module.base.spectrum, dims, tuple(transitions))


# -- the multiplicity sensitive spread ---------------------------------------


def mu_from_barcode(barcode: Barcode, p: int) -> Fraction | float:
    """Supremum of c such that some interval I of length > 4c satisfies
    m(B, I) = m(B, I^{2c}) = l with l not divisible by p.

    The multiplicity function only changes when interval endpoints cross a
    birth (left end) or a death (right end), and enlarging I to the snapped
    interval (largest birth <= left, smallest death >= right, or +inf) keeps
    the containing set while weakly improving both the length budget and the
    distance to every excluded bar.  The supremum is therefore attained over
    the finite candidate grid births x (deaths + inf) and is computed there
    in closed form.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if barcode.is_empty():
        return Fraction(0)
    births = barcode.births()
    rights = barcode.finite_deaths() + [INF]
    best: Fraction | float = Fraction(0)
    bars = barcode.items
    for x in births:
        for y in rights:
            if not x < y:
                continue
            interval = Interval(x, y)
            inside = sum(m for bar, m, _ in bars if bar.contains(interval))
            if inside % p == 0:
                continue
            # smallest c at which some excluded bar swallows the 2c-shrink
            horizon: Fraction | float = INF
            for bar, m, _ in bars:
                if bar.contains(interval):
                    continue
                need_left = (bar.birth - x) / 2 if bar.birth > x else Fraction(0)
                if is_inf(y):
                    if bar.finite:
                        continue  # finite bar can never contain (x+2c, inf)
                    threshold = need_left
                else:
                    need_right = (
                        (y - bar.death) / 2 if bar.finite and bar.death < y else Fraction(0)
                    )
                    threshold = max(need_left, need_right)
                horizon = min(horizon, threshold)
            budget = INF if is_inf(y) else (y - x) / 4
            value = min(budget, horizon)
            if value > best:
                best = value
    return best


def mu_p_zeta(module: ZpPersistenceModule, zeta: CyclotomicNumber) -> Fraction | float:
    """mu_{p,zeta}: the spread of the barcode of the zeta-eigenspace."""
    _validate_root(module.p, zeta, primitive=True)
    eigen = eigenspace_module(module, zeta)
    return mu_from_barcode(barcode_of_module(eigen), module.p)


def mu_p(module: ZpPersistenceModule) -> Fraction | float:
    """Maximum of mu_{p,zeta} over the p-1 primitive roots of unity."""
    return max(mu_p_zeta(module, z) for z in primitive_roots(module.p))


def mu_p_of_family(family: GradedBarcodeFamily, p: int) -> Fraction | float:
    """Graded spread: maximum of mu over the degrees of a barcode family."""
    values = [mu_from_barcode(bc, p) for bc in family.values()]
    return max(values) if values else Fraction(0)


def kappa_lower_bound(module: ZpPersistenceModule) -> Fraction | float:
    """Certified lower bound for the equivariant distance to full p-th powers."""
    return mu_p(module)


# -- the modified spread ------------------------------------------------------


def w_hat(module: ZpPersistenceModule) -> Fraction | float:
    """sup of d such that theta_{s,s+d}(A_s - id) != 0 for some s.

    Computed by direct scan over pairs of constancy intervals; the companion
    computation longest_finite_bar(quotient_fix_module(V)) must agree (with
    +inf when the quotient has an infinite bar), which tests exercise.
    """
    base = module.base
    m = len(base.spectrum)
    field = module.field
    best = Fraction(0)
    for u in range(1, m + 1):  # interval 0 has dimension 0
        n_u = base.dims[u]
        s_mat = module.action[u] - Matrix.identity(field, n_u)
        if s_mat.is_zero():
            continue
        acc = s_mat
        # d ranges over shifts landing in interval v >= u; the sup of
        # (s + d) - s over s in (s_{u-1}, s_u], s + d in (s_{v-1}, s_v]
        # is s_v - s_{u-1} (or +inf for the unbounded top interval)
        for v in range(u, m + 1):
            if v > u:
                acc = base.transitions[v - 1] @ acc
            if acc.is_zero():
                break
            if v == m:
                return INF
            d_sup = base.spectrum[v] - base.spectrum[u - 1]
            if d_sup > best:
                best = d_sup
    return best


def w_hat_from_quotient(module: ZpPersistenceModule) -> Fraction | float:
    """The independent route: beta(L) for L = V/Fix(A), +inf on infinite bars."""
    quotient = quotient_fix_module(module)
    barcode = barcode_of_module(quotient)
    if barcode.infinite_count() > 0:
        return INF
    return longest_finite_bar(barcode)


# -- the two-window spread ----------------------------------------------------


def _gaps(spectrum: list[Fraction]):
    """Open gaps between spectrum values, with representatives and endpoints
    (inf endpoints for the unbounded gaps)."""
    gaps = []
    if not spectrum:
        return [((-INF), INF, Fraction(0))]
    lo = spectrum[0]
    gaps.append((-INF, lo, lo - 1))
    for a, b in zip(spectrum, spectrum[1:]):
        gaps.append((a, b, (a + b) / 2))
    gaps.append((spectrum[-1], INF, spectrum[-1] + 1))
    return gaps


def w_spread(equivariant: EquivariantComplex, k: int) -> Fraction | float:
    """sup of d with (comparison to the d-shifted window) . (T - id) != 0 on
    window homology, over all windows (a, b).

    Windows are scanned up to the gaps their endpoints lie in; for a fixed
    gap assignment (a in G_i1, b in G_j1, a+d in G_i2, b+d in G_j2) the map
    is constant and the feasible d form an interval whose supremum is
    min(sup G_i2 - inf G_i1, sup G_j2 - inf G_j1).  Returns +inf when no
    shift kills the class (e.g. zero-boundary complexes with a nontrivial
    action, where finiteness needs analytic input the algebra cannot see).
    """
    if pow_of_chain_map_not_identity(equivariant, k):
        raise ValueError(f"chain map does not satisfy T^{k} = id")
    cx = equivariant.complex
    field = cx.field
    t_mat = equivariant.chain_map
    n = len(cx.generators)
    s_mat = t_mat - Matrix.identity(field, n)
    if s_mat.is_zero():
        return Fraction(0)
    spectrum = cx.spectrum()
    gaps = _gaps(spectrum)
    g = len(gaps)
    degrees = sorted({d for _, d in cx.generators})

    windows: dict[tuple[int, int], "_SpreadWindow"] = {}

    def window(i: int, j: int) -> "_SpreadWindow":
        if (i, j) not in windows:
            windows[(i, j)] = _SpreadWindow(cx, gaps[i][2], gaps[j][2])
        return windows[(i, j)]

    best: Fraction | float = Fraction(0)
    for i1 in range(g):
        for j1 in range(i1 + 1, g):
            src = window(i1, j1)
            if not src.glob_all:
                continue
            s_images = src.apply_chain_map(s_mat)
            if all(all_zero(field, v) for v in s_images.values()):
                continue
            for i2 in range(i1, g):
                for j2 in range(j1, g):
                    if i2 >= j2:
                        continue
                    lo = max(
                        _sub(gaps[i2][0], gaps[i1][1]),
                        _sub(gaps[j2][0], gaps[j1][1]),
                        Fraction(0),
                    )
                    hi = min(_sub(gaps[i2][1], gaps[i1][0]), _sub(gaps[j2][1], gaps[j1][0]))
                    if not lo < hi:
                        continue  # no common shift d lands both endpoints
                    if not is_inf(hi) and hi <= best:
                        continue
                    dst = window(i2, j2)
                    if src.induced_nonzero(s_images, dst, degrees):
                        if is_inf(hi):
                            return INF
                        best = max(best, hi)
    return best


def _sub(x, y):
    """x - y with the infinite endpoints used by the gap scan."""
    if is_inf(x) and is_inf(y):
        raise ValueError("inf - inf in gap arithmetic")
    if is_inf(x):
        return INF
    if isinstance(y, float) and y == -INF:
        return INF
    if is_inf(y):
        return -INF
    return x - y


def all_zero(field, vec) -> bool:
    from .field import _is_zero

    return all(_is_zero(v) for v in vec)


class _SpreadWindow:
    """Window homology data for the spread scan."""

    def __init__(self, cx: FilteredComplex, a, b):
        self.cx = cx
        self.keep, self.wc = window_complex(cx, a, b)
        self.glob_all = self.keep
        self._by_degree: dict[int, tuple[list[int], list[tuple], Matrix]] = {}

    def at(self, r: int):
        if r not in self._by_degree:
            idx_r, cycles, d_rp1 = homology_basis(self.wc, r)
            glob = [self.keep[i] for i in idx_r]
            self._by_degree[r] = (glob, cycles, d_rp1)
        return self._by_degree[r]

    def apply_chain_map(self, s_mat: Matrix) -> dict[int, list[tuple]]:
        """Images of the cycle bases under the (action-preserving) chain map,
        in window coordinates, keyed by degree."""
        from .field import _is_zero

        field = self.cx.field
        out: dict[int, list[tuple]] = {}
        degrees = sorted({self.cx.generators[g][1] for g in self.keep})
        for r in degrees:
            glob, cycles, _ = self.at(r)
            images = []
            for z in cycles:
                image = [field.zero()] * len(glob)
                for col, g in enumerate(glob):
                    v = z[col]
                    if _is_zero(v):
                        continue
                    for row, h in enumerate(glob):
                        e = s_mat.entries[h][g]
                        if not _is_zero(e):
                            image[row] = image[row] + e * v
                images.append(tuple(image))
            out[r] = images
        return out

    def induced_nonzero(
        self, s_images: dict[int, list[tuple]], dst: "_SpreadWindow", degrees
    ) -> bool:
        """Is (comparison to dst) . S nonzero on homology in some degree?"""
        field = self.cx.field
        for r, images in s_images.items():
            if not images:
                continue
            glob_src, cycles_src, _ = self.at(r)
            glob_dst, _, bnd_dst = dst.at(r)
            if not glob_dst:
                continue
            look = {g: i for i, g in enumerate(glob_dst)}
            moved = []
            for img in images:
                out = [field.zero()] * len(glob_dst)
                for i, g in enumerate(glob_src):
                    if g in look:
                        out[look[g]] = img[i]
                moved.append(tuple(out))
            if induced_homology_rank(field, cycles_src, moved, bnd_dst, len(glob_dst)) > 0:
                return True
        return False


def pow_of_chain_map_not_identity(equivariant: EquivariantComplex, k: int) -> bool:
    t = equivariant.chain_map
    n = t.rows
    return not (t.matpow(k) - Matrix.identity(t.field, n)).is_zero()


def spread_lower_bound_from_gaps(generators) -> Fraction | float:
    """D = min |action difference| over generator pairs of index difference 1;
    +inf when no such pair exists (the gap bound is vacuous then)."""
    gens = [(Fraction(a), int(d)) for a, d in generators]
    best: Fraction | float = INF
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if abs(gens[i][1] - gens[j][1]) == 1:
                gap = abs(gens[i][0] - gens[j][0])
                if gap < best:
                    best = gap
    return best


# -- full p-th powers and fixtures ---------------------------------------------


def full_power_check(module: ZpPersistenceModule, zeta: CyclotomicNumber) -> str:
    """PASS iff every candidate-interval multiplicity of B(L_zeta) is divisible
    by p; a FAIL certifies the module is not a full p-th power."""
    _validate_root(module.p, zeta, primitive=True)
    barcode = barcode_of_module(eigenspace_module(module, zeta))
    if barcode.is_empty():
        return "PASS"
    births = barcode.births()
    rights = barcode.finite_deaths() + [INF]
    for x in births:
        for y in rights:
            if not x < y:
                continue
            if multiplicity(barcode, Interval(x, y)) % module.p != 0:
                return "FAIL"
    return "PASS"


def construct_full_power(
    seed: FinitePersistenceModule, root: tuple[Matrix, ...]
) -> ZpPersistenceModule:
    """Z_p module with action A = B^p from a root B with B^{p^2} = id.

    The order p^2 and commutation are validated here; the resulting module is
    the standard fixture on which the full-power obstruction must PASS.
    """
    field = seed.field
    if not isinstance(field, CyclotomicField):
        raise ValueError("seed module must live over a cyclotomic field")
    p = field.p
    if len(root) != seed.num_intervals:
        raise ValueError("one root matrix per constancy interval")
    for i, b in enumerate(root):
        n = seed.dims[i]
        if (b.rows, b.cols) != (n, n):
            raise ValueError(f"root matrix {i} has wrong shape")
        if not (b.matpow(p * p) - Matrix.identity(field, n)).is_zero():
            raise ValueError(f"root matrix {i} does not satisfy B^(p^2) = id")
    for i, t in enumerate(seed.transitions):
        if not (root[i + 1] @ t - t @ root[i]).is_zero():
            raise ValueError(f"root does not commute with transition {i}")
    action = tuple(b.matpow(p) for b in root)
    return ZpPersistenceModule(p, seed, action)


def cyclic_permutation_matrix(field, n: int) -> Matrix:
    """e_j -> e_{j+1 mod n}."""
    z, o = field.zero(), field.one()
    ent = [[z] * n for _ in range(n)]
    for j in range(n):
        ent[(j + 1) % n][j] = o
    return Matrix.from_rows(field, ent) if n else Matrix.zeros(field, 0, 0)


def cyclic_tuple_module(
    action_value, p: int, degree: int = 0, death=INF
) -> ZpPersistenceModule:
    """p generators born together with the cyclic Z_p action; the eigenspace
    at any primitive root has exactly one bar (action_value, death]."""
    field = CyclotomicField(p)
    birth = Fraction(action_value)
    if is_inf(death):
        spectrum = (birth,)
        dims = (0, p)
        transitions = (Matrix.zeros(field, p, 0),)
        action = (Matrix.zeros(field, 0, 0), cyclic_permutation_matrix(field, p))
    else:
        death = Fraction(death)
        if not birth < death:
            raise ValueError("death must exceed the birth action")
        spectrum = (birth, death)
        dims = (0, p, 0)
        transitions = (Matrix.zeros(field, p, 0), Matrix.zeros(field, 0, p))
        action = (
            Matrix.zeros(field, 0, 0),
            cyclic_permutation_matrix(field, p),
            Matrix.zeros(field, 0, 0),
        )
    base = FinitePersistenceModule(field, spectrum, dims, transitions)
    return ZpPersistenceModule(p, base, action, degree=degree)


def zp_direct_sum(a: ZpPersistenceModule, b: ZpPersistenceModule) -> ZpPersistenceModule:
    """Direct sum of Z_p modules on the common spectrum refinement."""
    if a.p != b.p:
        raise ValueError("direct sum of modules with different p")
    from .persistence import refine_module

    common = sorted(set(a.base.spectrum) | set(b.base.spectrum))
    ra, rb = refine_module(a.base, common), refine_module(b.base, common)
    base = direct_sum(a.base, b.base)
    field = base.field

    def action_on_refined(mod: ZpPersistenceModule, refined: FinitePersistenceModule):
        out = []
        bounds = list(refined.spectrum)
        for i in range(refined.num_intervals):
            if i < len(bounds):
                t = bounds[i]
            elif bounds:
                t = bounds[-1] + 1
            else:
                t = Fraction(0)
            out.append(mod.action[mod.base.interval_index(t)])
        return out

    act_a = action_on_refined(a, ra)
    act_b = action_on_refined(b, rb)
    action = []
    for m1, m2 in zip(act_a, act_b):
        z = field.zero()
        ent = []
        for i in range(m1.rows):
            ent.append(list(m1.entries[i]) + [z] * m2.cols)
        for i in range(m2.rows):
            ent.append([z] * m1.cols + list(m2.entries[i]))
        if not ent:
            action.append(Matrix.zeros(field, 0, 0))
        else:
            action.append(Matrix.from_rows(field, ent))
    return ZpPersistenceModule(a.p, base, tuple(action), degree=a.degree)


# -- stabilization and interleaving -------------------------------------------


def kunneth_stabilize(family: GradedBarcodeFamily, betti: list[int]) -> GradedBarcodeFamily:
    """F'(r) = union over i of betti[i] copies of F(r - i); betti[0] must be 1
    (connected stabilizing factor)."""
    if not betti or betti[0] != 1:
        raise ValueError("betti[0] must be 1 (connected factor)")
    if any(b < 0 for b in betti):
        raise ValueError("betti numbers must be nonnegative")
    out: GradedBarcodeFamily = {}
    for r, barcode in family.items():
        for i, b in enumerate(betti):
            if b == 0 or barcode.is_empty():
                continue
            target = r + i
            piece = barcode.repeat(b)
            out[target] = out[target].union(piece) if target in out else piece
    return out


def shift_module(module: ZpPersistenceModule, shifts) -> ZpPersistenceModule:
    """Same module with spectrum point i moved by shifts[i] (order-preserving)."""
    spectrum = module.base.spectrum
    shifts = [Fraction(s) for s in shifts]
    if len(shifts) != len(spectrum):
        raise ValueError("one shift per spectrum point")
    new_spec = tuple(s + d for s, d in zip(spectrum, shifts))
    if any(new_spec[i] >= new_spec[i + 1] for i in range(len(new_spec) - 1)):
        raise ValueError("shifts must preserve the spectrum ordering")
    base = FinitePersistenceModule(
        module.field, new_spec, module.base.dims, module.base.transitions
    )
    return ZpPersistenceModule(module.p, base, module.action, degree=module.degree)


def random_order_preserving_shifts(
    spectrum, delta, rng: random.Random, grid: int = 16
) -> list[Fraction]:
    """Per-point shifts of magnitude <= delta keeping the order strict."""
    delta = Fraction(delta)
    shifts: list[Fraction] = []
    prev = None
    for s in spectrum:
        lo = s - delta
        if prev is not None and prev >= lo:
            lo = prev
        hi = s + delta
        # sample strictly inside (lo, hi]
        k = rng.randint(1, grid)
        t = lo + (hi - lo) * Fraction(k, grid)
        shifts.append(t - s)
        prev = t
    return shifts


def perturb_and_check_lipschitz(
    module: ZpPersistenceModule,
    delta,
    shifts=None,
    rng: random.Random | None = None,
) -> bool:
    """Shift every spectrum point by at most delta (an explicit equivariant
    delta-interleaving) and check |mu_p(V) - mu_p(W)| <= delta."""
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    if shifts is None:
        if rng is not None:
            shifts = random_order_preserving_shifts(module.base.spectrum, delta, rng)
        else:
            shifts = [delta] * len(module.base.spectrum)
    if any(abs(Fraction(s)) > delta for s in shifts):
        raise ValueError("a shift exceeds delta")
    perturbed = shift_module(module, shifts)
    a, b = mu_p(module), mu_p(perturbed)
    if is_inf(a) and is_inf(b):
        return True
    if is_inf(a) or is_inf(b):
        return False
    return abs(a - b) <= delta
