"""Finitely generated Fuchsian groups and their desk-scale statistics.

Orbit enumeration is a breadth-first search over reduced words with
displacement pruning; completeness at radius R is validated by the
word-cap + 2 re-enumeration invariant rather than assumed.  Injectivity
radius at z is half the smallest displacement d(z, gamma z) over nontrivial
gamma.  Covers are described by one permutation of the sheets per generator;
the built-in random covers use cyclic shifts (a random weight in Z_n per
generator), which automatically respect the surface relation because every
generator has zero net exponent in it.

The built-in cocompact preset is the genus-2 surface of the regular
hyperbolic octagon with vertex angle pi/4 and opposite-side pairings:
four translations of length 2 arccosh(1 + sqrt 2) along the rays at angles
k pi/4.  Its defining relation g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3 = id and
the octagon area 4 pi are enforced as construction invariants.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetExceeded, NonTransitive, RelationViolation
from .geometry import DiscPoint, GroupElement, mobius_apply_complex
from .quadrature import gauss_legendre
from .transforms import RadialKernel  # noqa: F401  (re-exported for hs_bound_check callers)


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FuchsianGroup:
    """Discrete isometry group given by generators (inverses implied).

    relation: defining relator as signed 1-based generator indices
    (+k = generator k-1, -k = its inverse); empty for free groups.
    dirichlet_radius: circumradius of the Dirichlet domain at 0 when the
    group is cocompact (used for sampling and periodization bounds).
    """

    generators: tuple
    label: str = ""
    covolume_hint: float | None = None
    relation: tuple = ()
    dirichlet_radius: float | None = None

    def __post_init__(self):
        for g in self.generators:
            if not isinstance(g, GroupElement):
                raise TypeError("generators must be GroupElements")

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def symmetrized(self) -> list:
        """Generators followed by their inverses (index i + n = inverse of i)."""
        return list(self.generators) + [g.inverse() for g in self.generators]

    def word_element(self, word: Sequence[int]) -> GroupElement:
        """Evaluate a word of symmetrized-generator indices."""
        gens = self.symmetrized()
        out = GroupElement.identity()
        for i in word:
            out = out @ gens[i]
        return out

    def relation_element(self) -> GroupElement:
        out = GroupElement.identity()
        for s in self.relation:
            g = self.generators[abs(s) - 1]
            out = out @ (g if s > 0 else g.inverse())
        return out

    def relation_word(self) -> list:
        """The relator in symmetrized indices."""
        n = self.n_generators
        return [(abs(s) - 1) + (0 if s > 0 else n) for s in self.relation]

    def max_generator_displacement(self, center: complex = 0j) -> float:
        return max(_displacement(g, center) for g in self.symmetrized())

    def volume(self) -> float:
        if self.covolume_hint is None:
            raise ValueError(f"group {self.label!r} has no covolume")
        return self.covolume_hint

    def to_json(self) -> str:
        gens = [[[g.alpha.real, g.alpha.imag], [g.beta.real, g.beta.imag],
                 [g.beta.conjugate().real, g.beta.conjugate().imag],
                 [g.alpha.conjugate().real, g.alpha.conjugate().imag]]
                for g in self.generators]
        return json.dumps({"label": self.label, "generators": gens,
                           "relation": list(self.relation),
                           "covolume": self.covolume_hint,
                           "dirichlet_radius": self.dirichlet_radius},
                          sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "FuchsianGroup":
        d = json.loads(text)
        gens = tuple(GroupElement(complex(*m[0]), complex(*m[1]))
                     for m in d["generators"])
        return FuchsianGroup(gens, d.get("label", ""), d.get("covolume"),
                             tuple(d.get("relation", ())),
                             d.get("dirichlet_radius"))


def _displacement(g: GroupElement, center: complex) -> float:
    w = mobius_apply_complex(g, center)
    num = abs(w - center) ** 2
    if num == 0.0:
        return 0.0
    den = (1.0 - abs(w) ** 2) * (1.0 - abs(center) ** 2)
    return 2.0 * math.asinh(math.sqrt(num / den))


BOLZA_SIDE_LENGTH = 2.0 * math.acosh(1.0 + math.sqrt(2.0))
BOLZA_VERTEX_RADIUS = math.acosh(3.0 + 2.0 * math.sqrt(2.0))


def bolza_group() -> FuchsianGroup:
    """Genus-2 octagon group; relation and 4*pi area are checked invariants."""
    ell = BOLZA_SIDE_LENGTH
    gens = tuple(GroupElement.translation(k * math.pi / 4.0, ell) for k in range(4))
    group = FuchsianGroup(gens, label="bolza", covolume_hint=4.0 * math.pi,
                          relation=(1, -2, 3, -4, -1, 2, -3, 4),
                          dirichlet_radius=BOLZA_VERTEX_RADIUS)
    rel = group.relation_element()
    if not rel.almost_equal(GroupElement.identity(), 1e-8):
        raise RelationViolation("octagon side-pairing relation failed")
    area = octagon_area()
    if abs(area - 4.0 * math.pi) > 1e-6:
        raise RelationViolation(f"octagon area {area} != 4 pi")
    return group


def octagon_vertices() -> list:
    """Vertices of the fundamental octagon (complex chart points)."""
    r_e = math.tanh(BOLZA_VERTEX_RADIUS / 2.0)
    return [r_e * cmath.exp(1j * (2 * k + 1) * math.pi / 8.0) for k in range(8)]


def octagon_area() -> float:
    """Hyperbolic area of the regular octagon by angle defect, measured numerically."""
    verts = octagon_vertices()

    def d(z, w):
        return 2.0 * math.asinh(math.sqrt(abs(z - w) ** 2 /
                                          ((1 - abs(z) ** 2) * (1 - abs(w) ** 2))))

    angles = []
    for k in range(8):
        v, p, q = verts[k], verts[(k - 1) % 8], verts[(k + 1) % 8]
        bb, cc, aa = d(v, p), d(v, q), d(p, q)
        angles.append(math.acos((math.cosh(bb) * math.cosh(cc) - math.cosh(aa))
                                / (math.sinh(bb) * math.sinh(cc))))
    return 6.0 * math.pi - sum(angles)


def cyclic_group(length: float, axis_angle: float = 0.0) -> FuchsianGroup:
    """Infinite cyclic group generated by one translation of given length."""
    return FuchsianGroup((GroupElement.translation(axis_angle, length),),
                         label=f"cyclic:{length:g}")


def trivial_group() -> FuchsianGroup:
    return FuchsianGroup((), label="trivial")


# ---------------------------------------------------------------------------
# Orbit enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitElement:
    g: GroupElement
    displacement: float
    word: tuple


@dataclass(frozen=True)
class OrbitBall:
    center: DiscPoint
    radius: float
    elements: list  # OrbitElement, identity included, sorted by displacement

    def __len__(self):
        return len(self.elements)

    def nontrivial(self):
        return [e for e in self.elements if e.word]


def _canon_key(g: GroupElement):
    return (round(g.alpha.real, 7), round(g.alpha.imag, 7),
            round(g.beta.real, 7), round(g.beta.imag, 7))


def orbit_enumerate(group: FuchsianGroup, center: DiscPoint, R: float,
                    word_cap: int | None = None, slack: float | None = None,
                    element_cap: int = 1_000_000) -> OrbitBall:
    """All gamma with d(center, gamma center) <= R, as an OrbitBall.

    BFS over reduced words; branches are pruned once their displacement
    exceeds R + slack (default: max generator displacement + 1, at least the
    Dirichlet diameter when known).  word_cap defaults to a generous bound
    from the minimal generator displacement; completeness is checked by the
    word_cap + 2 invariant in the test-suite, and against an exhaustive word
    oracle in acceptance runs.
    """
    if R > 25:
        raise ValueError("R > 25 would enumerate exponentially many elements")
    c = center.z
    ident = GroupElement.identity()
    elements = [OrbitElement(ident, 0.0, ())]
    if group.n_generators == 0:
        return OrbitBall(center, R, elements)
    gens = group.symmetrized()
    n = group.n_generators
    if slack is None:
        slack = group.max_generator_displacement(c) + 1.0
        if group.dirichlet_radius is not None:
            slack = max(slack, 2.0 * group.dirichlet_radius + 0.5)
    if word_cap is None:
        ell_min = min(_displacement(g, c) for g in gens)
        word_cap = int((R + slack) / max(ell_min, 0.05)) + 3
    if word_cap < 1:
        raise ValueError("word_cap must be >= 1")
    seen = {_canon_key(ident)}
    frontier = [(ident, ())]
    explored = 1
    for _ in range(word_cap):
        nxt = []
        for g, word in frontier:
            last_inv = (word[-1] + n) % (2 * n) if word else None
            for gi in range(2 * n):
                if gi == last_inv:
                    continue
                h = g @ gens[gi]
                key = _canon_key(h)
                if key in seen:
                    continue
                seen.add(key)
                explored += 1
                if explored > element_cap:
                    raise BudgetExceeded(f"orbit enumeration passed {element_cap} elements")
                disp = _displacement(h, c)
                if disp > R + slack:
                    continue
                w2 = word + (gi,)
                if disp <= R:
                    elements.append(OrbitElement(h, disp, w2))
                nxt.append((h, w2))
        frontier = nxt
        if not frontier:
            break
    elements.sort(key=lambda e: e.displacement)
    return OrbitBall(center, R, elements)


@dataclass(frozen=True)
class InjRadResult:
    value: float
    is_lower_bound: bool

    def __float__(self):
        return self.value


def injectivity_radius_at(group: FuchsianGroup, z: DiscPoint, search_R: float,
                          **kw) -> InjRadResult:
    """Half the minimal displacement of z, restricted to the ball search_R.

    If no nontrivial element moves z by <= search_R the value search_R / 2
    is returned flagged as a lower bound.
    """
    ball = orbit_enumerate(group, z, search_R, **kw)
    moving = [e.displacement for e in ball.nontrivial() if e.displacement > 1e-12]
    if not moving:
        return InjRadResult(search_R / 2.0, True)
    return InjRadResult(min(moving) / 2.0, False)


def injrad_below(surface, z: DiscPoint, R: float, sheet: int = 0,
                 word_cap: int | None = None, element_cap: int = 1_000_000) -> bool:
    """Decide InjRad(z[, sheet]) < R, i.e. some nontrivial deck motion < 2R.

    Early-exits on the first witness; on covers the witness's permutation
    must fix the sheet.
    """
    group = surface.base if isinstance(surface, CoverSurface) else surface
    cover = surface if isinstance(surface, CoverSurface) else None
    if group.n_generators == 0:
        return False
    c = z.z
    gens = group.symmetrized()
    n = group.n_generators
    slack = group.max_generator_displacement(c) + 1.0
    if group.dirichlet_radius is not None:
        slack = max(slack, 2.0 * group.dirichlet_radius + 0.5)
    target = 2.0 * R
    if word_cap is None:
        ell_min = min(_displacement(g, c) for g in gens)
        word_cap = int((target + slack) / max(ell_min, 0.05)) + 3
    seen = {_canon_key(GroupElement.identity())}
    frontier = [(GroupElement.identity(), ())]
    explored = 1
    for _ in range(word_cap):
        nxt = []
        for g, word in frontier:
            last_inv = (word[-1] + n) % (2 * n) if word else None
            for gi in range(2 * n):
                if gi == last_inv:
                    continue
                h = g @ gens[gi]
                key = _canon_key(h)
                if key in seen:
                    continue
                seen.add(key)
                explored += 1
                if explored > element_cap:
                    raise BudgetExceeded("injrad search passed the element cap")
                disp = _displacement(h, c)
                if disp > target + slack:
                    continue
                w2 = word + (gi,)
                if 1e-12 < disp < target:
                    if cover is None:
                        return True
                    if _compose_perms(cover, w2)[sheet] == sheet:
                        return True
                nxt.append((h, w2))
        frontier = nxt
        if not frontier:
            break
    return False


def systole_upper_bound(group: FuchsianGroup, word_len: int = 8):
    """Minimal translation length over reduced words up to word_len.

    An upper bound for the systole; the word length used is reported.
    """
    if group.n_generators == 0:
        return math.inf, word_len
    gens = group.symmetrized()
    n = group.n_generators
    best = math.inf
    keep = 2.0 * (group.dirichlet_radius or 3.0) + 2.0
    seen = {_canon_key(GroupElement.identity())}
    frontier = [(GroupElement.identity(), None)]
    for _ in range(word_len):
        nxt = []
        for g, last in frontier:
            last_inv = (last + n) % (2 * n) if last is not None else None
            for gi in range(2 * n):
                if gi == last_inv:
                    continue
                h = g @ gens[gi]
                key = _canon_key(h)
                if key in seen:
                    continue
                seen.add(key)
                tr = abs(2.0 * h.alpha.real)
                if tr > 2.0 + 1e-12:
                    best = min(best, 2.0 * math.acosh(tr / 2.0))
                if _displacement(h, 0j) <= best + keep:
                    nxt.append((h, gi))
        frontier = nxt
        if not frontier:
            break
    return best, word_len


# ---------------------------------------------------------------------------
# Covers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverSurface:
    """Finite cover described by one sheet permutation per generator.

    Permutations map sheet i -> perm[i]; they must act transitively and kill
    the defining relation, otherwise construction fails.  Geometry is
    inherited from the base: volume = degree * base volume.
    """

    base: FuchsianGroup
    degree: int
    permutations: tuple  # tuple of degree-length tuples, one per generator
    seed: int = 0

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if len(self.permutations) != self.base.n_generators:
            raise ValueError("one permutation per generator required")
        for p in self.permutations:
            if sorted(p) != list(range(self.degree)):
                raise ValueError(f"not a permutation of 0..{self.degree - 1}: {p}")
        if self.base.relation:
            perm = _compose_perms(self, self.base.relation_word())
            if not np.array_equal(perm, np.arange(self.degree)):
                raise RelationViolation("permutations do not respect the relation")
        reach = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for gi in range(2 * self.base.n_generators):
                j = int(self.perm_array(gi)[i])
                if j not in reach:
                    reach.add(j)
                    stack.append(j)
        if len(reach) != self.degree:
            raise NonTransitive(f"cover is disconnected ({len(reach)} of {self.degree} sheets)")

    def perm_array(self, gi: int) -> np.ndarray:
        n = self.base.n_generators
        if gi < n:
            return np.asarray(self.permutations[gi], dtype=int)
        inv = np.empty(self.degree, dtype=int)
        p = np.asarray(self.permutations[gi - n], dtype=int)
        inv[p] = np.arange(self.degree)
        return inv

    def volume(self) -> float:
        return self.degree * self.base.volume()

    def to_json(self) -> str:
        d = json.loads(self.base.to_json())
        d.update({"degree": self.degree,
                  "permutations": [list(p) for p in self.permutations],
                  "seed": self.seed})
        return json.dumps(d, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "CoverSurface":
        d = json.loads(text)
        base = FuchsianGroup.from_json(json.dumps(
            {k: d[k] for k in ("label", "generators", "relation", "covolume",
                               "dirichlet_radius")}))
        return CoverSurface(base, d["degree"],
                            tuple(tuple(p) for p in d["permutations"]), d["seed"])


def _compose_perms(cover: CoverSurface, word) -> np.ndarray:
    perm = np.arange(cover.degree)
    for gi in word:
        perm = cover.perm_array(gi)[perm]
    return perm


def random_cover(base: FuchsianGroup, degree: int, seed: int,
                 max_draws: int = 32) -> CoverSurface:
    """Random transitive cyclic-shift cover, deterministic under seed.

    Each generator gets a random weight w in Z_degree and permutes sheets by
    i -> i + w mod degree.  Cyclic images always satisfy the surface relation
    (zero net exponent per generator); transitivity holds iff the weights
    and the degree are coprime as a set, else redraw.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    rng = np.random.default_rng(seed)
    for _ in range(max_draws):
        weights = rng.integers(0, degree, size=base.n_generators)
        if degree == 1 or math.gcd(degree, *[int(w) for w in weights]) == 1:
            perms = tuple(tuple((i + int(w)) % degree for i in range(degree))
                          for w in weights)
            return CoverSurface(base, degree, perms, seed)
    raise NonTransitive(f"no transitive cover of degree {degree} in {max_draws} draws")


# ---------------------------------------------------------------------------
# Fundamental-domain sampling and the Benjamini-Schramm statistic
# ---------------------------------------------------------------------------

class DomainSampler:
    """Uniform (hyperbolic-area) sampler of the Dirichlet domain at 0.

    Rejection from the hyperbolic disc of the Dirichlet circumradius;
    membership test: no orbit point of 0 is closer than 0 itself.
    """

    def __init__(self, group: FuchsianGroup):
        if group.dirichlet_radius is None or group.covolume_hint is None:
            raise ValueError("sampler needs a cocompact group with known radius")
        self.group = group
        self.radius = group.dirichlet_radius
        ball = orbit_enumerate(group, DiscPoint(0, 0), 2.0 * self.radius + 0.2)
        self.orbit0 = np.array([mobius_apply_complex(e.g, 0j)
                                for e in ball.nontrivial()])

    def contains(self, z: complex, tol: float = 1e-12) -> bool:
        if len(self.orbit0) == 0:
            return True
        d0 = abs(z)
        lhs = d0 * d0 / (1.0 - d0 * d0)
        num = np.abs(z - self.orbit0) ** 2
        den = (1.0 - d0 * d0) * (1.0 - np.abs(self.orbit0) ** 2)
        # sinh^2(d/2) comparison is monotone in the distance
        return lhs <= float(np.min(num / den)) + tol

    def sample(self, rng: np.random.Generator) -> complex:
        cosh_R = math.cosh(self.radius)
        while True:
            r_h = math.acosh(1.0 + rng.random() * (cosh_R - 1.0))
            phi = rng.uniform(0.0, 2.0 * math.pi)
            z = math.tanh(r_h / 2.0) * cmath.exp(1j * phi)
            if self.contains(z):
                return z


@dataclass(frozen=True)
class BsStatResult:
    value: float
    stderr: float
    n_samples: int
    n_hits: int


def bs_statistic(surface, R: float, n_samples: int, seed: int) -> BsStatResult:
    """Monte Carlo estimate of Vol{InjRad < R} / Vol over the surface."""
    if R > 25:
        raise ValueError("R > 25 not supported")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    base = surface.base if isinstance(surface, CoverSurface) else surface
    degree = surface.degree if isinstance(surface, CoverSurface) else 1
    sampler = DomainSampler(base)
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(n_samples):
        z = sampler.sample(rng)
        sheet = int(rng.integers(degree)) if degree > 1 else 0
        if injrad_below(surface, DiscPoint(z.real, z.imag), R, sheet=sheet):
            hits += 1
    p = hits / n_samples
    return BsStatResult(p, math.sqrt(max(p * (1.0 - p), 1e-12) / n_samples),
                        n_samples, hits)


# ---------------------------------------------------------------------------
# Periodization and the truncated-kernel HS bound
# ---------------------------------------------------------------------------

def smoothstep_cutoff(x):
    """Default chi: 1 minus the cubic smoothstep, clamped; 1 at 0, 0 for x >= 1."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return 1.0 - (3.0 * x * x - 2.0 * x ** 3)


def periodize_truncated(kernel: Callable[[complex, complex], float],
                        group: FuchsianGroup, r: float,
                        chi: Callable = smoothstep_cutoff,
                        ball: OrbitBall | None = None):
    """K^{Gamma,r}(z, w) = sum_gamma K(z, gamma w) chi(d(z, gamma w) / r).

    The gamma-sum runs over a precomputed orbit ball of radius
    r + 2 * dirichlet_radius (all elements that can contribute for z, w in
    the fundamental domain).
    """
    if ball is None:
        margin = 2.0 * (group.dirichlet_radius or 1.0) + 0.2
        ball = orbit_enumerate(group, DiscPoint(0, 0), r + margin)
    mats = [e.g for e in ball.elements]

    def periodized(z: complex, w: complex) -> float:
        total = 0.0
        for g in mats:
            gw = mobius_apply_complex(g, w)
            num = abs(z - gw) ** 2
            den = (1.0 - abs(z) ** 2) * (1.0 - abs(gw) ** 2)
            d = 2.0 * math.asinh(math.sqrt(num / den))
            if d <= r:
                total += kernel(z, gw) * float(chi(d / r))
        return total

    return periodized


@dataclass(frozen=True)
class HsCheckReport:
    lhs_estimate: float
    lhs_stderr: float
    rhs_bound: float
    rhs_first_term: float
    rhs_second_term: float
    injrad_fraction: float
    systole_bound: float
    window_radius: float
    passed: bool


def hs_bound_check(kernel: RadialKernel, group: FuchsianGroup, r: float,
                   n_mc: int, seed: int, systole: float | None = None,
                   chi: Callable = smoothstep_cutoff,
                   window_radius: float | None = None) -> HsCheckReport:
    """Monte Carlo check of the truncated-periodization HS inequality.

    lhs  = iint_D iint_D |K^{Gamma,r}|^2,
    rhs  = int_D int_disc |K chi(d/r)|^2
           + e^{2r}/systole * Vol{InjRad < r} * sup |K chi|^2.

    The kernel must be radial; pass = lhs <= rhs * (1 + 3 * relative MC
    error).  For groups with an infinite fundamental domain a finite
    sampling window (domain intersected with the hyperbolic ball of radius
    window_radius) replaces D; the unfolding argument applies verbatim on
    the window.
    """
    base_radius = group.dirichlet_radius
    if window_radius is None:
        if base_radius is None:
            raise ValueError("window_radius required for non-cocompact groups")
        window_radius = base_radius
    rng = np.random.default_rng(seed)

    if base_radius is not None:
        membership = DomainSampler(group).contains
    else:
        ball0 = orbit_enumerate(group, DiscPoint(0, 0), 2.0 * window_radius + 0.2,
                                slack=2.0)
        pts = np.array([mobius_apply_complex(e.g, 0j) for e in ball0.nontrivial()])

        def membership(z, tol=1e-12):
            if len(pts) == 0:
                return True
            d0 = abs(z)
            lhs_m = d0 * d0 / (1.0 - d0 * d0)
            num = np.abs(z - pts) ** 2
            den = (1.0 - d0 * d0) * (1.0 - np.abs(pts) ** 2)
            return lhs_m <= float(np.min(num / den)) + tol

    cosh_R = math.cosh(window_radius)
    proposal_vol = 2.0 * math.pi * (cosh_R - 1.0)
    samples = []
    n_prop = 0
    while len(samples) < 2 * n_mc:
        r_h = math.acosh(1.0 + rng.random() * (cosh_R - 1.0))
        z = math.tanh(r_h / 2.0) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        n_prop += 1
        if membership(z):
            samples.append(z)
        if n_prop > 400 * n_mc:
            raise BudgetExceeded("window acceptance rate too low")
    window_vol = proposal_vol * len(samples) / n_prop
    zs, ws = samples[:n_mc], samples[n_mc:]

    def kcall(z, w):
        num = abs(z - w) ** 2
        den = (1.0 - abs(z) ** 2) * (1.0 - abs(w) ** 2)
        d = 2.0 * math.asinh(math.sqrt(num / den))
        return float(kernel(d))

    periodized = periodize_truncated(kcall, group, r)
    vals = np.array([periodized(z, w) ** 2 for z, w in zip(zs, ws)])
    lhs = window_vol ** 2 * float(np.mean(vals))
    lhs_err = window_vol ** 2 * float(np.std(vals) / math.sqrt(len(vals)))

    # first rhs term: the radial kernel unfolds exactly
    upper = min(kernel.support_bound, r)
    t, wq = gauss_legendre(0.0, upper, 400)
    chiv = np.asarray(chi(t / r), dtype=float)
    first = window_vol * 2.0 * math.pi * float(np.sum((kernel(t) * chiv) ** 2
                                                      * np.sinh(t) * wq))
    if systole is None:
        systole, _ = systole_upper_bound(group)
    frac_hits = sum(injrad_below(group, DiscPoint(z.real, z.imag), r) for z in zs)
    frac = frac_hits / len(zs)
    t_s = np.linspace(0.0, upper, 2048)
    sup_k2 = float(np.max((kernel(t_s) * np.asarray(chi(t_s / r))) ** 2))
    second = math.exp(2.0 * r) / systole * (frac * window_vol) * sup_k2
    rhs = first + second
    rel_err = lhs_err / lhs if lhs > 0 else 0.0
    passed = lhs <= rhs * (1.0 + 3.0 * rel_err) + 1e-12
    return HsCheckReport(lhs, lhs_err, rhs, first, second, frac, systole,
                         window_radius, passed)
