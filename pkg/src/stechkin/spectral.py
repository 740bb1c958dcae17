"""Symbols and scalar spectral measures.

A :class:`Symbol` is a scalar function of the real spectral variable with
growth metadata; a :class:`SpectralMeasure` is the nonnegative scalar
measure against which every constant in this package is an integral.
Operators themselves never appear: the measure is all the downstream
formulas consume.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Tuple

import numpy as np

from .errors import ConfigError, NonConvergenceError
from . import numerics
from .numerics import integrate, sum_lattice, sup_search

Interval = Tuple[float, float]

_INT_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class Symbol:
    """Scalar symbol t -> phi(t), possibly complex-valued.

    ``kind`` is one of ``power`` (sign-preserving |t|^alpha: integer alpha
    keeps the sign of t, fractional alpha uses |t|^alpha), ``zero``,
    ``table`` (defined on lattice points only) or ``custom``.
    ``growth_order`` is an exponent g with |phi(t)| <= C(1+|t|)^g, or None
    when unknown.
    """

    kind: str
    alpha: Optional[float] = None
    table: Optional[Mapping[int, complex]] = None
    fn: Optional[Callable] = None
    growth_order: Optional[float] = None

    @classmethod
    def power(cls, alpha: float) -> "Symbol":
        if alpha < 0:
            raise ConfigError("power symbols require alpha >= 0")
        return cls(kind="power", alpha=float(alpha), growth_order=float(alpha))

    @classmethod
    def zero(cls) -> "Symbol":
        return cls(kind="zero", growth_order=-math.inf)

    @classmethod
    def from_table(cls, table: Mapping[int, complex], growth_order: Optional[float] = None) -> "Symbol":
        return cls(kind="table", table=dict(table), growth_order=growth_order)

    @classmethod
    def custom(cls, fn: Callable, growth_order: Optional[float] = None) -> "Symbol":
        return cls(kind="custom", fn=fn, growth_order=growth_order)

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    def __call__(self, t):
        if self.kind == "power":
            a = self.alpha
            if isinstance(t, np.ndarray):
                tf = np.asarray(t, dtype=float)  # int arrays would overflow under **
                return np.power(tf, int(a)) if a == int(a) else np.abs(tf) ** a
            return float(t) ** int(a) if a == int(a) else abs(float(t)) ** a
        if self.kind == "zero":
            if isinstance(t, np.ndarray):
                return np.zeros_like(t, dtype=float)
            return 0.0
        if self.kind == "table":
            if isinstance(t, np.ndarray):
                return np.asarray([self(float(x)) for x in t])
            r = round(float(t))
            if abs(float(t) - r) > _INT_EPS:
                raise ValueError("table symbols are defined on lattice points only")
            return self.table.get(int(r), 0.0)
        return self.fn(t)

    def abs2(self, t):
        """|phi(t)|^2, array-aware."""
        v = self(t)
        return np.abs(v) ** 2 if isinstance(v, np.ndarray) else abs(v) ** 2


def parse_symbol(descriptor: str) -> Symbol:
    """Parse a symbol descriptor: ``pow:<alpha>``, ``zero`` or ``table:<path>``."""
    d = descriptor.strip()
    if d == "zero":
        return Symbol.zero()
    if d.startswith("pow:"):
        try:
            return Symbol.power(float(d[4:]))
        except ValueError as exc:
            raise ConfigError(f"bad power descriptor {descriptor!r}") from exc
    if d.startswith("table:"):
        path = d[6:]
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read symbol table {path!r}: {exc}") from exc
        table = {}
        for k, v in raw.items():
            if k.startswith("_"):
                continue
            table[int(k)] = complex(v[0], v[1]) if isinstance(v, list) else float(v)
        return Symbol.from_table(table, growth_order=raw.get("_growth"))
    raise ConfigError(f"unknown symbol descriptor {descriptor!r}")


# ----------------------------------------------------------------------
# measures


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Nonnegative scalar measure in one of three variants.

    * ``discrete``: finitely many atoms (t_j, w_j), w_j >= 0, t_j distinct;
    * ``lattice``: weights on Z or Z+, either a finite mapping or a uniform
      value with tail-bound summation;
    * ``density``: a nonnegative density on a union of intervals (the
      constant density 1 on R is the translation-invariant case).
    """

    variant: str
    atoms: Tuple[Tuple[float, float], ...] = ()
    index_set: str = "Z"
    lattice_weights: Optional[Mapping[int, float]] = None
    uniform_weight: Optional[float] = None
    support: Tuple[Interval, ...] = ()
    density_fn: Optional[Callable[[float], float]] = None
    density_desc: str = "one"

    @classmethod
    def discrete(cls, atoms) -> "SpectralMeasure":
        pts = tuple((float(t), float(w)) for t, w in atoms)
        locs = [t for t, _ in pts]
        if len(set(locs)) != len(locs):
            raise ConfigError("discrete atom locations must be pairwise distinct")
        if any(w < 0 for _, w in pts):
            raise ConfigError("atom weights must be nonnegative")
        return cls(variant="discrete", atoms=pts)

    @classmethod
    def lattice(cls, index_set: str = "Z", weights: Optional[Mapping[int, float]] = None,
                uniform: Optional[float] = None) -> "SpectralMeasure":
        if index_set not in ("Z", "Z+"):
            raise ConfigError("lattice index set must be 'Z' or 'Z+'")
        if (weights is None) == (uniform is None):
            raise ConfigError("lattice measures take exactly one of weights / uniform")
        if weights is not None:
            w = {int(k): float(v) for k, v in weights.items()}
            if any(v < 0 for v in w.values()):
                raise ConfigError("lattice weights must be nonnegative")
            if index_set == "Z+" and any(k < 0 for k in w):
                raise ConfigError("Z+ lattice weights must have nonnegative indices")
            return cls(variant="lattice", index_set=index_set, lattice_weights=w)
        if uniform < 0:
            raise ConfigError("uniform lattice weight must be nonnegative")
        return cls(variant="lattice", index_set=index_set, uniform_weight=float(uniform))

    @classmethod
    def density(cls, support=((-math.inf, math.inf),), density="one") -> "SpectralMeasure":
        sup = tuple((float(a), float(b)) for a, b in support)
        for a, b in sup:
            if not a < b:
                raise ConfigError("support intervals must have a < b")
        if density == "one":
            return cls(variant="density", support=sup, density_fn=None, density_desc="one")
        if isinstance(density, (int, float)):
            c = float(density)
            if c < 0:
                raise ConfigError("constant density must be nonnegative")
            return cls(variant="density", support=sup,
                       density_fn=(lambda t, c=c: c), density_desc=f"const:{c:g}")
        return cls(variant="density", support=sup, density_fn=density, density_desc="callable")

    # -- helpers ---------------------------------------------------------

    def density_at(self, t):
        if self.density_fn is None:
            return np.ones_like(t, dtype=float) if isinstance(t, np.ndarray) else 1.0
        return self.density_fn(t)

    def lattice_weight_at(self, n):
        if self.lattice_weights is not None:
            if isinstance(n, np.ndarray):
                return np.asarray([self.lattice_weights.get(int(k), 0.0) for k in n])
            return self.lattice_weights.get(int(n), 0.0)
        w = self.uniform_weight
        return np.full_like(n, w, dtype=float) if isinstance(n, np.ndarray) else w

    def total_mass(self) -> float:
        """Total measure mass; may be +inf (allowed for density / uniform lattice)."""
        if self.variant == "discrete":
            return math.fsum(w for _, w in self.atoms)
        if self.variant == "lattice":
            if self.lattice_weights is not None:
                return math.fsum(self.lattice_weights.values())
            return math.inf if self.uniform_weight > 0 else 0.0
        mass = 0.0
        for a, b in self.support:
            if math.isinf(b - a):
                if self.density_desc == "one" or self.density_desc.startswith("const:"):
                    c = 1.0 if self.density_desc == "one" else float(self.density_desc[6:])
                    if c > 0:
                        return math.inf
                    continue
                return math.inf  # unbounded support with unknown density: not claimed finite
            mass += integrate(lambda t: float(self.density_at(t)), (a, b), rel_tol=1e-10).value
        return mass

    # -- JSON schema -----------------------------------------------------

    @classmethod
    def from_json(cls, obj: dict) -> "SpectralMeasure":
        kind = obj.get("type")
        if kind == "discrete":
            return cls.discrete([(a["t"], a["w"]) for a in obj["atoms"]])
        if kind == "lattice":
            if "weights" in obj:
                return cls.lattice(obj.get("set", "Z"), weights=obj["weights"])
            return cls.lattice(obj.get("set", "Z"), uniform=obj.get("uniform", 1.0))
        if kind == "density":
            def end(x):
                if x in ("-inf", "inf"):
                    return -math.inf if x == "-inf" else math.inf
                return float(x)
            support = [(end(a), end(b)) for a, b in obj.get("support", [["-inf", "inf"]])]
            dens = obj.get("density", "one")
            if dens != "one" and not isinstance(dens, (int, float)):
                raise ConfigError("density files support 'one' or a constant")
            return cls.density(support, dens)
        raise ConfigError(f"unknown measure type {kind!r}")

    @classmethod
    def load(cls, path: str) -> "SpectralMeasure":
        try:
            with open(path) as fh:
                return cls.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot load measure file {path!r}: {exc}") from exc

    def to_json(self) -> dict:
        if self.variant == "discrete":
            return {"type": "discrete", "atoms": [{"t": t, "w": w} for t, w in self.atoms]}
        if self.variant == "lattice":
            if self.lattice_weights is not None:
                return {"type": "lattice", "set": self.index_set,
                        "weights": {str(k): v for k, v in sorted(self.lattice_weights.items())}}
            return {"type": "lattice", "set": self.index_set, "uniform": self.uniform_weight,
                    "cutoff_policy": "tail-bound"}
        def end(x):
            return "-inf" if x == -math.inf else ("inf" if x == math.inf else x)
        return {"type": "density", "support": [[end(a), end(b)] for a, b in self.support],
                "density": self.density_desc if self.density_desc == "one" else self.density_desc}


# ----------------------------------------------------------------------
# spectral integrals


def spectral_integral(
    measure: SpectralMeasure,
    weight: Callable,
    rel_tol: float = numerics.DEFAULT_SERIES_RTOL,
    growth: Optional[float] = None,
) -> float:
    """Integrate a nonnegative ``weight`` against the measure.

    ``growth`` is the weight's net growth exponent on unbounded supports;
    a value >= -1 proves divergence and is reported as ``math.inf``.
    Without growth metadata a divergent tail surfaces as
    :class:`NonConvergenceError` ("did not converge") rather than a guess.
    """
    if measure.variant == "discrete":
        return math.fsum(float(np.real(weight(t))) * w for t, w in measure.atoms)

    if measure.variant == "lattice":
        if measure.lattice_weights is not None:
            return math.fsum(
                float(np.real(weight(float(n)))) * w
                for n, w in sorted(measure.lattice_weights.items())
            )
        w0 = measure.uniform_weight
        if w0 == 0.0:
            return 0.0
        if growth is not None and growth >= -1.0:
            return math.inf

        def term(n):
            return w0 * np.real(weight(n))

        try:
            res = sum_lattice(term, measure.index_set, rel_tol=rel_tol)
        except NonConvergenceError as exc:
            raise NonConvergenceError(
                "lattice integral did not converge and no growth metadata proves divergence"
            ) from exc
        return float(np.real(res.value))

    total = 0.0
    dens = measure.density_at
    desc = measure.density_desc
    nondecaying = desc == "one" or (desc.startswith("const:") and float(desc[6:]) > 0)
    for a, b in measure.support:
        # the growth shortcut presumes the density itself does not decay
        if math.isinf(b - a) and nondecaying and growth is not None and growth >= -1.0:
            return math.inf

        def f(t):
            return float(np.real(weight(t))) * float(dens(t))

        try:
            total += integrate(f, (a, b), rel_tol=max(rel_tol, 1e-12)).value
        except NonConvergenceError as exc:
            raise NonConvergenceError(
                "density integral did not converge and no growth metadata proves divergence"
            ) from exc
    return total


def norm_phi_f(measure: SpectralMeasure, phi: Symbol,
               rel_tol: float = numerics.DEFAULT_SERIES_RTOL) -> float:
    """||phi(A)f|| = {integral of |phi|^2 d mu}^(1/2); +inf when f is outside D(phi(A))."""
    if phi.is_zero:
        return 0.0
    g = None if phi.growth_order is None else 2.0 * phi.growth_order
    val = spectral_integral(measure, phi.abs2, rel_tol=rel_tol, growth=g)
    return math.sqrt(val) if not math.isinf(val) else math.inf


# ----------------------------------------------------------------------
# admissibility


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of the symbol-pair admissibility checks.

    ``condition_holds`` is the boundedness of |phi|/(1+|psi|^2)^(1/2) on the
    real line (None when undecidable from the available metadata);
    ``l2_condition_holds`` is the square-integrability / square-summability
    hypothesis appropriate to the measure variant (None = not applicable).
    """

    condition_holds: Optional[bool]
    ess_sup_estimate: float
    l2_condition_holds: Optional[bool]
    notes: str = ""


def power_ratio_sup(a_phi: float, a_psi: float, tau: float) -> float:
    """sup over t of |t|^(2a)/(1 + tau |t|^(2b)) in closed form for power symbols."""
    if a_phi == 0.0:
        return 1.0
    if a_psi <= 0.0:
        return math.inf
    if a_phi > a_psi:
        return math.inf
    if a_phi == a_psi:
        return 1.0 / tau
    a, b = a_phi, a_psi
    # stationary point: tau u^(2b) = a/(b-a)
    return (a / ((b - a) * tau)) ** (a / b) * (b - a) / b


def effective_growth(sym: Symbol) -> Optional[float]:
    """Growth exponent usable in tail tests: None only when truly unknown."""
    if sym.is_zero:
        return -math.inf
    if sym.kind == "power":
        return sym.alpha
    if sym.kind == "table":
        return 0.0  # finite support, bounded values
    return sym.growth_order


def check_admissibility(phi: Symbol, psi: Symbol, measure: SpectralMeasure) -> AdmissibilityReport:
    """Decide the |phi|/(1+|psi|^2)^(1/2) boundedness and the variant L2 condition."""
    notes = []
    g_phi = effective_growth(phi)
    g_psi = effective_growth(psi)

    if phi.is_zero:
        holds, ess = True, 0.0
    elif phi.kind == "power" and (psi.kind == "power" or psi.is_zero):
        a = phi.alpha
        b = 0.0 if psi.is_zero else psi.alpha
        if a == 0.0:
            holds, ess = True, 1.0
        elif b == 0.0:
            holds, ess = False, math.inf
            notes.append("unbounded power over constant denominator")
        elif a <= b:
            holds = True
            ess = math.sqrt(power_ratio_sup(a, b, 1.0))
        else:
            holds, ess = False, math.inf
    elif g_phi is None or g_psi is None:
        holds, ess = None, math.nan
        notes.append("undecidable: custom symbol lacks growth metadata on an unbounded domain")
    else:
        net = 2.0 * g_phi - 2.0 * max(g_psi, 0.0)
        sup = sup_search(
            lambda t: float(abs(phi(t)) ** 2 / (1.0 + abs(psi(t)) ** 2)),
            (-math.inf, math.inf),
            growth=net,
        )
        holds = not math.isinf(sup.value)
        ess = math.sqrt(sup.value) if holds else math.inf

    l2: Optional[bool]
    if measure.variant == "discrete" or (
        measure.variant == "lattice" and measure.lattice_weights is not None
    ):
        l2 = None
        notes.append("l2 condition not applicable to finitely supported measures")
    else:
        def ratio2(t):
            return np.real(np.abs(phi(t)) ** 2 / (1.0 + np.abs(psi(t)) ** 2))

        if phi.is_zero:
            l2 = True
        elif phi.kind == "power" and (psi.kind == "power" or psi.is_zero):
            b = 0.0 if psi.is_zero else psi.alpha
            l2 = (2.0 * phi.alpha - 2.0 * b) < -1.0
        elif g_phi is not None and g_psi is not None:
            net = 2.0 * g_phi - 2.0 * max(g_psi, 0.0)
            if net >= -1.0:
                l2 = False
            else:
                try:
                    if measure.variant == "lattice":
                        sum_lattice(ratio2, measure.index_set, rel_tol=1e-6)
                    else:
                        for a_, b_ in measure.support:
                            integrate(lambda t: float(ratio2(t)), (a_, b_), rel_tol=1e-6)
                    l2 = True
                except NonConvergenceError:
                    l2 = False
        else:
            l2 = None
            notes.append("l2 condition undecidable without growth metadata")

    return AdmissibilityReport(
        condition_holds=holds,
        ess_sup_estimate=ess,
        l2_condition_holds=l2,
        notes="; ".join(notes),
    )
