"""
Data models for mu_lab.
"""
import math
from dataclasses import dataclass, field, fields
from functools import cached_property
from typing import List, Dict, Optional, Any, Iterable, Tuple

import numpy as np

from mu_lab.core.constants import (
    MAX_ORDER, ROUTES, DEFAULT_EPSILON, DEFAULT_ALON_CONSTANT,
    DEFAULT_RESTARTS, DEFAULT_MAX_ITERS, REPORT_FORMATS
)
from mu_lab.core.exceptions import GroupSpecError, ConfigError


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group Z(m1) x ... x Z(mk), first factor most significant."""
    factors: Tuple[int, ...]
    order: int = field(init=False, compare=False, repr=False)
    is_boolean: bool = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        factors = tuple(int(m) for m in self.factors)
        if not factors:
            raise GroupSpecError("group needs at least one cyclic factor")
        for m in factors:
            if m < 2:
                raise GroupSpecError(f"modulus below 2: {m}")
        order = math.prod(factors)
        if order > MAX_ORDER:
            raise GroupSpecError(f"group order {order} overflows 64 bits")
        object.__setattr__(self, 'factors', factors)
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, 'is_boolean', all(m == 2 for m in factors))

    @property
    def rank(self) -> int:
        return len(self.factors)

    def spec_string(self) -> str:
        """Canonical text form, parseable by parse_group_spec."""
        if self.is_boolean:
            return f"Z2^{self.rank}"
        return "x".join(f"Z({m})" for m in self.factors)

    def __str__(self) -> str:
        return self.spec_string()

    def to_dict(self) -> Dict[str, Any]:
        """Convert the group to a dictionary for reports."""
        return {
            'group': self.spec_string(),
            'factors': list(self.factors),
            'order': self.order,
            'is_boolean': self.is_boolean
        }


@dataclass(frozen=True)
class Subset:
    """
    A subset of group elements, or a multiset when multiplicities are given.

    Elements are stored strictly increasing. In multiset mode each element
    carries a multiplicity >= 1 and the size is the sum of multiplicities.
    """
    group: GroupSpec
    elements: Tuple[int, ...]
    multiplicities: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        elements = tuple(int(x) for x in self.elements)
        object.__setattr__(self, 'elements', elements)
        n = self.group.order
        if any(cur <= prev for prev, cur in zip(elements, elements[1:])):
            raise GroupSpecError("subset elements must be strictly increasing")
        if elements and (elements[0] < 0 or elements[-1] >= n):
            raise GroupSpecError(f"subset element out of range for group of order {n}")
        if self.multiplicities is not None:
            mults = tuple(int(c) for c in self.multiplicities)
            if len(mults) != len(elements):
                raise GroupSpecError("multiplicities must align with elements")
            if any(c < 1 for c in mults):
                raise GroupSpecError("multiplicities must be >= 1")
            object.__setattr__(self, 'multiplicities', mults)

    @classmethod
    def from_elements(cls, group: GroupSpec, values: Iterable[int],
                      allow_duplicates: bool = False) -> 'Subset':
        """
        Build a Subset from unordered element indices.

        Args:
            group: The ambient group
            values: Element indices in any order
            allow_duplicates: Collapse repeats into multiplicities instead of failing

        Returns:
            A Subset (a multiset if duplicates were present and allowed)
        """
        arr = np.asarray(list(values), dtype=np.int64)
        uniq, counts = np.unique(arr, return_counts=True)
        if len(uniq) != len(arr):
            if not allow_duplicates:
                raise GroupSpecError("duplicate elements in a set")
            return cls(group, tuple(uniq.tolist()), tuple(counts.tolist()))
        return cls(group, tuple(uniq.tolist()))

    @classmethod
    def full(cls, group: GroupSpec) -> 'Subset':
        return cls(group, tuple(range(group.order)))

    @classmethod
    def empty(cls, group: GroupSpec) -> 'Subset':
        return cls(group, ())

    @property
    def is_multiset(self) -> bool:
        return self.multiplicities is not None

    @property
    def size(self) -> int:
        if self.multiplicities is not None:
            return sum(self.multiplicities)
        return len(self.elements)

    @cached_property
    def indices(self) -> np.ndarray:
        """Elements as an int64 array."""
        arr = np.asarray(self.elements, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def weights(self) -> np.ndarray:
        """Per-element weights: multiplicities, or ones in set mode."""
        if self.multiplicities is None:
            arr = np.ones(len(self.elements), dtype=np.int64)
        else:
            arr = np.asarray(self.multiplicities, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def __len__(self) -> int:
        return self.size

    def __contains__(self, x: int) -> bool:
        i = int(np.searchsorted(self.indices, x))
        return i < len(self.elements) and self.elements[i] == x

    def to_dict(self) -> Dict[str, Any]:
        """Convert the subset to a dictionary for reports."""
        result = {
            'group': self.group.spec_string(),
            'size': self.size,
            'elements': list(self.elements),
        }
        if self.multiplicities is not None:
            result['multiplicities'] = list(self.multiplicities)
        return result


@dataclass(eq=False)
class DenseFunction:
    """A real function on the group stored as a dense vector in index order."""
    group: GroupSpec
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.group.order,):
            raise GroupSpecError(
                f"dense function needs {self.group.order} values, got shape {self.values.shape}"
            )


@dataclass(eq=False)
class Spectrum:
    """Fourier coefficients f^(t) = (1/N) sum_x f(x) conj(chi_t(x)); index 0 is the trivial character."""
    group: GroupSpec
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.group.order,):
            raise GroupSpecError(
                f"spectrum needs {self.group.order} coefficients, got shape {self.coeffs.shape}"
            )


@dataclass(frozen=True)
class MuResult:
    """A triple count together with the route that produced it."""
    count: int
    route: str
    residual: float = 0.0

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route: {self.route}")

    def to_dict(self) -> Dict[str, Any]:
        return {'count': self.count, 'route': self.route, 'residual': self.residual}


@dataclass(frozen=True)
class MaximizeResult:
    """Shores B, C witnessing a value of mu(A, B, C)."""
    B: Subset
    C: Subset
    count: int
    exact: bool
    iterations: int = 0
    restarts_used: int = 0

    @property
    def k(self) -> int:
        return self.B.size

    def to_dict(self) -> Dict[str, Any]:
        """Convert the result to a dictionary for CLI output."""
        return {
            'count': self.count,
            'exact': self.exact,
            'lower_bound_only': not self.exact,
            'k': self.k,
            'iterations': self.iterations,
            'restarts_used': self.restarts_used,
            'B': list(self.B.elements),
            'C': list(self.C.elements)
        }


@dataclass
class BoundInputs:
    """Arguments shared by the bound formulas. mB and mC default to mA."""
    N: int
    mA: int
    mB: Optional[int] = None
    mC: Optional[int] = None
    epsilon: float = DEFAULT_EPSILON
    h: Optional[float] = None
    alon_constant: float = DEFAULT_ALON_CONSTANT

    def __post_init__(self):
        if self.mB is None:
            self.mB = self.mA
        if self.mC is None:
            self.mC = self.mA
        if self.N < 2:
            raise ConfigError(f"group order must be >= 2, got {self.N}")
        for name in ('mA', 'mB', 'mC'):
            m = getattr(self, name)
            if not 0 <= m <= self.N:
                raise ConfigError(f"{name} must lie in [0, {self.N}], got {m}")
        if self.epsilon <= 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")
        if self.h is not None and self.h < 0:
            raise ConfigError(f"h must be >= 0, got {self.h}")
        if self.alon_constant <= 0:
            raise ConfigError(f"alon_constant must be > 0, got {self.alon_constant}")


@dataclass
class BoundReport:
    """Every bound and reference curve evaluated for one BoundInputs."""
    main_bound: float
    general_bound: float
    hayes_coeff_bound: float
    kiltz_bound: float
    alon_bound: Optional[float]
    conjecture_curve: float
    alpha: Optional[float]
    beta: Optional[float]
    main_constant: float
    chernoff_coeff_bound: float
    pseudorandom_bound: Optional[float]
    kiltz_regime: bool
    kiltz_defined: bool
    alon_applicable: bool
    alon_constant_unknown: bool
    first_term_dominates: bool
    optimal_regime: bool

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class ExperimentConfig:
    """Monte Carlo run settings; exactly one of m and alpha is given."""
    group: GroupSpec
    m: Optional[int] = None
    alpha: Optional[float] = None
    trials: int = 1
    master_seed: int = 0
    replacement: bool = False
    restarts: int = DEFAULT_RESTARTS
    max_iters: int = DEFAULT_MAX_ITERS
    k: Optional[int] = None
    epsilon: float = DEFAULT_EPSILON
    alon_constant: float = DEFAULT_ALON_CONSTANT
    output_path: Optional[str] = None
    output_format: str = "csv"
    workers: Optional[int] = None
    record_timings: bool = False

    def __post_init__(self):
        if (self.m is None) == (self.alpha is None):
            raise ConfigError("exactly one of m and alpha must be given")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ConfigError(f"master_seed must be an unsigned 64-bit value, got {self.master_seed}")
        n = self.group.order
        size = self.size
        if not 1 <= size <= n:
            raise ConfigError(f"subset size must lie in [1, {n}], got {size}")
        if self.k is not None and not 1 <= self.k <= n:
            raise ConfigError(f"k must lie in [1, {n}], got {self.k}")
        if self.restarts < 1:
            raise ConfigError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.epsilon <= 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")
        if self.output_format not in REPORT_FORMATS:
            raise ConfigError(f"output format must be one of {REPORT_FORMATS}, got {self.output_format!r}")
        if self.workers is not None and self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")

    @property
    def size(self) -> int:
        """Subset size m, resolved from alpha as round(N^alpha) when needed."""
        if self.m is not None:
            return int(self.m)
        return int(math.floor(self.group.order ** self.alpha + 0.5))

    @property
    def shore_size(self) -> int:
        return self.k if self.k is not None else self.size

    def to_dict(self) -> Dict[str, Any]:
        """Convert the config to a JSON-ready dictionary (group as spec string)."""
        return {
            'group': self.group.spec_string(),
            'm': self.m,
            'alpha': self.alpha,
            'trials': self.trials,
            'master_seed': self.master_seed,
            'replacement': self.replacement,
            'restarts': self.restarts,
            'max_iters': self.max_iters,
            'k': self.k,
            'epsilon': self.epsilon,
            'alon_constant': self.alon_constant,
            'output': {'path': self.output_path, 'format': self.output_format},
            'workers': self.workers,
            'record_timings': self.record_timings
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], group: GroupSpec) -> 'ExperimentConfig':
        """
        Build a config from a parsed JSON object.

        Args:
            data: The JSON object; its 'group' entry is ignored in favour of `group`
            group: The parsed group

        Returns:
            A validated ExperimentConfig
        """
        known = {f.name for f in fields(cls)} - {'group', 'output_path', 'output_format'}
        unknown = set(data) - known - {'group', 'output'}
        if unknown:
            raise ConfigError(f"unknown config fields: {', '.join(sorted(unknown))}")
        kwargs = {key: data[key] for key in known if key in data and data[key] is not None}
        output = data.get('output') or {}
        if isinstance(output, str):
            output = {'path': output}
        if output.get('path'):
            kwargs['output_path'] = output['path']
        if output.get('format'):
            kwargs['output_format'] = output['format']
        return cls(group=group, **kwargs)


@dataclass
class ExperimentRecord:
    """One Monte Carlo trial. Field order is the report column order."""
    trial_index: int
    trial_seed: int
    N: int
    m: int
    max_nonprincipal: float
    hayes_bound: float
    bizu_violation: bool
    mu_heuristic: int
    main_bound: float
    bbb_violation: bool
    kiltz_bound: float
    conjecture_curve: float
    alon_bound: Optional[float]
    elapsed_ms_sample: float = 0.0
    elapsed_ms_spectrum: float = 0.0
    elapsed_ms_maximize: float = 0.0

    @classmethod
    def field_names(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    def to_dict(self) -> Dict[str, Any]:
        """Convert the record to an ordered dictionary for reports."""
        return {name: getattr(self, name) for name in self.field_names()}
