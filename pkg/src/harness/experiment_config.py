"""
Experiment Config
Validated JSON documents describing solver sweeps and spectrum scans. Lists of
tau and level values expand as a Cartesian grid.
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..assembly.discrete_problem import ProblemSpec
from ..krylov.preconditioners import InnerSolver, Preconditioner
from ..mesh.dof_map import BcSpec
from ..multigrid.hierarchy import CycleType
from ..smoothers.smoother_config import SmootherConfig, SmootherKind
from ..utils.errors import ConfigurationError
from ..utils.settings import get_settings

ModelT = TypeVar("ModelT", bound=BaseModel)

_INNER_PATTERN = re.compile(r"^(mg|lu|gs\(\d+\))$")


def _as_list(value):
    return list(value) if isinstance(value, (list, tuple)) else [value]


class ProblemConfig(BaseModel):
    """Which problem to assemble and on which grid of (level, tau) cells."""
    model_config = ConfigDict(extra="forbid")

    example: Literal["1", "2", "unit", "custom"] = "1"
    a: Optional[str] = None
    b: Optional[str] = None
    bc: Literal["all_dirichlet", "mixed_corner"] = "all_dirichlet"
    tau: Union[float, List[float]] = 1.0
    level: Union[int, List[int]] = 3
    coarse_level: int = Field(1, ge=0)

    @field_validator("example", mode="before")
    @classmethod
    def _example_to_str(cls, value):
        return str(value).strip().lower() if value is not None else value

    @field_validator("tau")
    @classmethod
    def _tau_positive(cls, value):
        taus = _as_list(value)
        if not taus:
            raise ValueError("tau list must not be empty")
        for tau in taus:
            if not tau > 0.0:
                raise ValueError(f"tau must be positive, got {tau}")
        return value

    @field_validator("level")
    @classmethod
    def _level_nonnegative(cls, value):
        levels = _as_list(value)
        if not levels:
            raise ValueError("level list must not be empty")
        if min(levels) < 0:
            raise ValueError("mesh levels must be nonnegative")
        return value

    @model_validator(mode="after")
    def _check_problem(self):
        if self.example == "custom" and (self.a is None or self.b is None):
            raise ValueError("example 'custom' needs coefficient names a and b")
        if self.example != "custom" and (self.a is not None or self.b is not None):
            raise ValueError("coefficients a and b are only allowed with example 'custom'")
        if self.coarse_level > min(self.levels):
            raise ValueError(f"coarse_level {self.coarse_level} above finest level {min(self.levels)}")
        return self

    @property
    def taus(self) -> List[float]:
        return [float(t) for t in _as_list(self.tau)]

    @property
    def levels(self) -> List[int]:
        return [int(level) for level in _as_list(self.level)]

    def spec(self) -> ProblemSpec:
        """Coefficient pair and boundary condition."""
        bc = BcSpec.from_name(self.bc)
        if self.example == "custom":
            return ProblemSpec.custom(self.a, self.b, bc)
        return ProblemSpec.example(self.example, bc)


class MethodConfig(BaseModel):
    """
    One solver configuration, a row of a results table.

    solver "mg" runs stationary multigrid on 𝓐; solver "gmres" runs flexible
    GMRES right-preconditioned by `precond`, whose systems are solved by `inner`.
    """
    model_config = ConfigDict(extra="forbid")

    solver: Literal["mg", "gmres"] = "mg"
    smoother: Literal["cgs", "cj", "dgs"] = "cgs"
    cycle: Literal["v", "w"] = "v"
    pre: int = Field(1, ge=0)
    post: int = Field(1, ge=0)
    damping: float = Field(0.8, gt=0.0, le=1.0)
    omega: float = Field(0.5, gt=0.0, le=1.0)
    precond: Optional[Literal["A", "B", "Btilde", "Bd"]] = None
    inner: Optional[str] = None
    label: Optional[str] = None

    @field_validator("smoother", "cycle", "inner", mode="before")
    @classmethod
    def _lower(cls, value):
        return value.strip().lower() if isinstance(value, str) else value

    @model_validator(mode="after")
    def _check_method(self):
        if self.solver == "mg":
            if self.precond is not None or self.inner is not None:
                raise ValueError("solver 'mg' takes no precond or inner")
            if self.smoother == "dgs":
                raise ValueError("smoother 'dgs' needs solver 'gmres' with precond B or Btilde")
            return self
        if self.precond is None:
            raise ValueError("solver 'gmres' needs a precond")
        if self.inner is None:
            self.inner = "gs(3)" if self.precond == "Bd" else "mg"
        if not _INNER_PATTERN.match(self.inner):
            raise ValueError(f"inner must be mg, lu or gs(k), got '{self.inner}'")
        if self.precond == "Bd" and not self.inner.startswith("gs"):
            raise ValueError("precond 'Bd' requires inner gs(k)")
        if self.precond != "Bd" and self.inner.startswith("gs"):
            raise ValueError("inner gs(k) is only defined for precond 'Bd'")
        if self.smoother == "dgs" and self.precond == "A" and self.inner == "mg":
            raise ValueError("smoother 'dgs' is defined for precond B and Btilde only")
        return self

    @property
    def uses_multigrid(self) -> bool:
        return self.solver == "mg" or self.inner == "mg"

    @property
    def mg_target(self) -> str:
        return "A" if self.solver == "mg" else self.precond

    def smoother_config(self) -> SmootherConfig:
        kind = SmootherKind.parse(self.smoother)
        if kind is SmootherKind.COLLECTIVE_JACOBI:
            return SmootherConfig.collective_jacobi(self.damping)
        if kind is SmootherKind.DISTRIBUTIVE:
            return SmootherConfig.distributive(omega=self.omega)
        return SmootherConfig.collective_gs()

    def preconditioner(self) -> Optional[Preconditioner]:
        if self.solver == "mg":
            return None
        inner = InnerSolver.parse(self.inner, cycle=CycleType.parse(self.cycle), pre=self.pre,
                                  post=self.post, smoother=self.smoother_config())
        return Preconditioner(self.precond, inner)

    @property
    def display_label(self) -> str:
        """Row label: explicit label, else e.g. "CGS-MG V(1,1)" or "V_B(1,1) DGS"."""
        if self.label:
            return self.label
        cycle = f"{self.cycle.upper()}({self.pre},{self.post})"
        if self.solver == "mg":
            return f"{self.smoother.upper()}-MG {cycle}"
        if self.inner == "mg":
            return f"{self.cycle.upper()}_{self.precond}({self.pre},{self.post}) {self.smoother.upper()}"
        if self.inner == "lu":
            return f"LU_{self.precond}"
        return f"GS_{self.precond}({self.inner[3:-1]})"


class RunConfig(BaseModel):
    """Stopping rule and seeds; defaults come from the LUMO_* environment."""
    model_config = ConfigDict(extra="forbid")

    tol: float = Field(default_factory=lambda: get_settings().tol, gt=0.0)
    maxit: int = Field(default_factory=lambda: get_settings().maxit, ge=1)
    seeds: List[int] = Field(default_factory=lambda: get_settings().default_seeds, min_length=1)


class ExperimentConfig(BaseModel):
    """A solver sweep: problem grid x methods x seeds."""
    model_config = ConfigDict(extra="forbid")

    problem: ProblemConfig = Field(default_factory=ProblemConfig)
    method: Union[MethodConfig, List[MethodConfig]] = Field(default_factory=MethodConfig)
    run: RunConfig = Field(default_factory=RunConfig)
    output: Optional[str] = None
    jobs: int = Field(1, ge=1)

    @field_validator("method")
    @classmethod
    def _methods_not_empty(cls, value):
        if isinstance(value, list) and not value:
            raise ValueError("method list must not be empty")
        return value

    @model_validator(mode="after")
    def _multigrid_has_coarse_unknowns(self):
        # level 0 has no free unknowns under either boundary condition
        multigrid = [method.display_label for method in self.methods if method.uses_multigrid]
        if multigrid and self.problem.coarse_level < 1:
            raise ValueError(
                f"problem.coarse_level must be at least 1 for multigrid methods ({', '.join(multigrid)}), "
                f"got {self.problem.coarse_level}"
            )
        return self

    @property
    def methods(self) -> List[MethodConfig]:
        return _as_list(self.method)

    @property
    def output_dir(self) -> Path:
        return Path(self.output or get_settings().output_dir)


class SpectrumConfig(BaseModel):
    """A dense spectrum scan over levels and tau for several operators."""
    model_config = ConfigDict(extra="forbid")

    problem: ProblemConfig = Field(default_factory=lambda: ProblemConfig(example="unit", level=[2, 3],
                                                                        tau=[1e-1, 1e-3], coarse_level=0))
    operators: List[Literal["A", "B", "Btilde", "Bd", "X"]] = Field(default_factory=lambda: ["B", "Btilde"],
                                                                     min_length=1)
    output: Optional[str] = None

    @property
    def output_dir(self) -> Path:
        return Path(self.output or get_settings().output_dir)


def validation_fields(exc: ValidationError) -> List[str]:
    """Dotted locations of every failing field."""
    return [".".join(str(part) for part in error["loc"]) or "<root>" for error in exc.errors()]


def parse_config(model: Type[ModelT], data: Dict[str, Any]) -> ModelT:
    """
    Validate a config document.

    Raises:
        ConfigurationError: with one "<field>: <message>" line per failure
    """
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        lines = [
            f"{'.'.join(str(part) for part in error['loc']) or '<root>'}: {error['msg']}"
            for error in exc.errors()
        ]
        raise ConfigurationError("invalid configuration:\n  " + "\n  ".join(lines),
                                 validation_fields(exc)) from exc


def load_config(path: Union[str, Path], model: Type[ModelT] = ExperimentConfig) -> ModelT:
    """Read and validate a JSON config file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise ConfigurationError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config file is not valid JSON: {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError(f"config file must hold a JSON object: {path}")
    return parse_config(model, data)
