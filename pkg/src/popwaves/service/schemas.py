"""Request/response models for the HTTP service."""

from typing import Literal, Optional

from pydantic import BaseModel, Field


class GridSpec(BaseModel):
    x_min: float
    x_max: float
    n: int = Field(ge=16)


class KernelModel(BaseModel):
    a: float
    b: float
    c: float
    xi0: float = 0.0
    theta: Optional[float] = None  # derived; accepted on input and ignored


class KinkSolutionModel(BaseModel):
    P: int
    series: list[float]
    kernel: KernelModel
    v: float
    D_dag: float
    alpha_dag: list[float]
    implied_alpha0_dag: float


class KinkBuildRequest(BaseModel):
    kind: Literal[
        "quadratic",
        "quadratic-zero-alpha0",
        "cubic-free",
        "cubic-constrained",
        "from-asymptotes",
    ]
    riccati_b: Optional[float] = None
    riccati_c: Optional[float] = None
    D_dag: Optional[float] = None
    alpha1_dag: Optional[float] = None
    alpha2_dag: Optional[float] = None
    alpha3_dag: Optional[float] = None
    a0: Optional[float] = None  # cubic-free profile coefficients
    a1: Optional[float] = None
    riccati_a: Optional[float] = None  # cubic-free supplies the full kernel
    xi0: float = 0.0
    v: float = 1.0
    branch: int = 1
    A1: Optional[float] = None  # from-asymptotes
    A2: Optional[float] = None


class KinkBuildResponse(BaseModel):
    solution: KinkSolutionModel
    sigma_nullity: float
    limit_plus: float
    limit_minus: float


class KinkVerifyRequest(BaseModel):
    solution: KinkSolutionModel
    xi_min: float = -30.0
    xi_max: float = 30.0
    n: int = 601


class KinkVerifyResponse(BaseModel):
    sigma_nullity: float
    numeric_residual: float
    limit_plus: float
    limit_minus: float


class CoupledClosedFormRequest(BaseModel):
    a1: float
    b1: float
    c0: float
    b: float
    D11: float
    xi0: float = 0.0


class CoupledParamsModel(BaseModel):
    r: list[float]
    A: list[list[float]]
    D: list[list[float]]


class CoupledSolveRequest(BaseModel):
    params: CoupledParamsModel
    guess: list[float]  # order: a0, a1, b0, b1, c0, c1, a, b, c, v
    tol: float = 1e-12
    max_iter: int = 50


class CoupledResponse(BaseModel):
    unknowns: dict[str, float]
    residual_norm: float
    params: CoupledParamsModel
    xi0: Optional[float] = None
    theta: Optional[float] = None


class PDERunRequest(BaseModel):
    n_populations: int = 1
    alpha: Optional[list[float]] = None  # scalar reaction polynomial
    reaction_terms: Optional[list] = None  # sparse [(exponents, component, coeff)]
    diffusion: list[list[float]]
    transport: Optional[list[list[float]]] = None
    grid: GridSpec
    initial: Optional[list[list[float]]] = None
    initial_kink: Optional[KinkSolutionModel] = None  # sampled as rho(x) at t=0
    t_end: float
    dt: float
    bc: Literal["fixed-value", "zero-gradient"] = "fixed-value"
    snapshot_times: Optional[list[float]] = None
    front_level: Optional[float] = None
    front_component: int = 0


class PDESnapshot(BaseModel):
    t: float
    components: list[list[float]]
    front_position: Optional[float] = None


class PDERunResponse(BaseModel):
    x: list[float]
    snapshots: list[PDESnapshot]


class PdfRequest(BaseModel):
    alpha: list[float]
    noise: float
    grid: GridSpec
    tail_tol: Optional[float] = None
    p_origin: Optional[float] = None  # pinned only


class PdfResponse(BaseModel):
    x: list[float]
    values: list[float]
    tail_ratio: float
    mass: float
    extrema: list[tuple[float, float, str]]


class ExitQuadRequest(BaseModel):
    alpha: list[float]
    noise: float
    q: float
    rho0: list[float]
    rel_tol: float = 1e-8


class ExitQuadResponse(BaseModel):
    rho0: list[float]
    F: list[float]


class ExitMCRequest(BaseModel):
    alpha: list[float]
    noise: float
    q: float
    rho0: float
    dt: float
    n_paths: int
    t_max: float
    seed: int = 0


class ExitMCResponse(BaseModel):
    mean: float
    stderr: float
    n: int
    n_absorbed: int
    seed: int
    dt: float


class LangevinRequest(BaseModel):
    alpha: list[float]
    noise: float
    x0: float
    dt: float
    t_end: float
    n_paths: int
    seed: int = 0
    absorb_at: Optional[float] = None
    histogram_grid: Optional[GridSpec] = None


class LangevinResponse(BaseModel):
    n_paths: int
    time: float
    n_steps: int
    seed: int
    dt: float
    mean: Optional[float]
    stderr: Optional[float]
    variance: Optional[float]
    n_absorbed: int
    n_blown_up: int
    histogram_x: Optional[list[float]] = None
    histogram_values: Optional[list[float]] = None


class FPEvolveRequest(BaseModel):
    alpha: list[float]
    noise: float
    grid: GridSpec
    p_init: Optional[list[float]] = None  # default: the stationary density
    t_end: float
    dt: float
    n_snapshots: int = 0
    lyapunov_reference: bool = False  # also return H(t) against the stationary p0


class FPEvolveResponse(BaseModel):
    x: list[float]
    values: list[float]
    tail_ratio: float
    mass_drift: float
    times: list[float]
    H: Optional[list[float]] = None


class ReproCurve(BaseModel):
    label: str
    x: list[float]
    columns: dict[str, list[float]]
    meta: dict


class ReproResponse(BaseModel):
    figure: str
    curves: list[ReproCurve]
