"""HTTP service exposing the library's operations.

Error contract: configuration problems map to HTTP 400 and numerical
failures to HTTP 422, both with body {"error": {"kind", "type", "message"}}
where kind is "config" or "numerical" and type is the exception class name.
"""

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import repro
from ..config import ConfigError
from ..coupled import (
    LV3Params,
    build_residuals,
    closed_form,
    solve_newton,
    UNKNOWN_ORDER,
)
from ..errors import FrontNotFoundError, NumericalError
from ..pdesim import Field1D, Grid1D, RDModel, front_position, integrate
from ..polynomials import MultiPolynomialRHS, PolynomialRHS
from ..riccati import make_kernel
from ..stochastic import (
    DensityOnGrid,
    DiffusionModel1D,
    ensemble_density,
    exit_time_curve,
    fp_evolve,
    langevin_ensemble,
    lyapunov_H,
    mc_exit_time,
    pdf_extrema,
    stationary_pdf_absorbing_origin,
    stationary_pdf_full_line,
    stationary_pdf_pinned,
)
from ..waves import (
    KinkSolution,
    build_cubic_kink_constrained,
    build_cubic_kink_free,
    build_quadratic_kink,
    build_quadratic_kink_zero_alpha0,
    eval_kink,
    sigma_nullity,
    wave_residual_numeric,
)
from . import schemas as sc


def _require(request, *names):
    missing = [n for n in names if getattr(request, n) is None]
    if missing:
        raise ConfigError(f"kind {request.kind!r} needs fields: {', '.join(missing)}")


def _grid(spec):
    return Grid1D(spec.x_min, spec.x_max, spec.n)


def _model(alpha, noise):
    return DiffusionModel1D(PolynomialRHS(alpha), noise)


def _solution_from_model(m):
    return KinkSolution.from_dict(m.model_dump())


def _kink_response(sol):
    return sc.KinkBuildResponse(
        solution=sc.KinkSolutionModel(**sol.to_dict()),
        sigma_nullity=sigma_nullity(sol),
        limit_plus=sol.limit(+1),
        limit_minus=sol.limit(-1),
    )


def create_app():
    app = FastAPI(title="popwaves", version="1.0.0")

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError):
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "kind": "config",
                    "type": type(exc).__name__,
                    "message": str(exc),
                }
            },
        )

    @app.exception_handler(NumericalError)
    async def _numerical_error(request: Request, exc: NumericalError):
        return JSONResponse(
            status_code=422,
            content={
                "error": {
                    "kind": "numerical",
                    "type": type(exc).__name__,
                    "message": str(exc),
                }
            },
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "kind": "config",
                    "type": "RequestValidationError",
                    "message": str(exc.errors()),
                }
            },
        )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/kink/build", response_model=sc.KinkBuildResponse)
    def kink_build(req: sc.KinkBuildRequest):
        if req.kind == "quadratic":
            _require(req, "riccati_b", "riccati_c", "D_dag", "alpha1_dag", "alpha2_dag")
            sol, _ = build_quadratic_kink(
                req.riccati_b, req.riccati_c, req.D_dag,
                req.alpha1_dag, req.alpha2_dag, xi0=req.xi0, v=req.v,
            )
        elif req.kind == "quadratic-zero-alpha0":
            _require(req, "riccati_b", "riccati_c", "alpha1_dag", "alpha2_dag")
            sol = build_quadratic_kink_zero_alpha0(
                req.riccati_b, req.riccati_c, req.alpha1_dag, req.alpha2_dag,
                xi0=req.xi0, v=req.v,
            )
        elif req.kind == "cubic-free":
            _require(req, "a0", "a1", "riccati_a", "riccati_b", "riccati_c", "D_dag")
            kernel = make_kernel(req.riccati_a, req.riccati_b, req.riccati_c, req.xi0)
            sol, _ = build_cubic_kink_free(req.a0, req.a1, kernel, req.D_dag, v=req.v)
        elif req.kind == "cubic-constrained":
            _require(
                req, "alpha1_dag", "alpha2_dag", "alpha3_dag",
                "D_dag", "riccati_b", "riccati_c",
            )
            sol, _ = build_cubic_kink_constrained(
                req.alpha1_dag, req.alpha2_dag, req.alpha3_dag, req.D_dag,
                req.riccati_b, req.riccati_c, xi0=req.xi0, v=req.v, branch=req.branch,
            )
        else:  # from-asymptotes
            _require(req, "A1", "A2")
            sol = repro.kink_from_asymptotes(req.A1, req.A2, xi0=req.xi0)
        return _kink_response(sol)

    @app.post("/kink/verify", response_model=sc.KinkVerifyResponse)
    def kink_verify(req: sc.KinkVerifyRequest):
        sol = _solution_from_model(req.solution)
        return sc.KinkVerifyResponse(
            sigma_nullity=sigma_nullity(sol),
            numeric_residual=wave_residual_numeric(sol, req.xi_min, req.xi_max, req.n),
            limit_plus=sol.limit(+1),
            limit_minus=sol.limit(-1),
        )

    def _coupled_response(sol_vec, params, xi0=None, theta=None):
        res = build_residuals(params, sol_vec)
        return sc.CoupledResponse(
            unknowns={name: float(v) for name, v in zip(UNKNOWN_ORDER, sol_vec)},
            residual_norm=float(np.max(np.abs(res))),
            params=sc.CoupledParamsModel(
                r=list(params.r), A=params.A.tolist(), D=params.D.tolist()
            ),
            xi0=xi0,
            theta=theta,
        )

    @app.post("/coupled/closed-form", response_model=sc.CoupledResponse)
    def coupled_closed_form(req: sc.CoupledClosedFormRequest):
        sol = closed_form(req.a1, req.b1, req.c0, req.b, req.D11, xi0=req.xi0)
        return _coupled_response(
            sol.unknown_vector, sol.params, xi0=sol.kernel.xi0, theta=sol.kernel.theta
        )

    @app.post("/coupled/solve", response_model=sc.CoupledResponse)
    def coupled_solve(req: sc.CoupledSolveRequest):
        params = LV3Params(
            r=tuple(req.params.r), A=np.array(req.params.A), D=np.array(req.params.D)
        )
        if len(req.guess) != len(UNKNOWN_ORDER):
            raise ConfigError(f"guess must have {len(UNKNOWN_ORDER)} entries")
        x = solve_newton(params, np.asarray(req.guess, dtype=float),
                         tol=req.tol, max_iter=req.max_iter)
        return _coupled_response(x, params)

    @app.post("/pde/run", response_model=sc.PDERunResponse)
    def pde_run(req: sc.PDERunRequest):
        if req.alpha is not None:
            if req.n_populations != 1:
                raise ConfigError("scalar alpha requires n_populations = 1")
            reaction = MultiPolynomialRHS.from_scalar(PolynomialRHS(req.alpha))
        elif req.reaction_terms is not None:
            reaction = MultiPolynomialRHS(req.n_populations, req.reaction_terms)
        else:
            raise ConfigError("provide either alpha or reaction_terms")
        model = RDModel(
            diffusion=np.array(req.diffusion),
            reaction=reaction,
            transport=None if req.transport is None else np.array(req.transport),
        )
        grid = _grid(req.grid)
        if req.initial is not None:
            u0 = np.array(req.initial, dtype=float)
        elif req.initial_kink is not None:
            sol = _solution_from_model(req.initial_kink)
            u0 = eval_kink(sol, grid.x)[None, :]
        else:
            raise ConfigError("provide either initial or initial_kink")
        f = Field1D(grid=grid, components=u0)

        times = sorted(req.snapshot_times or [req.t_end])
        if any(t < 0 or t > req.t_end + 1e-12 for t in times):
            raise ConfigError("snapshot times must lie in [0, t_end]")
        snapshots = []
        for t in times:
            f = integrate(model, f, t, req.dt, bc=req.bc)
            front = None
            if req.front_level is not None:
                try:
                    front = front_position(f, req.front_component, req.front_level)
                except FrontNotFoundError:
                    front = None
            snapshots.append(
                sc.PDESnapshot(
                    t=f.time, components=f.components.tolist(), front_position=front
                )
            )
        return sc.PDERunResponse(x=grid.x.tolist(), snapshots=snapshots)

    def _pdf_response(grid, dens):
        return sc.PdfResponse(
            x=grid.x.tolist(),
            values=dens.values.tolist(),
            tail_ratio=dens.tail_ratio,
            mass=dens.mass,
            extrema=pdf_extrema(dens),
        )

    @app.post("/pdf/full", response_model=sc.PdfResponse)
    def pdf_full(req: sc.PdfRequest):
        grid = _grid(req.grid)
        kwargs = {} if req.tail_tol is None else {"tail_tol": req.tail_tol}
        return _pdf_response(grid, stationary_pdf_full_line(_model(req.alpha, req.noise), grid, **kwargs))

    @app.post("/pdf/absorbing", response_model=sc.PdfResponse)
    def pdf_absorbing(req: sc.PdfRequest):
        grid = _grid(req.grid)
        kwargs = {} if req.tail_tol is None else {"tail_tol": req.tail_tol}
        return _pdf_response(
            grid, stationary_pdf_absorbing_origin(_model(req.alpha, req.noise), grid, **kwargs)
        )

    @app.post("/pdf/pinned", response_model=sc.PdfResponse)
    def pdf_pinned(req: sc.PdfRequest):
        if req.p_origin is None:
            raise ConfigError("pinned density needs p_origin")
        grid = _grid(req.grid)
        kwargs = {} if req.tail_tol is None else {"tail_tol": req.tail_tol}
        return _pdf_response(
            grid,
            stationary_pdf_pinned(_model(req.alpha, req.noise), grid, req.p_origin, **kwargs),
        )

    @app.post("/exit/quad", response_model=sc.ExitQuadResponse)
    def exit_quad(req: sc.ExitQuadRequest):
        F = exit_time_curve(_model(req.alpha, req.noise), req.q,
                            np.asarray(req.rho0, dtype=float), rel_tol=req.rel_tol)
        return sc.ExitQuadResponse(rho0=list(req.rho0), F=np.asarray(F).tolist())

    @app.post("/exit/mc", response_model=sc.ExitMCResponse)
    def exit_mc(req: sc.ExitMCRequest):
        r = mc_exit_time(_model(req.alpha, req.noise), req.q, req.rho0,
                         req.dt, req.n_paths, req.t_max, seed=req.seed)
        return sc.ExitMCResponse(
            mean=r.mean, stderr=r.stderr, n=r.n_paths,
            n_absorbed=r.n_absorbed, seed=req.seed, dt=req.dt,
        )

    @app.post("/langevin/run", response_model=sc.LangevinResponse)
    def langevin_run(req: sc.LangevinRequest):
        res = langevin_ensemble(
            _model(req.alpha, req.noise), req.x0, req.dt, req.t_end,
            req.n_paths, seed=req.seed, absorb_at=req.absorb_at,
        )
        finite = res.positions[np.isfinite(res.positions)]
        hx = hv = None
        if req.histogram_grid is not None:
            grid = _grid(req.histogram_grid)
            hv = ensemble_density(res.positions, grid).tolist()
            hx = grid.x.tolist()
        n = finite.size
        return sc.LangevinResponse(
            n_paths=req.n_paths,
            time=res.time,
            n_steps=res.n_steps,
            seed=req.seed,
            dt=req.dt,
            mean=float(np.mean(finite)) if n else None,
            stderr=float(np.std(finite, ddof=1) / np.sqrt(n)) if n > 1 else None,
            variance=float(np.var(finite, ddof=1)) if n > 1 else None,
            n_absorbed=int(res.absorbed.sum()),
            n_blown_up=int(res.blown_up.sum()),
            histogram_x=hx,
            histogram_values=hv,
        )

    @app.post("/fp/evolve", response_model=sc.FPEvolveResponse)
    def fp_evolve_ep(req: sc.FPEvolveRequest):
        grid = _grid(req.grid)
        model = _model(req.alpha, req.noise)
        p0 = None
        if req.p_init is not None:
            vals = np.asarray(req.p_init, dtype=float)
            if vals.shape != (grid.n,):
                raise ConfigError("p_init must match the grid size")
            peak = float(np.max(vals))
            init = DensityOnGrid(
                grid=grid, values=vals,
                tail_ratio=float(max(vals[0], vals[-1]) / peak) if peak > 0 else 0.0,
            )
        else:
            p0 = stationary_pdf_full_line(model, grid, tail_tol=1e-6)
            init = p0
        n_snap = req.n_snapshots if not req.lyapunov_reference else max(req.n_snapshots, 50)
        res = fp_evolve(model, init, req.t_end, req.dt, n_snapshots=n_snap)
        H = None
        if req.lyapunov_reference:
            if p0 is None:
                p0 = stationary_pdf_full_line(model, grid, tail_tol=1e-6)
            H = [
                lyapunov_H(DensityOnGrid(grid=grid, values=s, tail_ratio=0.0), p0)
                for s in res.snapshots
            ]
        return sc.FPEvolveResponse(
            x=grid.x.tolist(),
            values=res.density.values.tolist(),
            tail_ratio=res.density.tail_ratio,
            mass_drift=res.mass_drift,
            times=res.times.tolist(),
            H=H,
        )

    @app.post("/repro/fig1", response_model=sc.ReproResponse)
    def repro_fig1():
        curves = []
        for c in repro.fig1():
            curves.append(
                sc.ReproCurve(
                    label=c["label"],
                    x=c["xi"].tolist(),
                    columns={"rho": c["rho"].tolist()},
                    meta={"A1": c["A1"], "A2": c["A2"], "solution": c["solution"]},
                )
            )
        return sc.ReproResponse(figure="fig1", curves=curves)

    @app.post("/repro/fig2", response_model=sc.ReproResponse)
    def repro_fig2():
        curves = []
        for c in repro.fig2():
            curves.append(
                sc.ReproCurve(
                    label=c["label"],
                    x=c["x"].tolist(),
                    columns={"p": c["p"].tolist()},
                    meta={
                        "alpha": c["alpha"],
                        "noise": c["noise"],
                        "extrema": c["extrema"],
                    },
                )
            )
        return sc.ReproResponse(figure="fig2", curves=curves)

    @app.post("/repro/fig3", response_model=sc.ReproResponse)
    def repro_fig3():
        curves = []
        for c in repro.fig3():
            curves.append(
                sc.ReproCurve(
                    label=c["label"],
                    x=c["rho0"].tolist(),
                    columns={"F": np.asarray(c["F"]).tolist()},
                    meta={"alpha": c["alpha"], "noise": c["noise"], "q": c["q"]},
                )
            )
        return sc.ReproResponse(figure="fig3", curves=curves)

    return app
