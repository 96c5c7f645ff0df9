"""Command-line front end.

Thin client over the HTTP service: every subcommand resolves its config,
posts a request (in-process by default, or to ``--server URL``), and writes
CSV/JSON artifacts. Exit codes: 0 success, 2 configuration error,
3 numerical failure; errors are one machine-parsable line on stderr.
"""

import csv
import json
import os
import sys

import click

from .config import REQUIRED, load_config, resolve_config
from .errors import ConfigError, NumericalError, PopwavesError


def _fail(kind, type_name, message, code):
    msg = str(message).replace("\n", " ")
    click.echo(f'error kind={kind} type={type_name} message="{msg}"', err=True)
    sys.exit(code)


class ServiceClient:
    """POSTs to a remote server, or straight into the app in-process."""

    def __init__(self, server=None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def post(self, path, payload):
        resp = self._client.post(path, json=payload)
        if resp.status_code == 200:
            return resp.json()
        try:
            err = resp.json()["error"]
        except Exception:
            _fail("transport", "HTTPError", f"status {resp.status_code}", 3)
        code = 2 if err["kind"] == "config" else 3
        _fail(err["kind"], err["type"], err["message"], code)


def _load(config_path):
    if config_path is None:
        raise ConfigError("this command needs --config PATH")
    return load_config(config_path)


def _write_json(out_dir, name, obj):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _write_csv(out_dir, name, header, columns):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    rows = zip(*columns)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) for v in row])
    return path


def _echo_artifacts(paths):
    for p in paths:
        click.echo(p)


pass_server = click.make_pass_decorator(dict)


def common_options(f):
    f = click.option("--config", "config_path", type=click.Path(exists=True),
                     default=None, help="Run configuration file.")(f)
    f = click.option("--out", "out_dir", type=click.Path(), default=".",
                     help="Output directory.")(f)
    f = click.option("--seed", type=int, default=None,
                     help="Override the config seed.")(f)
    f = click.option("--threads", type=int, default=1,
                     help="Accepted for interface compatibility; all "
                          "computations are single-threaded per call.")(f)
    return f


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default is in-process.")
@click.pass_context
def main(ctx, server):
    """Travelling-wave construction and stochastic population dynamics."""
    ctx.obj = {"server": server}


def _client(ctx_obj):
    return ServiceClient(ctx_obj["server"])


def _guarded(fn):
    """Convert library errors raised client-side into exit codes 2/3."""
    import functools

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConfigError as e:
            _fail("config", type(e).__name__, e, 2)
        except NumericalError as e:
            _fail("numerical", type(e).__name__, e, 3)
        except PopwavesError as e:
            _fail("numerical", type(e).__name__, e, 3)

    return wrapper


# ---------------------------------------------------------------- kink

@main.group()
def kink():
    """Single-population kink construction and verification."""


KINK_BUILD_SCHEMA = {
    "kind": REQUIRED,
    "riccati_a": None, "riccati_b": None, "riccati_c": None,
    "D_dag": None, "alpha1_dag": None, "alpha2_dag": None, "alpha3_dag": None,
    "a0": None, "a1": None, "xi0": 0.0, "v": 1.0, "branch": 1,
    "A1": None, "A2": None,
}


@kink.command("build")
@common_options
@pass_server
@_guarded
def kink_build(ctx_obj, config_path, out_dir, seed, threads):
    cfg = resolve_config(_load(config_path), KINK_BUILD_SCHEMA)
    result = _client(ctx_obj).post("/kink/build", cfg)
    path = _write_json(out_dir, "kink_build.json",
                       {"command": "kink build", "config": cfg, **result})
    _echo_artifacts([path])


KINK_VERIFY_SCHEMA = {"solution": REQUIRED, "xi_min": -30.0, "xi_max": 30.0, "n": 601}


@kink.command("verify")
@common_options
@pass_server
@_guarded
def kink_verify(ctx_obj, config_path, out_dir, seed, threads):
    raw = _load(config_path)
    # accept a `kink build` artifact directly (round-trip), a config holding
    # the solution inline, or a bare serialized solution
    if "series" in raw:
        raw = {"solution": raw}
    raw = {k: v for k, v in raw.items() if k in KINK_VERIFY_SCHEMA}
    cfg = resolve_config(raw, KINK_VERIFY_SCHEMA)
    result = _client(ctx_obj).post("/kink/verify", cfg)
    path = _write_json(out_dir, "kink_verify.json",
                       {"command": "kink verify", "config": cfg, **result})
    _echo_artifacts([path])


# ---------------------------------------------------------------- coupled

@main.group()
def coupled():
    """Three-population coupled kink system."""


COUPLED_CF_SCHEMA = {"a1": REQUIRED, "b1": REQUIRED, "c0": REQUIRED,
                     "b": REQUIRED, "D11": REQUIRED, "xi0": 0.0}


@coupled.command("closed-form")
@common_options
@pass_server
@_guarded
def coupled_closed_form(ctx_obj, config_path, out_dir, seed, threads):
    cfg = resolve_config(_load(config_path), COUPLED_CF_SCHEMA)
    result = _client(ctx_obj).post("/coupled/closed-form", cfg)
    path = _write_json(out_dir, "coupled_closed_form.json",
                       {"command": "coupled closed-form", "config": cfg, **result})
    _echo_artifacts([path])


COUPLED_SOLVE_SCHEMA = {"r": REQUIRED, "A": REQUIRED, "D": REQUIRED,
                        "guess": REQUIRED, "tol": 1e-12, "max_iter": 50}


@coupled.command("solve")
@common_options
@pass_server
@_guarded
def coupled_solve(ctx_obj, config_path, out_dir, seed, threads):
    cfg = resolve_config(_load(config_path), COUPLED_SOLVE_SCHEMA)
    payload = {"params": {"r": cfg["r"], "A": cfg["A"], "D": cfg["D"]},
               "guess": cfg["guess"], "tol": cfg["tol"], "max_iter": cfg["max_iter"]}
    result = _client(ctx_obj).post("/coupled/solve", payload)
    path = _write_json(out_dir, "coupled_solve.json",
                       {"command": "coupled solve", "config": cfg, **result})
    _echo_artifacts([path])


# ---------------------------------------------------------------- pde

@main.group()
def pde():
    """Reaction-diffusion(-transport) PDE simulation."""


PDE_RUN_SCHEMA = {
    "n_populations": 1, "alpha": None, "reaction_terms": None,
    "diffusion": REQUIRED, "transport": None,
    "x_min": REQUIRED, "x_max": REQUIRED, "n": REQUIRED,
    "initial": None, "initial_kink_file": None,
    "t_end": REQUIRED, "dt": REQUIRED, "bc": "fixed-value",
    "snapshot_times": None, "front_level": None, "front_component": 0,
}


@pde.command("run")
@common_options
@pass_server
@_guarded
def pde_run(ctx_obj, config_path, out_dir, seed, threads):
    cfg = resolve_config(_load(config_path), PDE_RUN_SCHEMA)
    payload = {k: cfg[k] for k in ("n_populations", "alpha", "reaction_terms",
                                   "diffusion", "transport", "initial", "t_end",
                                   "dt", "bc", "snapshot_times", "front_level",
                                   "front_component")}
    payload["grid"] = {"x_min": cfg["x_min"], "x_max": cfg["x_max"], "n": cfg["n"]}
    if cfg["initial_kink_file"] is not None:
        artifact = load_config(cfg["initial_kink_file"])
        payload["initial_kink"] = artifact.get("solution", artifact)
    result = _client(ctx_obj).post("/pde/run", payload)

    paths = []
    x = result["x"]
    for snap in result["snapshots"]:
        comps = snap["components"]
        header = ["x"] + [f"rho{i + 1}" for i in range(len(comps))]
        name = f"pde_t{snap['t']:g}.csv"
        paths.append(_write_csv(out_dir, name, header, [x] + comps))
    meta = {"command": "pde run", "config": cfg,
            "snapshots": [{"t": s["t"], "front_position": s["front_position"],
                           "file": f"pde_t{s['t']:g}.csv"}
                          for s in result["snapshots"]]}
    paths.append(_write_json(out_dir, "pde_run.json", meta))
    _echo_artifacts(paths)


# ---------------------------------------------------------------- pdf

@main.group()
def pdf():
    """Stationary probability densities."""


PDF_SCHEMA = {"alpha": REQUIRED, "noise": REQUIRED,
              "x_min": REQUIRED, "x_max": REQUIRED, "n": REQUIRED,
              "tail_tol": None, "p_origin": None}


def _pdf_cmd(ctx_obj, config_path, out_dir, which):
    cfg = resolve_config(_load(config_path), PDF_SCHEMA)
    payload = {"alpha": cfg["alpha"], "noise": cfg["noise"],
               "grid": {"x_min": cfg["x_min"], "x_max": cfg["x_max"], "n": cfg["n"]},
               "tail_tol": cfg["tail_tol"], "p_origin": cfg["p_origin"]}
    result = _client(ctx_obj).post(f"/pdf/{which}", payload)
    paths = [
        _write_csv(out_dir, f"pdf_{which}.csv", ["x", "value"],
                   [result["x"], result["values"]]),
        _write_json(out_dir, f"pdf_{which}.json",
                    {"command": f"pdf {which}", "config": cfg,
                     "tail_ratio": result["tail_ratio"], "mass": result["mass"],
                     "extrema": result["extrema"]}),
    ]
    _echo_artifacts(paths)


@pdf.command("full")
@common_options
@pass_server
@_guarded
def pdf_full(ctx_obj, config_path, out_dir, seed, threads):
    _pdf_cmd(ctx_obj, config_path, out_dir, "full")


@pdf.command("absorbing")
@common_options
@pass_server
@_guarded
def pdf_absorbing(ctx_obj, config_path, out_dir, seed, threads):
    _pdf_cmd(ctx_obj, config_path, out_dir, "absorbing")


@pdf.command("pinned")
@common_options
@pass_server
@_guarded
def pdf_pinned(ctx_obj, config_path, out_dir, seed, threads):
    _pdf_cmd(ctx_obj, config_path, out_dir, "pinned")


# ---------------------------------------------------------------- exit

@main.group(name="exit")
def exit_group():
    """Mean exit (extinction) times."""


EXIT_QUAD_SCHEMA = {"alpha": REQUIRED, "noise": REQUIRED, "q": REQUIRED,
                    "rho0": None, "rho0_min": None, "rho0_max": None,
                    "rho0_n": None, "rel_tol": 1e-8}


@exit_group.command("quad")
@common_options
@pass_server
@_guarded
def exit_quad(ctx_obj, config_path, out_dir, seed, threads):
    cfg = resolve_config(_load(config_path), EXIT_QUAD_SCHEMA)
    if cfg["rho0"] is not None:
        rho0 = [float(v) for v in cfg["rho0"]]
    elif None not in (cfg["rho0_min"], cfg["rho0_max"], cfg["rho0_n"]):
        lo, hi, n = cfg["rho0_min"], cfg["rho0_max"], int(cfg["rho0_n"])
        rho0 = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    else:
        raise ConfigError("provide rho0 = [...] or rho0_min/rho0_max/rho0_n")
    payload = {"alpha": cfg["alpha"], "noise": cfg["noise"], "q": cfg["q"],
               "rho0": rho0, "rel_tol": cfg["rel_tol"]}
    result = _client(ctx_obj).post("/exit/quad", payload)
    paths = [
        _write_csv(out_dir, "exit_quad.csv", ["x", "value"],
                   [result["rho0"], result["F"]]),
        _write_json(out_dir, "exit_quad.json",
                    {"command": "exit quad", "config": cfg}),
    ]
    _echo_artifacts(paths)


EXIT_MC_SCHEMA = {"alpha": REQUIRED, "noise": REQUIRED, "q": REQUIRED,
                  "rho0": REQUIRED, "dt": REQUIRED, "n_paths": REQUIRED,
                  "t_max": REQUIRED, "seed": 0}


@exit_group.command("mc")
@common_options
@pass_server
@_guarded
def exit_mc(ctx_obj, config_path, out_dir, seed, threads):
    cfg = resolve_config(_load(config_path), EXIT_MC_SCHEMA)
    if seed is not None:
        cfg["seed"] = seed
    result = _client(ctx_obj).post("/exit/mc", cfg)
    path = _write_json(out_dir, "exit_mc.json",
                       {"command": "exit mc", "config": cfg,
                        "mean": result["mean"], "stderr": result["stderr"],
                        "n": result["n"], "n_absorbed": result["n_absorbed"],
                        "seed": result["seed"], "dt": result["dt"]})
    _echo_artifacts([path])


# ---------------------------------------------------------------- langevin

@main.group()
def langevin():
    """Euler-Maruyama ensembles."""


LANGEVIN_SCHEMA = {"alpha": REQUIRED, "noise": REQUIRED, "x0": REQUIRED,
                   "dt": REQUIRED, "t_end": REQUIRED, "n_paths": REQUIRED,
                   "seed": 0, "absorb_at": None,
                   "hist_x_min": None, "hist_x_max": None, "hist_n": None}


@langevin.command("run")
@common_options
@pass_server
@_guarded
def langevin_run(ctx_obj, config_path, out_dir, seed, threads):
    cfg = resolve_config(_load(config_path), LANGEVIN_SCHEMA)
    if seed is not None:
        cfg["seed"] = seed
    payload = {k: cfg[k] for k in ("alpha", "noise", "x0", "dt", "t_end",
                                   "n_paths", "seed", "absorb_at")}
    if None not in (cfg["hist_x_min"], cfg["hist_x_max"], cfg["hist_n"]):
        payload["histogram_grid"] = {"x_min": cfg["hist_x_min"],
                                     "x_max": cfg["hist_x_max"],
                                     "n": cfg["hist_n"]}
    result = _client(ctx_obj).post("/langevin/run", payload)
    paths = []
    if result["histogram_x"] is not None:
        paths.append(_write_csv(out_dir, "langevin_hist.csv", ["x", "value"],
                                [result["histogram_x"], result["histogram_values"]]))
    summary = {k: result[k] for k in ("mean", "stderr", "variance", "n_steps",
                                      "time", "n_absorbed", "n_blown_up",
                                      "seed", "dt")}
    summary["n"] = result["n_paths"]
    paths.append(_write_json(out_dir, "langevin_run.json",
                             {"command": "langevin run", "config": cfg, **summary}))
    _echo_artifacts(paths)


# ---------------------------------------------------------------- fp

@main.group()
def fp():
    """Fokker-Planck time evolution."""


FP_SCHEMA = {"alpha": REQUIRED, "noise": REQUIRED,
             "x_min": REQUIRED, "x_max": REQUIRED, "n": REQUIRED,
             "t_end": REQUIRED, "dt": REQUIRED, "n_snapshots": 0,
             "lyapunov": False, "p_init_file": None}


@fp.command("evolve")
@common_options
@pass_server
@_guarded
def fp_evolve_cmd(ctx_obj, config_path, out_dir, seed, threads):
    cfg = resolve_config(_load(config_path), FP_SCHEMA)
    payload = {"alpha": cfg["alpha"], "noise": cfg["noise"],
               "grid": {"x_min": cfg["x_min"], "x_max": cfg["x_max"], "n": cfg["n"]},
               "t_end": cfg["t_end"], "dt": cfg["dt"],
               "n_snapshots": cfg["n_snapshots"],
               "lyapunov_reference": bool(cfg["lyapunov"])}
    if cfg["p_init_file"] is not None:
        with open(cfg["p_init_file"], newline="") as fh:
            rows = list(csv.reader(fh))
        payload["p_init"] = [float(r[1]) for r in rows[1:]]
    result = _client(ctx_obj).post("/fp/evolve", payload)
    paths = [
        _write_csv(out_dir, "fp_final.csv", ["x", "value"],
                   [result["x"], result["values"]]),
        _write_json(out_dir, "fp_evolve.json",
                    {"command": "fp evolve", "config": cfg,
                     "mass_drift": result["mass_drift"],
                     "tail_ratio": result["tail_ratio"],
                     "times": result["times"], "H": result["H"]}),
    ]
    _echo_artifacts(paths)


# ---------------------------------------------------------------- repro

@main.group()
def repro():
    """Reference-figure reproduction recipes."""


def _repro_cmd(ctx_obj, out_dir, fig, value_column):
    result = _client(ctx_obj).post(f"/repro/{fig}", {})
    paths = []
    meta = {"command": f"repro {fig}", "curves": []}
    for curve in result["curves"]:
        name = f"{fig}_{curve['label']}.csv"
        col = curve["columns"][value_column]
        paths.append(_write_csv(out_dir, name, ["x", "value"], [curve["x"], col]))
        meta["curves"].append({"label": curve["label"], "file": name, **curve["meta"]})
    paths.append(_write_json(out_dir, f"{fig}.json", meta))
    _echo_artifacts(paths)


@repro.command("fig1")
@common_options
@pass_server
@_guarded
def repro_fig1(ctx_obj, config_path, out_dir, seed, threads):
    _repro_cmd(ctx_obj, out_dir, "fig1", "rho")


@repro.command("fig2")
@common_options
@pass_server
@_guarded
def repro_fig2(ctx_obj, config_path, out_dir, seed, threads):
    _repro_cmd(ctx_obj, out_dir, "fig2", "p")


@repro.command("fig3")
@common_options
@pass_server
@_guarded
def repro_fig3(ctx_obj, config_path, out_dir, seed, threads):
    _repro_cmd(ctx_obj, out_dir, "fig3", "F")


# ---------------------------------------------------------------- serve

@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
