"""Command-line interface.

Subcommands: `run` executes a configured experiment and writes CSV, JSON
summary, config echo, figures and a SHA-256 manifest; `lcd`, `levy` and
`spectrum` are single-shot analyses of vector/matrix files; `enumerate`
runs the exact singularity enumeration.  Exit codes: 0 success, 1 domain
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from .config import ConfigError, parse_config
from .ensembles import GenuinelyComplexSpec, RandomStream, ScalarDistribution
from .experiments import run_experiment
from .lcd import LcdParams, complex_lcd, real_lcd
from .matrixio import read_matrix, read_vector
from .output import write_outputs
from .smallball import levy_1d, levy_2d
from .spectra import (
    condition_number,
    eigenvalues,
    real_axis_distance,
    real_eigenvalue_count,
    singular_values,
)


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, default=_json_default))


def _cmd_run(args) -> int:
    config = parse_config(args.config)
    seed_info = {"master_seed": config.master_seed, "overridden": False}
    if args.seed is not None:
        seed_info = {
            "master_seed": int(args.seed),
            "overridden": True,
            "config_seed": config.master_seed,
        }
        config = dataclasses.replace(config, master_seed=int(args.seed))
    out_dir = args.out or config.output_path
    if out_dir is None:
        raise ValueError("no output directory: pass --out or set output_path in the config")
    result = run_experiment(config, threads=args.threads)
    manifest = write_outputs(result, config, out_dir, seed_info, figures=not args.no_figures)
    _emit({"out_dir": str(out_dir), "files": manifest})
    return 0


def _cmd_lcd(args) -> int:
    v = read_vector(args.vector)
    params = LcdParams(alpha=args.alpha, gamma=args.gamma)
    if np.iscomplexobj(v):
        nrm = np.linalg.norm(v)
        res = complex_lcd(v / nrm if args.normalize else v, params, args.search_bound, args.resolution)
    else:
        nrm = np.linalg.norm(v)
        res = real_lcd(
            v / nrm if args.normalize else v,
            params,
            args.search_bound or 1e3 * math.sqrt(v.size),
            args.resolution or params.gamma / 8.0,
        )
    _emit(
        {
            "value": res.value,
            "at_least": res.at_least,
            "witness_theta": res.witness_theta,
            "witness_p": res.witness_p,
            "residual": None if math.isnan(res.residual) else res.residual,
            "certified_resolution": res.certified_resolution,
            "alpha": params.alpha,
            "gamma": params.gamma,
        }
    )
    return 0


_BASES = {
    "gaussian": "gaussian",
    "rademacher": "rademacher",
    "uniform": "uniform_symmetric",
}


def _cmd_levy(args) -> int:
    base = ScalarDistribution(_BASES[args.base])
    stream = RandomStream.from_seed(args.seed).child(0)
    v = read_vector(args.vector)
    if args.mode == "1d":
        if np.iscomplexobj(v):
            raise ValueError("1d concentration needs a real coefficient vector")
        est = levy_1d(v, base, args.epsilon, args.trials, stream)
    else:
        est = levy_2d(np.asarray(v, complex), GenuinelyComplexSpec(base), args.epsilon, args.trials, stream)
    _emit(
        {
            "mode": args.mode,
            "epsilon": est.epsilon,
            "lower": est.lower,
            "upper": est.upper,
            "stderr": est.stderr,
            "trials": est.trials,
            "exact": est.exact,
        }
    )
    return 0


def _cmd_spectrum(args) -> int:
    A = read_matrix(args.matrix)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"spectrum needs a square matrix, got {A.shape}")
    spec = eigenvalues(A)
    sv = singular_values(A)
    payload = {
        "n": A.shape[0],
        "eigenvalues": [[z.real, z.imag] for z in spec.eigenvalues],
        "backward_error_bound": spec.backward_error,
        "singular_values": sv.values,
        "operator_norm": sv.largest,
        "least_singular_value": sv.smallest,
        "condition_number": condition_number(A),
    }
    if np.iscomplexobj(A):
        payload["real_axis_distance"] = real_axis_distance(A)
    else:
        report = real_eigenvalue_count(A)
        payload["count_real"] = report.count_real
        payload["min_imag_distance"] = report.min_imag_distance
    _emit(payload)
    return 0


def _cmd_enumerate(args) -> int:
    from .experiments import equal_line_lower_bound, exact_singular_count

    n = args.n
    total = 4 ** (n * n)
    count = exact_singular_count(n)
    bound = equal_line_lower_bound(n)
    _emit(
        {
            "n": n,
            "total_matrices": total,
            "singular_count": count,
            "singular_fraction": count / total,
            "equal_line_lower_bound_count": bound,
            "equal_line_lower_bound_fraction": bound / total,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rmtlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a configured experiment")
    p.add_argument("--config", required=True, help="YAML experiment config")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--seed", type=int, default=None, help="override the master seed")
    p.add_argument("--threads", type=int, default=1, help="worker threads (results are invariant)")
    p.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("lcd", help="essential LCD of a unit vector file")
    p.add_argument("--vector", required=True)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--alpha", type=float, default=4.0)
    p.add_argument("--search-bound", dest="search_bound", type=float, default=None)
    p.add_argument("--resolution", type=float, default=None)
    p.add_argument("--normalize", action="store_true", help="normalize the input vector first")
    p.set_defaults(fn=_cmd_lcd)

    p = sub.add_parser("levy", help="Levy concentration estimate")
    p.add_argument("--mode", choices=("1d", "2d"), default="1d")
    p.add_argument("--vector", required=True, help="coefficients (1d, real) or unit vector (2d, complex)")
    p.add_argument("--base", choices=sorted(_BASES), default="rademacher")
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_levy)

    p = sub.add_parser("spectrum", help="eigen/singular value report for a matrix file")
    p.add_argument("--matrix", required=True)
    p.set_defaults(fn=_cmd_spectrum)

    p = sub.add_parser("enumerate", help="exact singularity enumeration over {+-1+-i} entries")
    p.add_argument("--n", type=int, choices=(2, 3), required=True)
    p.set_defaults(fn=_cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
