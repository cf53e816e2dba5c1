"""Command-line front end: reproducible experiments with CSV/JSON reports.

Every report embeds the configuration that produced it (the worker pool
size is deliberately excluded: it is execution machinery, and reruns at
different worker counts must stay byte-identical).  Floats are rendered
with 12 significant digits and all parallel reductions happen in fixed
prime order.  Exit codes: 0 success, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import cache as tcache
from . import l_products, nagao, sato_tate
from .curves import (
    CurveQ,
    FrobeniusPair,
    extension_trace,
    trace_sequence,
    zeta_numerator,
)
from .tate_ff import classify, tate_multiplicity, zeta_pole_order

TOL_EULER = 1e-10


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _round12(obj):
    """Normalize floats to 12 significant digits, recursively."""
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


@dataclass(frozen=True)
class ExperimentConfig:
    """Normalized record of one CLI invocation, embedded in every report."""

    command: str
    params: tuple[tuple[str, str], ...]

    @classmethod
    def from_args(cls, command: str, ns: argparse.Namespace, keys) -> ExperimentConfig:
        pairs = []
        for k in keys:
            v = getattr(ns, k)
            if v is None:
                continue
            if isinstance(v, tuple):
                v = ",".join(_fmt(x) if isinstance(x, float) else str(x) for x in v)
            pairs.append((k, str(v)))
        return cls(command=command, params=tuple(sorted(pairs)))

    def comment_lines(self) -> list[str]:
        lines = [f"# command={self.command}"]
        lines += [f"# {k}={v}" for k, v in self.params]
        return lines

    def to_dict(self) -> dict:
        return {"command": self.command, **dict(self.params)}


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _csv_report(cfg: ExperimentConfig, columns: list[str], rows) -> str:
    lines = cfg.comment_lines()
    lines.append(",".join(columns))
    lines += [",".join(row) for row in rows]
    return "\n".join(lines) + "\n"


def _json_report(cfg: ExperimentConfig, payload: dict) -> str:
    doc = {"config": cfg.to_dict()}
    doc.update(_round12(payload))
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _coeff_list(text: str) -> tuple[int, ...]:
    """Comma-separated integer coefficients, low-to-high."""
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad coefficient list: {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad float list: {text!r}")


def _prime_power(q: int) -> tuple[int, int]:
    """Factor q as p^n for prime p, rejecting everything else."""
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    rest = q
    for p in range(2, int(q**0.5) + 1):
        if rest % p == 0:
            n = 0
            while rest % p == 0:
                rest //= p
                n += 1
            if rest != 1:
                raise ValueError(f"not a prime power: {q}")
            return p, n
    return q, 1  # q itself prime


def _load_records(ns: argparse.Namespace):
    curve = CurveQ(ns.A, ns.B)
    if ns.cache:
        return curve, tcache.load_or_extend(curve, ns.X, ns.cache, workers=ns.workers)
    return curve, trace_sequence(curve, ns.X, workers=ns.workers)


# =============================================================================
# Subcommand handlers
# =============================================================================


def _cmd_trace(ns) -> int:
    cfg = ExperimentConfig.from_args("trace", ns, ["A", "B", "X", "cache"])
    _, records = _load_records(ns)
    rows = [(str(r.p), str(r.a_p), _fmt(r.theta_p)) for r in records]
    _emit(_csv_report(cfg, ["p", "a_p", "theta_p"], rows), ns.out)
    return 0


def _cmd_sato_tate(ns) -> int:
    cfg = ExperimentConfig.from_args(
        "sato-tate", ns, ["A", "B", "X", "kmax", "mmax", "cache"]
    )
    _, records = _load_records(ns)
    report = sato_tate.build_report(records, ns.X, k_max=ns.kmax, m_max=ns.mmax)
    _emit(_csv_report(cfg, ["metric", "index", "value"], report.csv_rows()), ns.out)
    if ns.json:
        _emit(_json_report(cfg, report.to_dict()), ns.json)
    return 0


def _cmd_pole_ledger(ns) -> int:
    cfg = ExperimentConfig.from_args("pole-ledger", ns, ["m", "i", "c_override"])
    overrides = ()
    if ns.c_override:
        overrides = tuple(
            (int(k), int(v))
            for k, v in (item.split("=") for item in ns.c_override.split(","))
        )
    assumptions = l_products.PoleAssumptions(overrides=overrides)
    ledger = l_products.build_ledger(ns.m, ns.i)
    order = l_products.ledger_pole_order(ledger, assumptions)
    lines = cfg.comment_lines()
    lines.append(l_products.format_ledger(ledger))
    lines.append(f"pole order at s = 1 + {ns.i}/2: {order}")
    if ns.i % 2 == 0 and 0 <= ns.i // 2 <= ns.m:
        lines.append(f"generic rank (j = {ns.i // 2}): {l_products.generic_rank(ns.m, ns.i // 2)}")
    _emit("\n".join(lines) + "\n", ns.out)
    if ns.json:
        payload = l_products.ledger_to_dict(ledger)
        payload["pole_order"] = order
        _emit(_json_report(cfg, payload), ns.json)
    return 0


def _cmd_euler_check(ns) -> int:
    cfg = ExperimentConfig.from_args("euler-check", ns, ["draws", "seed", "mmax"])
    rows, max_dev = l_products.factorization_sweep(ns.draws, ns.seed, ns.mmax)
    if ns.out:
        _emit(
            _csv_report(
                cfg,
                ["draw", "m", "theta", "q", "s", "dev_factorization", "dev_quotient"],
                [
                    (str(i), str(m), _fmt(th), str(q), _fmt(s), _fmt(df), _fmt(dq))
                    for i, m, th, q, s, df, dq in rows
                ],
            ),
            ns.out,
        )
    status = "pass" if max_dev < TOL_EULER else "fail"
    sys.stdout.write(
        f"draws={len(rows)} max_deviation={_fmt(max_dev)} tol={TOL_EULER:g} status={status}\n"
    )
    return 0 if status == "pass" else 3


def _cmd_tate_ff(ns) -> int:
    cfg = ExperimentConfig.from_args("tate-ff", ns, ["a", "q", "m", "j"])
    p, n = _prime_power(ns.q)
    fp = FrobeniusPair(a=ns.a, q=ns.q, p=p, n=n)
    cls = classify(fp)
    mult = tate_multiplicity(fp, ns.m, ns.j)
    rank = l_products.generic_rank(ns.m, ns.j)
    lines = cfg.comment_lines()
    lines.append(f"angle class: {cls.kind}")
    lines.append(f"tate multiplicity (m={ns.m}, j={ns.j}): {mult}")
    lines.append(f"zeta pole order at s={ns.j}: {zeta_pole_order(fp, ns.m, ns.j)}")
    lines.append(f"generic rank: {rank}")
    _emit("\n".join(lines) + "\n", ns.out)
    if ns.json:
        _emit(
            _json_report(
                cfg,
                {
                    "angle_class": cls.kind,
                    "multiplicity": mult,
                    "pole_order": mult,
                    "generic_rank": rank,
                },
            ),
            ns.json,
        )
    return 0


def _cmd_zeta_ff(ns) -> int:
    cfg = ExperimentConfig.from_args("zeta-ff", ns, ["a", "q", "n"])
    p, k = _prime_power(ns.q)
    fp = FrobeniusPair(a=ns.a, q=ns.q, p=p, n=k)
    c0, c1, c2 = zeta_numerator(fp)
    rows = []
    for deg in range(1, ns.n + 1):
        ext = extension_trace(fp, deg)
        rows.append((str(deg), str(ext.a), str(ext.q), str(ext.q + 1 - ext.a)))
    lines = cfg.comment_lines()
    lines.append(f"# P1(t) = {c0} + ({c1})*t + ({c2})*t^2")
    lines.append(",".join(["n", "t_n", "q_n", "points"]))
    lines += [",".join(r) for r in rows]
    _emit("\n".join(lines) + "\n", ns.out)
    return 0


def _cmd_nagao(ns) -> int:
    cfg = ExperimentConfig.from_args(
        "nagao", ns, ["A", "B", "X", "deltas", "exclude"]
    )
    surface = nagao.SurfaceQT(A_poly=ns.A, B_poly=ns.B)
    if nagao.is_isotrivial(surface):
        sys.stderr.write(
            "warning: isotrivial surface (constant j-invariant); the rank "
            "heuristic assumes a trivial Chow trace, which is only "
            "recommended for non-constant j\n"
        )
    exclude = frozenset(ns.exclude or ())
    pairs = nagao.fibral_averages(
        surface, ns.X, workers=ns.workers, exclude=exclude, x_budget=ns.x_budget
    )
    rows = []
    running = 0.0
    for p, a in pairs:
        running += float(a) * math.log(p)
        rows.append((str(p), str(a.numerator), str(a.denominator), _fmt(-running / p)))
    _emit(
        _csv_report(cfg, ["p", "A_p_num", "A_p_den", "partial_tauberian"], rows),
        ns.out,
    )
    if ns.json:
        tau = nagao.tauberian_from_pairs(pairs, ns.X)
        grid = nagao.residue_estimate(surface, ns.X, ns.deltas, pairs=pairs)
        _emit(
            _json_report(
                cfg,
                {
                    "tauberian": tau,
                    "residue_grid": [{"delta": d, "estimate": v} for d, v in grid],
                    "n_primes": len(pairs),
                },
            ),
            ns.json,
        )
    return 0


# =============================================================================
# Parser assembly
# =============================================================================


def _add_common(sp):
    sp.add_argument("--workers", type=int, default=1, help="worker pool size")
    sp.add_argument("--out", default=None, help="output path ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tatelab",
        description="Exact checks and statistical diagnostics for Frobenius "
        "traces, symmetric-power Euler products, eigenvalue multiplicities, "
        "and elliptic-surface rank heuristics.",
    )
    parser.add_argument(
        "--config",
        default=None,
        help="key=value config file; flags given on the command line win",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    cache_default = os.environ.get("TATELAB_CACHE_DIR")

    sp = sub.add_parser(
        "trace",
        help="trace sequence for one curve",
        description="CSV columns: p, a_p, theta_p.",
    )
    sp.add_argument("--A", type=int, required=True)
    sp.add_argument("--B", type=int, required=True)
    sp.add_argument("--X", type=int, required=True, help="prime cutoff")
    sp.add_argument("--cache", default=cache_default, help="trace cache directory")
    _add_common(sp)
    sp.set_defaults(func=_cmd_trace)

    sp = sub.add_parser(
        "sato-tate",
        help="equidistribution report for one curve",
        description="CSV columns: metric, index, value (metrics: ks, "
        "moment (index 2k), char_sum and c_hat (index m)).",
    )
    sp.add_argument("--A", type=int, required=True)
    sp.add_argument("--B", type=int, required=True)
    sp.add_argument("--X", type=int, required=True)
    sp.add_argument("--kmax", type=int, default=3, help="highest moment 2k")
    sp.add_argument("--mmax", type=int, default=6, help="highest character index")
    sp.add_argument("--cache", default=cache_default)
    sp.add_argument("--json", default=None, help="also write a JSON report here")
    _add_common(sp)
    sp.set_defaults(func=_cmd_sato_tate)

    sp = sub.add_parser(
        "pole-ledger",
        help="binomial exponent ledger and pole order for a power",
        description="Text report: the ledger rendering, the pole order at "
        "s = 1 + i/2, and (for even i) the generic rank.",
    )
    sp.add_argument("--m", type=int, required=True, help="power of the curve")
    sp.add_argument("--i", type=int, required=True, help="cohomological degree")
    sp.add_argument(
        "--c-override",
        default=None,
        help="alternative pole orders, e.g. '0=1,2=0' (default c_0=1, c_2=-1)",
    )
    sp.add_argument("--json", default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_pole_ledger)

    sp = sub.add_parser(
        "euler-check",
        help="seeded random sweep of the factorization/quotient identities",
        description="CSV columns: draw, m, theta, q, s, dev_factorization, "
        "dev_quotient.  Exits 3 if the max deviation exceeds 1e-10.",
    )
    sp.add_argument("--draws", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mmax", type=int, default=6)
    _add_common(sp)
    sp.set_defaults(func=_cmd_euler_check)

    sp = sub.add_parser(
        "tate-ff",
        help="eigenvalue multiplicity bookkeeping over a finite field",
        description="Text report: angle class, multiplicity of q^j on "
        "H^{2j}, zeta pole order, generic rank.",
    )
    sp.add_argument("--a", type=int, required=True, help="Frobenius trace")
    sp.add_argument("--q", type=int, required=True, help="prime power")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--json", default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_tate_ff)

    sp = sub.add_parser(
        "zeta-ff",
        help="local zeta numerator and extension-field counts",
        description="CSV columns: n, t_n, q_n, points; the numerator "
        "polynomial is emitted as a comment line.",
    )
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, default=4, help="max extension degree")
    _add_common(sp)
    sp.set_defaults(func=_cmd_zeta_ff)

    sp = sub.add_parser(
        "nagao",
        help="fibral averages and rank heuristic for an elliptic surface",
        description="Surface syntax: comma-separated coefficients low-to-"
        "high, e.g. --A 0,1 --B 1,2,0,-1 for A(T)=T, B(T)=1+2T-T^3. "
        "CSV columns: p, A_p_num, A_p_den, partial_tauberian.",
    )
    sp.add_argument("--A", type=_coeff_list, required=True)
    sp.add_argument("--B", type=_coeff_list, required=True)
    sp.add_argument("--X", type=int, required=True)
    sp.add_argument(
        "--deltas",
        type=_float_list,
        default=(1.0, 0.5, 0.25, 0.125),
        help="offsets for the residue grid at s = 1 + delta",
    )
    sp.add_argument(
        "--exclude",
        type=_coeff_list,
        default=None,
        help="primes to drop from the sum (default: include all p > 3)",
    )
    sp.add_argument(
        "--x-budget",
        type=int,
        default=nagao.DEFAULT_X_BUDGET,
        help="work cap on X (total cost grows like X^3 / log X)",
    )
    sp.add_argument("--json", default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_nagao)

    return parser


def _config_to_args(path: str) -> list[str]:
    args: list[str] = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line without '=': {raw!r}")
        key, value = line.split("=", 1)
        args += [f"--{key.strip().replace('_', '-')}", value.strip()]
    return args


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # Expand --config into flags right after the subcommand so explicit
    # command-line flags (parsed later) win.
    if "--config" in argv:
        i = argv.index("--config")
        try:
            cfg_path = argv[i + 1]
        except IndexError:
            sys.stderr.write("error: --config needs a path\n")
            return 2
        del argv[i : i + 2]
        try:
            argv = argv[:1] + _config_to_args(cfg_path) + argv[1:]
        except (OSError, ValueError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
