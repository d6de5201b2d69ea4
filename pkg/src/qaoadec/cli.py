"""Command-line surface: codes, ham, angles, decode, dist, maxcut.

Every command resolves its settings from flags over an optional JSON
config file, validates before any compute (--dry-run stops there), and
derives all randomness from one --seed. Tabular outputs are CSV with a
leading '# config:' comment line; summaries are JSON; report commands
also render a PNG figure next to the delimited output unless --no-plot.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bits import BitVector
from .codes import CATALOG, StabilizerCode, coset_representative, get_code, load_code_file
from .decoder import CURVE_HEADER, DecoderConfig, bdd_rows, curve_rows, error_rate_curve
from .distributions import distribution_report, write_distribution
from .engine import AngleSchedule, run_circuit, sample
from .graphs import brute_force_maxcut, cut_size, load_graph, maxcut_to_decoding
from .hamiltonian import (
    PenaltyParams,
    classical_check_cost,
    classical_generator_cost,
    dump_hamiltonian,
    quantum_check_cost,
    quantum_generator_cost,
)
from .optimize import (
    AngleArchive,
    ArchiveEntry,
    ObjectiveHandle,
    basin_hopping,
    multistart,
    nm_with_canonical_starts,
)
from .seeding import spawn_rng

_OPT_STREAM = 1
_MAXCUT_STREAM = 3


class CliError(Exception):
    """User-facing configuration or input error."""


def derive_seed(seed: int, *path: int) -> int:
    """A substream-specific integer seed."""
    return int(spawn_rng(seed, *path).integers(1 << 62))


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise CliError(f"config {path} must hold a JSON object")
    return data


def _resolve(args, config: dict, key: str, default=None):
    """Flag value if given, else config file value, else default."""
    val = getattr(args, key, None)
    if val is not None:
        return val
    if key in config:
        return config[key]
    return default


def _get_any_code(name_or_path: str):
    if name_or_path in CATALOG:
        return get_code(name_or_path)
    path = Path(name_or_path)
    if path.exists():
        return load_code_file(path)
    raise CliError(f"unknown code {name_or_path!r} (not in catalog, not a file)")


def _parse_syndrome(text: str, expected: int) -> BitVector:
    if len(text) != expected or set(text) - {"0", "1"}:
        raise CliError(f"syndrome {text!r} must be a {expected}-bit string of 0/1")
    return BitVector.from_string(text)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise CliError(f"cannot parse float list {text!r}") from None


def _penalty(alpha, eta) -> PenaltyParams:
    if alpha is None or eta is None:
        raise CliError("check-based construction needs --alpha and --eta")
    pen = PenaltyParams(int(alpha), int(eta))
    if not pen.favors_low_weight:
        print(
            f"warning: eta={pen.eta} < alpha={pen.alpha} violates the selection rule "
            "eta >= alpha (a weight-one error matching the syndrome should beat "
            "the all-zero vector)",
            file=sys.stderr,
        )
    return pen


def _build_hamiltonian(code, construction: str, s: BitVector, alpha, eta, variant: str):
    quantum = isinstance(code, StabilizerCode)
    if construction == "gen":
        if quantum:
            z = coset_representative(code.H_S, s, symplectic=True)
            return quantum_generator_cost(code.generator(variant), z)
        z = coset_representative(code.H, s)
        return classical_generator_cost(code.G, z)
    if construction == "check":
        pen = _penalty(alpha, eta)
        if quantum:
            return quantum_check_cost(code.H_S, s, pen)
        return classical_check_cost(code.H, s, pen)
    raise CliError(f"unknown construction {construction!r} (gen or check)")


def _syndrome_width(code, construction_irrelevant=None) -> int:
    return code.H_S.nrows if isinstance(code, StabilizerCode) else code.H.nrows


def _all_syndromes(code) -> list[BitVector]:
    return code.all_syndromes()


# ---------------------------------------------------------------------------
# codes
# ---------------------------------------------------------------------------


def cmd_codes(args) -> int:
    from .codes import code_to_definition

    if args.action == "list":
        rows = []
        for name in sorted(CATALOG):
            code = get_code(name)
            kind = "quantum" if isinstance(code, StabilizerCode) else "classical"
            rows.append({"name": name, "type": kind, "n": code.n, "k": code.k})
        if args.json:
            print(json.dumps(rows, indent=2))
        else:
            for r in rows:
                print(f"{r['name']:18s} {r['type']:9s} n={r['n']} k={r['k']}")
        return 0
    code = _get_any_code(args.name)
    if args.json:
        print(json.dumps(code_to_definition(code), indent=2))
        return 0
    quantum = isinstance(code, StabilizerCode)
    print(f"{code.name}: {'[[' if quantum else '['}{code.n},{code.k}"
          f"{f',{code.distance}' if code.distance else ''}{']]' if quantum else ']'}")
    if quantum:
        print("check matrix H_S (x-half | z-half):")
        for i in range(1, code.H_S.nrows + 1):
            row = code.H_S.row(i).to_string()
            print(f"  {row[:code.n]}|{row[code.n:]}")
        print("normalizer basis G_S:")
        for i in range(1, code.G_S.nrows + 1):
            row = code.G_S.row(i).to_string()
            print(f"  {row[:code.n]}|{row[code.n:]}")
        if code.G_S_sparse is not None:
            print("sparse variant G_S':")
            for i in range(1, code.G_S_sparse.nrows + 1):
                row = code.G_S_sparse.row(i).to_string()
                print(f"  {row[:code.n]}|{row[code.n:]}")
    else:
        print("parity-check matrix H:")
        for i in range(1, code.H.nrows + 1):
            print(f"  {code.H.row(i).to_string()}")
        print("generator matrix G:")
        for i in range(1, code.G.nrows + 1):
            print(f"  {code.G.row(i).to_string()}")
    return 0


# ---------------------------------------------------------------------------
# ham
# ---------------------------------------------------------------------------


def cmd_ham(args) -> int:
    config = _load_config(args.config)
    code = _get_any_code(_resolve(args, config, "code"))
    construction = _resolve(args, config, "construction", "check")
    variant = _resolve(args, config, "variant", "standard")
    alpha = _resolve(args, config, "alpha")
    eta = _resolve(args, config, "eta")
    s = _parse_syndrome(_resolve(args, config, "syndrome"), _syndrome_width(code))
    if args.dry_run:
        print(json.dumps({"code": code.name, "construction": construction,
                          "syndrome": s.to_string(), "alpha": alpha, "eta": eta,
                          "variant": variant}))
        return 0
    ham = _build_hamiltonian(code, construction, s, alpha, eta, variant)
    text = dump_hamiltonian(ham)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}: m={ham.m}, {len(ham.terms)} terms, constant {ham.constant:g}")
    else:
        print(text, end="")
    return 0


# ---------------------------------------------------------------------------
# angles
# ---------------------------------------------------------------------------


def cmd_angles(args) -> int:
    config = _load_config(args.config)
    code = _get_any_code(_resolve(args, config, "code"))
    construction = _resolve(args, config, "construction", "check")
    variant = _resolve(args, config, "variant", "standard")
    alpha = _resolve(args, config, "alpha")
    eta = _resolve(args, config, "eta")
    p = int(_resolve(args, config, "p", 1))
    seed = int(_resolve(args, config, "seed", 0))
    strategy = _resolve(args, config, "strategy", "canonical")
    budget = int(_resolve(args, config, "budget", 256))
    hops = int(_resolve(args, config, "hops", 5))
    tol = float(_resolve(args, config, "tol", 1e-6))
    archive_path = _resolve(args, config, "archive")
    if archive_path is None:
        raise CliError("--archive is required")
    if strategy not in ("canonical", "multistart", "basinhop"):
        raise CliError(f"unknown strategy {strategy!r}")

    width = _syndrome_width(code)
    if args.all_syndromes:
        syndromes = [s for s in _all_syndromes(code) if not s.is_zero()]
    else:
        if args.syndrome is None and "syndrome" not in config:
            raise CliError("give --syndrome BITS or --all-syndromes")
        syndromes = [_parse_syndrome(_resolve(args, config, "syndrome"), width)]
    if args.dry_run:
        print(json.dumps({"code": code.name, "construction": construction, "p": p,
                          "alpha": alpha, "eta": eta, "variant": variant,
                          "strategy": strategy, "seed": seed,
                          "syndromes": [s.to_string() for s in syndromes]}))
        return 0

    archive = AngleArchive.load(archive_path) if Path(archive_path).exists() else AngleArchive()
    labels, normalized = [], []
    for s in syndromes:
        ham = _build_hamiltonian(code, construction, s, alpha, eta, variant)
        vmax, _, _ = ham.spectrum_extrema()
        obj = ObjectiveHandle(ham.materialize(), p)
        inst_seed = derive_seed(seed, _OPT_STREAM, s.bits)
        if strategy == "multistart":
            rep = multistart(obj, budget=budget, tol=tol)
        elif strategy == "basinhop":
            rep = basin_hopping(obj, AngleSchedule((0.0,) * p, (0.0,) * p),
                                hops=hops, seed=inst_seed, tol=tol)
        else:
            rep = nm_with_canonical_starts(obj, p, seed=inst_seed, hops=hops, tol=tol)
        entry = ArchiveEntry(
            code=code.name,
            construction=construction,
            syndrome=s.to_string(),
            p=p,
            alpha=None if construction == "gen" else int(alpha),
            eta=None if construction == "gen" else int(eta),
            gammas=rep.best.gammas,
            betas=rep.best.betas,
            F_p=rep.best_value,
            strategy=rep.strategy,
            seed=seed,
            variant=variant,
        )
        archive.add(entry)
        norm = rep.best_value / vmax if vmax else float("nan")
        labels.append(s.to_string())
        normalized.append(norm)
        print(f"syndrome {s.to_string()}: F_{p} = {rep.best_value:.6f} "
              f"(normalized {norm:.4f}, {rep.evaluations} evaluations)")
    archive.save(archive_path)
    print(f"avg_s F_{p} = {float(np.mean(normalized)):.4f}, "
          f"min_s F_{p} = {float(np.min(normalized)):.4f} (normalized)")
    print(f"archived {len(syndromes)} entries -> {archive_path}")
    if args.plot:
        from .plotting import save_objective_figure

        save_objective_figure(labels, normalized, args.plot,
                              title=f"{code.name} {construction} p={p}")
        print(f"figure -> {args.plot}")
    return 0


# ---------------------------------------------------------------------------
# decode
# ---------------------------------------------------------------------------


def cmd_decode(args) -> int:
    config = _load_config(args.config)
    code = _get_any_code(_resolve(args, config, "code"))
    construction = _resolve(args, config, "construction", "check")
    variant = _resolve(args, config, "variant", "standard")
    alpha = _resolve(args, config, "alpha")
    eta = _resolve(args, config, "eta")
    p = int(_resolve(args, config, "p", 1))
    T = int(_resolve(args, config, "T", 15))
    seed = int(_resolve(args, config, "seed", 0))
    epsilons = _resolve(args, config, "epsilons")
    if isinstance(epsilons, str):
        epsilons = _parse_floats(epsilons)
    if not epsilons:
        raise CliError("--epsilons is required, e.g. 0.05,0.1,0.2")
    max_failures = int(_resolve(args, config, "max_failures", 500))
    max_trials = int(_resolve(args, config, "max_trials", 1_000_000))
    archive_path = _resolve(args, config, "archive")
    out = _resolve(args, config, "output")
    if archive_path is None or out is None:
        raise CliError("--archive and -o/--output are required")
    if construction == "check":
        _penalty(alpha, eta)

    dconf = DecoderConfig(
        construction=construction, p=p, T=T,
        alpha=None if alpha is None else int(alpha),
        eta=None if eta is None else int(eta),
        variant=variant,
    )
    resolved = {
        "code": code.name, "construction": construction, "variant": variant,
        "p": p, "T": T, "alpha": dconf.alpha, "eta": dconf.eta,
        "epsilons": epsilons, "seed": seed,
        "max_failures": max_failures, "max_trials": max_trials,
    }
    if args.dry_run:
        print(json.dumps(resolved))
        return 0

    archive = AngleArchive.load(archive_path)
    missing = []
    for s in _all_syndromes(code):
        if s.is_zero():
            continue
        if archive.lookup(code.name, construction, s.to_string(), p,
                          dconf.alpha, dconf.eta, variant) is None:
            missing.append(s.to_string())
    if missing:
        raise CliError(
            f"archive {archive_path} lacks angles for {len(missing)} syndromes: "
            + ", ".join(missing[:8]) + ("..." if len(missing) > 8 else "")
        )

    points = error_rate_curve(code, dconf, epsilons, archive, seed,
                              max_failures=max_failures, max_trials=max_trials)
    lines = [f"# config: {json.dumps(resolved)}", CURVE_HEADER]
    lines += curve_rows(points)
    include_bdd = _resolve(args, config, "bdd", True) and code.distance is not None
    if include_bdd:
        lines += bdd_rows(code, epsilons)
    Path(out).write_text("\n".join(lines) + "\n")
    for pt in points:
        print(f"eps={pt.epsilon:g}: rate={pt.rate:.5f} "
              f"[{pt.ci_low:.5f}, {pt.ci_high:.5f}] ({pt.failures}/{pt.trials})")
    print(f"curve -> {out}")
    if not args.no_plot:
        from .decoder import bdd_reference
        from .plotting import save_curve_figure

        fig_path = Path(out).with_suffix(".png")
        ref = (
            [(e, bdd_reference(code.n, code.distance, e)) for e in epsilons]
            if include_bdd
            else None
        )
        save_curve_figure(points, ref, fig_path, title=code.name)
        print(f"figure -> {fig_path}")
    return 0


# ---------------------------------------------------------------------------
# dist
# ---------------------------------------------------------------------------


def cmd_dist(args) -> int:
    config = _load_config(args.config)
    code = _get_any_code(_resolve(args, config, "code"))
    if not isinstance(code, StabilizerCode):
        raise CliError("distribution reports need a quantum code")
    variant = _resolve(args, config, "variant", "standard")
    p = int(_resolve(args, config, "p", 1))
    epsilon = float(_resolve(args, config, "epsilon", 0.0) or 0.0)
    if not 0.0 < epsilon < 0.75:
        raise CliError(f"epsilon {epsilon} outside (0, 0.75)")
    s = _parse_syndrome(_resolve(args, config, "syndrome"), code.H_S.nrows)
    out = _resolve(args, config, "output")
    if out is None:
        raise CliError("-o/--output PREFIX is required")
    gammas = _resolve(args, config, "gammas")
    betas = _resolve(args, config, "betas")
    if gammas is not None and betas is not None:
        sched = AngleSchedule(tuple(_parse_floats(gammas)), tuple(_parse_floats(betas)))
        if sched.p != p:
            raise CliError(f"{sched.p} angle pairs given but p={p}")
    else:
        archive_path = _resolve(args, config, "archive")
        if archive_path is None:
            raise CliError("give --archive or both --gammas and --betas")
        archive = AngleArchive.load(archive_path)
        entry = archive.lookup(code.name, "gen", s.to_string(), p, None, None, variant)
        if entry is None:
            raise CliError(
                f"archive has no gen/{variant} angles for {code.name} "
                f"syndrome {s.to_string()} at p={p}"
            )
        sched = entry.schedule()
    resolved = {"code": code.name, "variant": variant, "syndrome": s.to_string(),
                "epsilon": epsilon, "p": p,
                "gammas": list(sched.gammas), "betas": list(sched.betas)}
    if args.dry_run:
        print(json.dumps(resolved))
        return 0
    report = distribution_report(code, s, epsilon, sched, variant=variant,
                                 top_k=int(_resolve(args, config, "top", 8)))
    csv_path = Path(str(out) + ".csv")
    json_path = Path(str(out) + ".json")
    write_distribution(report, csv_path, json_path)
    print(f"JS divergence = {report.js:.5f} (KL(P||M)={report.kl_pm:.5f}, "
          f"KL(Q||M)={report.kl_qm:.5f})")
    print("top coset labels by Q:")
    for u, pv, qv in report.top:
        print(f"  u={u:>4d}  P={pv:.5f}  Q={qv:.5f}")
    print(f"distributions -> {csv_path}, summary -> {json_path}")
    if not args.no_plot:
        from .plotting import save_distribution_figure

        fig_path = Path(str(out) + ".png")
        save_distribution_figure(report, fig_path)
        print(f"figure -> {fig_path}")
    return 0


# ---------------------------------------------------------------------------
# maxcut
# ---------------------------------------------------------------------------


def cmd_maxcut(args) -> int:
    config = _load_config(args.config)
    p = int(_resolve(args, config, "p", 1))
    T = int(_resolve(args, config, "T", 100))
    seed = int(_resolve(args, config, "seed", 0))
    hops = int(_resolve(args, config, "hops", 3))
    graph = load_graph(args.graph)
    resolved = {"graph": str(args.graph), "V": graph.num_vertices,
                "E": graph.num_edges, "p": p, "T": T, "seed": seed}
    if args.dry_run:
        print(json.dumps(resolved))
        return 0
    G, z = maxcut_to_decoding(graph)
    diag = classical_generator_cost(G, z).materialize()
    obj = ObjectiveHandle(diag, p)
    rep = nm_with_canonical_starts(obj, p, seed=derive_seed(seed, _OPT_STREAM, 0), hops=hops)
    state = run_circuit(diag, rep.best)
    best_cut, best_u = -1, None
    for u in sample(state, T, spawn_rng(seed, _MAXCUT_STREAM)):
        c = cut_size(graph, u)
        if c > best_cut:
            best_cut, best_u = c, u
    result = dict(resolved)
    result.update({
        "best_cut": best_cut,
        "assignment": best_u.to_string(),
        "F_p": rep.best_value,
        "expected_cut": (rep.best_value + graph.num_edges) / 2.0,
    })
    print(f"V={graph.num_vertices} E={graph.num_edges} p={p} T={T}")
    print(f"best sampled cut: {best_cut} with assignment {best_u.to_string()}")
    if graph.num_vertices <= 20:
        opt, _ = brute_force_maxcut(graph)
        result["optimum"] = opt
        result["ratio"] = best_cut / opt
        print(f"brute-force optimum: {opt} -> ratio {best_cut / opt:.4f}")
    out = _resolve(args, config, "output")
    if out:
        Path(out).write_text(json.dumps(result, indent=2) + "\n")
        print(f"summary -> {out}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sp, *, seed=True):
    sp.add_argument("--config", help="JSON file with default option values")
    sp.add_argument("--dry-run", action="store_true", help="validate and print the resolved config")
    if seed:
        sp.add_argument("--seed", type=int, help="master seed (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoadec",
        description="QAOA syndrome decoding: cost Hamiltonians, angle optimization, "
                    "Monte-Carlo decoding curves, distribution reports, and MaxCut.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_codes = sub.add_parser("codes", help="inspect the code catalog")
    p_codes.add_argument("action", choices=["list", "show"])
    p_codes.add_argument("name", nargs="?", help="code id or definition file (for show)")
    p_codes.add_argument("--json", action="store_true")
    p_codes.set_defaults(func=cmd_codes)

    p_ham = sub.add_parser("ham", help="build and dump a cost Hamiltonian")
    p_ham.add_argument("action", choices=["build"])
    p_ham.add_argument("--code", required=False)
    p_ham.add_argument("--construction", choices=["gen", "check"])
    p_ham.add_argument("--syndrome")
    p_ham.add_argument("--alpha", type=int)
    p_ham.add_argument("--eta", type=int)
    p_ham.add_argument("--variant", choices=["standard", "sparse"])
    p_ham.add_argument("-o", "--output")
    _add_common(p_ham, seed=False)
    p_ham.set_defaults(func=cmd_ham)

    p_ang = sub.add_parser("angles", help="optimize layer angles into an archive")
    p_ang.add_argument("action", choices=["optimize"])
    p_ang.add_argument("--code")
    p_ang.add_argument("--construction", choices=["gen", "check"])
    p_ang.add_argument("--syndrome")
    p_ang.add_argument("--all-syndromes", action="store_true")
    p_ang.add_argument("--p", type=int)
    p_ang.add_argument("--alpha", type=int)
    p_ang.add_argument("--eta", type=int)
    p_ang.add_argument("--variant", choices=["standard", "sparse"])
    p_ang.add_argument("--strategy", choices=["canonical", "multistart", "basinhop"])
    p_ang.add_argument("--budget", type=int)
    p_ang.add_argument("--hops", type=int)
    p_ang.add_argument("--tol", type=float)
    p_ang.add_argument("--archive")
    p_ang.add_argument("--plot", help="write a per-syndrome objective figure (PNG)")
    _add_common(p_ang)
    p_ang.set_defaults(func=cmd_angles)

    p_dec = sub.add_parser("decode", help="Monte-Carlo block-error-rate curve")
    p_dec.add_argument("action", choices=["curve"])
    p_dec.add_argument("--code")
    p_dec.add_argument("--construction", choices=["gen", "check"])
    p_dec.add_argument("--variant", choices=["standard", "sparse"])
    p_dec.add_argument("--p", type=int)
    p_dec.add_argument("--T", type=int)
    p_dec.add_argument("--alpha", type=int)
    p_dec.add_argument("--eta", type=int)
    p_dec.add_argument("--epsilons", help="comma-separated channel rates")
    p_dec.add_argument("--max-failures", dest="max_failures", type=int)
    p_dec.add_argument("--max-trials", dest="max_trials", type=int)
    p_dec.add_argument("--archive")
    p_dec.add_argument("--bdd", dest="bdd", action="store_true", default=None,
                       help="append the bounded-distance reference rows (default)")
    p_dec.add_argument("--no-bdd", dest="bdd", action="store_false")
    p_dec.add_argument("--no-plot", action="store_true")
    p_dec.add_argument("-o", "--output")
    _add_common(p_dec)
    p_dec.set_defaults(func=cmd_decode)

    p_dist = sub.add_parser("dist", help="posterior vs circuit output distribution report")
    p_dist.add_argument("action", choices=["report"])
    p_dist.add_argument("--code")
    p_dist.add_argument("--syndrome")
    p_dist.add_argument("--epsilon", type=float)
    p_dist.add_argument("--p", type=int)
    p_dist.add_argument("--variant", choices=["standard", "sparse"])
    p_dist.add_argument("--archive")
    p_dist.add_argument("--gammas", help="comma-separated, overrides the archive")
    p_dist.add_argument("--betas")
    p_dist.add_argument("--top", type=int)
    p_dist.add_argument("--no-plot", action="store_true")
    p_dist.add_argument("-o", "--output", help="output path prefix")
    _add_common(p_dist)
    p_dist.set_defaults(func=cmd_dist)

    p_mc = sub.add_parser("maxcut", help="solve MaxCut through the decoding reduction")
    p_mc.add_argument("action", choices=["solve"])
    p_mc.add_argument("graph", help="edge-list file, one 'u v' pair per line, 1-indexed")
    p_mc.add_argument("--p", type=int)
    p_mc.add_argument("--T", type=int)
    p_mc.add_argument("--hops", type=int)
    p_mc.add_argument("-o", "--output")
    _add_common(p_mc)
    p_mc.set_defaults(func=cmd_maxcut)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
