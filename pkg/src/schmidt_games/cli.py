"""Command-line front end.

Five subcommands tie the library into reproducible experiments:

* ``play``     -- run a game from a JSON config, write the transcript with
                  certificates appended, exit 0 iff they all pass.
* ``certify``  -- re-run certificates against a saved transcript.
* ``fractal``  -- packing-dimension, diffuseness and microset reports.
* ``measure``  -- build a mass-distribution tree and validate decay.
* ``dims``     -- closed-form dimension lower bounds, CSV table + SVG plot.

Every numeric flag accepts exact rational syntax ("1/4").  Randomized parts
require a seed; a missing seed is derived from the config hash and echoed,
so reruns of the same config reproduce bit for bit.

Exit codes: 0 all checks pass; 1 a certificate or report failed; 2 bad
configuration; 3 enumeration budget exceeded (verdict only partial).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import certify, engine, fractals, measures
from .geometry import AffineSubspace, Ball, null_space, parse_scalar, point
from .strategies import (
    DigitBob,
    DummyAlice,
    PointRemoverAlice,
    RandomClassicAlice,
    RandomClassicBob,
    ba_alice,
    digit_alice_S,
    digit_bob,
    intersect_alices,
    online_hyperplane_bob,
    pullback_alice,
    random_bob,
    rational_hugger_bob,
    shrink_in_place_bob,
    toral_alice,
)
from .strategies.pullback import AffineMap, transported_ba_constant

F = Fraction

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# config plumbing

def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")


def _apply_overrides(cfg: dict, pairs) -> dict:
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError(f"override {pair!r} is not key=value")
        key, raw = pair.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = cfg
        parts = key.split(".")
        for p in parts[:-1]:
            node = node.setdefault(p, {})
            if not isinstance(node, dict):
                raise ConfigError(f"override path {key!r} crosses a non-object")
        node[parts[-1]] = value
    return cfg


def _derived_seed(cfg: dict) -> int:
    blob = json.dumps(cfg, sort_keys=True, default=str).encode()
    return int(hashlib.sha256(blob).hexdigest()[:8], 16)


def _rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ConfigError(f"expected a number, got {value!r}")
    if isinstance(value, (int, str)):
        try:
            return parse_scalar(str(value))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"not a rational: {value!r}")
    if isinstance(value, float):
        return F(value)
    raise ConfigError(f"not a rational: {value!r}")


def _point_from(value) -> tuple:
    if isinstance(value, str):
        value = value.split(";")
    return point([_rational(v) for v in value])


def _ball_from(obj) -> Ball:
    return Ball(_point_from(obj["center"]), _rational(obj["radius"]))


def _oracle_from_arg(text: str):
    if text == "cantor":
        return fractals.CantorOracle()
    if text.startswith("fullspace"):
        d = int(text.split(":", 1)[1]) if ":" in text else 1
        return fractals.FullSpaceOracle(d)
    if text.endswith(".json"):
        return fractals.oracle_from_spec(_load_json(text))
    raise ConfigError(f"unknown oracle {text!r} (use cantor, fullspace:d, or a spec file)")


# ---------------------------------------------------------------------------
# strategy construction from config records

def _build_game_config(game: dict) -> engine.GameConfig:
    kind = game.get("kind", "absolute")
    beta = _rational(game.get("beta", "1/4"))
    if kind == "classic":
        rules = engine.ClassicRules(_rational(game["alpha"]), beta)
    elif kind == "absolute":
        d = int(game.get("d", 1))
        rules = engine.AbsoluteRules(int(game.get("k", d - 1)), beta)
    else:
        raise ConfigError(f"unknown game kind {kind!r}")
    arena_spec = game.get("arena", {"type": "fullspace"})
    if arena_spec.get("type", "fullspace") == "fullspace":
        arena = engine.FullSpace(int(game.get("d", arena_spec.get("d", 1))))
    else:
        arena = engine.OnSet(fractals.oracle_from_spec(arena_spec["oracle"]))
    horizon = int(game.get("horizon", 10))
    try:
        return engine.GameConfig(rules=rules, arena=arena, horizon=horizon, seed=game.get("seed"))
    except ValueError as exc:
        raise ConfigError(str(exc))


def _build_alice(spec: dict, cfg: engine.GameConfig):
    name = spec.get("name", "dummy")
    beta = cfg.rules.beta
    if name == "ba":
        return ba_alice(cfg.d, beta, spec.get("max_k"))
    if name == "toral":
        return toral_alice(
            [[int(v) for v in row] for row in spec["matrix"]],
            _point_from(spec.get("y", [0] * cfg.d)),
            beta,
        )
    if name == "pullback":
        fmap = AffineMap(
            [[_rational(v) for v in row] for row in spec["matrix"]],
            _point_from(spec["offset"]),
        )
        domain = _ball_from(spec["domain"])
        inner = lambda bp: ba_alice(cfg.d, bp)  # noqa: E731
        return pullback_alice(inner, fmap, domain, beta)
    if name == "digit":
        return digit_alice_S(beta)
    if name == "intersect":
        parts = [_build_alice(s, cfg) for s in spec["components"]]
        return intersect_alices(parts, shared_beta=beta)
    if name == "point-remover":
        return PointRemoverAlice()
    if name == "random-classic":
        return RandomClassicAlice(int(spec.get("seed", 0)))
    if name == "dummy":
        return DummyAlice()
    raise ConfigError(f"unknown alice {name!r}")


def _build_bob(spec: dict, cfg: engine.GameConfig, master_seed: int):
    name = spec.get("name", "random")
    seed = int(spec.get("seed", master_seed))
    opening = _ball_from(spec["opening"]) if "opening" in spec else None
    if name == "random":
        return random_bob(seed, opening)
    if name == "shrink":
        return shrink_in_place_bob(opening)
    if name == "hugger":
        return rational_hugger_bob(int(spec.get("q_max", 200)), seed, opening)
    if name == "hyperplane":
        anchor = _point_from(spec["anchor"])
        if "directions" in spec:
            dirs = tuple(_point_from(v) for v in spec["directions"])
        else:
            dirs = tuple(null_space([_point_from(spec["normal"])], len(anchor)))
        return online_hyperplane_bob(AffineSubspace(anchor, dirs), seed, opening)
    if name == "digit":
        return digit_bob(int(spec["n"]))
    if name == "random-classic":
        return RandomClassicBob(seed, opening)
    raise ConfigError(f"unknown bob {name!r}")


# ---------------------------------------------------------------------------
# certificates from hints

def _certs_from_hints(hints: dict, t: engine.Transcript, alice, spec: dict) -> list:
    """Dispatch on the strategy's exported hints; returns (label, Certificate)."""
    out = []
    final = engine.final_ball(t)
    kind = hints.get("strategy")
    if kind == "ba":
        c = _rational(hints.get("c", "0"))
        q = int(spec.get("q_max", hints.get("q_max", 1)))
        out.append(("ba", certify.ba_certificate(
            final, c, q,
            slack=_rational(spec.get("slack", 0)),
            budget=int(spec.get("budget", 10 ** 7)),
        )))
    elif kind == "toral":
        t_val = _rational(hints.get("t", "0"))
        out.append(("orbit", certify.orbit_certificate(
            final, alice.rows, alice.y, t_val,
            int(spec.get("j_max", 20)),
            slack=_rational(spec.get("slack", 0)),
        )))
    elif kind == "digit-alice":
        idx = [int(i) for i in hints.get("indices", [])]
        depth = int(spec.get("depth", max(idx) if idx else 1))
        # her last ball bounds the outcome and is inside its deepest cell
        out.append(("digit-zero", certify.digit_zero_certificate(
            engine.tightest_ball(t), idx, depth)))
    elif kind == "pullback":
        inner = hints.get("inner", {})
        if inner.get("strategy") == "ba" and getattr(alice.fmap, "method", "") == "exact-affine":
            c_in = _rational(inner.get("c", "0"))
            q_in = int(inner.get("q_max", 1))
            c_img, m = transported_ba_constant(alice.fmap, c_in)
            q_img = int(spec.get("q_max", max(1, q_in // m)))
            out.append(("ba-image", certify.ba_certificate(
                alice.image_ball(final), c_img, q_img,
                slack=_rational(spec.get("slack", 0)),
            )))
    elif kind == "intersect":
        for i, (sub_hints, strat) in enumerate(zip(hints.get("components", []), alice.strategies)):
            for label, cert in _certs_from_hints(sub_hints, t, strat, spec):
                out.append((f"{label}[{i}]", cert))
    return out


def _run_certificates(t: engine.Transcript, alice, bob, cert_specs: list) -> list:
    out = []
    for spec in cert_specs:
        kind = spec.get("kind", "auto")
        if kind == "auto":
            out.extend(_certs_from_hints(t.certificate_hints or {}, t, alice, spec))
            if isinstance(bob, DigitBob):
                out.append(("digit-disjunction", certify.digit_disjunction_certificate(
                    engine.final_ball(t), bob.n, int(spec.get("depth", 20)))))
        elif kind == "ba":
            out.append(("ba", certify.ba_certificate(
                engine.final_ball(t), _rational(spec["c"]), int(spec["q_max"]),
                slack=_rational(spec.get("slack", 0)),
                budget=int(spec.get("budget", 10 ** 7)))))
        elif kind == "digit-zero":
            hints = t.certificate_hints or {}
            idx = [int(i) for i in spec.get("indices", hints.get("indices", []))]
            out.append(("digit-zero", certify.digit_zero_certificate(
                engine.tightest_ball(t), idx,
                int(spec.get("depth", max(idx) if idx else 1)))))
        elif kind == "digit-disjunction":
            out.append(("digit-disjunction", certify.digit_disjunction_certificate(
                engine.final_ball(t), int(spec["n"]), int(spec.get("depth", 20)))))
        elif kind == "orbit":
            r = [[int(v) for v in row] for row in spec["matrix"]]
            out.append(("orbit", certify.orbit_certificate(
                engine.final_ball(t), r, _point_from(spec.get("y", [0] * len(r))),
                _rational(spec["t"]), int(spec.get("j_max", 20)),
                slack=_rational(spec.get("slack", 0)))))
        else:
            raise ConfigError(f"unknown certificate kind {kind!r}")
    return out


def _exit_code_for(certs: list) -> int:
    # partial certificates carry no counterexample, only exhaustion; a
    # definite failure anywhere outranks them
    if any(not c.passed and not c.partial for _, c in certs):
        return EXIT_FAIL
    if any(c.partial for _, c in certs):
        return EXIT_BUDGET
    return EXIT_PASS


def _write_witness_csv(path, certs: list) -> None:
    rows = [(label, k, v) for label, c in certs if c.witness for k, v in c.witness.items()]
    if not rows:
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["certificate", "field", "value"])
        w.writerows(rows)


# ---------------------------------------------------------------------------
# subcommands

def cmd_play(args) -> int:
    cfg = _apply_overrides(_load_json(args.config), args.set)
    if args.horizon is not None:
        cfg.setdefault("game", {})["horizon"] = args.horizon
    if args.seed is not None:
        cfg["seed"] = args.seed
    if "seed" not in cfg:
        cfg["seed"] = _derived_seed(cfg)
    print(f"seed: {cfg['seed']}")
    game_cfg = _build_game_config(cfg.get("game", {}))
    alice = _build_alice(cfg.get("alice", {}), game_cfg)
    bob = _build_bob(cfg.get("bob", {}), game_cfg, cfg["seed"])
    t = engine.play(game_cfg, alice, bob)
    certs = _run_certificates(t, alice, bob, cfg.get("certificates", [{"kind": "auto"}]))
    print(f"status: {t.status} after {t.rounds_completed()} rounds")
    for label, c in certs:
        mark = "PASS" if c.passed else "FAIL"
        extra = " (partial)" if c.partial else ""
        print(f"certificate {label}: {mark}{extra} exact={c.exact}")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = engine.transcript_to_json(t)
    payload["experiment"] = cfg
    payload["certificates"] = [dict(c.to_json(), name=label) for label, c in certs]
    out_path = out_dir / args.out_name
    with open(out_path, "w") as fh:
        json.dump(payload, fh, indent=1)
    _write_witness_csv(out_dir / "witnesses.csv", certs)
    print(f"wrote {out_path}")
    if t.status == engine.STATUS_ILLEGAL:
        return EXIT_FAIL  # an aborted game is not a pass, certificates or not
    return _exit_code_for(certs)


def cmd_certify(args) -> int:
    payload = _load_json(args.transcript)
    t = engine.transcript_from_json(payload)
    final = engine.final_ball(t)
    certs = []
    if args.kind == "auto":
        for spec in payload.get("certificates", []):
            kind = spec.get("kind")
            if kind == "ba":
                det = spec.get("details", {})
                # a budget-truncated run records q_requested/budget instead
                certs.append(("ba", certify.ba_certificate(
                    final, _rational(det["c"]),
                    int(det.get("q_max", det.get("q_requested", 1))),
                    slack=_rational(det.get("slack", 0)),
                    budget=int(det.get("budget", 10 ** 7)))))
            elif kind == "orbit":
                det = spec.get("details", {})
                certs.append(("orbit", certify.orbit_certificate(
                    final, [[int(v) for v in row] for row in det["matrix"]],
                    _point_from(det["y"]), _rational(det["t"]), int(det["j_max"]),
                    slack=_rational(det.get("slack", 0)))))
            elif kind == "digit-zero":
                det = spec.get("details", {})
                idx = det.get("indices", det.get("indices_requested", []))
                certs.append(("digit-zero", certify.digit_zero_certificate(
                    engine.tightest_ball(t), [int(i) for i in idx],
                    int(det["depth"]))))
            elif kind == "digit-disjunction":
                det = spec.get("details", {})
                certs.append(("digit-disjunction", certify.digit_disjunction_certificate(
                    final, int(det["n"]), int(det["depth"]))))
        if not certs:
            print("transcript carries no re-runnable certificates", file=sys.stderr)
    elif args.kind == "ba":
        certs.append(("ba", certify.ba_certificate(
            final, _rational(args.c), int(args.q_max), slack=_rational(args.slack))))
    else:
        raise ConfigError(f"unknown certify kind {args.kind!r}")
    for label, c in certs:
        mark = "PASS" if c.passed else "FAIL"
        extra = " (partial)" if c.partial else ""
        print(f"certificate {label}: {mark}{extra} exact={c.exact}")
    return _exit_code_for(certs)


def cmd_fractal(args) -> int:
    oracle = _oracle_from_arg(args.oracle)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    seed = args.seed if args.seed is not None else _derived_seed(vars(args))
    print(f"seed: {seed}")
    summary = {"oracle": oracle.to_spec(), "seed": seed}
    failed = False
    if args.ladder:
        ladder = [_rational(b) for b in args.ladder.split(",")]
        rep = fractals.dimension_from_packing(
            oracle, ladder, args.samples, rho=_rational(args.rho), seed=seed)
        with open(out_dir / "packing.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["beta", "mean_count"])
            for row in rep.rows():
                w.writerow([row["beta"], row["mean_count"]])
        summary["packing"] = {"delta_hat": rep.delta_hat, "m_hat": rep.m_hat,
                              "samples": rep.samples}
        print(f"packing dimension estimate: {rep.delta_hat:.4f}")
    if args.diffuse_beta:
        beta = _rational(args.diffuse_beta)
        rho = _rational(args.rho)
        depth = args.depth or fractals.depth_for_scale(oracle, beta * rho / 8)
        plain = fractals.diffuseness_check(oracle, args.k, beta, rho,
                                           args.trials, depth, seed=seed)
        strong = fractals.diffuseness_strong_form(oracle, args.k, beta / (2 + beta), rho,
                                                  args.trials, depth, seed=seed)
        summary["diffuse"] = {
            "k": args.k, "beta": str(beta),
            "plain": {"passes": plain.passes, "trials": plain.trials},
            "strong_beta": str(beta / (2 + beta)),
            "strong": {"passes": strong.passes, "trials": strong.trials},
        }
        print(f"diffuse k={args.k} beta={beta}: plain {plain.passes}/{plain.trials}, "
              f"strong {strong.passes}/{strong.trials}")
        failed = failed or not plain.passed or not strong.passed
    if args.microset_k is not None:
        ball = oracle.root_ball()
        width = fractals.microset_width(oracle, ball, args.microset_k,
                                        args.depth or 6, seed=seed)
        summary["microset"] = {"k": args.microset_k, "width": width}
        print(f"microset width bound (k={args.microset_k}): {width:.4f}")
    with open(out_dir / "fractal.json", "w") as fh:
        json.dump(summary, fh, indent=1)
    return EXIT_FAIL if failed else EXIT_PASS


def cmd_measure(args) -> int:
    oracle = _oracle_from_arg(args.oracle)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    seed = args.seed if args.seed is not None else _derived_seed(vars(args))
    print(f"seed: {seed}")
    u = Ball(_point_from(args.center), _rational(args.radius))
    try:
        tree = measures.build_decaying_measure(
            oracle, u, _rational(args.beta0), _rational(args.beta), args.depth)
    except measures.MeasureBuildError as exc:
        print(f"build failed: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    measures.check_tree(tree)
    measures.dump_tree(tree, out_dir / "tree.json")
    c_const = float(args.c) if args.c is not None else tree.decay_c
    gamma = float(args.gamma) if args.gamma is not None else tree.gamma
    print(f"claimed constants: C={tree.decay_c:.4f} gamma={tree.gamma:.4f} "
          f"(testing C={c_const:.4f})")
    reports = [
        measures.test_absolute_decay(tree, c_const, gamma, args.trials, seed=seed),
        measures.test_federer(tree, _rational(args.federer_d), args.trials, seed=seed + 1),
        measures.proof_counting_check(tree, max(1, args.trials // 10), seed=seed + 2),
    ]
    if args.ahlfors:
        delta, c1, c2 = (float(v) for v in args.ahlfors.split(","))
        reports.append(measures.test_ahlfors(tree, delta, c1, c2, args.trials, seed=seed + 3))
    failed = False
    summary = {"seed": seed, "C": tree.decay_c, "gamma": tree.gamma,
               "tested_C": c_const, "depth": args.depth, "reports": {}}
    for rep in reports:
        rep.to_csv(out_dir / f"{rep.kind}.csv")
        summary["reports"][rep.kind] = {
            "trials": rep.trials, "violations": len(rep.violations),
            "passed": rep.passed, "scale_floor": str(rep.scale_floor),
        }
        print(f"{rep.kind}: {len(rep.violations)} violations in {rep.trials} trials")
        failed = failed or not rep.passed
    with open(out_dir / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=1)
    return EXIT_FAIL if failed else EXIT_PASS


def cmd_dims(args) -> int:
    ks = [int(k) for k in args.k.split(",")]
    betas = [_rational(b) for b in args.betas.split(",")]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for k in ks:
        for b in betas:
            rows.append((k, b, certify.dim_lower_bound_diffuse(k, b)))
    with open(out_dir / "dims.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "beta", "diffuse_bound"])
        for k, b, v in rows:
            w.writerow([k, str(b), repr(v)])
    if args.gamma:
        with open(out_dir / "decay_bounds.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["gamma", "decay_bound"])
            for g in args.gamma.split(","):
                w.writerow([g, repr(certify.dim_lower_bound_decay(float(g)))])
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.4))
    for k in ks:
        xs = [float(b) for b in betas]
        ys = [v for kk, b, v in rows if kk == k]
        ax.plot(xs, ys, marker="o", markersize=2.5, label=f"k={k}")
    ax.set_xlabel("beta")
    ax.set_ylabel("dimension lower bound")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_dir / "dims.svg")
    plt.close(fig)
    print(f"wrote {out_dir / 'dims.csv'} and dims.svg ({len(rows)} rows)")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="schmidt-games", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("play", help="run a game from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a config entry (dotted path, JSON value)")
    p.add_argument("--horizon", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--out-name", default="transcript.json")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("certify", help="re-run certificates on a transcript")
    p.add_argument("--transcript", required=True)
    p.add_argument("--kind", default="auto", choices=["auto", "ba"])
    p.add_argument("--c", default="0")
    p.add_argument("--q-max", type=int, default=1)
    p.add_argument("--slack", default="0")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("fractal", help="packing/diffuseness/microset reports")
    p.add_argument("--oracle", required=True, help="cantor, fullspace:d, or spec file")
    p.add_argument("--ladder", help="comma list of packing radii ratios, e.g. 1/3,1/9")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--rho", default="1")
    p.add_argument("--diffuse-beta", help="run diffuseness checks at this beta")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--depth", type=int)
    p.add_argument("--microset-k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_fractal)

    p = sub.add_parser("measure", help="build and validate a decaying measure")
    p.add_argument("--oracle", required=True)
    p.add_argument("--center", default="0")
    p.add_argument("--radius", default="1")
    p.add_argument("--beta0", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--c", help="test against this C instead of the claimed one")
    p.add_argument("--gamma")
    p.add_argument("--federer-d", default="4")
    p.add_argument("--ahlfors", metavar="DELTA,C1,C2")
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("dims", help="dimension lower-bound table and plot")
    p.add_argument("--k", default="0,1")
    p.add_argument("--betas", required=True, help="comma list of rational betas")
    p.add_argument("--gamma", help="comma list for the decay-side identity bound")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_dims)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
