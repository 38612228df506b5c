"""Command line front end: ``sctk {expand,enumerate,mink,verify,growth}``.

Surfaces are described by a JSON file (see the README for the schema).
Every command writes one report, CSV or JSON, to ``--output`` or stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .dioph import (
    c1_from_parabolic,
    convergent_height_check,
    entry_domination,
    group_words,
    growth_indicator,
    parabolic_parameter,
    trace_domination,
    vector_domination,
    vector_domination_stability,
)
from .exactfield import FieldElement, FieldError, Matrix2, parse_field_element, quadratic_field, QQ
from .interval import Interval
from .mink import mink_lower_bound_search, mink_upper_bound
from .reals import PrecisionExhausted, Real, precision_cap
from .surface import (
    GroupOrbitModel,
    Origami,
    SurfaceError,
    SurfaceModel,
    Tessellation,
    closure_defect,
    enumerate_vectors,
    golden_l_model,
    l_shaped_origami,
    orbit_vectors,
    shortest_vector_check,
    theta_group_model,
    torus,
    trace_saddle_connections,
    validate_origami,
    volume,
)
from .zexp import (
    HypothesisError,
    ball_stream,
    last_per_height,
    origami_tree_stream,
    parse_theta,
    sandwich_check,
    tessellation_stream,
    z_expansion,
)

FORMAT_HEADER = "# sctk-format v1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_IO = 4
EXIT_PRECISION = 5
EXIT_HYPOTHESIS = 6

PRESETS = {
    "torus": torus,
    "l3": l_shaped_origami,
    "golden-l": golden_l_model,
    "theta": theta_group_model,
}


class ConfigError(ValueError):
    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.field = field
        self.line = line


@dataclass
class RunConfig:
    command: str | None = None
    surface_path: str | None = None
    theta: str = "pi"
    radius: float = 20.0
    terms: int = 10
    max_height: float | None = None
    precision: int = 16384
    grid: int = 41
    refine: int = 60
    output: str | None = None
    format: str | None = None
    margin: float = 0.05
    window: int | None = None
    threads: int = 1
    words: int = 6
    mu: str | None = None
    heights: str | None = None
    extra: dict = field(default_factory=dict)

    def validate(self):
        for name in ("radius", "terms", "precision", "grid", "refine", "threads", "words"):
            value = getattr(self, name)
            if value is None or value <= 0:
                raise ConfigError("must be positive", name)
        if self.margin < 0:
            raise ConfigError("must be nonnegative", "margin")
        if self.max_height is not None and self.max_height <= 0:
            raise ConfigError("must be positive", "max_height")
        if self.window is not None and self.window <= 0:
            raise ConfigError("must be positive", "window")
        if self.format not in (None, "csv", "json"):
            raise ConfigError("must be 'csv' or 'json'", "format")
        try:
            parse_theta(self.theta)
        except ValueError as exc:
            raise ConfigError(str(exc), "theta") from None
        return self


# ---------------------------------------------------------------------------
# configuration parsing


def _element(value, name: str, field_d: int = 1) -> FieldElement:
    if isinstance(value, bool):
        raise ConfigError("expected a number or a field literal", name)
    if isinstance(value, int):
        x = FieldElement(value)
    elif isinstance(value, str):
        try:
            x = parse_field_element(value)
        except FieldError as exc:
            raise ConfigError(str(exc), name) from None
    else:
        raise ConfigError("expected a number or a field literal string", name)
    if x.is_rational():
        return FieldElement(x.as_fraction(), 0, quadratic_field(field_d) if field_d != 1 else QQ)
    if x.d != field_d:
        raise ConfigError(f"{value!r} is not in Q(sqrt({field_d}))", name)
    return x


def _perm(value, n: int, name: str):
    if not isinstance(value, list):
        raise ConfigError("expected a list of cycles or of images", name)
    if not value:
        return []
    if all(isinstance(c, int) and not isinstance(c, bool) for c in value):
        if sorted(value) != list(range(1, n + 1)):
            raise ConfigError(f"images are not a permutation of 1..{n}", name)
        return _images_to_cycles(value)
    if all(isinstance(c, list) and all(isinstance(i, int) and not isinstance(i, bool) for i in c) for c in value):
        flat = [i for c in value for i in c]
        if len(set(flat)) != len(flat) or not all(1 <= i <= n for i in flat):
            raise ConfigError(f"cycles must use distinct entries from 1..{n}", name)
        return value
    raise ConfigError("expected a list of cycles or of images", name)


def _surface(spec: dict, prefix: str = "surface") -> SurfaceModel:
    if not isinstance(spec, dict):
        raise ConfigError("expected an object", prefix)
    if "preset" in spec:
        name = spec["preset"]
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}", f"{prefix}.preset")
        return PRESETS[name]()
    kind = spec.get("kind")
    if kind == "torus":
        return torus()
    if kind == "origami":
        # "squares" and "marked" are accepted as aliases
        n_key = "n" if "n" in spec or "squares" not in spec else "squares"
        n = spec.get(n_key)
        if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
            raise ConfigError("expected a positive integer", f"{prefix}.{n_key}")
        marked = spec.get("marked_policy", spec.get("marked", "cone-points-only"))
        parts = {}
        for key in ("h", "v"):
            if key not in spec:
                raise ConfigError("missing", f"{prefix}.{key}")
            parts[key] = _perm(spec[key], n, f"{prefix}.{key}")
        try:
            o = Origami.from_cycles(n, parts["h"], parts["v"], marked)
        except SurfaceError as exc:
            raise ConfigError(str(exc), f"{prefix}.marked_policy") from None
        try:
            validate_origami(o)
        except SurfaceError as exc:
            raise ConfigError(str(exc), prefix) from None
        return o
    if kind == "orbit":
        fspec = spec.get("field", {"d": 1})
        d = fspec.get("d") if isinstance(fspec, dict) else None
        if not isinstance(d, int) or d <= 0:
            raise ConfigError("expected an object {\"d\": k} with k a positive square-free integer", f"{prefix}.field")
        try:
            k = quadratic_field(d) if d != 1 else QQ
        except FieldError as exc:
            raise ConfigError(str(exc), f"{prefix}.field") from None
        gens = []
        for i, g in enumerate(spec.get("generators", [])):
            nm = f"{prefix}.generators[{i}]"
            if not (isinstance(g, list) and len(g) == 2 and all(isinstance(r, list) and len(r) == 2 for r in g)):
                raise ConfigError("expected [[a, b], [c, d]]", nm)
            m = Matrix2(*(_element(x, nm, d) for row in g for x in row), field=k)
            if m.det() != 1:
                raise ConfigError(f"determinant is {m.det()}, not 1", nm)
            gens.append(m)
        if not gens:
            raise ConfigError("at least one generator is required", f"{prefix}.generators")
        seeds = []
        for i, s in enumerate(spec.get("seeds", [])):
            nm = f"{prefix}.seeds[{i}]"
            if not (isinstance(s, list) and len(s) == 2):
                raise ConfigError("expected [x, y]", nm)
            seeds.append((_element(s[0], nm, d), _element(s[1], nm, d)))
        if "volume" not in spec:
            raise ConfigError("missing", f"{prefix}.volume")
        vol = _element(spec["volume"], f"{prefix}.volume", d)
        tess = None
        if "tessellation" in spec:
            t = spec["tessellation"]
            nm = f"{prefix}.tessellation"
            if not isinstance(t, dict):
                raise ConfigError("expected an object", nm)
            try:
                sub = tuple((_element(a, nm, d), _element(b, nm, d)) for a, b in t.get("subdivision", []))
                scales = tuple(_element(x, nm, d) for x in t.get("scales", [1]))
                tess = Tessellation(sub, scales)
            except (SurfaceError, TypeError, ValueError) as exc:
                if isinstance(exc, ConfigError):
                    raise
                raise ConfigError(str(exc), nm) from None
        try:
            return GroupOrbitModel(k, gens, seeds, vol, tess, spec.get("name", "orbit"))
        except SurfaceError as exc:
            raise ConfigError(str(exc), prefix) from None
    raise ConfigError("expected 'preset' or 'kind' in {torus, origami, orbit}", f"{prefix}.kind")


def _images_to_cycles(images: list[int]) -> list[list[int]]:
    seen, cycles = set(), []
    for start in range(1, len(images) + 1):
        if start in seen:
            continue
        c, i = [], start
        while i not in seen:
            seen.add(i)
            c.append(i)
            i = images[i - 1]
        cycles.append(c)
    return cycles


_RUN_FIELDS = {
    "theta": str,
    "radius": (int, float),
    "terms": int,
    "max_height": (int, float),
    "precision": int,
    "grid": int,
    "refine": int,
    "format": str,
    "margin": (int, float),
    "window": int,
    "threads": int,
    "words": int,
    "mu": str,
}


def parse_config(text: str, overrides: dict | None = None) -> tuple[RunConfig, SurfaceModel]:
    """Parse a surface config (optionally with a ``run`` section of defaults)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ConfigError("top level must be an object")
    spec = data.get("surface", data)
    model = _surface(spec, "surface" if "surface" in data else "(top)")
    run = data.get("run", {})
    if not isinstance(run, dict):
        raise ConfigError("expected an object", "run")
    cfg = RunConfig()
    for key, value in run.items():
        if key not in _RUN_FIELDS:
            raise ConfigError("unknown run setting", f"run.{key}")
        typ = _RUN_FIELDS[key]
        if isinstance(value, bool) or not isinstance(value, typ):
            raise ConfigError(f"wrong type {type(value).__name__}", f"run.{key}")
        setattr(cfg, key, value)
    for key, value in (overrides or {}).items():
        if value is not None:
            setattr(cfg, key, value)
    cfg.validate()
    return cfg, model


# ---------------------------------------------------------------------------
# serialisation


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x, ".17g")


def to_json(obj, indent: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (str, FieldElement, Fraction)):
        return json.dumps(str(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{to_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _down(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, -math.inf) if Fraction(f) > x else f


def _up(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, math.inf) if Fraction(f) < x else f


def _iv(iv: Interval) -> tuple[float, float]:
    return _down(iv.lo), _up(iv.hi)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    buf.write(FORMAT_HEADER + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt_float(x) if isinstance(x, float) else str(x) for x in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def _degree(model: SurfaceModel) -> int:
    return 1 if isinstance(model, Origami) else model.field.degree


def expansion(model: SurfaceModel, theta: Real, cfg: RunConfig):
    """Z-expansion of theta for the configured surface (stream chosen by surface type)."""
    if isinstance(model, Origami):
        stream = origami_tree_stream(model, theta, cfg.max_height)
        complete = cfg.max_height is not None
    elif model.tessellation is not None:
        stream = tessellation_stream(theta, model.tessellation, cfg.max_height)
        complete = cfg.max_height is not None
    else:
        stream = ball_stream(orbit_vectors(model, cfg.radius), theta, cfg.radius)
        complete = False
    return z_expansion(stream, theta, max_terms=cfg.terms, max_height=cfg.max_height, complete=complete)


def _mu(model: SurfaceModel, cfg: RunConfig) -> Real:
    if cfg.mu is None:
        return mink_upper_bound(model)
    return parse_theta(cfg.mu)


def cmd_expand(model, cfg: RunConfig):
    theta = parse_theta(cfg.theta)
    records = expansion(model, theta, cfg)
    mu = _mu(model, cfg)
    report = sandwich_check(records, theta, mu)
    rows = []
    for r in records:
        lo, hi = _iv(r.hor.interval(64))
        rows.append((r.index, r.p, r.q, lo, hi, float(r.q), r.provisional))
    status = EXIT_OK if report.passed else EXIT_CHECK_FAILED
    summary = f"sandwich: {len(report.steps)} pairs, {len(report.violations)} violations"
    if (cfg.format or "csv") == "csv":
        text = _csv(["n", "p", "q", "hor_lo", "hor_hi", "q_float"], [r[:6] for r in rows])
        return text, status, [summary]
    doc = {
        "command": "expand",
        "theta": cfg.theta,
        "records": [
            {"n": n, "p": p, "q": q, "hor_lo": lo, "hor_hi": hi, "q_float": qf, "provisional": prov}
            for n, p, q, lo, hi, qf, prov in rows
        ],
        "sandwich": {
            "mu": float(mu),
            "passed": report.passed,
            "steps": [
                {
                    "n": s.n,
                    "p": s.p,
                    "q": s.q,
                    "left": list(_iv(s.left)),
                    "middle": list(_iv(s.middle)),
                    "right": list(_iv(s.right)),
                    "left_ok": s.left_ok,
                    "right_ok": s.right_ok,
                }
                for s in report.steps
            ],
        },
    }
    return to_json(doc) + "\n", status, [summary]


def _vectors(model, cfg: RunConfig):
    if isinstance(model, Origami):
        return trace_saddle_connections(model, cfg.radius, workers=cfg.threads)
    return orbit_vectors(model, cfg.radius)


def cmd_enumerate(model, cfg: RunConfig):
    vs = _vectors(model, cfg)
    if (cfg.format or "csv") == "csv":
        rows = [(v.x.a, v.x.b, v.y.a, v.y.b, v.norm, v.multiplicity) for v in vs]
        return _csv(["x_a", "x_b", "y_a", "y_b", "norm_approx", "multiplicity"], rows), EXIT_OK, [f"{len(vs)} vectors"]
    doc = {
        "command": "enumerate",
        "radius": float(cfg.radius),
        "field_d": 1 if isinstance(model, Origami) else model.field.d,
        "vectors": [{"x": v.x, "y": v.y, "norm": v.norm, "multiplicity": v.multiplicity} for v in vs],
    }
    return to_json(doc) + "\n", EXIT_OK, [f"{len(vs)} vectors"]


def _mink_report(model, cfg: RunConfig):
    Z = _vectors(model, cfg)
    return mink_lower_bound_search(Z, cfg.radius, grid=cfg.grid, refine=cfg.refine, upper_bound=mink_upper_bound(model))


def cmd_mink(model, cfg: RunConfig):
    rep = _mink_report(model, cfg)
    doc = rep.as_dict()
    if (cfg.format or "json") == "csv":
        w = doc["witness"] or {}
        text = _csv(
            ["lower_bound", "upper_bound", "shape", "a", "b", "s"],
            [(doc["lower_bound"], doc["upper_bound"], w.get("shape", ""), w.get("a", ""), w.get("b", ""), w.get("s", ""))],
        )
    else:
        text = to_json({"command": "mink", **doc}) + "\n"
    return text, EXIT_OK, [f"lower {doc['lower_bound']:.6g} <= upper {doc['upper_bound']:.6g}"]


def _check(name: str, passed: bool, detail: str) -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def cmd_verify(model, cfg: RunConfig):
    checks = []
    vol = volume(model)
    if isinstance(model, Origami):
        sing = validate_origami(model)
        checks.append(_check("surface", True, f"{model.n} squares, genus {sing.genus}, cone angles {list(sing.cone_angles)}"))
    else:
        model.check_generators()
        miss = closure_defect(model, orbit_vectors(model, cfg.radius), cfg.radius)
        checks.append(_check("orbit-closure", not miss, f"{len(miss)} generator images missing at R={cfg.radius:g}"))
    sv = shortest_vector_check(model)
    checks.append(_check("shortest-vector", sv.passed, f"|{sv.vector.x}, {sv.vector.y}| = {sv.shortest:.6g} <= sqrt(2 vol) = {sv.bound:.6g}"))

    theta = parse_theta(cfg.theta)
    records = expansion(model, theta, replace(cfg, terms=max(cfg.terms, 12)))
    sw = sandwich_check(records, theta, mink_upper_bound(model))
    checks.append(_check("sandwich", sw.passed, f"{len(sw.steps)} pairs, {len(sw.violations)} violations"))
    usable = [r for r in records if r.q != 0]
    if len(usable) > 5:
        hc = convergent_height_check(records, _degree(model))
        checks.append(_check("height-bound", hc.passed, f"c2 = {hc.c2}, {len(hc.violations)} violations"))

    rep = _mink_report(model, cfg)
    lo, up = float(rep.lower_bound), float(rep.upper_bound)
    checks.append(_check("minkowski", lo <= up, f"{lo:.6g} <= pi*vol = {up:.6g}"))

    if isinstance(model, Origami):
        dom = vector_domination(enumerate_vectors(model, cfg.radius))
        checks.append(_check("vector-domination", dom.passed, f"c_emp = {dom.c_emp}"))
    else:
        st = vector_domination_stability(model, cfg.radius)
        checks.append(_check("vector-domination", st.passed, f"c_emp = {st.small.c_emp} at R, {st.large.c_emp} at 2R"))
        words = group_words(model, cfg.words)
        bad = [w for w in words if not trace_domination(w).passed]
        checks.append(_check("trace-domination", not bad, f"{len(words)} elements, {len(bad)} failures"))
        try:
            c1 = c1_from_parabolic(parabolic_parameter(model))
        except ValueError as exc:
            checks.append(_check("entry-domination", False, str(exc)))
        else:
            bad = [w for w in words if not entry_domination(w, c1).passed]
            checks.append(_check("entry-domination", not bad, f"c1 = {c1}, {len(bad)} failures"))
    passed = all(c["passed"] for c in checks)
    lines = [f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {c['detail']}" for c in checks]
    if (cfg.format or "json") == "csv":
        text = _csv(["check", "passed", "detail"], [(c["name"], c["passed"], c["detail"]) for c in checks])
    else:
        text = to_json({"command": "verify", "volume": vol, "passed": passed, "checks": checks}) + "\n"
    return text, EXIT_OK if passed else EXIT_CHECK_FAILED, lines


def _read_heights(path: str) -> list:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.lstrip("-").isdigit():
                out.append(int(line))
            else:
                out.append(parse_field_element(line))
    return out


def cmd_growth(model, cfg: RunConfig):
    if cfg.heights:
        heights = _read_heights(cfg.heights)
        start = 1
    else:
        theta = parse_theta(cfg.theta)
        recs = [r for r in last_per_height(expansion(model, theta, cfg)) if r.q != 0]
        heights = [abs(r.q) for r in recs]
        start = 1
    rep = growth_indicator(heights, _degree(model), margin=cfg.margin, start=start, window=cfg.window)
    line = (
        f"max log log q_n / n = {rep.running_max[-1]:.6g} over n in {list(rep.window)}, "
        f"threshold log(2D-1) = {rep.threshold:.6g} + margin {rep.margin:g}: {'flagged' if rep.flagged else 'not flagged'}"
    )
    if (cfg.format or "csv") == "csv":
        return rep.to_csv(), EXIT_OK, [line]
    doc = {
        "command": "growth",
        "degree": rep.degree,
        "threshold": rep.threshold,
        "margin": rep.margin,
        "flagged": rep.flagged,
        "window": list(rep.window),
        "rows": [{"n": n, "q": str(q), "loglog_q_over_n": v} for n, q, v in rep.rows],
        "running_max": rep.running_max,
        "exponents": [{"n": n, "ratio": e} for n, e in rep.exponents],
        "exponent_bound": 2 * rep.degree - 1,
    }
    return to_json(doc) + "\n", EXIT_OK, [line]


COMMANDS = {
    "expand": cmd_expand,
    "enumerate": cmd_enumerate,
    "mink": cmd_mink,
    "verify": cmd_verify,
    "growth": cmd_growth,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sctk", description="Z-expansions and saddle connections of translation surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default):
        p.add_argument("--surface", required=True, help="surface config (JSON)")
        p.add_argument("--output", "-o", help="report path (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"], help=f"report format (default: {fmt_default})")
        p.add_argument("--precision", type=int, help="cap, in bits, for interval refinement")
        p.add_argument("--threads", type=int, help="worker processes for tracing")
        p.add_argument("--radius", type=float, help="enumeration radius R")

    p = sub.add_parser("expand", help="Z-expansion of theta plus the sandwich check")
    common(p, "csv")
    p.add_argument("--theta", help='"pi", "e", "a/b", decimal, "sqrt(k)" or "(a+b*sqrt(d))/c"')
    p.add_argument("--terms", type=int)
    p.add_argument("--max-height", type=float, dest="max_height")
    p.add_argument("--mu", help="Minkowski bound for the right inequality (default pi*vol)")

    p = sub.add_parser("enumerate", help="saddle connection vectors up to the radius")
    common(p, "csv")

    p = sub.add_parser("mink", help="Minkowski constant bounds")
    common(p, "json")
    p.add_argument("--grid", type=int)
    p.add_argument("--refine", type=int)

    p = sub.add_parser("verify", help="run every check on the surface")
    common(p, "json")
    p.add_argument("--theta")
    p.add_argument("--terms", type=int)
    p.add_argument("--words", type=int, help="word length for the Veech group checks")
    p.add_argument("--grid", type=int)
    p.add_argument("--refine", type=int)

    p = sub.add_parser("growth", help="growth-rate detector on an expansion or a height list")
    common(p, "csv")
    p.add_argument("--theta")
    p.add_argument("--terms", type=int)
    p.add_argument("--max-height", type=float, dest="max_height")
    p.add_argument("--margin", type=float)
    p.add_argument("--window", type=int)
    p.add_argument("--heights", help="file with one height per line (overrides --theta)")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    overrides = {k: v for k, v in vars(args).items() if k not in ("surface", "command")}
    try:
        with open(args.surface) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"sctk: cannot read {args.surface}: {exc.strerror}", file=stderr)
        return EXIT_IO
    try:
        cfg, model = parse_config(text, overrides)
    except ConfigError as exc:
        print(f"sctk: config error: {exc}", file=stderr)
        return EXIT_CONFIG
    cfg.command = args.command
    cfg.surface_path = args.surface
    try:
        with precision_cap(cfg.precision):
            text, status, lines = COMMANDS[args.command](model, cfg)
    except PrecisionExhausted as exc:
        print(f"sctk: precision exhausted: {exc}", file=stderr)
        return EXIT_PRECISION
    except HypothesisError as exc:
        print(f"sctk: hypothesis not met: {exc}", file=stderr)
        return EXIT_HYPOTHESIS
    except (SurfaceError, ValueError) as exc:
        print(f"sctk: {exc}", file=stderr)
        return EXIT_CONFIG
    try:
        if cfg.output:
            with open(cfg.output, "w") as fh:
                fh.write(text)
        else:
            stdout.write(text)
    except OSError as exc:
        print(f"sctk: cannot write {cfg.output}: {exc.strerror}", file=stderr)
        return EXIT_IO
    for line in lines:
        print(line, file=stderr)
    return status


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
