"""Command line front end.

Usage::

    quotbench <command> <config> [options]

``config`` is a path to (or the bundled name of) an algebra presentation, a
mesh descriptor, or a session wrapper ``{"backend": ..., "file": ...}``.
Exit status is 0 when no report fails, 1 on a failing verdict and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from importlib import resources
from pathlib import Path

from . import linalg as la
from . import quiver as qv
from . import theory as th
from .category import CategoryError, FiniteCategory, module_category_handle
from .gamma import GammaError
from .mesh import MeshBuildError, build_mesh
from .stable import NotSelfInjectiveError, StableCategory, serre_2cy_check

COMMANDS = (
    "indecomposables",
    "ar-quiver",
    "stable",
    "check-functor",
    "find-cluster-tilting",
    "quotient",
    "check-theorems",
    "harada-sai",
    "projective-generator",
)


class UsageError(ValueError):
    """Bad config, labels or flag combination (exit status 2)."""


# ---------------------------------------------------------------------------
# Configuration


@dataclass
class SessionConfig:
    backend: str  # "algebra" or "mesh"
    path: Path
    descriptor: dict
    field: object = None
    caps: dict = dc_field(default_factory=dict)
    output: str = "json"

    def cap(self, name: str, default: int) -> int:
        v = int(self.caps.get(name, default))
        if v <= 0:
            raise UsageError(f"cap {name!r} must be positive")
        return v


def resolve_path(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    bundled = resources.files("quotbench") / "data" / name
    if bundled.is_file():
        return Path(str(bundled))
    raise UsageError(f"config {name!r} not found (bundled configs: {', '.join(bundled_configs())})")


def bundled_configs() -> list[str]:
    return sorted(p.name for p in (resources.files("quotbench") / "data").iterdir() if p.name.endswith(".json"))


def load_config(name: str, field_override=None) -> SessionConfig:
    path = resolve_path(name)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None
    caps, output, fld = {}, "json", None
    if "backend" in raw and "file" in raw:
        backend = raw["backend"]
        caps = dict(raw.get("caps", {}))
        output = raw.get("output", "json")
        fld = raw.get("field")
        inner = (path.parent / raw["file"]) if not Path(raw["file"]).is_absolute() else Path(raw["file"])
        if not inner.exists():
            raise UsageError(f"{path}: referenced file {raw['file']!r} does not exist")
        path, raw = inner, json.loads(inner.read_text())
    elif "dynkin" in raw:
        backend = "mesh"
    elif "vertices" in raw:
        backend = "algebra"
    else:
        raise UsageError(f"{path}: neither an algebra presentation nor a mesh descriptor")
    if backend not in ("algebra", "mesh"):
        raise UsageError(f"unknown backend {backend!r}")
    if field_override is not None:
        fld = field_override
    cfg = SessionConfig(backend, path, raw, fld, caps, output)
    for k in caps:
        cfg.cap(k, 1)
    return cfg


def _field_arg(s: str):
    if s.lower() in ("q", "qq", "rational", "rationals"):
        return "Q"
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be a prime or Q, got {s!r}") from None


class Session:
    """Lazily built categories for one config."""

    def __init__(self, cfg: SessionConfig, max_objects: int | None = None):
        self.cfg = cfg
        self.max_objects = max_objects or cfg.cap("knit", 200)

    @cached_property
    def algebra(self) -> qv.QuiverPresentation:
        self._need("algebra")
        return qv.load_algebra(self.cfg.descriptor, field=self.cfg.field)

    @cached_property
    def modules(self) -> qv.ModuleCategory:
        return qv.knit_module_category(self.algebra, max_objects=self.max_objects)

    @cached_property
    def module_handle(self) -> FiniteCategory:
        return module_category_handle(self.modules)

    @cached_property
    def stable(self) -> StableCategory:
        return StableCategory(self.modules)

    @cached_property
    def mesh(self):
        self._need("mesh")
        return build_mesh(self.cfg.descriptor, field=self.cfg.field)

    @property
    def triangulated(self) -> FiniteCategory:
        return self.stable.cat if self.cfg.backend == "algebra" else self.mesh.cat

    def _need(self, backend: str):
        if self.cfg.backend != backend:
            raise UsageError(f"this command needs an {backend} config, got a {self.cfg.backend} config")


# ---------------------------------------------------------------------------
# Rendering


def category_dot(cat: FiniteCategory, name: str = "AR") -> str:
    """DOT digraph: solid arrows are irreducible maps, dashed arrows are τ."""
    lines = [f"digraph {json.dumps(name)} {{"]
    live = th.live_objects(cat)
    for i in live:
        lines.append(f"  {json.dumps(cat.labels[i])};")
    for (i, j), k in sorted(cat.irreducible_dims().items()):
        extra = f' [label="{k}"]' if k > 1 else ""
        lines.append(f"  {json.dumps(cat.labels[i])} -> {json.dumps(cat.labels[j])}{extra};")
    if cat.tau is not None:
        for i in live:
            t = cat.tau[i]
            if t is not None and t in live:
                lines.append(f"  {json.dumps(cat.labels[i])} -> {json.dumps(cat.labels[t])} [style=dashed];")
    lines.append("}")
    return "\n".join(lines)


def _text(payload) -> str:
    out = []
    reports = payload.get("reports", [])
    for key, val in payload.items():
        if key in ("reports", "dot"):
            continue
        out.append(f"{key}: {json.dumps(val, default=th._json_default)}")
    for r in reports:
        d = r.to_json() if isinstance(r, th.CheckReport) else r
        out.append(f"[{d['verdict'].upper()}] {d['check']}" + (f"  ({d['notes']})" if d.get("notes") else ""))
        for w in d.get("witnesses", [])[:5]:
            out.append(f"    witness: {json.dumps(w, default=th._json_default)}")
    return "\n".join(out)


def _labels(cat: FiniteCategory, spec: str) -> tuple[int, ...]:
    try:
        return cat.parse_object(spec)
    except CategoryError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# Commands; each returns a payload dict with optional "reports" and "dot"


def cmd_indecomposables(s: Session, args) -> dict:
    if s.cfg.backend == "algebra" and not args.stable:
        mc = s.modules
        return {
            "indecomposables": [
                {
                    "label": m.label,
                    "dim_vector": list(m.dim_vector),
                    "projective": i in mc.projectives,
                    "injective": i in mc.injectives,
                }
                for i, m in enumerate(mc.objects)
            ]
        }
    cat = s.triangulated
    return {"indecomposables": [{"label": cat.labels[i]} for i in th.live_objects(cat)]}


def cmd_ar_quiver(s: Session, args) -> dict:
    if s.cfg.backend == "algebra" and not args.stable:
        mc = s.modules
        return {
            "objects": mc.labels,
            "arrows": [list(e) for e in mc.ar_edges()],
            "tau": {mc.objects[i].label: mc.objects[j].label for i, j in sorted(mc.tau.items())},
            "dot": mc.to_dot(),
        }
    cat = s.triangulated
    return {
        "objects": [cat.labels[i] for i in th.live_objects(cat)],
        "arrows": [[cat.labels[i], cat.labels[j], k] for (i, j), k in sorted(cat.irreducible_dims().items())],
        "tau": {cat.labels[i]: cat.labels[t] for i, t in enumerate(cat.tau) if t is not None},
        "dot": category_dot(cat),
    }


def cmd_stable(s: Session, args) -> dict:
    cat = s.triangulated
    serre = serre_2cy_check(cat)
    rep = th.CheckReport(
        "serre_numerics",
        "pass" if serre["has_serre_numerics"] else "fail",
        [{"pair": list(p)} for p in serre["serre_failures"]],
        "dim Hom(X, Y) = dim Hom(Y, τΣX)",
    )
    return {
        "kind": cat.kind,
        "objects": cat.labels,
        "hom_dims": cat.dims.tolist(),
        "sigma": {cat.labels[i]: cat.labels[j] for i, j in enumerate(cat.sigma)},
        "tau": {cat.labels[i]: cat.labels[t] for i, t in enumerate(cat.tau) if t is not None},
        "two_calabi_yau": serre["is_2cy"],
        "dot": category_dot(cat, "stable"),
        "reports": [rep],
    }


def _default_ideal(cat: FiniteCategory, T, kill) -> th.CategoryIdeal:
    if kill:
        return th.CategoryIdeal(cat, objects=_labels(cat, kill))
    unsupported = [x for x in th.live_objects(cat) if all(cat.dims[t, x] == 0 for t in T)]
    return th.CategoryIdeal(cat, objects=unsupported)


def cmd_check_functor(s: Session, args) -> dict:
    if not args.T:
        raise UsageError("check-functor needs --T <labels>")
    cat = s.triangulated
    T = _labels(cat, args.T)
    try:
        r = th.evaluate_T(cat, T)
    except GammaError as exc:
        raise UsageError(str(exc)) from None
    ideal = _default_ideal(cat, T, args.kill)
    reports = [
        th.representability_suite(cat, ideal, T=T),
        r["full"],
        r["dense"],
        r["a"],
        r["b"],
    ]
    return {
        "T": [cat.labels[t] for t in T],
        "ideal_generators": [cat.labels[o] for o in ideal.objects],
        "gamma_dim": r["gamma"].dim,
        "reports": reports,
    }


def cmd_find_cluster_tilting(s: Session, args) -> dict:
    cat = s.triangulated
    live = th.live_objects(cat)
    cap = args.cap_subsets or s.cfg.cap("subsets", 1 << 20)
    found, examined = [], 0
    for k in range(1, len(live) + 1):
        for T in itertools.combinations(live, k):
            if examined >= cap:
                break
            examined += 1
            if th.is_cluster_tilting(cat, T).passed:
                found.append([cat.labels[t] for t in T])
    total = 2 ** len(live) - 1
    return {"cluster_tilting": found, "subsets_examined": examined, "partial": examined < total}


def cmd_quotient(s: Session, args) -> dict:
    if not args.kill:
        raise UsageError("quotient needs --kill <labels>")
    cat = s.triangulated
    ideal = th.CategoryIdeal(cat, objects=_labels(cat, args.kill))
    Q, ks = th.quotient_and_ks_check(cat, ideal)
    qc = Q.cat
    reports = [ks]
    payload = {
        "killed": [cat.labels[o] for o in ideal.objects],
        "objects": [qc.labels[i] for i in th.live_objects(qc)],
        "arrows": [[qc.labels[i], qc.labels[j], k] for (i, j), k in sorted(qc.irreducible_dims().items())],
        "dot": category_dot(qc, "quotient"),
    }
    try:
        P, pg = th.find_projective_generator(qc)
        reports.append(pg)
        payload["projective_generator"] = [qc.labels[p] for p in P]
        reports.append(th.cohomological_sample_check(cat, ideal, P=P))
    except th.StructuralError as exc:
        reports.append(th.CheckReport("projective_generator", "fail", [exc.witness or str(exc)], str(exc)))
    payload["reports"] = reports
    return payload


def cmd_check_theorems(s: Session, args) -> dict:
    cat = s.triangulated
    cap = args.cap_subsets or s.cfg.caps.get("subsets")
    rep = th.theorem_suite(cat, cap_subsets=cap)
    return {"reports": [rep]}


def cmd_harada_sai(s: Session, args) -> dict:
    rep = th.harada_sai_check(s.module_handle, samples=args.samples)
    return {"reports": [rep]}


def cmd_projective_generator(s: Session, args) -> dict:
    if args.kill:
        cat = s.triangulated
        ideal = th.CategoryIdeal(cat, objects=_labels(cat, args.kill))
        handle = th.QuotientCategory(cat, ideal).cat
    else:
        handle = s.module_handle
    P, rep = th.find_projective_generator(handle)
    monos = th.proper_mono_survey(handle)
    return {"P": [handle.labels[p] for p in P], "reports": [rep, monos]}


DISPATCH = {
    "indecomposables": cmd_indecomposables,
    "ar-quiver": cmd_ar_quiver,
    "stable": cmd_stable,
    "check-functor": cmd_check_functor,
    "find-cluster-tilting": cmd_find_cluster_tilting,
    "quotient": cmd_quotient,
    "check-theorems": cmd_check_theorems,
    "harada-sai": cmd_harada_sai,
    "projective-generator": cmd_projective_generator,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quotbench", description="Finite triangulated categories and quotient functors.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("config", help="config path or bundled name, e.g. example-4-1-selfinjective.json")
    p.add_argument("--T", help="comma separated labels of the summands of T")
    p.add_argument("--kill", help="comma separated labels generating the ideal add(...)")
    p.add_argument("--field", type=_field_arg, help="prime p or Q (overrides the config)")
    p.add_argument("--cap-subsets", type=int, help="maximum number of subsets T to enumerate")
    p.add_argument("--max-objects", type=int, help="knitting cap on indecomposables")
    p.add_argument("--samples", type=int, default=10_000, help="random chains for harada-sai")
    p.add_argument("--stable", action="store_true", help="use the stable category for indecomposables/ar-quiver")
    p.add_argument("--format", choices=("json", "dot", "text"), help="output format (default from config, else json)")
    p.add_argument("--out", help="write output to this file instead of stdout")
    return p


def _invocation(argv: list[str]) -> list[str]:
    """``argv`` without ``--out`` so a JSON report names the command that reproduces it."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--out":
            skip = True
            continue
        if a.startswith("--out="):
            continue
        out.append(a)
    return out


def run_command(argv=None) -> tuple[int, str, str | None]:
    """Parse ``argv``, run the command and return ``(status, rendered output, out path)``."""
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    for name in ("cap_subsets", "max_objects", "samples"):
        v = getattr(args, name)
        if v is not None and v <= 0:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    cfg = load_config(args.config, args.field)
    fmt = args.format or cfg.output
    session = Session(cfg, args.max_objects)
    try:
        payload = DISPATCH[args.command](session, args)
    except (CategoryError, MeshBuildError, NotSelfInjectiveError, qv.PresentationError, la.UnsupportedFieldError) as exc:
        raise UsageError(str(exc)) from None
    reports = payload.get("reports", [])
    status = 1 if any(r.failed for r in reports) else 0
    if fmt == "dot":
        if "dot" not in payload:
            raise UsageError(f"--format dot is not available for {args.command}")
        text = payload["dot"]
    elif fmt == "text":
        text = _text(payload)
    else:
        body = {k: v for k, v in payload.items() if k != "dot"}
        body["reports"] = [r.to_json() for r in reports]
        body["status"] = status
        body["invocation"] = _invocation(argv)
        text = json.dumps(body, indent=2, default=th._json_default)
    return status, text, args.out


def main(argv=None) -> int:
    try:
        status, text, out = run_command(argv)
    except UsageError as exc:
        print(f"quotbench: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse
        return int(exc.code or 0) if exc.code not in (None, 0) else 0
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
