"""Command-line front end.

Exit status: 0 on success, 1 for invalid input, 2 for an internal invariant
violation or a failing self-test.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import yaml

from .classifier import ClassifierError, normalized, regime, singularity_table
from .fibers import FiberError, FiberType, Kind, mmp_start_graph
from .lattice import LatticeError, format_divisor, parse_rational
from .mmp import InternalError, MmpError, check_weight, run_relative_mmp
from .surface import (
    SurfaceConfig, SurfaceError, canonical_class, global_model, lc_square_and_t, rational_i0star_example,
)
from .walls import WallError, cube_chambers, parametric_walls, parse_path

MAX_N = 100
CONFIG_KEYS = {"genus", "deg_L", "marks", "generic_marks", "isotrivial_j_infinity", "is_product", "path"}
MARK_KEYS = {"type", "weight"}


class UsageError(Exception):
    """Invalid input; reported on stderr with exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _exact(text, where="") -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise UsageError(f"{where}expected an exact rational, got {text!r}")
    try:
        return parse_rational(text)
    except (LatticeError, ValueError, TypeError) as exc:
        raise UsageError(f"{where}{exc}") from exc


def _fiber_type(text: str) -> FiberType:
    try:
        t = FiberType.parse(text)
    except (FiberError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if t.n > MAX_N:
        raise UsageError(f"fiber index {t.n} exceeds the CLI limit of {MAX_N}")
    return t


def _weight(text) -> Fraction:
    a = _exact(text, "weight: ")
    try:
        return check_weight(a)
    except MmpError as exc:
        raise UsageError(str(exc)) from exc


# config files

def _node_line(node) -> str:
    return f" (line {node.start_mark.line + 1})" if node is not None else ""


def _find(node, key):
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            if k.value == key:
                return v
    return None


def load_config(path: str) -> tuple:
    """Read a YAML config; return ``(SurfaceConfig, path spec or None)``."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise UsageError(f"{path}: not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"{path}: top level must be a mapping")
    return config_from_dict(data, root, path)


def config_from_dict(data: dict, root=None, source="config") -> tuple:
    def fail(field_path, msg, node=None):
        raise UsageError(f"{source}: {field_path}{_node_line(node)}: {msg}")

    for key in data:
        if key not in CONFIG_KEYS:
            fail(key, "unknown key", _find(root, key))
    for key in ("genus", "deg_L"):
        v = data.get(key)
        if isinstance(v, bool) or not isinstance(v, int):
            fail(key, "required non-negative integer", _find(root, key))
    marks_node = _find(root, "marks")
    marks = []
    for i, m in enumerate(data.get("marks") or []):
        node = marks_node.value[i] if isinstance(marks_node, yaml.SequenceNode) else None
        if not isinstance(m, dict):
            fail(f"marks[{i}]", "expected a mapping with type and weight", node)
        extra = set(m) - MARK_KEYS
        if extra or set(m) != MARK_KEYS:
            fail(f"marks[{i}]", f"expected keys type and weight, got {sorted(m)}", node)
        try:
            t = _fiber_type(str(m["type"]))
            w = _weight(m["weight"])
        except UsageError as exc:
            fail(f"marks[{i}]", str(exc), node)
        marks.append((t, w))
    generic_node = _find(root, "generic_marks")
    generic = []
    for i, w in enumerate(data.get("generic_marks") or []):
        node = generic_node.value[i] if isinstance(generic_node, yaml.SequenceNode) else None
        try:
            generic.append(_weight(w))
        except UsageError as exc:
            fail(f"generic_marks[{i}]", str(exc), node)
    flags = {}
    for key in ("isotrivial_j_infinity", "is_product"):
        v = data.get(key, False)
        if not isinstance(v, bool):
            fail(key, "expected true or false", _find(root, key))
        flags[key] = v
    spec = data.get("path")
    if spec is not None and not isinstance(spec, str):
        fail("path", "expected a string such as \"a,a,1\"", _find(root, "path"))
    try:
        cfg = SurfaceConfig(data["genus"], data["deg_L"], tuple(marks), tuple(generic), **flags)
    except SurfaceError as exc:
        fail("config", str(exc), root)
    return cfg, spec


# reports

def _s(x):
    return None if x is None else str(x)


def _emit(args, payload: dict, text: str):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _cmd_classify(args):
    t, a = _fiber_type(args.type), _weight(args.weight)
    model = run_relative_mmp(mmp_start_graph(t), a)
    labels = model.singularity_labels()
    form = "lc trivial" if model.form is None else model.form.value
    text = f"{form}; singularities: {', '.join(labels)}" if labels else form
    payload = {"type": str(t), "weight": str(a), "form": None if model.form is None else model.form.value,
               "singularities": labels}
    if model.form is not None and t.kind != Kind.N:
        try:
            table = singularity_table(t, regime(model.form))
        except ClassifierError:
            table = None
        if table is not None:
            payload["table"] = table
            if normalized(table) != normalized(model.singularities):
                text += f"\nnote: published row reads {', '.join(table)}"
    _emit(args, payload, text)


def _cmd_mmp(args):
    t, a = _fiber_type(args.type), _weight(args.weight)
    model = run_relative_mmp(mmp_start_graph(t), a)
    form = "lc trivial" if model.form is None else model.form.value
    lines = [f"{t} at a = {a}: {form}",
             "survivors: " + (", ".join(model.survivors) or "none"),
             "singularities: " + (", ".join(model.singularity_labels()) or "none")]
    if args.trace:
        lines.append(model.trace.to_text())
    payload = {"type": str(t), "weight": str(a), "form": None if model.form is None else model.form.value,
               "survivors": list(model.survivors), "singularities": model.singularity_labels(),
               "lc_trivial": model.lc_trivial, "section_square_shift": str(model.section_square_shift)}
    if args.trace:
        payload["trace"] = model.trace.to_dict()
    _emit(args, payload, "\n".join(lines))


def _cmd_canonical(args):
    cfg, _ = load_config(args.config)
    k = canonical_class(cfg)
    _emit(args, {"canonical_class": {x: str(c) for x, c in k.coefficients.items()}}, f"K = {format_divisor(k)}")


def _cmd_model(args):
    cfg, _ = load_config(args.config)
    m = global_model(cfg)
    lines = [f"model: {m.label}", f"section contracted: {'yes' if m.section_contracted else 'no'}",
             f"Iitaka dimension: {m.iitaka_dimension}"]
    if m.t is not None:
        lines += [f"t = {m.t}", f"square = {m.square}"]
    lines += [f"note: {n}" for n in m.notes]
    payload = {"kind": m.kind.value, "label": m.label, "fiber_forms": [f.value for f in m.detail],
               "section_contracted": m.section_contracted, "iitaka_dimension": m.iitaka_dimension,
               "t": _s(m.t), "square": _s(m.square), "notes": list(m.notes)}
    _emit(args, payload, "\n".join(lines))


def _cmd_walls(args):
    cfg, spec = load_config(args.config)
    spec = args.path or spec
    if spec is None:
        report = cube_chambers(cfg)
    else:
        report = parametric_walls(cfg, parse_path(spec, len(cfg.weights)))
    _emit(args, report.to_dict(), report.to_text())


def _cmd_example(args):
    cfg = rational_i0star_example()
    report = parametric_walls(cfg)
    square, t = lc_square_and_t(cfg, Fraction(2, 5))
    lines = ["rational elliptic surface, two I0* fibers F0 (weight a), F1 (weight 1), one generic mark (weight a)",
             f"t = {t}", f"square = {square} = {square.factored()}", report.to_text()]
    payload = {"t": [str(c) for c in t.coeffs], "square": [str(c) for c in square.coeffs], "report": report.to_dict()}
    _emit(args, payload, "\n".join(lines))


def _cmd_selftest(args):
    from .selftest import run_all
    return 0 if run_all() else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="elliptic-lc", description="Log canonical models of weighted elliptic surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fiber = sub.add_parser("fiber", help="single-fiber computations")
    fsub = fiber.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn, help_text in (("classify", _cmd_classify, "model form and singularities"),
                                ("mmp", _cmd_mmp, "run the relative MMP")):
        c = fsub.add_parser(name, help=help_text)
        c.add_argument("--type", required=True, help='fiber type, e.g. "I5", "I2*", "IV*", "N1"')
        c.add_argument("--weight", required=True, help='exact weight in [0, 1], e.g. "5/6"')
        c.add_argument("--json", action="store_true")
        if name == "mmp":
            c.add_argument("--trace", action="store_true", help="print every contraction step")
        c.set_defaults(func=fn)

    surface = sub.add_parser("surface", help="global surface computations")
    ssub = surface.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, fn in (("canonical", _cmd_canonical), ("model", _cmd_model)):
        c = ssub.add_parser(name)
        c.add_argument("--config", required=True)
        c.add_argument("--json", action="store_true")
        c.set_defaults(func=fn)

    w = sub.add_parser("walls", help="walls and chambers in weight space")
    w.add_argument("--config", required=True)
    w.add_argument("--path", help='one expression per weight, marks first, e.g. "a,1,a"')
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=_cmd_walls)

    ex = sub.add_parser("example", help="worked examples")
    ex.add_argument("name", choices=["rational-i0star"])
    ex.add_argument("--json", action="store_true")
    ex.set_defaults(func=_cmd_example)

    st = sub.add_parser("selftest", help="run the acceptance checks")
    st.set_defaults(func=_cmd_selftest)
    return p


def run_command(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args) or 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (SurfaceError, WallError, MmpError, ClassifierError, FiberError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # anything else is a bug, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
