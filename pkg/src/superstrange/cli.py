"""Command line front end.

Exit status: 0 when every requested check passes, 1 when a check fails or
cannot be carried out, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .decomposition import triangular
from .errors import AlgebraSpecError, SuperstrangeError
from .exact import Q, qstr
from .families import CATALOG_FAMILIES, catalog_specs, parse_algebra
from .formulas import (
    VerificationReport,
    verify_cg_orthogonality,
    verify_even_vsf,
    verify_strange,
    verify_sumsixixi,
    verify_very_strange,
)
from .gradings import TorusElement, grading_from_torus, sample_tori
from .superalgebra import fixed_point_subalgebra, validate

FORMULA_NAMES = ("strange", "very-strange", "even-vsf", "sumsixixi", "cg-orthogonality")


class UsageError(Exception):
    pass


def _rational_list(text: Optional[str]) -> Optional[Tuple[str, ...]]:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(qstr(Q(t.strip())) for t in text.split(","))
    except (ValueError, ZeroDivisionError, TypeError):
        raise UsageError(f"not a list of rationals: {text!r}") from None


def _int_list(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"not a list of integers: {text!r}") from None


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on; rationals are kept as canonical "p/q" strings."""

    command: str
    algebra: Optional[str] = None
    formula: Optional[str] = None
    torus: Optional[Tuple[str, ...]] = None
    labels: Optional[Tuple[int, ...]] = None
    functional: Optional[Tuple[str, ...]] = None
    fmt: str = "text"
    seed: int = 0
    samples: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("torus", "labels", "functional"):
            if d[k] is not None:
                d[k] = list(d[k])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        for k in ("torus", "functional"):
            if d.get(k) is not None:
                d[k] = tuple(qstr(Q(x)) for x in d[k])
        if d.get("labels") is not None:
            d["labels"] = tuple(int(x) for x in d["labels"])
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(
            command=ns.command,
            algebra=getattr(ns, "algebra", None),
            formula=getattr(ns, "formula", None),
            torus=_rational_list(getattr(ns, "torus", None)),
            labels=_int_list(getattr(ns, "labels", None)),
            functional=_rational_list(getattr(ns, "functional", None)),
            fmt="json" if getattr(ns, "json", False) else "text",
            seed=getattr(ns, "seed", 0) or 0,
            samples=getattr(ns, "samples", 0) or 0,
        )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superstrange", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list supported families and the sweep catalog")
    c.add_argument("--json", action="store_true")

    for name, helptext in (("validate", "check the superalgebra axioms"),
                           ("export", "print the canonical structure-constant text")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--algebra", required=True)
        s.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="verify a formula exactly")
    v.add_argument("formula", choices=FORMULA_NAMES)
    v.add_argument("--algebra", required=True)
    v.add_argument("--torus", help="comma separated rationals over the Cartan basis")
    v.add_argument("--labels", help="comma separated s_0,...,s_n for even-vsf")
    v.add_argument("--functional", help="positivity functional over the Cartan basis")
    v.add_argument("--samples", type=int, default=0, help="number of random torus elements")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")

    d = sub.add_parser("decompose", help="dump the triangular decomposition")
    d.add_argument("--algebra", required=True)
    d.add_argument("--torus", help="decompose the fixed points of this torus grading instead")
    d.add_argument("--functional")
    d.add_argument("--json", action="store_true")
    return p


def _tori(cfg: RunConfig, L) -> List[TorusElement]:
    out = []
    if cfg.torus is not None:
        out.append(TorusElement(tuple(Q(x) for x in cfg.torus)))
    if cfg.samples:
        out += sample_tori(L, cfg.samples, cfg.seed)
    if not out:
        out.append(TorusElement.zero(L.rank))
    for t in out:
        if len(t.coords) != L.rank:
            raise UsageError(f"torus needs {L.rank} coordinates, got {len(t.coords)}")
    return out


def _functional(cfg: RunConfig, L):
    if cfg.functional is None:
        return None
    if len(cfg.functional) != L.rank:
        raise UsageError(f"functional needs {L.rank} coordinates")
    return tuple(Q(x) for x in cfg.functional)


def _emit(cfg: RunConfig, payload: dict, text: str, out) -> None:
    if cfg.fmt == "json":
        out.write(json.dumps(dict(payload, config=cfg.to_dict()), sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def cmd_catalog(cfg: RunConfig, out) -> int:
    specs = catalog_specs()
    if cfg.fmt == "json":
        out.write(json.dumps({"families": CATALOG_FAMILIES, "algebras": specs}, sort_keys=True) + "\n")
    else:
        for f in CATALOG_FAMILIES:
            out.write(f"{f['family']:<14} {f['bounds']}\n")
        out.write(f"{len(specs)} algebras: {' '.join(specs)}\n")
    return 0


def cmd_validate(cfg: RunConfig, out) -> int:
    L = parse_algebra(cfg.algebra)
    rep = validate(L)
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "")
             for c in rep.checks]
    _emit(cfg, rep.to_dict(), "\n".join(lines), out)
    return 0 if rep.ok else 1


def cmd_export(cfg: RunConfig, out) -> int:
    out.write(parse_algebra(cfg.algebra).to_text() + "\n")
    return 0


def cmd_verify(cfg: RunConfig, out) -> int:
    L = parse_algebra(cfg.algebra)
    fn = _functional(cfg, L)
    reports: List[VerificationReport] = []
    if cfg.formula == "strange":
        reports.append(verify_strange(L, fn))
    elif cfg.formula == "even-vsf":
        if cfg.labels is None:
            raise UsageError("even-vsf needs --labels s_0,...,s_n")
        try:
            reports.append(verify_even_vsf(L, cfg.labels, functional=fn))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        fn_map = {"very-strange": verify_very_strange, "sumsixixi": verify_sumsixixi,
                  "cg-orthogonality": verify_cg_orthogonality}
        for t in _tori(cfg, L):
            reports.append(fn_map[cfg.formula](L, grading_from_torus(L, t), fn))
    for r in reports:
        _emit(cfg, r.to_dict(), r.line(), out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_decompose(cfg: RunConfig, out) -> int:
    L = parse_algebra(cfg.algebra)
    target = L
    if cfg.torus is not None:
        (t,) = _tori(cfg, L)
        target = fixed_point_subalgebra(L, grading_from_torus(L, t))
    T = triangular(target, functional=_functional(cfg, target))
    d = T.to_dict()
    if cfg.fmt == "json":
        _emit(cfg, d, "", out)
    else:
        lines = [f"algebra: {d['algebra']}"]
        for key in ("n", "h", "n_minus", "h_plus", "m_plus", "m_minus", "g1", "g2"):
            lines.append(f"{key}: {{{', '.join(d[key])}}}")
        lines.append("m_triv: " + ("; ".join(f"{w}: {', '.join(v)}" for w, v in d["m_triv"].items())
                                   or "0"))
        lines.append("components: " + ", ".join(
            f"V{c['weight']} x{c['multiplicity']} dim {c['dim']}" for c in d["components"]))
        lines.append(f"h_plus + n: {d['certificate']['status']}")
        lines += [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in d["checks"].items()]
        out.write("\n".join(lines) + "\n")
    return 0 if T.ok else 1


COMMANDS = {
    "catalog": cmd_catalog,
    "validate": cmd_validate,
    "export": cmd_export,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg, out)
    except (UsageError, AlgebraSpecError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except SuperstrangeError as exc:
        sys.stderr.write(f"failed: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
