"""Command-line front end.

Subcommands ``walls``, ``cones``, ``stab`` and ``classify-exceptional`` print
a canonical JSON report (sorted keys, exact numbers as integers or "p/q" and
"p/q + r/s*sqrt(m)" strings) and, for ``walls``, optionally an SVG diagram.

Exit codes: 0 success, 2 usage, 3 precondition failure, 4 undecided within
the search bound.
"""
from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import svg
from .atlas import (Codim0, Codim1, Frame, NoWallCertified, OnWallError, UndecidedUpTo,
                    WallFound, Window, default_bound, enumerate_walls, locate_chamber,
                    walls_exist)
from .charge import Circle, Line, PreconditionError, StabilityPoint
from .cones import (ConeRay, _wall_ray, boundary_rays, exceptional_data, hilbert_birational,
                    isotropic_with_pairing, markman_classify, movable_rays, nef_rays, trichotomy)
from .fm import FINITE, halfplane_fixed_points, pell_fundamental, stabilizer_generator
from .lattice import MukaiVector, SurfaceLattice, mukai_pairing
from .quadext import QuadExt, fraction_str

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_UNDECIDED = 0, 2, 3, 4


class UsageError(Exception):
    pass


# --- configuration ------------------------------------------------------------------

@dataclass
class JobConfig:
    n: Optional[int] = None
    gram: Optional[tuple] = None
    ample: Optional[tuple] = None
    v: Optional[tuple] = None
    window: Optional[tuple] = None  # (s_lo, s_hi, t_lo, t_hi), t not squared
    probe: Optional[tuple] = None  # (s, t)
    bound: Optional[int] = None
    classes: list = field(default_factory=list)
    require_primitive: bool = False
    format: str = "json"
    out: Optional[str] = None

    def lattice(self) -> SurfaceLattice:
        if self.gram is not None:
            ample = self.ample or tuple(int(i == 0) for i in range(len(self.gram)))
            return SurfaceLattice(self.gram, ample)
        if self.n is None:
            raise UsageError("give --n or --gram")
        return SurfaceLattice.rank_one(self.n)

    def vector(self, L: SurfaceLattice) -> MukaiVector:
        if self.v is None:
            raise UsageError("give --v")
        return _vector(self.v, L)

    def window_obj(self) -> Window:
        if self.window is None:
            raise UsageError("this command needs --window s_lo:s_hi,t_lo:t_hi")
        s_lo, s_hi, t_lo, t_hi = self.window
        try:
            return Window.from_t(s_lo, s_hi, t_lo, t_hi)
        except ValueError as exc:
            raise UsageError(f"malformed window: {exc}") from None


def _vector(entries: tuple, L: SurfaceLattice) -> MukaiVector:
    if len(entries) != L.rank + 2:
        raise UsageError(f"vector needs {L.rank + 2} integer entries")
    return MukaiVector(entries[0], tuple(entries[1:-1]), entries[-1])


def parse_ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_gram(text: str) -> tuple:
    return tuple(parse_ints(row) for row in text.split(";"))


def parse_window(text: str) -> tuple:
    """"s_lo:s_hi,t_lo:t_hi" with decimals or fractions, kept exact."""
    try:
        s_part, t_part = text.split(",")
        s_lo, s_hi = (Fraction(x) for x in s_part.split(":"))
        t_lo, t_hi = (Fraction(x) for x in t_part.split(":"))
    except ValueError:
        raise UsageError(f"malformed window {text!r}") from None
    return (s_lo, s_hi, t_lo, t_hi)


def parse_point(text: str) -> tuple:
    try:
        s, t = (Fraction(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"malformed point {text!r}") from None
    return (s, t)


_PARSERS = {
    "n": int, "gram": parse_gram, "ample": parse_ints, "v": parse_ints,
    "window": parse_window, "probe": parse_point, "bound": int,
    "format": str, "out": str,
}


def load_config(path: str) -> dict:
    """Read a ``[job]`` section of ``key = value`` lines."""
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise UsageError(f"cannot read config file {path}")
    if "job" not in cp:
        raise UsageError("config file needs a [job] section")
    out = {}
    for key, raw in cp["job"].items():
        key = key.replace("-", "_")
        if key == "classes":
            out[key] = [parse_ints(c) for c in raw.split("|") if c.strip()]
        elif key == "require_primitive":
            out[key] = cp["job"].getboolean(key)
        elif key in _PARSERS:
            out[key] = _PARSERS[key](raw.strip())
        else:
            raise UsageError(f"unknown config key {key!r}")
    return out


def build_config(args: argparse.Namespace) -> JobConfig:
    values = load_config(args.config) if args.config else {}
    for key in ("n", "gram", "ample", "v", "window", "probe", "bound", "format", "out"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = _PARSERS[key](flag) if isinstance(flag, str) and key not in ("format", "out") else flag
    if getattr(args, "e", None):
        values["classes"] = [parse_ints(c) for c in args.e]
    if args.require_primitive:
        values["require_primitive"] = True
    cfg = JobConfig(**values)
    if cfg.format not in ("json", "svg", "both"):
        raise UsageError("--format must be json, svg or both")
    return cfg


# --- exact serialization -------------------------------------------------------------

def num(x):
    if isinstance(x, QuadExt):
        return str(x)
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else fraction_str(x)


def vec(w) -> list:
    if w is None:
        return None
    if isinstance(w, MukaiVector):
        w = w.entries()
    return [num(x) for x in w]


def geometry_json(geom) -> dict:
    if isinstance(geom, Line):
        return {"type": "line", "s": num(geom.s0)}
    if isinstance(geom, Circle):
        return {"type": "circle", "center": num(geom.center), "radius2": num(geom.radius2)}
    return {"type": "empty"}


def codim_json(codim) -> dict:
    if isinstance(codim, Codim0):
        return {"codim": "0", "classes": [vec(codim.v1), vec(codim.v2)]}
    if isinstance(codim, Codim1):
        return {"codim": "1", "classes": [vec(codim.v1)]}
    return {"codim": "higher", "classes": []}


def ray_json(ray: ConeRay) -> dict:
    return {"class": vec(ray.cls), "kind": ray.kind,
            "lambda": None if ray.lam is None else num(ray.lam)}


def status_json(res) -> dict:
    if isinstance(res, NoWallCertified):
        return {"status": "NoWallCertified", "reason": res.reason}
    if isinstance(res, WallFound):
        return {"status": "WallFound", "witness": vec(res.witness)}
    return {"status": "UndecidedUpTo", "bound": res.bound}


@dataclass
class AtlasReport:
    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2, ensure_ascii=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AtlasReport":
        return cls(json.loads(text))


def _guard(fn):
    """Run fn, turning a precondition failure into an error record."""
    try:
        return fn()
    except (PreconditionError, ValueError) as exc:
        return {"error": str(exc)}


def _input_echo(cfg: JobConfig, L: SurfaceLattice, v: MukaiVector) -> dict:
    echo = {"gram": [list(r) for r in L.gram], "ample": list(L.ample), "v": vec(v),
            "square": mukai_pairing(v, v, L)}
    if L.rank == 1:
        echo["n"] = L.n
    if cfg.window is not None:
        s_lo, s_hi, t_lo, t_hi = cfg.window
        echo["window"] = {"s": [num(s_lo), num(s_hi)], "t": [num(t_lo), num(t_hi)],
                          "t2": [num(t_lo * t_lo), num(t_hi * t_hi)]}
    return echo


def _default_probe(v: MukaiVector) -> StabilityPoint:
    # a large-volume point away from the vertical line s = d/r
    s = Fraction(v.d, v.r) + Fraction(1, 3 * abs(v.r)) if v.r else Fraction(1, 3)
    return StabilityPoint(s, Fraction(10 ** 4))


def _probe(cfg: JobConfig, fallback: StabilityPoint) -> StabilityPoint:
    if cfg.probe is None:
        return fallback
    s, t = cfg.probe
    return StabilityPoint(s, t * t)


def _chamber_json(v, p, L) -> dict:
    out = {"probe": {"s": num(p.s), "t2": num(p.t2)}}
    try:
        ch = locate_chamber(v, p, L)
    except OnWallError as exc:
        out["on_wall"] = list(exc.pqr)
        return out
    for name, side in (("left", ch.left), ("right", ch.right)):
        if hasattr(side, "pqr"):
            out[name] = {"pqr": list(side.pqr), "witness": vec(side.witness), "ray": vec(side.ray)}
        else:
            out[name] = {"boundary": side.side}
    return out


# --- commands -----------------------------------------------------------------------

def cmd_walls(cfg: JobConfig):
    L = cfg.lattice()
    v = cfg.vector(L)
    win = cfg.window_obj()
    frame = Frame(v, L)
    walls = enumerate_walls(v, win, L)
    keyed = []
    for w in walls:
        if v.r != 0:
            ray = frame.ray_of_eta(_eta(frame, w))
            key = _wall_ray(frame, w.pqr, ray).lam
        else:
            key = QuadExt(w.geometry.radius2)
        keyed.append((key, w))
    keyed.sort(key=lambda kw: (kw[0], kw[1].pqr))
    wall_list = []
    for key, w in sorted(keyed, key=lambda kw: kw[1].pqr):
        entry = {"pqr": list(w.pqr), "geometry": geometry_json(w.geometry),
                 "witnesses": [vec(x) for x in w.witnesses], "order_key": num(key)}
        entry.update(codim_json(w.codim))
        wall_list.append(entry)
    order = [list(w.pqr) for _, w in keyed]
    chambers = [{"left": a, "right": b} for a, b in zip([None] + order, order + [None])]
    bound = cfg.bound if cfg.bound is not None else default_bound(v, L)
    exist = walls_exist(v, L, bound=bound)
    report = {
        "command": "walls",
        "input": _input_echo(cfg, L, v),
        "walls": wall_list,
        "chambers": {"order": order, "adjacency": chambers,
                     "probe": _chamber_json(v, _probe(cfg, win.center()), L)},
        "certificates": {"walls_exist": status_json(exist)},
        "conventions": {"orientation": "pairing with (0, r H, (H, c1)); limit convention for r = 0",
                        "order_key": "leaf parameter lambda (r != 0) or radius^2 about a/(2nd) (r = 0)"},
    }
    t_lo, t_hi = cfg.window[2], cfg.window[3]
    marks = []
    if v.r != 0:
        b = boundary_rays(v, L)
        marks = [("s-", b.s_minus), ("d/r", Fraction(v.d, v.r)), ("s+", b.s_plus)]
    picture = svg.render(walls, win, t_lo, t_hi, marks, title=f"walls of {v}")
    code = EXIT_UNDECIDED if isinstance(exist, UndecidedUpTo) else EXIT_OK
    return AtlasReport(report), picture, code


def _eta(frame: Frame, w) -> tuple:
    v1 = w.witnesses[0]
    k = mukai_pairing(frame.v, v1, frame.L)
    return tuple(frame.V * x - k * y for x, y in zip(v1.entries(), frame.vt))


def cmd_cones(cfg: JobConfig):
    L = cfg.lattice()
    v = cfg.vector(L)
    p = _probe(cfg, _default_probe(v))

    def boundary():
        b = boundary_rays(v, L)
        return {"s_minus": num(b.s_minus), "s_plus": num(b.s_plus), "rational": b.rational,
                "lagrangian": [vec(x) for x in b.lagrangian],
                "rays": [ray_json(b.minus), ray_json(b.plus)]}

    def tri():
        t = trichotomy(v, L)
        return {"case": t.case, "min_pairing": t.min_pairing if t.min_pairing < 3 else ">=3",
                "certificate": t.certificate, "witness": vec(t.witness)}

    def movable():
        m = movable_rays(v, p, L)
        return [{"kind": s.kind, "ray": ray_json(s.ray), "isotropic": vec(s.isotropic)}
                for s in (m.minus, m.plus)]

    def nef():
        m = nef_rays(v, p, L)
        return [ray_json(m.minus), ray_json(m.plus)]

    def hilb():
        h = hilbert_birational(v, L)
        return {"answer": h.answer, "witness": None if h.witness is None else list(h.witness),
                "isotropic": vec(h.isotropic)}

    def isotropic():
        out = {}
        for k in (0, 1, 2):
            res = isotropic_with_pairing(v, k, L, bound=cfg.bound or 20)
            out[str(k)] = {"exists": res.exists, "witness": vec(res.witness),
                           "classes": [vec(c) for c in res.classes[:10]]}
        return out

    report = {
        "command": "cones",
        "input": _input_echo(cfg, L, v),
        "probe": {"s": num(p.s), "t2": num(p.t2)},
        "cones": {"boundary": _guard(boundary), "trichotomy": _guard(tri),
                  "movable": _guard(movable), "nef": _guard(nef),
                  "isotropic": _guard(isotropic)},
        "certificates": {"hilbert_birational": _guard(hilb), "stabilizer": _guard(lambda: _stab(v, L))},
    }
    return AtlasReport(report), None, EXIT_OK


def _stab(v: MukaiVector, L: SurfaceLattice) -> dict:
    g = stabilizer_generator(v, L)
    ell = mukai_pairing(v, v, L) // 2
    if g == FINITE:
        return {"generator": "finite", "pell": None, "fixed_points": []}
    sol = pell_fundamental(L.n * ell, 1)
    return {"generator": g.matrix_str(), "epsilon": g.epsilon,
            "pell": {"D": L.n * ell, "x": sol.x, "y": sol.y},
            "fixed_points": [num(x) for x in halfplane_fixed_points(g)]}


def cmd_stab(cfg: JobConfig):
    L = cfg.lattice()
    v = cfg.vector(L)
    report = {"command": "stab", "input": _input_echo(cfg, L, v), "stabilizer": _stab(v, L)}
    return AtlasReport(report), None, EXIT_OK


def cmd_classify(cfg: JobConfig):
    L = cfg.lattice()
    v = cfg.vector(L)
    classes = [(_vector(c, L), None) for c in cfg.classes]
    if not classes:
        for k in (1, 2):
            res = isotropic_with_pairing(v, k, L, bound=cfg.bound or 12)
            if res.witness is not None:
                classes.append((exceptional_data(v, res.witness, L).d_u, res.witness))
    out = []
    for e, u in classes:
        def one(e=e):
            m = markman_classify(e, v, L)
            return {"div": m.div, "rho": m.rho, "sigma": m.sigma, "rs": list(m.rs),
                    "spe": m.spe, "case": m.case}
        entry = {"e": vec(e), "from_isotropic": vec(u)}
        entry.update(_guard(one))
        out.append(entry)
    report = {"command": "classify-exceptional", "input": _input_echo(cfg, L, v),
              "classifications": out}
    return AtlasReport(report), None, EXIT_OK


COMMANDS = {"walls": cmd_walls, "cones": cmd_cones, "stab": cmd_stab,
            "classify-exceptional": cmd_classify}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mukaiwalls", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="file with a [job] section of key = value lines")
        p.add_argument("--n", type=int, help="(H^2)/2 on a Picard-rank-one surface")
        p.add_argument("--gram", help="Gram matrix rows separated by ';', e.g. '0,1;1,0'")
        p.add_argument("--ample", help="ample class coordinates, e.g. '1,1'")
        p.add_argument("--v", help="Mukai vector r,d,a (rank one) or r,c1...,a")
        p.add_argument("--window", help="s_lo:s_hi,t_lo:t_hi (t is squared internally)")
        p.add_argument("--probe", help="s,t of the probe point")
        p.add_argument("--bound", type=int, help="search bound (default from MUKAIWALLS_BOUND)")
        p.add_argument("--format", choices=("json", "svg", "both"))
        p.add_argument("--out", help="output path; with --format both the SVG goes next to it")
        p.add_argument("--require-primitive", action="store_true")
        if name == "classify-exceptional":
            p.add_argument("--e", action="append", help="class r,d,a to classify (repeatable)")
    return parser


def _write(cfg: JobConfig, report: AtlasReport, picture: Optional[str]) -> None:
    if cfg.format in ("svg", "both") and picture is None:
        raise UsageError("SVG output is available for the walls command only")
    if cfg.format == "both" and not cfg.out:
        raise UsageError("--format both needs --out")
    if cfg.out:
        path = Path(cfg.out)
        if cfg.format in ("json", "both"):
            path.write_text(report.to_json())
        if cfg.format == "svg":
            path.write_text(picture)
        elif cfg.format == "both":
            path.with_suffix(".svg").write_text(picture)
    else:
        sys.stdout.write(report.to_json() if cfg.format == "json" else picture)


_VALUE_FLAGS = {"--v", "--window", "--probe", "--gram", "--ample", "--e"}


def _join_values(argv: list) -> list:
    """Attach values such as '-2.2:3.2,0.1:2' to their flag so argparse
    does not take them for options."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = make_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_values(argv))
    try:
        cfg = build_config(args)
        if cfg.require_primitive:
            L = cfg.lattice()
            if cfg.vector(L).content() != 1:
                raise PreconditionError("v is not primitive")
        report, picture, code = COMMANDS[args.command](cfg)
        _write(cfg, report, picture)
        return code
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mukaiwalls: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, ValueError) as exc:
        print(f"mukaiwalls: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
