"""JSON file formats.

Rationals are strings ``"p/q"`` (or ``"p"``); plain JSON integers are also
accepted on input, floats never.  Matrices are row-major nested lists and
tensors nest outermost axis first.  Indices are 0-based.

    algebra        {"dim": d, "bracket": [{"i", "j", "k", "c"}, ...]}
    representation {"dimV": n, "rhoL": [matrix, ...], "rhoR": [matrix, ...]}
    pair           {"R": matrix, "S": matrix}
    form           {"omega": matrix}
    dialgebra      {"dim": d, "left": [{"i", "j", "k", "c"}], "right": [...]}
    deformation    {"order": n, "coeffs": [[R, S], ...]}
    endomap        {"matrix": matrix}
    cochain        {"arity": n, "P": tensor, "Q": tensor}
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import BilinearForm, Dialgebra, LeibnizAlgebra, Representation
from .deformation import TruncatedDeformation
from .errors import InputError
from .exactla import QQ, Fp, format_scalar, mpq
from .mc import Cochain
from .rbs import RbsPair
from .report import CheckResult

__all__ = [
    "SCHEMA_VERSION", "load_json", "parse_algebra", "parse_rep", "parse_pair",
    "parse_form", "parse_dialgebra", "parse_deformation", "parse_endomap",
    "parse_cochain", "algebra_to_json", "rep_to_json", "pair_to_json",
    "form_to_json", "dialgebra_to_json", "deformation_to_json",
    "endomap_to_json", "cochain_to_json", "to_jsonable", "dumps",
]

SCHEMA_VERSION = "1"


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from exc


def _keys(obj, allowed: set, where: str):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise InputError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = allowed - set(obj)
    if missing:
        raise InputError(f"{where}: missing field(s) {sorted(missing)}")


def _count(x, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise InputError(f"{where}: expected a nonnegative integer, got {x!r}")
    return x


def _scalar(x, field, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{where}: expected a rational string, got {x!r}")
    try:
        return field(x)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _tensor(data, shape: tuple, field, where: str) -> np.ndarray:
    out = np.empty(shape, dtype=object)

    def walk(node, idx):
        depth = len(idx)
        if depth == len(shape):
            out[idx] = _scalar(node, field, f"{where}{list(idx)}")
            return
        if not isinstance(node, list) or len(node) != shape[depth]:
            raise InputError(f"{where}{list(idx)}: expected a list of length {shape[depth]}")
        for i, child in enumerate(node):
            walk(child, idx + (i,))

    walk(data, ())
    return out


def _entries(items, dim: int, field, where: str):
    if not isinstance(items, list):
        raise InputError(f"{where}: expected a list")
    out = []
    for n, e in enumerate(items):
        at = f"{where}[{n}]"
        _keys(e, {"i", "j", "k", "c"}, at)
        idx = []
        for key in "ijk":
            v = _count(e[key], f"{at}.{key}")
            if v >= dim:
                raise InputError(f"{at}.{key}: index {v} out of range for dimension {dim}")
            idx.append(v)
        out.append((*idx, _scalar(e["c"], field, f"{at}.c")))
    return out


def parse_algebra(obj, field=QQ, where="algebra") -> LeibnizAlgebra:
    _keys(obj, {"dim", "bracket"}, where)
    dim = _count(obj["dim"], f"{where}.dim")
    return LeibnizAlgebra.from_entries(dim, _entries(obj["bracket"], dim, field, f"{where}.bracket"), field)


def parse_rep(obj, dim_g: int, field=QQ, where="representation") -> Representation:
    _keys(obj, {"dimV", "rhoL", "rhoR"}, where)
    n = _count(obj["dimV"], f"{where}.dimV")
    rl = _tensor(obj["rhoL"], (dim_g, n, n), field, f"{where}.rhoL")
    rr = _tensor(obj["rhoR"], (dim_g, n, n), field, f"{where}.rhoR")
    return Representation(rl, rr)


def parse_pair(obj, shape: tuple, field=QQ, where="pair") -> RbsPair:
    _keys(obj, {"R", "S"}, where)
    return RbsPair(_tensor(obj["R"], shape, field, f"{where}.R"),
                   _tensor(obj["S"], shape, field, f"{where}.S"))


def parse_form(obj, dim: int, field=QQ, where="form") -> BilinearForm:
    _keys(obj, {"omega"}, where)
    return BilinearForm(_tensor(obj["omega"], (dim, dim), field, f"{where}.omega"))


def parse_dialgebra(obj, field=QQ, where="dialgebra") -> Dialgebra:
    _keys(obj, {"dim", "left", "right"}, where)
    dim = _count(obj["dim"], f"{where}.dim")
    return Dialgebra.from_entries(dim, _entries(obj["left"], dim, field, f"{where}.left"),
                                  _entries(obj["right"], dim, field, f"{where}.right"), field)


def parse_deformation(obj, shape: tuple, field=QQ, where="deformation") -> TruncatedDeformation:
    _keys(obj, {"order", "coeffs"}, where)
    order = _count(obj["order"], f"{where}.order")
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) != order + 1:
        raise InputError(f"{where}.coeffs: expected {order + 1} coefficient pairs")
    pairs = []
    for n, c in enumerate(coeffs):
        at = f"{where}.coeffs[{n}]"
        if not isinstance(c, list) or len(c) != 2:
            raise InputError(f"{at}: expected [R, S]")
        pairs.append(RbsPair(_tensor(c[0], shape, field, f"{at}[0]"),
                             _tensor(c[1], shape, field, f"{at}[1]")))
    return TruncatedDeformation(tuple(pairs))


def parse_endomap(obj, dim: int, field=QQ, where="endomap") -> np.ndarray:
    _keys(obj, {"matrix"}, where)
    return _tensor(obj["matrix"], (dim, dim), field, f"{where}.matrix")


def parse_cochain(obj, dim_g: int, dim_v: int, field=QQ, where="cochain") -> Cochain:
    """A cochain file, or a pair file read as an arity-1 cochain."""
    if isinstance(obj, dict) and set(obj) == {"R", "S"}:
        return Cochain.from_pair(parse_pair(obj, (dim_g, dim_v), field, where))
    _keys(obj, {"arity", "P", "Q"}, where)
    n = _count(obj["arity"], f"{where}.arity")
    if n < 1:
        raise InputError(f"{where}.arity: cochains start in arity 1")
    shape = (dim_v,) * n + (dim_g,)
    return Cochain(_tensor(obj["P"], shape, field, f"{where}.P"),
                   _tensor(obj["Q"], shape, field, f"{where}.Q"))


def _nested(a) -> list:
    return np.vectorize(format_scalar, otypes=[object])(np.asarray(a, dtype=object)).tolist() \
        if np.asarray(a).size else np.asarray(a).tolist()


def _entries_json(c) -> list:
    out = []
    for (i, j, k), x in np.ndenumerate(c):
        if x != 0:
            out.append({"c": format_scalar(x), "i": i, "j": j, "k": k})
    return out


def algebra_to_json(A: LeibnizAlgebra) -> dict:
    return {"bracket": _entries_json(A.c), "dim": A.dim}


def rep_to_json(rep: Representation) -> dict:
    return {"dimV": rep.dim_v, "rhoL": _nested(rep.rho_l), "rhoR": _nested(rep.rho_r)}


def pair_to_json(pair: RbsPair) -> dict:
    return {"R": _nested(pair.R), "S": _nested(pair.S)}


def form_to_json(form: BilinearForm) -> dict:
    return {"omega": _nested(form.omega)}


def dialgebra_to_json(D: Dialgebra) -> dict:
    return {"dim": D.dim, "left": _entries_json(D.left), "right": _entries_json(D.right)}


def deformation_to_json(dfm: TruncatedDeformation) -> dict:
    return {"coeffs": [[_nested(p.R), _nested(p.S)] for p in dfm.coeffs], "order": dfm.order}


def endomap_to_json(M) -> dict:
    return {"matrix": _nested(M)}


def cochain_to_json(c: Cochain) -> dict:
    return {"P": _nested(c.P), "Q": _nested(c.Q), "arity": c.arity}


def to_jsonable(x):
    """Recursively turn results into JSON-ready values with canonical scalars."""
    if isinstance(x, CheckResult):
        out = {"holds": x.holds, "witness": to_jsonable(x.witness)}
        out.update({k: to_jsonable(v) for k, v in x.data.items()})
        return out
    if isinstance(x, RbsPair):
        return pair_to_json(x)
    if isinstance(x, Cochain):
        return cochain_to_json(x)
    if isinstance(x, LeibnizAlgebra):
        return algebra_to_json(x)
    if isinstance(x, TruncatedDeformation):
        return deformation_to_json(x)
    if isinstance(x, np.ndarray):
        return _nested(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fp) or type(x) is type(mpq(0)):
        return format_scalar(x)
    if x is None or isinstance(x, str):
        return x
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    """Deterministic text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
