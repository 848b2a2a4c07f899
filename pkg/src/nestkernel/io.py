"""JSON encodings for scalars, matrices, subspaces, lattices and problem files.

Scalars are strings ``"p/q"`` or ``"p/q+r/si"`` (integers may also be given
as JSON numbers on input).  Matrices are arrays of rows.  Nests and lattices
use either ``{"type": "coordinate", "dims": [...]}`` or
``{"type": "explicit", "subspaces": [[row, ...], ...]}``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .errors import DimensionMismatch, LatticeError
from .lattice import Nest, SubspaceLattice
from .linalg import Matrix, Subspace, Vector
from .scalars import FIELDS, format_scalar, parse_scalar


class ProblemError(ValueError):
    """Malformed or inconsistent problem file."""


def scalar_to_json(s) -> str:
    return format_scalar(s)


def vector_to_json(v) -> list[str]:
    return [format_scalar(a) for a in v]


def matrix_to_json(M: Matrix) -> list[list[str]]:
    return [vector_to_json(r) for r in M.rows]


def subspace_to_json(S: Subspace) -> dict:
    return {"dim": S.dim, "basis": [vector_to_json(r) for r in S.basis]}


def pair_to_json(pair) -> dict:
    return {"p": subspace_to_json(pair.p), "q": subspace_to_json(pair.q)}


def parse_vector(obj, field: str, n: int | None = None) -> Vector:
    if not isinstance(obj, list):
        raise ProblemError(f"expected a list of scalars, got {obj!r}")
    try:
        v = tuple(parse_scalar(a, field) for a in obj)
    except ValueError as exc:
        raise ProblemError(str(exc)) from None
    if n is not None and len(v) != n:
        raise DimensionMismatch(f"vector of length {len(v)} where {n} was expected")
    return v


def parse_matrix(obj, field: str) -> Matrix:
    if not isinstance(obj, list) or not obj:
        raise ProblemError("a matrix must be a non-empty list of rows")
    rows = [parse_vector(r, field) for r in obj]
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ProblemError("ragged matrix rows")
    return Matrix(rows, ncols)


def parse_lattice(obj, n: int, field: str, nest: bool) -> SubspaceLattice:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ProblemError("a lattice must be an object with a 'type'")
    kind = obj["type"]
    if kind == "coordinate":
        dims = obj.get("dims")
        if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
            raise ProblemError("coordinate lattice needs integer 'dims'")
        if any(d < 0 or d > n for d in dims):
            raise DimensionMismatch(f"coordinate dims {dims} out of range for dimension {n}")
        return Nest.coordinate(n, dims)
    if kind == "explicit":
        subs = obj.get("subspaces")
        if not isinstance(subs, list):
            raise ProblemError("explicit lattice needs 'subspaces'")
        elems = [Subspace.span([parse_vector(r, field, n) for r in rows], n) for rows in subs]
        # 0 and I are implicit members
        elems += [Subspace.zero(n), Subspace.full(n)]
        try:
            return Nest(elems, n) if nest else SubspaceLattice(elems, n)
        except LatticeError as exc:
            raise ProblemError(str(exc)) from None
    raise ProblemError(f"unknown lattice type {kind!r}")


def lattice_to_json(L: SubspaceLattice) -> dict:
    return {"type": "explicit", "subspaces": [[vector_to_json(r) for r in S.basis] for S in L]}


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


@dataclass
class ProblemFile:
    field: str
    raw: dict
    matrix: Matrix | None = None
    lattice: SubspaceLattice | None = None
    is_nest: bool = False
    generators: list = field(default_factory=list)
    module_basis: list | None = None
    seed: int | None = None
    samples: int | None = None

    @property
    def dim(self) -> int | None:
        if self.matrix is not None:
            return self.matrix.nrows
        if self.generators:
            return self.generators[0].nrows
        return self.raw.get("dim")


def load_problem(raw: dict, field_override: str | None = None) -> ProblemFile:
    if not isinstance(raw, dict):
        raise ProblemError("problem file must be a JSON object")
    fld = field_override or raw.get("field", "Q")
    if fld not in FIELDS:
        raise ProblemError(f"unknown field {fld!r}")
    prob = ProblemFile(field=fld, raw=raw)
    if "matrix" in raw:
        prob.matrix = parse_matrix(raw["matrix"], fld)
        if not prob.matrix.is_square:
            raise DimensionMismatch(f"operator must be square, got {prob.matrix.shape}")
    prob.generators = [parse_matrix(g, fld) for g in raw.get("generators", [])]
    if "module_basis" in raw:
        prob.module_basis = [parse_matrix(g, fld) for g in raw["module_basis"]]
    n = prob.dim
    for g in prob.generators + (prob.module_basis or []):
        if g.shape != (n, n):
            raise DimensionMismatch(f"matrix of shape {g.shape} where {(n, n)} was expected")
    if "nest" in raw and "lattice" in raw:
        raise ProblemError("give either 'nest' or 'lattice', not both")
    key = "nest" if "nest" in raw else "lattice" if "lattice" in raw else None
    if key is not None:
        if n is None:
            raise ProblemError("cannot infer the dimension of the lattice; add 'dim'")
        prob.lattice = parse_lattice(raw[key], n, fld, nest=key == "nest")
        prob.is_nest = isinstance(prob.lattice, Nest)
    for name in ("seed", "samples"):
        if name in raw:
            if not isinstance(raw[name], int) or isinstance(raw[name], bool) or raw[name] < 0:
                raise ProblemError(f"'{name}' must be a non-negative integer")
            setattr(prob, name, raw[name])
    return prob
