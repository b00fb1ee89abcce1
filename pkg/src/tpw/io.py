"""Loading and saving algebras and homs as canonical JSON.

Complex numbers are stored as two-element [re, im] arrays.  Saved files are
in canonical form (sorted keys, fixed float formatting), so loading and
re-saving a canonical file is byte-identical.
"""

from __future__ import annotations

import json

import numpy as np

from .characters import verify_character
from .core import FiniteAlgebra, validate_algebra
from .errors import CharacterRejected, ParseError, ShapeError, ValidationError
from .product import AlgebraHom, check_hom
from .report import dump_json

DEFAULT_TOL = 1e-9


def _parse_complex(value, where: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ParseError(f"{where}: complex values must be [re, im] pairs, got {value!r}")
    re, im = value
    if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
        raise ParseError(f"{where}: complex components must be numbers, got {value!r}")
    return complex(re, im)


def _parse_complex_array(value, shape: tuple[int, ...], where: str) -> np.ndarray:
    out = np.empty(shape, dtype=complex)
    flat = out.reshape(-1)

    def walk(node, index_prefix, depth):
        if depth == len(shape):
            flat[np.ravel_multi_index(index_prefix, shape)] = _parse_complex(
                node, f"{where}{list(index_prefix)}"
            )
            return
        if not isinstance(node, list) or len(node) != shape[depth]:
            raise ParseError(
                f"{where}{list(index_prefix)}: expected a list of length {shape[depth]}"
            )
        for i, child in enumerate(node):
            walk(child, index_prefix + (i,), depth + 1)

    walk(value, (), 0)
    return out


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _require(data: dict, key: str, path: str):
    if key not in data:
        raise ParseError(f"{path}: missing required field {key!r}")
    return data[key]


def algebra_from_dict(data: dict, where: str, tol: float = DEFAULT_TOL, validate: bool = True) -> FiniteAlgebra:
    name = _require(data, "name", where)
    dim = _require(data, "dim", where)
    basis = _require(data, "basis", where)
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"{where}: dim must be a positive integer")
    if not isinstance(basis, list) or len(basis) != dim:
        raise ParseError(f"{where}: basis must list exactly {dim} labels")
    structure = _parse_complex_array(_require(data, "structure", where), (dim, dim, dim), f"{where}: structure")
    weights = data.get("norm_weights")
    declared = [
        _parse_complex_array(f, (dim,), f"{where}: declared_characters[{k}]")
        for k, f in enumerate(data.get("declared_characters", []))
    ]
    try:
        alg = FiniteAlgebra(
            name=str(name),
            basis_labels=tuple(str(b) for b in basis),
            structure=structure,
            norm_weights=None if weights is None else np.asarray(weights, dtype=float),
            declared_characters=tuple(declared),
        )
    except (ShapeError, ValidationError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc

    if validate:
        report = validate_algebra(alg, tol)
        if not report.valid:
            raise ValidationError(
                f"{where}: structure tensor is not associative "
                f"(residual {report.associativity_residual:.3e} > {tol:.1e})"
            )
        for k, f in enumerate(alg.declared_characters):
            try:
                verify_character(alg, f, tol)
            except CharacterRejected as exc:
                raise ValidationError(
                    f"{where}: declared_characters[{k}] is not a character: {exc}"
                ) from exc
    return alg


def load_algebra(path: str, tol: float = DEFAULT_TOL, validate: bool = True) -> FiniteAlgebra:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top-level value must be an object")
    return algebra_from_dict(data, path, tol, validate)


def algebra_to_dict(alg: FiniteAlgebra) -> dict:
    data = {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.basis_labels),
        "structure": alg.structure,
        "norm_weights": [float(w) for w in alg.norm_weights],
    }
    if alg.declared_characters:
        data["declared_characters"] = list(alg.declared_characters)
    return data


def save_algebra(alg: FiniteAlgebra, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(algebra_to_dict(alg)))
        fh.write("\n")


def hom_from_dict(
    data: dict, registry: dict[str, FiniteAlgebra], where: str, tol: float = DEFAULT_TOL
) -> AlgebraHom:
    source_name = str(_require(data, "source", where))
    target_name = str(_require(data, "target", where))
    for nm in (source_name, target_name):
        if nm not in registry:
            raise ValidationError(f"{where}: references unknown algebra {nm!r}")
    source = registry[source_name]
    target = registry[target_name]
    matrix = _parse_complex_array(
        _require(data, "matrix", where), (target.dim, source.dim), f"{where}: matrix"
    )
    try:
        hom = AlgebraHom(source=source, target=target, matrix=matrix)
    except ShapeError as exc:
        raise ValidationError(f"{where}: {exc}") from exc
    report = check_hom(hom, tol)
    if not report.multiplicative:
        ca, cb, m = target.structure, source.structure, hom.matrix
        table = np.einsum("km,ijm->ijk", m, cb) - np.einsum("pi,qj,pqk->ijk", m, m, ca)
        flat = np.max(np.abs(table), axis=2)
        i, j = np.unravel_index(np.argmax(flat), flat.shape)
        raise ValidationError(
            f"{where}: map is not multiplicative on basis pair "
            f"({source.basis_labels[i]!r}, {source.basis_labels[j]!r}) "
            f"(residual {hom.mult_residual:.3e} > {tol:.1e})"
        )
    return hom


def load_hom(path: str, registry: dict[str, FiniteAlgebra], tol: float = DEFAULT_TOL) -> AlgebraHom:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top-level value must be an object")
    return hom_from_dict(data, registry, path, tol)


def hom_to_dict(hom: AlgebraHom) -> dict:
    return {"source": hom.source.name, "target": hom.target.name, "matrix": hom.matrix}


def save_hom(hom: AlgebraHom, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(hom_to_dict(hom)))
        fh.write("\n")
