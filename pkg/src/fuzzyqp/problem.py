"""Fuzzy and crisp QP instances, validation, and the JSON problem format.

A problem file is a UTF-8 JSON document::

    {
      "name": "optional label",
      "n": 2, "m": 2,
      "c": [[a1, a2, a3], ...],          # n triples
      "Q": [[[...], ...], ...],          # n rows of n triples, symmetric
      "A": [[[...], ...], ...],          # m rows of n triples
      "b": [[a1, a2, a3], ...]           # m triples
    }

The objective carries an explicit 1/2 on the quadratic term: at each
level endpoint it reads  c'x + (1/2) x'Qx  with x >= 0 and Ax <= b.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .fuzzy import TriangularFuzzyNumber

SYMMETRY_TOL = 1e-12


class ProblemError(Exception):
    """Base class for problem-file and problem-data errors."""


class ParseError(ProblemError):
    """Malformed problem text (bad JSON, wrong field type, bad triple)."""


class StructureError(ProblemError):
    """Well-formed fields whose dimensions disagree."""


class ValidationError(ProblemError):
    """Problem data violating a model invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


TfnRow = tuple[TriangularFuzzyNumber, ...]


@dataclass(frozen=True)
class FuzzyQP:
    """Minimization QP whose every coefficient is a triangular fuzzy number.

    c holds the n cost triples, Q the symmetric n x n quadratic triples,
    A the m x n constraint triples and b the m right-hand sides.
    """

    c: TfnRow
    Q: tuple[TfnRow, ...]
    A: tuple[TfnRow, ...]
    b: TfnRow
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "Q", tuple(tuple(row) for row in self.Q))
        object.__setattr__(self, "A", tuple(tuple(row) for row in self.A))
        object.__setattr__(self, "b", tuple(self.b))

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def m(self) -> int:
        return len(self.b)

    def symmetrized(self) -> "FuzzyQP":
        """Replace Q by (Q + Q') / 2, averaged component-wise per triple."""
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                p, q = self.Q[i][j], self.Q[j][i]
                row.append(
                    TriangularFuzzyNumber(
                        0.5 * (p.a1 + q.a1), 0.5 * (p.a2 + q.a2), 0.5 * (p.a3 + q.a3)
                    )
                )
            rows.append(tuple(row))
        return FuzzyQP(self.c, tuple(rows), self.A, self.b, self.name)


@dataclass(frozen=True)
class CrispQP:
    """One crisp instance: minimize c'x + (1/2) x'Qx s.t. Ax <= b, x >= 0."""

    c: np.ndarray
    Q: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        Q = np.asarray(self.Q, dtype=float)
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        n = c.shape[0]
        if Q.shape != (n, n):
            raise ValueError(f"Q must be {n}x{n}, got {Q.shape}")
        if A.ndim != 2 or A.shape[1] != n:
            raise ValueError(f"A must have {n} columns, got {A.shape}")
        if b.shape != (A.shape[0],):
            raise ValueError(f"b must have length {A.shape[0]}, got {b.shape}")
        if Q.size and np.max(np.abs(Q - Q.T)) > SYMMETRY_TOL:
            raise ValueError("Q is not symmetric within 1e-12")
        for arr, name in ((c, "c"), (Q, "Q"), (A, "A"), (b, "b")):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.c.shape[0]

    @property
    def m(self) -> int:
        return self.A.shape[0]


def _triple_fields(doc_or_problem):
    """Yield (label, raw triple) for every coefficient of a problem or document."""
    if isinstance(doc_or_problem, FuzzyQP):
        p = doc_or_problem
        as_triple = lambda t: (t.a1, t.a2, t.a3)
        c = [as_triple(t) for t in p.c]
        Q = [[as_triple(t) for t in row] for row in p.Q]
        A = [[as_triple(t) for t in row] for row in p.A]
        b = [as_triple(t) for t in p.b]
    else:
        doc = doc_or_problem
        c, Q, A, b = doc["c"], doc["Q"], doc["A"], doc["b"]
    for j, t in enumerate(c):
        yield f"c[{j}]", t
    for i, row in enumerate(Q):
        for j, t in enumerate(row):
            yield f"Q[{i}][{j}]", t
    for i, row in enumerate(A):
        for j, t in enumerate(row):
            yield f"A[{i}][{j}]", t
    for i, t in enumerate(b):
        yield f"b[{i}]", t


def validate(problem) -> list[str]:
    """Collect invariant violations; empty means the problem is valid.

    Accepts either a FuzzyQP or a raw problem document (mapping with keys
    n, m, c, Q, A, b), so that data a typed constructor would reject --
    e.g. a reversed triple -- can still be diagnosed by name.
    """
    violations = []
    if isinstance(problem, FuzzyQP):
        n, m = problem.n, problem.m
        Q = problem.Q
        q_triple = lambda i, j: (Q[i][j].a1, Q[i][j].a2, Q[i][j].a3)
        sizes = (len(problem.c), [len(r) for r in Q], [len(r) for r in problem.A], m)
    else:
        doc = problem
        n, m = doc["n"], doc["m"]
        Q = doc["Q"]
        q_triple = lambda i, j: tuple(Q[i][j])
        sizes = (len(doc["c"]), [len(r) for r in Q], [len(r) for r in doc["A"]], len(doc["b"]))
    if n < 1:
        violations.append(f"n must be >= 1, got {n}")
    if m < 1:
        violations.append(f"m must be >= 1, got {m}")
    c_len, q_lens, a_lens, b_len = sizes
    if c_len != n or len(q_lens) != n or any(l != n for l in q_lens):
        violations.append("c/Q dimensions disagree with n")
    if len(a_lens) != m or any(l != n for l in a_lens) or b_len != m:
        violations.append("A/b dimensions disagree with n and m")
    if violations:
        return violations

    for label, t in _triple_fields(problem):
        if len(t) != 3:
            violations.append(f"{label} is not a triple: {t!r}")
            continue
        a1, a2, a3 = t
        if not a1 <= a2 <= a3:
            violations.append(f"{label} out of order: ({a1}, {a2}, {a3})")
    for i in range(n):
        for j in range(i + 1, n):
            if q_triple(i, j) != q_triple(j, i):
                violations.append(
                    f"Q[{i}][{j}] != Q[{j}][{i}]: {q_triple(i, j)} vs {q_triple(j, i)}"
                )
    return violations


def _as_triple(raw, label: str) -> tuple[float, float, float]:
    if not isinstance(raw, (list, tuple)) or len(raw) != 3:
        raise ParseError(f"{label}: expected a [a1, a2, a3] triple, got {raw!r}")
    out = []
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"{label}: non-numeric entry {v!r}")
        v = float(v)
        if not np.isfinite(v):
            raise ParseError(f"{label}: non-finite entry {v!r}")
        out.append(v)
    return tuple(out)


def parse_problem(text: str, symmetrize: bool = False) -> FuzzyQP:
    """Parse a problem document, raising the most specific error that applies.

    Bad JSON or malformed fields raise ParseError, dimension mismatches
    StructureError, and invariant violations ValidationError.  With
    symmetrize, Q is replaced by its component-wise (Q + Q') / 2 before
    validation, so an asymmetric but otherwise sound file loads.
    """
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")

    for key in ("n", "m", "c", "Q", "A", "b"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}")
    unknown = set(doc) - {"name", "n", "m", "c", "Q", "A", "b"}
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    n, m = doc["n"], doc["m"]
    for key, value in (("n", n), ("m", m)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"{key} must be an integer, got {value!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError(f"name must be a string, got {name!r}")
    for key, depth in (("c", 1), ("Q", 2), ("A", 2), ("b", 1)):
        if not isinstance(doc[key], list):
            raise ParseError(f"{key} must be an array")
        if depth == 2 and not all(isinstance(row, list) for row in doc[key]):
            raise ParseError(f"{key} must be an array of arrays")

    if n < 1 or m < 1:
        raise StructureError(f"n and m must be >= 1, got n={n}, m={m}")
    if len(doc["c"]) != n:
        raise StructureError(f"c has {len(doc['c'])} entries, expected n={n}")
    if len(doc["Q"]) != n or any(len(row) != n for row in doc["Q"]):
        raise StructureError(f"Q must be {n}x{n} triples")
    if len(doc["A"]) != m or any(len(row) != n for row in doc["A"]):
        raise StructureError(f"A must be {m}x{n} triples")
    if len(doc["b"]) != m:
        raise StructureError(f"b has {len(doc['b'])} entries, expected m={m}")

    triples = {label: _as_triple(raw, label) for label, raw in _triple_fields(doc)}
    checked = dict(doc)
    checked["c"] = [triples[f"c[{j}]"] for j in range(n)]
    checked["Q"] = [[triples[f"Q[{i}][{j}]"] for j in range(n)] for i in range(n)]
    checked["A"] = [[triples[f"A[{i}][{j}]"] for j in range(n)] for i in range(m)]
    checked["b"] = [triples[f"b[{i}]"] for i in range(m)]
    if symmetrize:
        Q = checked["Q"]
        checked["Q"] = [
            [
                tuple(0.5 * (p + q) for p, q in zip(Q[i][j], Q[j][i]))
                for j in range(n)
            ]
            for i in range(n)
        ]
    violations = validate(checked)
    if violations:
        raise ValidationError(violations)

    tfn = TriangularFuzzyNumber
    return FuzzyQP(
        c=tuple(tfn(*t) for t in checked["c"]),
        Q=tuple(tuple(tfn(*t) for t in row) for row in checked["Q"]),
        A=tuple(tuple(tfn(*t) for t in row) for row in checked["A"]),
        b=tuple(tfn(*t) for t in checked["b"]),
        name=name if name else None,
    )


def _reject_constant(token):
    raise ParseError(f"non-finite number {token!r} is not allowed")


def serialize_problem(p: FuzzyQP) -> str:
    """Canonical text form: sorted keys one per line, floats in repr form
    (shortest round-trip decimals).

    parse_problem(serialize_problem(p)) reconstructs p exactly; an empty
    or missing name is omitted.
    """
    as_triple = lambda t: [t.a1, t.a2, t.a3]
    doc = {
        "n": p.n,
        "m": p.m,
        "c": [as_triple(t) for t in p.c],
        "Q": [[as_triple(t) for t in row] for row in p.Q],
        "A": [[as_triple(t) for t in row] for row in p.A],
        "b": [as_triple(t) for t in p.b],
    }
    if p.name:
        doc["name"] = p.name
    items = sorted(doc.items())
    lines = ["{"]
    for i, (key, value) in enumerate(items):
        comma = "," if i < len(items) - 1 else ""
        lines.append(f'  "{key}": {json.dumps(value)}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"
