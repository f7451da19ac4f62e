"""Problem files and JSON output.

A problem file is a JSON object.  Rationals are strings (``"3/4"``) or
integers, never floats.  Index sets (``tau``, ``O``, triangulation
simplices) are 1-based on the wire and 0-based in memory.

    {
      "A": [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]],
      "w": ["0", "2", "1", "4"],
      "tau": [1, 2, 3],
      "omega": ["1", "0", "0", "0"],
      "x": ["0", "0", "0", "0"],
      "O": [1],
      "triangulation": [[1, 2, 3], [2, 3, 4]],
      "tips": {"q0": ["0", "0", "0", "0"], "max_iter": 100,
               "reparametrization": "auto"}
    }

``tips.reparametrization`` is ``"auto"`` or an explicit scaling matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ParseError
from .exact import as_rat, format_rat

KNOWN_FIELDS = {"A", "w", "tau", "omega", "x", "O", "triangulation", "tips"}


@dataclass
class TipsSettings:
    q0: tuple | None = None
    max_iter: int | None = None
    reparametrization: Any = "auto"


@dataclass
class Problem:
    A: tuple[tuple[int, ...], ...]
    w: tuple[Fraction, ...] | None = None
    tau: tuple[int, ...] | None = None
    omega: tuple[Fraction, ...] | None = None
    x: tuple[Fraction, ...] | None = None
    O: tuple[int, ...] | None = None
    triangulation: tuple[tuple[int, ...], ...] | None = None
    tips: TipsSettings = field(default_factory=TipsSettings)

    @property
    def n(self) -> int:
        return len(self.A[0])


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _rat(value, where):
    if isinstance(value, float):
        raise ParseError(f"{where}: floats are not allowed, write {value!r} as a string")
    try:
        return as_rat(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: invalid rational {value!r}") from None


def _list(value, where):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list, got {type(value).__name__}")
    return value


def _matrix(value, where):
    rows = _list(value, where)
    if not rows:
        raise ParseError(f"{where}: matrix is empty")
    out = []
    for r, row in enumerate(rows):
        row = _list(row, f"{where}[{r}]")
        out.append(tuple(_int(x, f"{where}[{r}][{c}]") for c, x in enumerate(row)))
    if len({len(r) for r in out}) != 1:
        raise ParseError(f"{where}: rows have different lengths")
    return tuple(out)


def _vector(value, where, n):
    items = _list(value, where)
    if len(items) != n:
        raise ParseError(f"{where}: expected {n} entries, got {len(items)}")
    return tuple(_rat(x, f"{where}[{i}]") for i, x in enumerate(items))


def _subset(value, where, n):
    items = _list(value, where)
    out = []
    for i, x in enumerate(items):
        x = _int(x, f"{where}[{i}]")
        if not 1 <= x <= n:
            raise ParseError(f"{where}[{i}]: index {x} outside 1..{n}")
        out.append(x - 1)
    if len(set(out)) != len(out):
        raise ParseError(f"{where}: repeated index")
    return tuple(sorted(out))


def parse_problem(data: dict) -> Problem:
    if not isinstance(data, dict):
        raise ParseError("problem file must contain a JSON object")
    unknown = set(data) - KNOWN_FIELDS
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if "A" not in data:
        raise ParseError("missing field 'A'")
    A = _matrix(data["A"], "A")
    n = len(A[0])
    p = Problem(A=A)
    if "w" in data:
        p.w = _vector(data["w"], "w", n)
    if "omega" in data:
        p.omega = _vector(data["omega"], "omega", n)
    if "x" in data:
        p.x = _vector(data["x"], "x", n)
    if "tau" in data:
        p.tau = _subset(data["tau"], "tau", n)
    if "O" in data:
        p.O = _subset(data["O"], "O", n)
    if "triangulation" in data:
        tri = _list(data["triangulation"], "triangulation")
        p.triangulation = tuple(
            _subset(s, f"triangulation[{i}]", n) for i, s in enumerate(tri)
        )
    if "tips" in data:
        t = data["tips"]
        if not isinstance(t, dict):
            raise ParseError("tips: expected an object")
        bad = set(t) - {"q0", "max_iter", "reparametrization"}
        if bad:
            raise ParseError(f"tips: unknown field(s): {', '.join(sorted(bad))}")
        settings = TipsSettings()
        if "q0" in t:
            settings.q0 = _vector(t["q0"], "tips.q0", n)
        if "max_iter" in t:
            settings.max_iter = _int(t["max_iter"], "tips.max_iter")
        if "reparametrization" in t:
            rep = t["reparametrization"]
            if rep != "auto":
                rep = _matrix(rep, "tips.reparametrization")
            settings.reparametrization = rep
        p.tips = settings
    return p


def loads_problem(text: str) -> Problem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_problem(data)


def load_problem(path) -> Problem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads_problem(text)


# ---------------------------------------------------------------------------
# output


def vec_out(v) -> list[str]:
    return [format_rat(x) for x in v]


def subset_out(s) -> list[int]:
    return [i + 1 for i in s]


def vec_in(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def subset_in(s) -> tuple[int, ...]:
    return tuple(i - 1 for i in s)


def _witness_out(tau, q, model, w):
    entry = {"tau": subset_out(tau)}
    if model is not None:
        from .affine import tau_operator

        apex = tau_operator(model, tau, w)
        entry["apex"] = vec_out(apex)
        entry["equality"] = subset_out(i for i, (a, b) in enumerate(zip(q, apex)) if a == b)
    return entry


def critical_points_out(result, model=None, w=None) -> dict:
    """JSON form of a critical point set.

    With ``model`` and ``w`` each witness basis also carries its apex
    ``w^(tau)`` and the columns where the point meets that apex.
    """
    return {
        "status": "complete" if result.complete else "partial",
        "complete": result.complete,
        "method": result.method,
        "total_multiplicity": result.total_multiplicity,
        "points": [
            {
                "q": vec_out(p.q),
                "multiplicity": p.multiplicity,
                "witnesses": [_witness_out(t, p.q, model, w) for t in p.witnesses],
            }
            for p in result.points
        ],
        "triangulation": (
            [subset_out(t) for t in result.triangulation.simplices]
            if result.triangulation is not None else None
        ),
    }


def critical_points_in(data: dict) -> list[tuple[tuple[Fraction, ...], int, tuple]]:
    """Read back the ``points`` of :func:`critical_points_out`."""
    return [
        (vec_in(p["q"]), p["multiplicity"],
         tuple(subset_in(t["tau"]) for t in p["witnesses"]))
        for p in data["points"]
    ]


def diagnostic_out(diagnostic) -> dict:
    return {
        "attempts": [
            {
                "weight": a.label,
                "order": subset_out(a.order),
                "simplices": [subset_out(t) for t in a.simplices],
                "failures": [
                    {
                        "tau": subset_out(f.tau),
                        "apex": vec_out(f.apex),
                        "violated": subset_out(f.violated),
                    }
                    for f in a.failures
                ],
            }
            for a in diagnostic.attempts
        ]
    }


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)
