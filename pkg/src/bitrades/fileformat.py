"""Text format for signed pairs and codes.

::

    # optional comments
    n 2
    q 3
    + 00
    - 11

Words are ``n`` digits, contiguous when ``q <= 10`` and comma-separated
decimals otherwise. Canonical output lists the ``+`` block then the ``-``
block, each sorted lexicographically, with LF line endings. A code is
written as a pair with an empty ``-`` block.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Tuple, Union

from .checkers import Report, Verdict
from .hamming import Params, ParameterError, SignedPair, Vertex


class BitradeParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def format_word(x: Vertex, q: int) -> str:
    if q <= 10:
        return "".join(str(d) for d in x)
    return ",".join(str(d) for d in x)


def parse_word(text: str, params: Params) -> Vertex:
    if params.q <= 10:
        if not text or any(c not in "0123456789" for c in text):
            raise ValueError(f"bad word {text!r}")
        digits = [int(c) for c in text]
    else:
        try:
            digits = [int(c) for c in text.split(",")]
        except ValueError:
            raise ValueError(f"bad word {text!r}") from None
    if len(digits) != params.n:
        raise ValueError(f"word {text!r} has length {len(digits)}, expected {params.n}")
    for d in digits:
        if not 0 <= d < params.q:
            raise ValueError(f"digit {d} in {text!r} out of range for q={params.q}")
    return tuple(digits)


def parse_bitrade(text: str) -> Tuple[Params, SignedPair]:
    header = {}
    plus, minus = {}, {}
    params = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in ("n", "q"):
            if params is not None or key in header:
                raise BitradeParseError(lineno, f"unexpected header line {line!r}")
            try:
                header[key] = int(rest)
            except ValueError:
                raise BitradeParseError(lineno, f"bad integer in {line!r}") from None
            if len(header) == 2:
                if header["q"] < 3:
                    raise BitradeParseError(lineno, f"unsupported alphabet q={header['q']}")
                try:
                    params = Params(header["n"], header["q"])
                except ParameterError as e:
                    raise BitradeParseError(lineno, str(e)) from None
            continue
        if key not in ("+", "-"):
            raise BitradeParseError(lineno, f"unrecognised line {line!r}")
        if params is None:
            raise BitradeParseError(lineno, "word before the n/q header")
        try:
            word = parse_word(rest, params)
        except ValueError as e:
            raise BitradeParseError(lineno, str(e)) from None
        same, other = (plus, minus) if key == "+" else (minus, plus)
        if word in same:
            raise BitradeParseError(lineno, f"duplicate word {rest} (first on line {same[word]})")
        if word in other:
            raise BitradeParseError(lineno, f"word {rest} has both signs (also line {other[word]})")
        same[word] = lineno
    if params is None:
        raise BitradeParseError(0, "missing n/q header")
    return params, SignedPair(params, frozenset(plus), frozenset(minus))


def serialize_bitrade(params: Params, pair: SignedPair) -> str:
    lines = [f"n {params.n}", f"q {params.q}"]
    lines += [f"+ {format_word(w, params.q)}" for w in pair.sorted_plus()]
    lines += [f"- {format_word(w, params.q)}" for w in pair.sorted_minus()]
    return "\n".join(lines) + "\n"


def read_bitrade(path: Union[str, Path]) -> Tuple[Params, SignedPair]:
    return parse_bitrade(Path(path).read_text(encoding="utf-8"))


def write_bitrade(path: Union[str, Path], params: Params, pair: SignedPair) -> None:
    Path(path).write_bytes(serialize_bitrade(params, pair).encode("utf-8"))


def _verdict_dict(v: Verdict, q: int) -> dict:
    out = {"definition": v.definition, "status": v.status.value}
    if v.reason:
        out["reason"] = v.reason
    c = v.counterexample
    if c is not None:
        out["counterexample"] = {
            "vertex": format_word(c.vertex, q),
            "coord": c.coord,
            "description": c.description,
        }
    return out


def format_report(params: Params, pair: SignedPair, verdicts, agreement=None) -> str:
    """``key: value`` lines followed by a JSON block with the same verdicts."""
    if isinstance(verdicts, Report):
        agreement = verdicts.agreement
        verdicts = list(verdicts.verdicts.values())
    lines = [
        f"n: {params.n}",
        f"q: {params.q}",
        f"plus: {len(pair.plus)}",
        f"minus: {len(pair.minus)}",
    ]
    for v in verdicts:
        line = f"{v.definition}: {v.status.value}"
        c = v.counterexample
        if c is not None:
            where = format_word(c.vertex, params.q)
            if c.coord is not None:
                where += f" i={c.coord}"
            line += f" at {where} ({c.description})"
        lines.append(line)
    if agreement is not None:
        lines.append(f"agreement: {str(agreement).lower()}")
    block = {
        "n": params.n,
        "q": params.q,
        "verdicts": [_verdict_dict(v, params.q) for v in verdicts],
    }
    if agreement is not None:
        block["agreement"] = agreement
    lines.append("--- verdicts json ---")
    lines.append(json.dumps(block, sort_keys=True))
    return "\n".join(lines) + "\n"


__all__ = [
    "BitradeParseError",
    "format_word",
    "parse_word",
    "parse_bitrade",
    "serialize_bitrade",
    "read_bitrade",
    "write_bitrade",
    "format_report",
]
