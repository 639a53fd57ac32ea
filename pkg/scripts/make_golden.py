"""Regenerate tests/data/golden_h64.bitrade from the hyperoval construction."""

import argparse
from pathlib import Path

from bitrades.checkers import Status, check_all
from bitrades.codes import shifted_bitrade
from bitrades.fileformat import write_bitrade

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden_h64.bitrade"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-o", "--output", type=Path, default=DEFAULT)
    ap.add_argument("--shift", default="1@1", help="a@i, translation e^a_i")
    args = ap.parse_args()
    a, i = (int(t) for t in args.shift.split("@"))
    pair = shifted_bitrade(4, a, i)
    assert check_all(pair).status is Status.PASS
    write_bitrade(args.output, pair.params, pair)
    print(f"wrote {args.output} ({len(pair.plus)} + {len(pair.minus)} words)")


if __name__ == "__main__":
    main()
