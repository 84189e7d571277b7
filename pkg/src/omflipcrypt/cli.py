"""Command-line front end.

::

    omflipcrypt keygen  --in img.pgm --seed 42 --key img.key
    omflipcrypt encrypt --in img.pgm --key img.key --out img.omfc
    omflipcrypt decrypt --in img.omfc --key img.key --out back.pgm
    omflipcrypt analyze --in img.pgm --key img.key [--report metrics.csv]
    omflipcrypt selftest

Exit status: 0 success, 2 usage error, 3 I/O error, 4 validation or
decryption failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import OmflipCryptError
from .image_io import load_pgm, save_pgm
from .keyschedule import keygen, load_key, save_key
from .pipeline import CipherContainer, decrypt, encrypt
from .scramble import MASK64

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INVALID = 4


def parse_seed(text: str) -> int:
    try:
        value = int(text, 16) if text.lower().startswith("0x") else int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal or 0x-hex integer: {text!r}")
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omflipcrypt", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="derive a key file from an image and a seed")
    p.add_argument("--in", dest="input", required=True, help="input PGM image")
    p.add_argument("--seed", type=parse_seed, required=True, help="master seed (decimal or 0x-hex)")
    p.add_argument("--key", required=True, help="key file to write")

    p = sub.add_parser("encrypt", help="encrypt an image into a cipher container")
    p.add_argument("--in", dest="input", required=True, help="input PGM image")
    p.add_argument("--key", required=True)
    p.add_argument("--out", required=True, help="container file to write")

    p = sub.add_parser("decrypt", help="decrypt a cipher container into a PGM image")
    p.add_argument("--in", dest="input", required=True, help="input container")
    p.add_argument("--key", required=True)
    p.add_argument("--out", required=True, help="PGM image to write")

    p = sub.add_parser("analyze", help="entropy, correlation and key-sensitivity report")
    p.add_argument("--in", dest="input", required=True, help="input PGM image")
    p.add_argument("--key", required=True)
    p.add_argument("--report", help="write metric,plane,stage,value lines here")
    p.add_argument("--trials", type=int, default=20, help="key-sensitivity trials (default 20)")
    p.add_argument("--flips", type=int, default=3, help="control bits flipped per trial")
    p.add_argument("--seed", type=parse_seed, default=0, help="seed for the sensitivity trials")

    sub.add_parser("selftest", help="run the built-in invariant checks")
    return parser


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _write(path, data: bytes):
    with open(path, "wb") as fh:
        fh.write(data)


def _run(args) -> int:
    if args.command == "keygen":
        save_key(keygen(load_pgm(args.input), args.seed), args.key)
    elif args.command == "encrypt":
        container = encrypt(load_pgm(args.input), load_key(args.key))
        _write(args.out, container.to_bytes())
    elif args.command == "decrypt":
        container = CipherContainer.from_bytes(_read(args.input))
        save_pgm(decrypt(container, load_key(args.key)), args.out)
    elif args.command == "analyze":
        from .analysis import report

        rep = report(
            load_pgm(args.input), load_key(args.key),
            trials=args.trials, flip_count=args.flips, rng=args.seed,
        )
        print(rep.text())
        if args.report:
            _write(args.report, ("\n".join(rep.lines()) + "\n").encode())
    elif args.command == "selftest":
        from .selftest import run_selftest

        results = run_selftest()
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        return 0 if all(ok for _, ok, _ in results) else EXIT_INVALID
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except OSError as exc:
        print(f"omflipcrypt: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OmflipCryptError, ValueError) as exc:
        print(f"omflipcrypt: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
