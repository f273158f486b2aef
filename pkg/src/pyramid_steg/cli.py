"""Command-line front end.

Exit codes: 0 on success, 1 for usage or I/O problems, 2 for domain errors
(capacity overflow, bad frame, malformed WAV, invalid range table). Output
files are written atomically, so a failing command never leaves one behind.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from . import codec, metrics
from .errors import BadMagic, LengthMismatch, StegError, Truncated
from .range_policy import capacity_bits, default_table, load_table, usable_length
from .wav_io import HeaderMode, parse_wav

EXIT_OK = 0
EXIT_IO = 1
EXIT_DOMAIN = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def write_atomic(path, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _mode(args) -> HeaderMode:
    return HeaderMode.COMPAT44 if args.compat_44 else HeaderMode.RIFF_CHUNKS


def _table(args):
    if args.table is None:
        return default_table()
    if not os.path.isfile(args.table):
        raise UsageError(f"cannot read range table {args.table}")
    return load_table(args.table)


def _wav(path, args):
    return parse_wav(_read(path), _mode(args))


def cmd_embed(args) -> int:
    table = None if args.baseline else _table(args)
    cover = _wav(args.cover, args)
    secret = _read(args.secret)
    if args.baseline:
        available = codec.plain_capacity_bits(len(cover.data_bytes))
        stego = codec.embed_plain_lsb(cover, secret)
    else:
        available = capacity_bits(cover.data_bytes, table)
        stego = codec.embed(cover, secret, table)
    write_atomic(args.out, stego.prefix_bytes + stego.data_bytes + stego.suffix_bytes)
    used = codec.frame_bits(len(secret))
    print(f"embedded {len(secret)} bytes: {used} of {available} bits used "
          f"({100.0 * used / available:.2f} %)")
    return EXIT_OK


def cmd_extract(args) -> int:
    table = None if args.baseline else _table(args)
    stego = _wav(args.stego, args)
    if args.baseline:
        secret = codec.extract_plain_lsb(stego)
    else:
        secret = codec.extract(stego, table)
    write_atomic(args.out, secret)
    print(f"extracted {len(secret)} bytes")
    return EXIT_OK


def capacity_summary(raw: bytes, mode: HeaderMode, table, baseline: bool = False) -> dict:
    cover = parse_wav(raw, mode)
    if baseline:
        gross = codec.plain_capacity_bits(len(cover.data_bytes))
    else:
        gross = capacity_bits(cover.data_bytes, table)
    net = max(0, gross // 8 - codec.HEADER_LEN)
    return {
        "gross_bits": gross,
        "gross_bytes": gross // 8,
        "net_bytes": net,
        "frame_overhead_bytes": codec.HEADER_LEN,
        "usable_data_bytes": len(cover.data_bytes) if baseline else usable_length(len(cover.data_bytes)),
        "cover_file_bytes": len(raw),
        "net_percent": metrics.payload_percent(net, len(raw)),
    }


def cmd_capacity(args) -> int:
    table = None if args.baseline else _table(args)
    info = capacity_summary(_read(args.cover), _mode(args), table, args.baseline)
    print(f"capacity: {info['gross_bits']} bits gross ({info['gross_bytes']} bytes)")
    print(f"usable secret: {info['net_bytes']} bytes after "
          f"{info['frame_overhead_bytes']}-byte frame header")
    print(f"payload: {info['net_percent']:.2f} % of {info['cover_file_bytes']} byte cover")
    return EXIT_OK


def build_report(cover_raw: bytes, stego_raw: bytes, mode: HeaderMode, table,
                 baseline: bool = False, secret_bytes: int | None = None,
                 frame_len: int = metrics.DEFAULT_FRAME_LEN) -> metrics.QualityReport:
    """Library path behind ``analyze``.

    When ``secret_bytes`` is not given it is recovered by extracting from the
    stego file; a file without a valid frame counts as carrying nothing.
    """
    cover = parse_wav(cover_raw, mode)
    stego = parse_wav(stego_raw, mode)
    if len(cover.data_bytes) != len(stego.data_bytes):
        raise LengthMismatch(
            f"data regions differ in length: {len(cover.data_bytes)} vs {len(stego.data_bytes)}")
    if secret_bytes is None:
        try:
            secret = codec.extract_plain_lsb(stego) if baseline else codec.extract(stego, table)
            secret_bytes = len(secret)
        except (BadMagic, Truncated):
            secret_bytes = 0
    return metrics.analyze(cover, stego, secret_bytes, len(cover_raw), frame_len)


def cmd_analyze(args) -> int:
    table = None if args.baseline else _table(args)
    report = build_report(_read(args.cover), _read(args.stego), _mode(args), table,
                          args.baseline, args.secret_bytes, args.frame_len)
    write_atomic(args.report, report.to_json().encode("utf-8"))
    for line in report.summary_lines():
        print(line)
    return EXIT_OK


def histogram_output(raw: bytes, mode: HeaderMode, use_zcr: bool = False, is_raw: bool = False,
                     frame_len: int = metrics.DEFAULT_FRAME_LEN) -> str:
    if is_raw:
        data, bits = raw, 8
    else:
        audio = parse_wav(raw, mode)
        data, bits = audio.data_bytes, audio.bits_per_sample
    if use_zcr:
        return metrics.zcr_csv(metrics.zcr(metrics.centered_samples(data, bits), frame_len))
    return metrics.histogram_csv(metrics.amplitude_histogram(data))


def cmd_histogram(args) -> int:
    text = histogram_output(_read(args.input), _mode(args), args.zcr, args.raw, args.frame_len)
    write_atomic(args.out, text.encode("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pyramid-steg",
                     description="Hide files in PCM WAV audio with pyramid/range LSB embedding.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, table=True):
        p.add_argument("--compat-44", action="store_true",
                       help="treat the first 44 bytes as header instead of walking RIFF chunks")
        if table:
            p.add_argument("--table", help="range table file ('low high depth' per line)")
            p.add_argument("--baseline", action="store_true",
                           help="use classic sequential 1-bit LSB instead of the pyramid method")

    p = sub.add_parser("embed", help="hide a secret file in a cover WAV")
    p.add_argument("cover")
    p.add_argument("secret")
    p.add_argument("out")
    common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover a secret from a stego WAV")
    p.add_argument("stego")
    p.add_argument("out")
    common(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("capacity", help="report how much a cover can hold")
    p.add_argument("cover")
    common(p)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("analyze", help="write an MSE/PSNR/ZCR quality report")
    p.add_argument("cover")
    p.add_argument("stego")
    p.add_argument("report")
    p.add_argument("--secret-bytes", type=int, default=None,
                   help="secret size for the payload figure (default: extract it)")
    p.add_argument("--frame-len", type=int, default=metrics.DEFAULT_FRAME_LEN)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("histogram", help="write an amplitude histogram or ZCR CSV")
    p.add_argument("input")
    p.add_argument("out")
    p.add_argument("--zcr", action="store_true", help="emit per-frame zero-crossing rate instead")
    p.add_argument("--raw", action="store_true", help="treat input as raw 8-bit bytes, not WAV")
    p.add_argument("--frame-len", type=int, default=metrics.DEFAULT_FRAME_LEN)
    common(p, table=False)
    p.set_defaults(func=cmd_histogram)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except StegError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
