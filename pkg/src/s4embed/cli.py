"""Command-line front end: parse a manifold expression, run the
obstruction report, emit text or byte-stable JSON.

Grammar::

    expr     := lens_sum | seifert | pretzel
    lens_sum := lens(p,q) { '+' lens(p,q) }
    seifert  := seifert(BASE ; r ; (a1,b1), (a2,b2), ...)
    BASE     := S2 | O(g) | N(k)
    pretzel  := pretzel(a,b,c[,d])

Exit codes: 0 embeds, 1 obstructed, 2 unknown, 64 parse/usage error,
70 internal conflict (a catalog hit contradicting a completed
obstruction; this should never happen and is surfaced loudly).
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import DEFAULT_BUDGET, ObstructionReport, full_report
from .manifolds import LensSum, Manifold, PretzelCover, SeifertManifold


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}")
        self.pos += len(token)

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if start == self.pos:
            self.error("expected a name")
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start : self.pos].lstrip("+-"):
            self.pos = start
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def int_list(self) -> list[int]:
        out = [self.integer()]
        while self.peek() == ",":
            self.expect(",")
            out.append(self.integer())
        return out

    def pair_list(self) -> list[tuple[int, int]]:
        pairs = []
        while True:
            self.expect("(")
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect(")")
            pairs.append((a, b))
            if self.peek() != ",":
                break
            self.expect(",")
        return pairs

    def manifold(self) -> Manifold:
        kind_pos = self.pos
        kind = self.word()
        if kind == "lens":
            summands = [self.lens_body(kind_pos)]
            while self.peek() == "+":
                self.expect("+")
                head_pos = self.pos
                head = self.word()
                if head != "lens":
                    self.pos = head_pos
                    self.error("only lens(...) terms can be summed")
                summands.append(self.lens_body(head_pos))
            return LensSum(summands)
        if kind == "seifert":
            return self.seifert_body(kind_pos)
        if kind == "pretzel":
            return self.pretzel_body(kind_pos)
        self.pos = kind_pos
        self.error(f"unknown manifold kind {kind!r}")

    def lens_body(self, where: int) -> tuple[int, int]:
        self.expect("(")
        p_pos = self.pos
        p = self.integer()
        self.expect(",")
        q = self.integer()
        self.expect(")")
        try:
            LensSum([(p, q)])
        except ValueError as exc:
            self.pos = p_pos
            self.error(str(exc))
        return (p, q)

    def seifert_body(self, where: int) -> SeifertManifold:
        self.expect("(")
        base_pos = self.pos
        base = self.word()
        if base == "S2":
            orientable, genus = True, 0
        elif base in ("O", "N"):
            self.expect("(")
            genus = self.integer()
            self.expect(")")
            orientable = base == "O"
        else:
            self.pos = base_pos
            self.error("base must be S2, O(g) or N(k)")
        self.expect(";")
        r = self.integer()
        pairs: list[tuple[int, int]] = []
        if self.peek() == ";":
            self.expect(";")
            if self.peek() == "(":
                pairs = self.pair_list()
        self.expect(")")
        try:
            return SeifertManifold(orientable, genus, r, pairs)
        except ValueError as exc:
            self.pos = base_pos
            self.error(str(exc))

    def pretzel_body(self, where: int) -> PretzelCover:
        self.expect("(")
        first = self.pos
        strands = self.int_list()
        self.expect(")")
        try:
            return PretzelCover(strands)
        except ValueError as exc:
            self.pos = first
            self.error(str(exc))

    def parse(self) -> Manifold:
        m = self.manifold()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return m


def parse_manifold(text: str) -> Manifold:
    """Parse the manifold DSL; the result is canonicalised on
    construction, so parse -> describe -> parse is the identity."""
    return _Parser(text).parse()


def report_to_json(report: ObstructionReport, with_certificates: bool) -> dict:
    return {
        "input": report.manifold.describe(),
        "canonical_form": report.canonical_form,
        "invariants": report.invariants,
        "obstructions": [
            r.to_json(with_certificates) for r in report.results
        ],
        "status": report.status,
        "reason": report.reason,
    }


EXIT_CODES = {"EMBEDS": 0, "OBSTRUCTED": 1, "UNKNOWN": 2, "CONFLICT": 70}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="s4embed",
        description="Decide, with certificates, whether a lens-space sum, "
        "Seifert manifold or pretzel-link double branched cover embeds "
        "smoothly in the 4-sphere.",
    )
    parser.add_argument("expr", nargs="?", help="manifold expression")
    parser.add_argument("--manifold", dest="manifold", help="manifold expression")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument(
        "--certificates", action="store_true", help="include certificates in output"
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="search-node budget per obstruction (default 10^7)",
    )
    parser.add_argument(
        "--obstruction",
        action="append",
        default=None,
        help="run only the named obstruction (repeatable)",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress text output")
    parser.add_argument(
        "--seed", type=int, default=None, help="accepted for compatibility; unused"
    )
    args = parser.parse_args(argv)

    text = args.manifold or args.expr
    if not text:
        print("error: no manifold given", file=sys.stderr)
        return 64
    try:
        manifold = parse_manifold(text)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64

    report = full_report(manifold, budget=args.budget, only=args.obstruction)

    if args.json:
        payload = report_to_json(report, args.certificates)
        print(json.dumps(payload, indent=2, sort_keys=False))
    elif not args.quiet:
        print(f"input:      {text.strip()}")
        print(f"canonical:  {report.canonical_form}")
        inv = report.invariants
        print(
            f"invariants: b1={inv['b1']} torsion={inv['torsion_factors']} "
            f"euler={inv['euler']} spin={inv['spin_count']}"
        )
        for r in report.results:
            line = f"  [{r.verdict:>12}] {r.name}"
            if r.notes:
                line += f"  ({r.notes})"
            print(line)
            if args.certificates and r.certificates:
                for cert in r.certificates:
                    print(f"        {cert}")
        print(f"status:     {report.status}  ({report.reason})")
    return EXIT_CODES.get(report.status, 70)


if __name__ == "__main__":
    sys.exit(main())
