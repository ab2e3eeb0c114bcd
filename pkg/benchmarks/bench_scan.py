"""Compare the tokenizer backends on a synthetic Turtle document.

Usage: python3 benchmarks/bench_scan.py [--triples N] [--repeat R]
"""

from __future__ import annotations

import argparse
import time

from patchrepo.rdf import _scan_py

try:
    from patchrepo.rdf import _scan_c
except ImportError:
    _scan_c = None


def build_document(triples: int) -> str:
    lines = [
        "@prefix ex: <http://example.org/vocabulary/> .",
        "@prefix res: <http://example.org/resource/> .",
    ]
    for k in range(triples):
        subject = f"res:Entity_{k % 997}"
        if k % 3 == 0:
            lines.append(f'{subject} ex:label "name {k} with a \\t tab"@en .')
        elif k % 3 == 1:
            lines.append(
                f"{subject} ex:linked <http://example.org/page/{k}#frag> ;"
                f" ex:rank res:Rank_{k % 7} ."
            )
        else:
            lines.append(
                f'{subject} ex:count "{k}"^^<http://www.w3.org/2001/XMLSchema#integer> .'
            )
    return "\n".join(lines)


def measure(tokenize, text: str, repeat: int) -> tuple[float, int]:
    tokens = len(tokenize(text))  # warm up and count
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        tokenize(text)
        best = min(best, time.perf_counter() - started)
    return best, tokens


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--triples", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    text = build_document(args.triples)
    size_mb = len(text.encode("utf-8")) / 1e6
    print(f"document: {args.triples} triples, {size_mb:.2f} MB")

    py_time, tokens = measure(_scan_py.tokenize, text, args.repeat)
    print(
        f"python   backend: {py_time * 1e3:8.2f} ms"
        f"  ({tokens / py_time / 1e6:6.2f} M tokens/s, {size_mb / py_time:6.1f} MB/s)"
    )

    if _scan_c is None:
        print("compiled backend: not built")
        return
    c_time, _ = measure(_scan_c.tokenize, text, args.repeat)
    print(
        f"compiled backend: {c_time * 1e3:8.2f} ms"
        f"  ({tokens / c_time / 1e6:6.2f} M tokens/s, {size_mb / c_time:6.1f} MB/s)"
    )
    print(f"speedup: {py_time / c_time:.1f}x")


if __name__ == "__main__":
    main()
