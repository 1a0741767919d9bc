#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Times the three kernel entry points on a synthetic post sample plus an
end-to-end corpus scan with each kernel. Run from a checkout:

    python benchmarks/bench_kernel.py [--posts N]
"""

from __future__ import annotations

import argparse
import random
import sys
import tempfile
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import util  # noqa: E402  (tests/util.py: synthetic lexicon + corpus helpers)
from anxarc._kernel import pure  # noqa: E402

try:
    from anxarc._kernel import _ckernel
except ImportError:
    _ckernel = None


def make_texts(n: int) -> list[str]:
    rng = random.Random(8)
    words = (
        util.ANX_WORDS + util.CALM_WORDS + util.NEUTRAL_WORDS
        + ["#mood", "@someone", "http://t.co/xyz", "won't", "it's", "day!", "...", "ok"]
    )
    return [
        " ".join(rng.choice(words) for _ in range(rng.randint(8, 28)))
        for _ in range(n)
    ]


def bench(fn, args_iter) -> float:
    start = time.perf_counter()
    for args in args_iter:
        fn(*args)
    return time.perf_counter() - start


def fmt_rate(n: int, seconds: float) -> str:
    return f"{seconds:8.3f}s  ({n / seconds / 1e6:6.2f} M posts/s)" if seconds else "-"


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--posts", type=int, default=200_000)
    opts = parser.parse_args()

    lex = util.make_lexicon()
    class_map = lex.class_map
    texts = make_texts(opts.posts)
    token_lists = [pure.tokenize(t) for t in texts]

    impls = [("pure", pure)]
    if _ckernel is not None:
        impls.append(("compiled", _ckernel))
    else:
        print("compiled kernel not built; benchmarking the fallback only")

    results: dict[str, dict[str, float]] = {}
    for name, impl in impls:
        results[name] = {
            "tokenize": bench(impl.tokenize, ((t,) for t in texts)),
            "score_text": bench(impl.score_text, ((t, class_map) for t in texts)),
            "score_tokens": bench(impl.score_tokens, ((tl, class_map) for tl in token_lists)),
        }

    print(f"\nkernel micro-benchmarks over {opts.posts} posts:")
    header = f"{'operation':<14}" + "".join(f"{name:>28}" for name, _ in impls)
    print(header)
    for op in ("tokenize", "score_text", "score_tokens"):
        row = f"{op:<14}"
        for name, _ in impls:
            row += f"{fmt_rate(opts.posts, results[name][op]):>28}"
        print(row)
    if _ckernel is not None:
        for op in ("tokenize", "score_text", "score_tokens"):
            speedup = results["pure"][op] / results["compiled"][op]
            print(f"  {op}: compiled is {speedup:.1f}x faster")

    # End-to-end: full analyze-hour scan with each kernel selected.
    import os
    import subprocess

    from anxarc.synth import ArcSpec, generate_file

    spec = ArcSpec(
        bins=tuple(range(24)),
        p_anx=(0.18,) * 24,
        p_calm=(0.12,) * 24,
        posts_per_bin=max(1, opts.posts // 24),
        tokens_per_post=(10, 30),
        seed=4,
    )
    with tempfile.TemporaryDirectory() as tmp:
        corpus = str(Path(tmp) / "bench.jsonl")
        n = generate_file(spec, lex, corpus)
        print(f"\nend-to-end hour scan over {n} posts (subprocess per kernel):", flush=True)
        code = (
            "import sys, time; sys.path.insert(0, 'tests'); import util\n"
            "from anxarc.pipeline import scan_corpus\n"
            "from anxarc import _kernel\n"
            "lex = util.make_lexicon()\n"
            f"t0 = time.perf_counter(); scan_corpus({corpus!r}, lexicon=lex, families=('hour',))\n"
            "print(f'  {_kernel.IMPL:>8}: {time.perf_counter() - t0:.2f}s')\n"
        )
        for kernel in ("pure", "") if _ckernel is not None else ("pure",):
            env = dict(os.environ, ANXARC_KERNEL=kernel)
            subprocess.run([sys.executable, "-c", code], env=env, check=True,
                           cwd=Path(__file__).resolve().parent.parent)


if __name__ == "__main__":
    main()
