"""Compare the compiled and pure-Python rewriting kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit
from importlib.resources import files

from linkgrp import kernels
from linkgrp.presentation import parse_presentation
from linkgrp.rewriting import _colour_code
from linkgrp.topology import include_word


def random_word(p, n, rng):
    """Included word of length n mixing random letters and conjugated Dehn relators."""
    dehn = [a for a in p.letters() if abs(a) != 1]
    drels = [tuple(a for a in r if abs(a) != 1) for r in p.relators]
    w = ()
    while len(w) < n // 2:
        if rng.random() < 0.5:
            w += (rng.choice(dehn),)
        else:
            c = tuple(rng.choice(dehn) for _ in range(rng.randint(0, 3)))
            w += c + rng.choice(drels) + tuple(-a for a in reversed(c))
    return include_word(w[:n // 2])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    p = parse_presentation(files("linkgrp.data").joinpath("fig8.pres").read_text())
    tables = p.kernel_tables
    code = _colour_code(None)
    backends = {"python": kernels.python_backend}
    if kernels.compiled_backend is not None:
        backends["compiled"] = kernels.compiled_backend
    else:
        print("compiled backend unavailable; build with pip install -e .")
    rng = random.Random(0)
    print(f"{'length':>7} " + " ".join(f"{b:>12}" for b in backends) + "  speedup")
    for n in (100, 1000, 10000):
        words = [random_word(p, n, rng) for _ in range(5)]
        times = {}
        for name, be in backends.items():
            t = timeit.repeat(lambda: [be.reduce_word(w, *tables, code) for w in words],
                              number=1, repeat=args.repeat)
            times[name] = min(t) / len(words)
        speed = (f"{times['python'] / times['compiled']:7.1f}x" if "compiled" in times else "")
        print(f"{n:>7} " + " ".join(f"{times[b] * 1e3:10.3f}ms" for b in backends) + "  " + speed)


if __name__ == "__main__":
    main()
