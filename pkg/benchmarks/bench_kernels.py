"""Time the numba and numpy kernel paths on balls of real groups.

    python3 benchmarks/bench_kernels.py [--type A3] [--max-len 8] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from iwahori import _kernels, group_of, preset
from iwahori.oracle import _alcove_scale


def kernel_inputs(g, xs):
    rs = g.root_system
    wt = g.weyl
    mu = np.array([x.mu for x in xs], dtype=np.int64)
    flags = np.array([wt.neg_flags(x.w) for x in xs], dtype=np.int64)
    pos = np.array(rs.positive_roots, dtype=np.int64)
    denom, base = _alcove_scale(g)
    # scaled barycenter images x^{-1} b, computed once outside the timed region
    b = np.array(base, dtype=np.int64)
    pts = np.array([wt.act(wt.inv(x.w), tuple(bi - denom * m for bi, m in zip(base, x.mu))) for x in xs],
                   dtype=np.int64)
    bounds = np.abs(mu @ pos.T).max(axis=1) + 1
    return (mu, flags, pos), (pts, b, denom, np.array(rs.roots, dtype=np.int64), bounds)


def bench(label, fn, repeat):
    t = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"{label:28s} {t * 1e3:9.2f} ms")
    return t


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--type", default="A3")
    p.add_argument("--lattice", default="coweight")
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()

    g = group_of(preset(args.type, args.lattice))
    xs = [x for sh in g.ball(args.max_len) for x in sh]
    lens, hyp = kernel_inputs(g, xs)
    print(f"{args.type}/{args.lattice} ball <= {args.max_len}: {len(xs)} elements, backend={_kernels.backend()}")

    ref = _kernels.closed_form_lengths(*lens, use_numba=False)
    assert np.array_equal(ref, _kernels.hyperplane_counts(*hyp, use_numba=False))
    if _kernels.HAVE_NUMBA:
        # warm the JIT before timing
        assert np.array_equal(ref, _kernels.closed_form_lengths(*lens, use_numba=True))
        assert np.array_equal(ref, _kernels.hyperplane_counts(*hyp, use_numba=True))

    for name, fn, a in (("lengths", _kernels.closed_form_lengths, lens),
                        ("hyperplanes", _kernels.hyperplane_counts, hyp)):
        t_np = bench(f"{name} numpy", lambda: fn(*a, use_numba=False), args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb = bench(f"{name} numba", lambda: fn(*a, use_numba=True), args.repeat)
            print(f"{'':28s} speedup {t_np / t_nb:6.2f}x")


if __name__ == "__main__":
    main()
