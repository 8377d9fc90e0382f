"""Compare the compiled kernels with their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Times each kernel on inputs shaped like the ones the character-table code
produces, then the whole table computation for a few groups with each
backend swapped in. Results agree between backends or the script exits 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import timeit

import numpy as np

from ctlab import _pykernels, kernels
from ctlab.chartab import character_table
from ctlab.corpus import parse_group_spec
from ctlab.exactnum import dixon_prime

try:
    from ctlab import _ckernels
except ImportError:
    _ckernels = None

NAMES = ("orbits", "closure", "rref_mod", "nullspace_mod", "matmul_mod", "charpoly_mod", "poly_roots_mod")


def kernel_cases(rng: np.random.Generator):
    G = parse_group_spec("S6")
    p = dixon_prime(G.order, G.exponent)
    mat = rng.integers(0, p, size=(40, 40), dtype=np.int64)
    sing = mat.copy()
    sing[:, 20:] = sing[:, :20]  # rank 20
    actions = np.stack([G.right_action(g) for g in G.generator_indices()])
    start = np.zeros(G.order, dtype=bool)
    start[1] = True
    poly = kernels.charpoly_mod(mat[:12, :12], p)
    return {
        "orbits": (actions,),
        "closure": (actions, start),
        "rref_mod": (mat, p),
        "nullspace_mod": (sing, p),
        "matmul_mod": (mat, mat, p),
        "charpoly_mod": (mat[:24, :24], p),
        "poly_roots_mod": (poly, p),
    }


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def time_call(fn, args, repeat: int) -> float:
    n, _ = timeit.Timer(lambda: fn(*args)).autorange()
    best = min(timeit.Timer(lambda: fn(*args)).repeat(repeat, n))
    return best / n * 1000


def swap_backend(mod) -> None:
    for name in NAMES:
        setattr(kernels, name, getattr(mod, name))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--groups", default="S5,SL23xC3,S6")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 2

    rows = []
    ok = True
    for name, call in kernel_cases(np.random.default_rng(0)).items():
        py, cy = getattr(_pykernels, name), getattr(_ckernels, name)
        agree = _same(py(*call), cy(*call))
        ok &= agree
        t_py, t_cy = time_call(py, call, args.repeat), time_call(cy, call, args.repeat)
        rows.append({"case": name, "python_ms": t_py, "cython_ms": t_cy, "speedup": t_py / t_cy, "agree": agree})

    for spec in args.groups.split(","):
        results = {}
        for label, mod in (("python", _pykernels), ("cython", _ckernels)):
            swap_backend(mod)
            # fresh group each time so no cached classes leak between backends
            t = time_call(lambda: character_table(parse_group_spec(spec)), (), 1)
            tab = character_table(parse_group_spec(spec))
            results[label] = (t, [[v.mults for v in r.values] for r in tab])
        agree = results["python"][1] == results["cython"][1]
        ok &= agree
        t_py, t_cy = results["python"][0], results["cython"][0]
        rows.append({"case": f"table {spec}", "python_ms": t_py, "cython_ms": t_cy, "speedup": t_py / t_cy, "agree": agree})
    swap_backend(_ckernels)

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':<22}{'python ms':>12}{'cython ms':>12}{'speedup':>10}  agree")
        for r in rows:
            print(f"{r['case']:<22}{r['python_ms']:>12.3f}{r['cython_ms']:>12.3f}{r['speedup']:>9.1f}x  {r['agree']}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
